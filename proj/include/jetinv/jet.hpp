#pragma once

#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/layout.hpp"
#include "jetinv/scalar.hpp"

namespace jetinv {

using VarNames = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarNames>;

inline VarsPtr make_vars(std::initializer_list<const char*> names) {
    auto v = std::make_shared<VarNames>();
    for (auto* n : names) v->push_back(n);
    return v;
}
inline VarsPtr make_vars(VarNames names) {
    return std::make_shared<VarNames>(std::move(names));
}

// Truncated Taylor expansion at a base point: dense coefficient table over
// all multi-indices of total degree <= order, in graded order. Coefficients
// are plain polynomial coefficients (not derivative values); the expansion
// reads  f = sum_m c_m (x - base)^m.
template <class K>
class Jet {
public:
    Jet(VarsPtr vars, std::vector<K> base, int order)
        : vars_(std::move(vars)),
          base_(std::move(base)),
          layout_(JetLayout::get(static_cast<int>(vars_->size()), order)),
          c_(layout_->size(), ScalarTraits<K>::zero()) {
        if (base_.size() != vars_->size()) throw VarMismatchError("base point size mismatch");
    }

    static Jet constant(VarsPtr vars, std::vector<K> base, int order, K value) {
        Jet j(std::move(vars), std::move(base), order);
        j.c_[0] = std::move(value);
        return j;
    }

    // The coordinate function x_i as a jet: base_i + (x_i - base_i).
    static Jet coordinate(VarsPtr vars, std::vector<K> base, int order, int i) {
        Jet j(std::move(vars), std::move(base), order);
        j.c_[0] = j.base_[i];
        if (order >= 1) {
            Exponents e{};
            e[i] = 1;
            j.c_[j.layout_->index_of(e)] = ScalarTraits<K>::one();
        }
        return j;
    }

    int order() const { return layout_->order(); }
    int nvars() const { return layout_->nvars(); }
    const JetLayout& layout() const { return *layout_; }
    const VarsPtr& vars_ptr() const { return vars_; }
    const VarNames& vars() const { return *vars_; }
    const std::vector<K>& base() const { return base_; }
    const std::vector<K>& coeffs() const { return c_; }

    const K& coeff(int idx) const { return c_[idx]; }
    K& coeff_ref(int idx) { return c_[idx]; }
    const K& coeff(const Exponents& e) const {
        int idx = layout_->index_of(e);
        if (idx < 0) throw Error("coefficient index beyond truncation order");
        return c_[idx];
    }
    const K& coeff(std::initializer_list<int> exps) const { return coeff(to_exps(exps)); }
    void set_coeff(const Exponents& e, K v) {
        int idx = layout_->index_of(e);
        if (idx < 0) throw Error("coefficient index beyond truncation order");
        c_[idx] = std::move(v);
    }
    void set_coeff(std::initializer_list<int> exps, K v) { set_coeff(to_exps(exps), std::move(v)); }

    const K& constant_term() const { return c_[0]; }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_->size(); ++i)
            if ((*vars_)[i] == name) return static_cast<int>(i);
        throw VarMismatchError("unknown variable '" + name + "'");
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!ScalarTraits<K>::is_zero(v)) return false;
        return true;
    }

    // exactly zero on the exact backend, below the default comparison
    // tolerance on the float backend
    bool negligible() const {
        for (const auto& v : c_)
            if (!ScalarTraits<K>::negligible(v)) return false;
        return true;
    }

    static Exponents to_exps(std::initializer_list<int> exps) {
        Exponents e{};
        int i = 0;
        for (int x : exps) e[i++] = static_cast<std::uint8_t>(x);
        return e;
    }

    bool same_frame(const Jet& o) const {
        return *vars_ == *o.vars_ && base_ == o.base_;
    }
    void require_same_frame(const Jet& o) const {
        if (!same_frame(o)) throw VarMismatchError("jets live on different variables or base points");
    }

    Jet truncated(int new_order) const {
        if (new_order >= order()) return *this;
        Jet r(vars_, base_, new_order);
        for (int i = 0; i < r.layout_->size(); ++i)
            r.c_[i] = c_[layout_->index_of(r.layout_->packed(i))];
        return r;
    }

    Jet homogeneous_part(int d) const {
        Jet r(vars_, base_, order());
        if (d <= order())
            for (int i = layout_->degree_start(d); i < layout_->degree_start(d + 1); ++i)
                r.c_[i] = c_[i];
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        a.require_same_frame(b);
        if (a.order() != b.order()) {
            int n = std::min(a.order(), b.order());
            return a.truncated(n) + b.truncated(n);
        }
        Jet r = a;
        for (int i = 0; i < r.layout_->size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
    Jet operator-() const {
        Jet r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Jet operator*(const Jet& a, const K& s) {
        Jet r = a;
        for (auto& v : r.c_) v = v * s;
        return r;
    }
    friend Jet operator*(const K& s, const Jet& a) { return a * s; }
    friend Jet operator+(const Jet& a, const K& s) {
        Jet r = a;
        r.c_[0] = r.c_[0] + s;
        return r;
    }
    friend Jet operator+(const K& s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, const K& s) { return a + (-s); }
    friend Jet operator-(const K& s, const Jet& a) { return (-a) + s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.require_same_frame(b);
        if (a.order() != b.order()) {
            int n = std::min(a.order(), b.order());
            return a.truncated(n) * b.truncated(n);
        }
        const JetLayout& L = *a.layout_;
        int N = L.order();
        Jet r(a.vars_, a.base_, N);
        for (int i = 0; i < L.size(); ++i) {
            if (ScalarTraits<K>::is_zero(a.c_[i])) continue;
            int di = L.degree(i);
            int jmax = L.degree_start(N - di + 1);
            for (int j = 0; j < jmax; ++j) {
                if (ScalarTraits<K>::is_zero(b.c_[j])) continue;
                int t = L.index_of(L.packed(i) + L.packed(j));
                r.c_[t] = r.c_[t] + a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    // Power-series division, degree by degree; requires a unit divisor.
    friend Jet operator/(const Jet& a, const Jet& b) {
        a.require_same_frame(b);
        if (a.order() != b.order()) {
            int n = std::min(a.order(), b.order());
            return a.truncated(n) / b.truncated(n);
        }
        if (!ScalarTraits<K>::is_unit(b.c_[0])) throw NonUnitDivisorError();
        const JetLayout& L = *a.layout_;
        Jet q(a.vars_, a.base_, L.order());
        std::vector<int> bnz;
        for (int j = 1; j < L.size(); ++j)
            if (!ScalarTraits<K>::is_zero(b.c_[j])) bnz.push_back(j);
        for (int m = 0; m < L.size(); ++m) {
            K acc = a.c_[m];
            const Exponents& em = L.exponents(m);
            for (int j : bnz) {
                if (L.degree(j) > L.degree(m)) break;
                const Exponents& ej = L.exponents(j);
                bool ok = true;
                for (int v = 0; v < L.nvars(); ++v)
                    if (ej[v] > em[v]) { ok = false; break; }
                if (!ok) continue;
                int t = L.index_of(L.packed(m) - L.packed(j));
                if (!ScalarTraits<K>::is_zero(q.c_[t])) acc = acc - b.c_[j] * q.c_[t];
            }
            q.c_[m] = acc / b.c_[0];
        }
        return q;
    }
    friend Jet operator/(const Jet& a, const K& s) {
        Jet r = a;
        for (auto& v : r.c_) v = v / s;
        return r;
    }
    friend Jet operator/(const K& s, const Jet& a) {
        return Jet::constant(a.vars_, a.base_, a.order(), s) / a;
    }

    friend bool operator==(const Jet& a, const Jet& b) {
        return a.order() == b.order() && a.same_frame(b) && a.c_ == b.c_;
    }

private:
    VarsPtr vars_;
    std::vector<K> base_;
    LayoutPtr layout_;
    std::vector<K> c_;
};

// Formal partial derivative; result order drops by one.
template <class K>
Jet<K> diff(const Jet<K>& a, int var) {
    if (var < 0 || var >= a.nvars()) throw VarMismatchError("derivative variable out of range");
    if (a.order() == 0) throw PreconditionError("order-too-low", "cannot differentiate an order-0 jet");
    Jet<K> r(a.vars_ptr(), a.base(), a.order() - 1);
    const JetLayout& L = a.layout();
    const JetLayout& Lr = r.layout();
    for (int i = 0; i < Lr.size(); ++i) {
        Exponents e = Lr.exponents(i);
        e[var] = static_cast<std::uint8_t>(e[var] + 1);
        int src = L.index_of(e);
        r.coeff_ref(i) = a.coeff(src) * ScalarTraits<K>::from_long(e[var]);
    }
    return r;
}

template <class K>
Jet<K> diff(const Jet<K>& a, const std::string& var) {
    return diff(a, a.var_index(var));
}

template <class K>
Jet<K> diff_n(Jet<K> a, int var, int n) {
    for (int i = 0; i < n; ++i) a = diff(a, var);
    return a;
}

// Integer power; negative exponents require a unit constant term.
template <class K>
Jet<K> pow_int(const Jet<K>& a, long e) {
    if (e < 0) {
        Jet<K> one = Jet<K>::constant(a.vars_ptr(), a.base(), a.order(), ScalarTraits<K>::one());
        return one / pow_int(a, -e);
    }
    Jet<K> r = Jet<K>::constant(a.vars_ptr(), a.base(), a.order(), ScalarTraits<K>::one());
    Jet<K> p = a;
    while (e > 0) {
        if (e & 1) r = r * p;
        e >>= 1;
        if (e) p = p * p;
    }
    return r;
}

// Composition: substitute `inners` (jets on a common frame, one per outer
// variable) into `outer`. Each inner's constant term must equal the
// corresponding coordinate of outer's base point.
template <class K>
Jet<K> compose(const Jet<K>& outer, const std::vector<Jet<K>>& inners) {
    if (static_cast<int>(inners.size()) != outer.nvars())
        throw VarMismatchError("compose: wrong number of inner jets");
    for (std::size_t i = 1; i < inners.size(); ++i) inners[0].require_same_frame(inners[i]);
    for (int i = 0; i < outer.nvars(); ++i)
        if (!(inners[i].constant_term() == outer.base()[i]))
            throw VarMismatchError("compose: inner constant term differs from outer base point");
    int N = inners[0].order();
    const auto& frame = inners[0];
    Jet<K> zero(frame.vars_ptr(), frame.base(), N);
    // powers of the shifted inners
    std::vector<std::vector<Jet<K>>> pw(inners.size());
    for (std::size_t i = 0; i < inners.size(); ++i) {
        Jet<K> s = inners[i] - inners[i].constant_term();
        pw[i].push_back(Jet<K>::constant(frame.vars_ptr(), frame.base(), N, ScalarTraits<K>::one()));
        for (int e = 1; e <= outer.order(); ++e) pw[i].push_back(pw[i].back() * s);
    }
    Jet<K> r = zero;
    const JetLayout& L = outer.layout();
    for (int m = 0; m < L.size(); ++m) {
        if (ScalarTraits<K>::is_zero(outer.coeff(m))) continue;
        const Exponents& e = L.exponents(m);
        Jet<K> term = pw[0][0];
        for (int v = 0; v < outer.nvars(); ++v)
            if (e[v] != 0) term = term * pw[v][e[v]];
        r = r + term * outer.coeff(m);
    }
    return r;
}

// Largest coefficient magnitude, as the underlying real scalar.
template <class K>
typename ScalarTraits<K>::Real jet_max_abs(const Jet<K>& a) {
    using Real = typename ScalarTraits<K>::Real;
    Real m = ScalarTraits<Real>::zero();
    for (int i = 0; i < a.layout().size(); ++i) {
        if constexpr (ScalarTraits<K>::is_complex) {
            Real r1 = abs(a.coeff(i).re), r2 = abs(a.coeff(i).im);
            if (r1 > m) m = r1;
            if (r2 > m) m = r2;
        } else {
            Real r1 = abs(a.coeff(i));
            if (r1 > m) m = r1;
        }
    }
    return m;
}

// ---- complexification helpers ----

template <class K>
Jet<Complex<K>> complexify(const Jet<K>& a) {
    std::vector<Complex<K>> base;
    for (const auto& b : a.base()) base.emplace_back(b);
    Jet<Complex<K>> r(a.vars_ptr(), std::move(base), a.order());
    for (int i = 0; i < a.layout().size(); ++i) r.coeff_ref(i) = Complex<K>(a.coeff(i));
    return r;
}

// Coefficientwise conjugation; valid because the variables are real.
template <class K>
Jet<Complex<K>> conj(const Jet<Complex<K>>& a) {
    Jet<Complex<K>> r = a;
    for (int i = 0; i < a.layout().size(); ++i) r.coeff_ref(i) = a.coeff(i).conj();
    return r;
}

template <class K>
Jet<Complex<K>> times_i(const Jet<Complex<K>>& a) {
    Jet<Complex<K>> r = a;
    for (int i = 0; i < a.layout().size(); ++i) r.coeff_ref(i) = a.coeff(i).times_i();
    return r;
}

template <class K>
Jet<K> real_part(const Jet<Complex<K>>& a) {
    std::vector<K> base;
    for (const auto& b : a.base()) base.push_back(b.re);
    Jet<K> r(a.vars_ptr(), std::move(base), a.order());
    for (int i = 0; i < a.layout().size(); ++i) r.coeff_ref(i) = a.coeff(i).re;
    return r;
}

template <class K>
Jet<K> imag_part(const Jet<Complex<K>>& a) {
    std::vector<K> base;
    for (const auto& b : a.base()) base.push_back(b.re);
    Jet<K> r(a.vars_ptr(), std::move(base), a.order());
    for (int i = 0; i < a.layout().size(); ++i) r.coeff_ref(i) = a.coeff(i).im;
    return r;
}

using RJet = Jet<Rational>;
using FJet = Jet<BigFloat>;

}  // namespace jetinv
