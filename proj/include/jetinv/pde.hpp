#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/jet.hpp"

namespace jetinv {

// The eight free jet coordinates of the solved-form PDE system: derivative
// values F_{x^j}(0) for j <= 4 and F_{x^j y}(0) for j <= 2.
template <class K>
struct PDEInitialData {
    K u00, u10, u20, u30, u40;  // F, F_x, F_xx, F_xxx, F_xxxx at the origin
    K u01, u11, u21;            // F_y, F_xy, F_xxy at the origin

    static PDEInitialData from_rationals(const std::vector<Rational>& v) {
        if (v.size() != 8) throw Error("initial data needs exactly 8 values");
        auto s = [&](int i) { return scalar_from_rational<K>(v[i]); };
        return {s(0), s(1), s(2), s(3), s(4), s(5), s(6), s(7)};
    }
};

namespace detail {

template <class K>
K inv_falling_factorial(int hi, int count) {
    long prod = 1;
    for (int i = 0; i < count; ++i) prod *= (hi - i);
    return ScalarTraits<K>::one() / ScalarTraits<K>::from_long(prod);
}

}  // namespace detail

// Extend a curve jet (coefficients through degree 4 given) to order N via the
// solved fifth-derivative equation
//   F_xxxxx = 5 F_xxx F_xxxx / F_xx - (40/9) F_xxx^3 / F_xx^2.
template <class K>
Jet<K> extend_curve_by_monge_ode(Jet<K> f, int N) {
    if (f.nvars() != 1) throw VarMismatchError("curve extension needs one variable");
    if (f.order() < N) {
        Jet<K> wider(f.vars_ptr(), f.base(), N);
        for (int i = 0; i < f.layout().size(); ++i)
            wider.coeff_ref(wider.layout().index_of(f.layout().packed(i))) = f.coeff(i);
        f = wider;
    }
    auto r = [](long n, long d = 1) { return scalar_from_rational<K>(rat(n, d)); };
    for (int m = 4; m < N; ++m) {
        Jet<K> f2 = diff_n(f, 0, 2), f3 = diff_n(f, 0, 3), f4 = diff_n(f, 0, 4);
        Jet<K> rhs = r(5) * f3 * f4 / f2 - r(40, 9) * f3 * f3 * f3 / (f2 * f2);
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(m - 4);
        K c = rhs.coeff(e) * detail::inv_falling_factorial<K>(m + 1, 5);
        e[0] = static_cast<std::uint8_t>(m + 1);
        f.set_coeff(e, c);
    }
    return f;
}

// Extend the first transverse row g = F_y(.,0) (coefficients through degree 2
// given) to order N via the solved mixed equation
//   F_xxxy = (F_xy/F_xx) F_xxxx + 2 F_xxx F_xxy / F_xx - 2 F_xy F_xxx^2 / F_xx^2,
// restricted to y = 0 with the base row f fully known.
template <class K>
Jet<K> extend_row_by_w_ode(const Jet<K>& f, Jet<K> g, int N) {
    if (f.order() < N + 1)
        throw PreconditionError("order-too-low", "base row must exceed the transverse row by one");
    if (g.order() < N) {
        Jet<K> wider(g.vars_ptr(), g.base(), N);
        for (int i = 0; i < g.layout().size(); ++i)
            wider.coeff_ref(wider.layout().index_of(g.layout().packed(i))) = g.coeff(i);
        g = wider;
    }
    auto r = [](long n, long d = 1) { return scalar_from_rational<K>(rat(n, d)); };
    for (int m = 2; m < N; ++m) {
        Jet<K> f2 = diff_n(f, 0, 2), f3 = diff_n(f, 0, 3), f4 = diff_n(f, 0, 4);
        Jet<K> g1 = diff(g, 0), g2 = diff_n(g, 0, 2);
        Jet<K> rhs = g1 * f4 / f2.truncated(g1.order()) + r(2) * f3 * g2 / f2.truncated(g2.order()) -
                     r(2) * g1 * f3 * f3 / (f2 * f2).truncated(g1.order());
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(m - 2);
        K c = rhs.coeff(e) * detail::inv_falling_factorial<K>(m + 1, 3);
        e[0] = static_cast<std::uint8_t>(m + 1);
        g.set_coeff(e, c);
    }
    return g;
}

// Rebuild a zero-Hessian surface jet from its two boundary rows: row k >= 2
// comes from F_yy = F_xy^2 / F_xx, one y-degree at a time.
template <class K>
Jet<K> propagate_zero_hessian_rows(const Jet<K>& f, const Jet<K>& g, const VarsPtr& vars, int N) {
    std::vector<K> base(2, ScalarTraits<K>::zero());
    Jet<K> F(vars, base, N);
    for (int a = 0; a <= N; ++a) {
        Exponents e1{};
        e1[0] = static_cast<std::uint8_t>(a);
        Exponents e2{};
        e2[0] = static_cast<std::uint8_t>(a);
        e2[1] = 0;
        F.set_coeff(e2, f.coeff(e1));
        if (a + 1 <= N) {
            e2[1] = 1;
            F.set_coeff(e2, g.coeff(e1));
        }
    }
    for (int k = 2; k <= N; ++k) {
        Jet<K> fxy = diff(diff(F, 0), 1);
        Jet<K> Q = fxy * fxy / diff_n(F, 0, 2);
        K fac = ScalarTraits<K>::one() / ScalarTraits<K>::from_long(static_cast<long>(k) * (k - 1));
        for (int a = 0; a + k <= N; ++a) {
            Exponents es{};
            es[0] = static_cast<std::uint8_t>(a);
            es[1] = static_cast<std::uint8_t>(k - 2);
            Exponents et{};
            et[0] = static_cast<std::uint8_t>(a);
            et[1] = static_cast<std::uint8_t>(k);
            F.set_coeff(et, Q.coeff(es) * fac);
        }
    }
    return F;
}

// Fill every Taylor coefficient of F up to total degree N from the eight
// initial constants, following the three solved-form equations.
template <class K>
Jet<K> pde_propagate(const PDEInitialData<K>& init, int N,
                     const VarsPtr& vars = make_vars({"x", "y"})) {
    if (N < 5) throw PreconditionError("order-too-low", "propagation needs order >= 5");
    if (!ScalarTraits<K>::is_unit(init.u20))
        throw PreconditionError("fxx-zero", "the solved equations divide by F_xx");
    VarsPtr xv = make_vars({(*vars)[0]});
    std::vector<K> b1(1, ScalarTraits<K>::zero());
    Jet<K> f(xv, b1, N);
    const K* fs[5] = {&init.u00, &init.u10, &init.u20, &init.u30, &init.u40};
    long fact = 1;
    for (int j = 0; j <= 4; ++j) {
        if (j > 0) fact *= j;
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(j);
        f.set_coeff(e, *fs[j] / ScalarTraits<K>::from_long(fact));
    }
    f = extend_curve_by_monge_ode(f, N);

    Jet<K> g(xv, b1, N - 1);
    const K* gs[3] = {&init.u01, &init.u11, &init.u21};
    fact = 1;
    for (int j = 0; j <= 2; ++j) {
        if (j > 0) fact *= j;
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(j);
        g.set_coeff(e, *gs[j] / ScalarTraits<K>::from_long(fact));
    }
    g = extend_row_by_w_ode(f, g, N - 1);
    return propagate_zero_hessian_rows(f, g, vars, N);
}

// Residual jets of the three solved-form equations on a surface jet.
template <class K>
std::array<Jet<K>, 3> pde_residuals(const Jet<K>& F) {
    auto r = [](long n, long d = 1) { return scalar_from_rational<K>(rat(n, d)); };
    Jet<K> fxx = diff_n(F, 0, 2), fxy = diff(diff(F, 0), 1), fyy = diff_n(F, 1, 2);
    Jet<K> f3 = diff(fxx, 0), f21 = diff(fxx, 1);
    Jet<K> f4 = diff(f3, 0), f31 = diff(f3, 1);
    Jet<K> f5 = diff(f4, 0);
    Jet<K> R1 = fyy - fxy * fxy / fxx.truncated(fyy.order());
    Jet<K> R2 = f31 - (fxy * f4 / fxx.truncated(f31.order()) +
                       r(2) * f3 * f21 / fxx.truncated(f31.order()) -
                       r(2) * fxy * f3 * f3 / (fxx * fxx).truncated(f31.order()));
    Jet<K> R3 = f5 - (r(5) * f3 * f4 / fxx.truncated(f5.order()) -
                      r(40, 9) * f3 * f3 * f3 / (fxx * fxx).truncated(f5.order()));
    return {R1, R2, R3};
}

template <class K>
struct CompatibilityReport {
    int coefficients_checked = 0;
    int multi_route_coefficients = 0;
    bool all_zero = true;
    typename ScalarTraits<K>::Real max_abs{};
    std::vector<std::string> violations;
};

// Every filled coefficient reachable through more than one differentiation
// path must receive the same value; equivalently, the residual jets of the
// three solved equations vanish coefficientwise.
template <class K>
CompatibilityReport<K> compatibility_check(const PDEInitialData<K>& init, int N) {
    Jet<K> F = pde_propagate<K>(init, N);
    auto res = pde_residuals(F);
    CompatibilityReport<K> rep;
    rep.max_abs = ScalarTraits<typename ScalarTraits<K>::Real>::zero();
    auto routes = [](int j, int k) { return (k >= 2 ? 1 : 0) + (j >= 3 && k >= 1 ? 1 : 0) + (j >= 5 ? 1 : 0); };
    const int shift_j[3] = {0, 3, 5};
    const int shift_k[3] = {2, 1, 0};
    std::set<std::pair<int, int>> multi;
    for (int which = 0; which < 3; ++which) {
        const Jet<K>& R = res[which];
        for (int i = 0; i < R.layout().size(); ++i) {
            int j = R.layout().exponents(i)[0] + shift_j[which];
            int k = R.layout().exponents(i)[1] + shift_k[which];
            ++rep.coefficients_checked;
            if (routes(j, k) >= 2) multi.emplace(j, k);
            const K& v = R.coeff(i);
            if (!ScalarTraits<K>::negligible(v)) {
                rep.all_zero = false;
                rep.violations.push_back("F_{x^" + std::to_string(j) + " y^" + std::to_string(k) +
                                         "}: " + ScalarTraits<K>::to_string(v));
            }
            if constexpr (ScalarTraits<K>::is_complex) {
                // residuals are real in this module
            } else {
                auto a = abs(v);
                if (a > rep.max_abs) rep.max_abs = a;
            }
        }
    }
    rep.multi_route_coefficients = static_cast<int>(multi.size());
    return rep;
}

}  // namespace jetinv
