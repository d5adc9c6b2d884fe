#pragma once

#include <vector>

#include "jetinv/jet.hpp"

namespace jetinv {

// A vector field sum_i c_i(.) d/dx_i acting on jets as a derivation.
// Applying it drops the truncation order by one.
template <class K>
struct Derivation {
    std::vector<Jet<K>> coef;  // one coefficient jet per frame variable

    Jet<K> apply(const Jet<K>& f) const {
        if (coef.size() != static_cast<std::size_t>(f.nvars()))
            throw VarMismatchError("derivation coefficient count mismatch");
        Jet<K> r(f.vars_ptr(), f.base(), f.order() - 1);
        for (std::size_t i = 0; i < coef.size(); ++i) {
            if (coef[i].is_zero()) continue;
            r = r + coef[i].truncated(f.order() - 1) * diff(f, static_cast<int>(i));
        }
        return r;
    }
    Jet<K> operator()(const Jet<K>& f) const { return apply(f); }

    Derivation conjugated() const {
        static_assert(ScalarTraits<K>::is_complex, "conjugation needs complexified scalars");
        Derivation r;
        for (const auto& c : coef) r.coef.push_back(conj(c));
        return r;
    }

    // [X, Y] = sum_i (X(Y_i) - Y(X_i)) d/dx_i
    static Derivation commutator(const Derivation& X, const Derivation& Y) {
        Derivation r;
        for (std::size_t i = 0; i < X.coef.size(); ++i)
            r.coef.push_back(X.apply(Y.coef[i]) - Y.apply(X.coef[i]));
        return r;
    }
};

}  // namespace jetinv
