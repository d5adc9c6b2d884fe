#pragma once

#include "jetinv/jet.hpp"

namespace jetinv {

// A graphed curve u = F(x) or surface u = F(x,y), carried as the jet of F.
// Hypothesis flags are always recomputed from the jet, never cached from
// input data.
template <class K>
struct GraphSurface {
    Jet<K> F;

    explicit GraphSurface(Jet<K> f) : F(std::move(f)) {
        if (F.nvars() < 1 || F.nvars() > 2)
            throw VarMismatchError("graphs have one or two base variables");
    }
    int dim() const { return F.nvars(); }

    Jet<K> fxx() const { return diff_n(F, 0, 2); }

    bool fxx_nonzero() const {
        if (F.order() < 2) throw PreconditionError("order-too-low", "need order >= 2");
        return ScalarTraits<K>::is_unit(fxx().constant_term());
    }

    // dim-2 only: Hessian determinant vanishes identically up to the jet order.
    bool hessian_zero() const {
        require_dim(2);
        Jet<K> h = diff_n(F, 0, 2) * diff_n(F, 1, 2) - pow_int(diff(diff(F, 0), 1), 2);
        return h.negligible();
    }

    // dim-2 only: numerator of S_aff is nonzero at the base point.
    bool s_num_nonzero() const {
        require_dim(2);
        Jet<K> n = diff_n(F, 0, 2) * diff(diff_n(F, 0, 2), 1) - diff(diff(F, 0), 1) * diff_n(F, 0, 3);
        return ScalarTraits<K>::is_unit(n.constant_term());
    }

    void require_dim(int d) const {
        if (dim() != d)
            throw VarMismatchError("operation requires a graph of dimension " + std::to_string(d));
    }
    void require_order(int n, const char* what) const {
        if (F.order() < n)
            throw PreconditionError("order-too-low",
                                    std::string(what) + " needs jet order >= " + std::to_string(n));
    }
};

}  // namespace jetinv
