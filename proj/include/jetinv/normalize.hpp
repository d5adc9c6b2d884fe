#pragma once

#include <string>
#include <vector>

#include "jetinv/affine_map.hpp"

namespace jetinv {

// The rank-one tube model u = x^2/(1-y) as a jet at the origin.
template <class K>
Jet<K> lc_model_jet(const VarsPtr& vars, int order) {
    std::vector<K> base(2, ScalarTraits<K>::zero());
    Jet<K> m(vars, base, order);
    for (int k = 0; k + 2 <= order; ++k) {
        Exponents e{};
        e[0] = 2;
        e[1] = static_cast<std::uint8_t>(k);
        m.set_coeff(e, ScalarTraits<K>::one());
    }
    return m;
}

enum class NormalizeVerdict { EquivalentToModel, Obstruction };

template <class K>
struct NormalizationResult {
    NormalizeVerdict verdict;
    std::string obstruction_step;  // "1", "2" or "3" on obstruction
    Exponents witness{};           // graded-lex-first offending coefficient
    K witness_value{};
    AffineMap<K> composed_map = AffineMap<K>::identity(3);
    Jet<K> normalized;
    std::vector<std::string> steps;
};

// Constructive normalization of a zero-Hessian, 2-nondegenerate graph to the
// model u = x^2/(1-y), by a finite chain of affine reductions. On success the
// composed map carries the input onto the model jet exactly; otherwise the
// first obstructing coefficient (in graded order) is reported with the label
// of the equation family it violates.
template <class K>
NormalizationResult<K> normalize_to_model(const GraphSurface<K>& G, int order) {
    if (order < 6)
        throw PreconditionError("order-too-low", "normalization needs jet order >= 6");
    G.require_dim(2);
    G.require_order(order, "normalization");
    GraphSurface<K> cur(G.F.truncated(order));
    if (!cur.fxx_nonzero())
        throw PreconditionError("fxx-zero", "normalization needs F_xx != 0 at the base point");
    if (!cur.hessian_zero())
        throw PreconditionError("hessian-nonzero",
                                "normalization needs an identically degenerate Hessian");
    if (!cur.s_num_nonzero())
        throw PreconditionError("not-2-nondegenerate",
                                "normalization needs F_xx F_xxy - F_xy F_xxx != 0 at the base point");

    const int N = order;
    NormalizationResult<K> out{NormalizeVerdict::EquivalentToModel, "", {}, ScalarTraits<K>::zero(),
                               AffineMap<K>::identity(3), cur.F, {}};
    auto apply = [&](const AffineMap<K>& g, const std::string& what) {
        cur = transform_graph(g, cur);
        out.composed_map = AffineMap<K>::composed(g, out.composed_map);
        out.steps.push_back(what);
    };
    auto k0 = ScalarTraits<K>::zero;
    auto k1 = ScalarTraits<K>::one;
    auto coeff = [&](int j, int k) {
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(j);
        e[1] = static_cast<std::uint8_t>(k);
        return cur.F.coeff(e);
    };
    auto obstruct = [&](const char* step, int j, int k, const K& value) {
        out.verdict = NormalizeVerdict::Obstruction;
        out.obstruction_step = step;
        out.witness = Exponents{};
        out.witness[0] = static_cast<std::uint8_t>(j);
        out.witness[1] = static_cast<std::uint8_t>(k);
        out.witness_value = value;
        out.normalized = cur.F;
        return out;
    };

    // (0a) move the base point to the origin and drop the value/gradient
    {
        const K x0 = cur.F.base()[0], y0 = cur.F.base()[1];
        const K u0 = cur.F.constant_term();
        const K p = diff(cur.F, 0).constant_term(), q = diff(cur.F, 1).constant_term();
        bool trivial = ScalarTraits<K>::negligible(x0) && ScalarTraits<K>::negligible(y0) &&
                       ScalarTraits<K>::negligible(u0) && ScalarTraits<K>::negligible(p) &&
                       ScalarTraits<K>::negligible(q);
        if (!trivial) {
            AffineMap<K> g = AffineMap<K>::identity(3);
            g.t[0] = -x0;
            g.t[1] = -y0;
            g.e(2, 0) = -p;
            g.e(2, 1) = -q;
            g.t[2] = p * x0 + q * y0 - u0;
            apply(g, "translate base point to origin and remove the linear part");
        }
    }

    // (0b) bring the rank-one quadratic part to exactly x^2
    {
        K q20 = coeff(2, 0), q11 = coeff(1, 1), q02 = coeff(0, 2);
        K two = ScalarTraits<K>::from_long(2);
        // pivot on the largest |entry| of [[2 q20, q11], [q11, 2 q02]]; ties
        // resolve to the earlier index. Rank one keeps the pivot diagonal.
        K d1 = abs(two * q20), doff = abs(q11), d2 = abs(two * q02);
        bool pivot_second = (d2 > d1) && (d2 > doff);
        if (pivot_second) {
            // x' = s x + y with s = q11/(2 q02), y' = x
            AffineMap<K> g = AffineMap<K>::identity(3);
            g.e(0, 0) = q11 / (two * q02);
            g.e(0, 1) = k1();
            g.e(1, 0) = k1();
            g.e(1, 1) = k0();
            apply(g, "pivot the quadratic part onto the second variable");
        } else if (!ScalarTraits<K>::is_zero(q11)) {
            AffineMap<K> g = AffineMap<K>::identity(3);
            g.e(0, 1) = q11 / (two * q20);  // x' = x + t y
            apply(g, "absorb the cross term of the quadratic part");
        }
        K lam = coeff(2, 0);
        if (!ScalarTraits<K>::is_unit(lam))
            throw PreconditionError("fxx-zero", "quadratic pivot degenerated");
        if (!(lam == k1())) {
            AffineMap<K> g = AffineMap<K>::identity(3);
            g.e(2, 2) = k1() / lam;  // u' = u/lam
            apply(g, "scale the graph variable so the quadratic part is x^2");
        }
    }

    // (1) rows x^0 and x^1 must vanish outright
    for (int k = 0; k <= N; ++k) {
        if (!ScalarTraits<K>::negligible(coeff(0, k))) return obstruct("1", 0, k, coeff(0, k));
        if (k <= N - 1 && !ScalarTraits<K>::negligible(coeff(1, k)))
            return obstruct("1", 1, k, coeff(1, k));
    }

    // (2) linear substitution y <- alpha x + beta y reaches x^2 + x^2 y + O(4)
    {
        K alpha = coeff(3, 0), beta = coeff(2, 1);
        if (!ScalarTraits<K>::is_unit(beta))
            throw PreconditionError("not-2-nondegenerate", "cubic coefficient of x^2 y vanished");
        if (!(ScalarTraits<K>::negligible(alpha) && beta == k1())) {
            AffineMap<K> g = AffineMap<K>::identity(3);
            g.e(1, 0) = alpha;
            g.e(1, 1) = beta;
            apply(g, "substitute y <- alpha x + beta y to normalize the cubic part");
        }
    }

    // (3) kill the x^4 coefficient with y <- y + A u
    {
        K A = coeff(4, 0);
        if (!ScalarTraits<K>::negligible(A)) {
            AffineMap<K> g = AffineMap<K>::identity(3);
            g.e(1, 2) = A;
            apply(g, "substitute y <- y + A u to remove the x^4 coefficient");
        }
    }

    // final scan in graded order; classify each family
    const JetLayout& L = cur.F.layout();
    for (int idx = 0; idx < L.size(); ++idx) {
        int j = L.exponents(idx)[0], k = L.exponents(idx)[1];
        const K& c = cur.F.coeff(idx);
        if (j == 2 && k == 0) continue;  // normalized to 1 in step (0b)
        if (j <= 1) {
            if (!ScalarTraits<K>::negligible(c)) return obstruct("1", j, k, c);
        } else if (j == 2) {
            K dev = c - k1();
            if (!ScalarTraits<K>::negligible(dev)) return obstruct("1", j, k, dev);
        } else if (k == 0) {
            if (!ScalarTraits<K>::negligible(c)) return obstruct("3", j, k, c);
        } else {
            if (!ScalarTraits<K>::negligible(c)) return obstruct("2", j, k, c);
        }
    }
    out.steps.push_back("all coefficient families vanish; the jet is the model");
    out.normalized = cur.F;
    return out;
}

}  // namespace jetinv
