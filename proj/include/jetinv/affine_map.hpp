#pragma once

#include <array>
#include <string>
#include <vector>

#include "jetinv/affine_invariants.hpp"
#include "jetinv/graph.hpp"
#include "jetinv/implicit.hpp"

namespace jetinv {

// Invertible affine change of coordinates of R^2 (curves, coordinates (x,u))
// or R^3 (surfaces, coordinates (x,y,u)); row-major matrix plus translation.
// For n = 3 the entries follow the naming a,b,c / k,l,m / p,q,r.
template <class K>
struct AffineMap {
    int n = 3;
    std::array<K, 9> m{};
    std::array<K, 3> t{};

    static AffineMap identity(int n) {
        AffineMap g;
        g.n = n;
        for (auto& v : g.m) v = ScalarTraits<K>::zero();
        for (auto& v : g.t) v = ScalarTraits<K>::zero();
        for (int i = 0; i < n; ++i) g.m[i * n + i] = ScalarTraits<K>::one();
        return g;
    }

    const K& e(int i, int j) const { return m[i * n + j]; }
    K& e(int i, int j) { return m[i * n + j]; }

    K delta() const {
        if (n == 2) return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
        return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
               e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
               e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    }

    // max-entry distance of the matrix from the identity
    bool near_identity(const Rational& radius = rat(1, 4)) const {
        K r = scalar_from_rational<K>(radius);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                K d = e(i, j) - (i == j ? ScalarTraits<K>::one() : ScalarTraits<K>::zero());
                if (abs(d) > r) return false;
            }
        return true;
    }

    std::vector<K> apply(const std::vector<K>& p) const {
        std::vector<K> q(n, ScalarTraits<K>::zero());
        for (int i = 0; i < n; ++i) {
            q[i] = t[i];
            for (int j = 0; j < n; ++j) q[i] = q[i] + e(i, j) * p[j];
        }
        return q;
    }

    AffineMap inverse() const {
        K d = delta();
        if (!ScalarTraits<K>::is_unit(d))
            throw PreconditionError("delta-zero", "affine map has vanishing determinant");
        AffineMap inv = identity(n);
        if (n == 2) {
            inv.e(0, 0) = e(1, 1) / d;
            inv.e(0, 1) = -e(0, 1) / d;
            inv.e(1, 0) = -e(1, 0) / d;
            inv.e(1, 1) = e(0, 0) / d;
        } else {
            auto cof = [&](int i, int j) -> K {
                int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
                return e(i1, j1) * e(i2, j2) - e(i1, j2) * e(i2, j1);
            };
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) inv.e(i, j) = cof(j, i) / d;
        }
        // translation: inv(t) maps t to 0
        std::vector<K> tt(t.begin(), t.begin() + n);
        std::vector<K> it(n, ScalarTraits<K>::zero());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) it[i] = it[i] - inv.e(i, j) * tt[j];
        for (int i = 0; i < n; ++i) inv.t[i] = it[i];
        return inv;
    }

    // g2 after g1
    static AffineMap composed(const AffineMap& g2, const AffineMap& g1) {
        if (g1.n != g2.n) throw VarMismatchError("composing maps of different dimension");
        AffineMap g = identity(g1.n);
        int n = g1.n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                K acc = ScalarTraits<K>::zero();
                for (int k = 0; k < n; ++k) acc = acc + g2.e(i, k) * g1.e(k, j);
                g.e(i, j) = acc;
            }
        for (int i = 0; i < n; ++i) {
            K acc = g2.t[i];
            for (int k = 0; k < n; ++k) acc = acc + g2.e(i, k) * g1.t[k];
            g.t[i] = acc;
        }
        return g;
    }
};

namespace detail {

// The affine images A, B, C of the coordinate functions along the graph:
// for surfaces A = a x + b y + c F + d etc.; for curves A = a x + b F + c.
template <class K>
struct GraphImages {
    Jet<K> A, B, C;  // B unused for curves
};

template <class K>
GraphImages<K> graph_images(const AffineMap<K>& g, const Jet<K>& F) {
    int N = F.order();
    if (g.n == 3) {
        if (F.nvars() != 2) throw VarMismatchError("3x3 map needs a surface graph");
        Jet<K> x = Jet<K>::coordinate(F.vars_ptr(), F.base(), N, 0);
        Jet<K> y = Jet<K>::coordinate(F.vars_ptr(), F.base(), N, 1);
        Jet<K> A = g.e(0, 0) * x + g.e(0, 1) * y + g.e(0, 2) * F + g.t[0];
        Jet<K> B = g.e(1, 0) * x + g.e(1, 1) * y + g.e(1, 2) * F + g.t[1];
        Jet<K> C = g.e(2, 0) * x + g.e(2, 1) * y + g.e(2, 2) * F + g.t[2];
        return {A, B, C};
    }
    if (F.nvars() != 1) throw VarMismatchError("2x2 map needs a curve graph");
    Jet<K> x = Jet<K>::coordinate(F.vars_ptr(), F.base(), N, 0);
    Jet<K> A = g.e(0, 0) * x + g.e(0, 1) * F + g.t[0];
    Jet<K> C = g.e(1, 0) * x + g.e(1, 1) * F + g.t[1];
    return {A, A, C};
}

}  // namespace detail

// Push a graphed curve/surface through an affine map: solve the fundamental
// identity C = F'(A[, B]) for the target graphing jet. Fails when delta = 0
// or when the linearized change of variables degenerates (graph condition).
template <class K>
GraphSurface<K> transform_graph(const AffineMap<K>& g, const GraphSurface<K>& G) {
    if (!ScalarTraits<K>::is_unit(g.delta()))
        throw PreconditionError("delta-zero", "affine map has vanishing determinant");
    auto im = detail::graph_images(g, G.F);
    if (g.n == 3) return GraphSurface<K>(solve_graph2(im.C, im.A, im.B, G.F.vars_ptr()));
    return GraphSurface<K>(solve_graph1(im.C, im.A, G.F.vars_ptr()));
}

// Pull a jet living on the primed chart back to source coordinates along the
// graph, i.e. compose with (A, B).
template <class K>
Jet<K> pullback(const Jet<K>& primed, const AffineMap<K>& g, const GraphSurface<K>& G) {
    auto im = detail::graph_images(g, G.F);
    int N = primed.order();
    if (g.n == 3) return compose(primed, {im.A.truncated(N), im.B.truncated(N)});
    return compose(primed, {im.A.truncated(N)});
}

template <class K>
struct Factors {
    Jet<K> lambda;    // al - bk + (cl - bm) F_x + (am - ck) F_y
    Jet<K> upsilon;   // (l + m F_y) F_xx - (k + m F_x) F_xy
    Jet<K> mu_prime;  // r - c F'_x' - m F'_y', pulled back to source coordinates
    K delta;
};

template <class K>
Factors<K> factors(const AffineMap<K>& g, const GraphSurface<K>& G) {
    if (g.n != 3 || G.dim() != 2) throw VarMismatchError("factor calculus lives on surfaces");
    const Jet<K>& F = G.F;
    const K &a = g.e(0, 0), &b = g.e(0, 1), &c = g.e(0, 2);
    const K &k = g.e(1, 0), &l = g.e(1, 1), &mm = g.e(1, 2);
    const K &r = g.e(2, 2);
    Jet<K> Fx = diff(F, 0), Fy = diff(F, 1);
    Jet<K> lam = (a * l - b * k) + (c * l - b * mm) * Fx + (a * mm - c * k) * Fy;
    Jet<K> ups = (l + mm * Fy) * diff(Fx, 0) - (k + mm * Fx) * diff(Fx, 1);
    GraphSurface<K> Gp = transform_graph(g, G);
    Jet<K> mup = r - c * pullback(diff(Gp.F, 0), g, G) - mm * pullback(diff(Gp.F, 1), g, G);
    for (const Jet<K>* f : {&lam, &ups, &mup})
        if (!ScalarTraits<K>::is_unit(f->constant_term()))
            throw PreconditionError("factor-degenerate",
                                    "a transformation factor vanishes at the base point "
                                    "(map too far from the identity)");
    return {lam, ups, mup, g.delta()};
}

enum class Law {
    HessianDet,         // Hess'(F') = delta^2/Lambda^4 Hess(F)
    Fxx,                // F'_x'x' = delta Ups^2/(Lambda^3 F_xx)          [zero Hessian]
    SAff,               // S'_aff = (F_xx/Ups) S_aff                       [zero Hessian]
    SAffNum,            // S'_num = delta^2 Ups^3/(Lambda^6 F_xx^3) S_num  [zero Hessian]
    WAffNum,            // W'_num = delta^3 Ups^6/(F_xx^6 Lambda^10) W_num [zero Hessian]
    HessianCongruence,  // mu' Hess(F) = M Hess(F') M^t
    RhoPullback,        // pullback(rho') = mu' rho, componentwise
    Halphen1D,          // Halphen(F') = (aq-bp)^2/(a+b F_x)^8 Halphen(F)
    Monge1D,            // Monge(F') = (aq-bp)^3/(a+b F_x)^12 Monge(F)
};

inline const char* law_name(Law law) {
    switch (law) {
        case Law::HessianDet: return "hessian-determinant";
        case Law::Fxx: return "fxx";
        case Law::SAff: return "s_aff";
        case Law::SAffNum: return "s_aff-numerator";
        case Law::WAffNum: return "w_aff-numerator";
        case Law::HessianCongruence: return "hessian-congruence";
        case Law::RhoPullback: return "rho-pullback";
        case Law::Halphen1D: return "halphen";
        case Law::Monge1D: return "monge";
    }
    return "?";
}

template <class K>
struct LawResult {
    Law law;
    std::vector<Jet<K>> residuals;
    bool all_zero;
};

namespace detail {
template <class K>
void require_zero_hessian_for_law(const GraphSurface<K>& G, Law law) {
    if (!G.hessian_zero())
        throw PreconditionError("hessian-nonzero", std::string("law '") + law_name(law) +
                                                       "' assumes an identically degenerate Hessian");
}
}  // namespace detail

// Evaluate one transformation law as residual jets LHS - factor * RHS; they
// must vanish identically. Hypothesis violations are reported as errors.
template <class K>
LawResult<K> verify_law(Law law, const AffineMap<K>& g, const GraphSurface<K>& G) {
    std::vector<Jet<K>> res;
    if (law == Law::Halphen1D || law == Law::Monge1D) {
        if (g.n != 2 || G.dim() != 1) throw VarMismatchError("curve law needs a 2x2 map");
        detail::require_fxx(G, "curve law");
        GraphSurface<K> Gp = transform_graph(g, G);
        K det = g.delta();
        Jet<K> phi = g.e(0, 0) + g.e(0, 1) * diff(G.F, 0);
        if (law == Law::Halphen1D) {
            Jet<K> lhs = pullback(halphen(Gp), g, G);
            Jet<K> rhs = (det * det) * halphen(G) / pow_int(phi, 8);
            res.push_back(lhs - rhs);
        } else {
            Jet<K> lhs = pullback(monge(Gp), g, G);
            Jet<K> rhs = (det * det * det) * monge(G) / pow_int(phi, 12);
            res.push_back(lhs - rhs);
        }
    } else {
        if (g.n != 3 || G.dim() != 2) throw VarMismatchError("surface law needs a 3x3 map");
        GraphSurface<K> Gp = transform_graph(g, G);
        Factors<K> f = factors(g, G);
        switch (law) {
            case Law::HessianDet: {
                Jet<K> lhs = pullback(hessian_det(Gp), g, G);
                Jet<K> rhs = (f.delta * f.delta) * hessian_det(G) / pow_int(f.lambda, 4);
                res.push_back(lhs - rhs);
                break;
            }
            case Law::Fxx: {
                detail::require_zero_hessian_for_law(G, law);
                detail::require_fxx(G, "law");
                Jet<K> lhs = pullback(diff_n(Gp.F, 0, 2), g, G);
                Jet<K> rhs = f.delta * f.upsilon * f.upsilon /
                             (pow_int(f.lambda, 3) * diff_n(G.F, 0, 2));
                res.push_back(lhs - rhs);
                break;
            }
            case Law::SAff: {
                detail::require_zero_hessian_for_law(G, law);
                detail::require_fxx(G, "law");
                Jet<K> lhs = pullback(s_aff(Gp), g, G);
                Jet<K> rhs = diff_n(G.F, 0, 2) * s_aff(G) / f.upsilon;
                res.push_back(lhs - rhs);
                break;
            }
            case Law::SAffNum: {
                detail::require_zero_hessian_for_law(G, law);
                detail::require_fxx(G, "law");
                Jet<K> lhs = pullback(s_aff_num(Gp), g, G);
                Jet<K> rhs = (f.delta * f.delta) * pow_int(f.upsilon, 3) * s_aff_num(G) /
                             (pow_int(f.lambda, 6) * pow_int(diff_n(G.F, 0, 2), 3));
                res.push_back(lhs - rhs);
                break;
            }
            case Law::WAffNum: {
                detail::require_zero_hessian_for_law(G, law);
                detail::require_fxx(G, "law");
                Jet<K> lhs = pullback(w_aff_num(Gp), g, G);
                Jet<K> rhs = (f.delta * f.delta * f.delta) * pow_int(f.upsilon, 6) *
                             w_aff_num(G) /
                             (pow_int(diff_n(G.F, 0, 2), 6) * pow_int(f.lambda, 10));
                res.push_back(lhs - rhs);
                break;
            }
            case Law::HessianCongruence: {
                // mu' Hess(F) = M Hess(F') M^t with M = [[A_x,B_x],[A_y,B_y]]
                auto im = detail::graph_images(g, G.F);
                Jet<K> Ax = diff(im.A, 0), Ay = diff(im.A, 1);
                Jet<K> Bx = diff(im.B, 0), By = diff(im.B, 1);
                Jet<K> Hp[2][2] = {{pullback(diff_n(Gp.F, 0, 2), g, G),
                                    pullback(diff(diff(Gp.F, 1), 0), g, G)},
                                   {pullback(diff(diff(Gp.F, 0), 1), g, G),
                                    pullback(diff_n(Gp.F, 1, 2), g, G)}};
                Jet<K> M[2][2] = {{Ax, Bx}, {Ay, By}};
                Jet<K> H[2][2] = {{diff_n(G.F, 0, 2), diff(diff(G.F, 1), 0)},
                                  {diff(diff(G.F, 0), 1), diff_n(G.F, 1, 2)}};
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        Jet<K> rhs_ij(G.F.vars_ptr(), G.F.base(), G.F.order());
                        for (int s = 0; s < 2; ++s)
                            for (int u = 0; u < 2; ++u)
                                rhs_ij = rhs_ij + M[i][s] * Hp[s][u] * M[j][u];
                        res.push_back(f.mu_prime * H[i][j] - rhs_ij);
                    }
                break;
            }
            case Law::RhoPullback: {
                // pullback(rho') = mu' rho: du, dx, dy components
                Jet<K> Fpx = pullback(diff(Gp.F, 0), g, G);
                Jet<K> Fpy = pullback(diff(Gp.F, 1), g, G);
                const K &a = g.e(0, 0), &b = g.e(0, 1), &c = g.e(0, 2);
                const K &kk = g.e(1, 0), &l = g.e(1, 1), &mm = g.e(1, 2);
                const K &p = g.e(2, 0), &q = g.e(2, 1), &rr = g.e(2, 2);
                // du:  r - c F'_x' - m F'_y'  ==  mu'
                res.push_back((rr - c * Fpx - mm * Fpy) - f.mu_prime);
                // dx:  p - a F'_x' - k F'_y'  ==  -mu' F_x
                res.push_back((p - a * Fpx - kk * Fpy) + f.mu_prime * diff(G.F, 0));
                // dy:  q - b F'_x' - l F'_y'  ==  -mu' F_y
                res.push_back((q - b * Fpx - l * Fpy) + f.mu_prime * diff(G.F, 1));
                // and the closed form mu' = delta / Lambda
                res.push_back(f.mu_prime * f.lambda - f.delta);
                break;
            }
            default:
                throw Error("unhandled law");
        }
    }
    bool all_zero = true;
    for (const auto& j : res)
        if (!j.negligible()) all_zero = false;
    return {law, std::move(res), all_zero};
}

inline const std::vector<Law>& all_laws() {
    static const std::vector<Law> laws = {Law::HessianDet, Law::Fxx,           Law::SAff,
                                          Law::SAffNum,    Law::WAffNum,       Law::HessianCongruence,
                                          Law::RhoPullback, Law::Halphen1D,    Law::Monge1D};
    return laws;
}

}  // namespace jetinv
