#pragma once

#include <vector>

#include "jetinv/jet.hpp"

namespace jetinv {

namespace detail {

// Binomial coefficient as a scalar; small arguments only.
template <class K>
K binom_k(int a, int b) {
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return ScalarTraits<K>::from_long(r);
}

}  // namespace detail

template <class K>
K pow_scalar(const K& x, int e) {
    K r = ScalarTraits<K>::one();
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

// Solve G(x_1..x_n, u(x)) = 0 for the jet of u. The graph variable is the
// LAST variable of G; G's base point must lie on {G = 0} and dG/du must be
// a unit there. Proceeds degree by degree.
template <class K>
Jet<K> implicit_solve(const Jet<K>& G) {
    int total_vars = G.nvars();
    if (total_vars < 2) throw VarMismatchError("implicit_solve needs at least one free variable");
    int n = total_vars - 1, N = G.order();
    if (!ScalarTraits<K>::is_zero(G.constant_term()))
        throw PreconditionError("implicit-base", "G does not vanish at the base point");

    VarNames out_names(G.vars().begin(), G.vars().end() - 1);
    std::vector<K> out_base(G.base().begin(), G.base().end() - 1);
    VarsPtr out_vars = make_vars(out_names);
    K u0 = G.base().back();

    // split G by powers of (u - u0): G = sum_j g_j(x) w^j
    std::vector<Jet<K>> g;
    for (int j = 0; j <= N; ++j) g.emplace_back(out_vars, out_base, N);
    const JetLayout& L = G.layout();
    for (int m = 0; m < L.size(); ++m) {
        if (ScalarTraits<K>::is_zero(G.coeff(m))) continue;
        Exponents e = L.exponents(m);
        int j = e[n];
        e[n] = 0;
        g[j].set_coeff(e, G.coeff(m));
    }
    const K& dgdu = g[1].constant_term();
    if (!ScalarTraits<K>::is_unit(dgdu))
        throw PreconditionError("implicit-degenerate", "dG/du vanishes at the base point");

    Jet<K> w(out_vars, out_base, N);  // u - u0
    for (int d = 1; d <= N; ++d) {
        // residual G(x, u0 + w) via Horner in w
        Jet<K> R = g[N];
        for (int j = N - 1; j >= 0; --j) R = R * w + g[j];
        Jet<K> corr = R.homogeneous_part(d) / dgdu;
        w = w - corr;
    }
    return w + u0;
}

// Solve H(A, B) = C for the 2-variable jet H at base (A0, B0), where A, B, C
// are jets on a common source frame. The linear part of (A, B) must be
// invertible (the graph condition).
template <class K>
Jet<K> solve_graph2(const Jet<K>& C, const Jet<K>& A, const Jet<K>& B, VarsPtr out_vars) {
    C.require_same_frame(A);
    C.require_same_frame(B);
    if (C.nvars() != 2 || out_vars->size() != 2)
        throw VarMismatchError("solve_graph2 expects two source variables");
    int N = C.order();
    const K A0 = A.constant_term(), B0 = B.constant_term();
    Jet<K> sA = A - A0, sB = B - B0;

    auto lin = [&](const Jet<K>& s, int v) {
        Exponents e{};
        e[v] = 1;
        return s.coeff(e);
    };
    K l00 = lin(sA, 0), l01 = lin(sA, 1), l10 = lin(sB, 0), l11 = lin(sB, 1);
    K det = l00 * l11 - l01 * l10;
    if (!ScalarTraits<K>::is_unit(det))
        throw PreconditionError("graph-condition", "linearized change of variables is singular");
    K i00 = l11 / det, i01 = -l01 / det, i10 = -l10 / det, i11 = l00 / det;

    // powers and monomial products of the shifted inners
    std::vector<Jet<K>> pwA{Jet<K>::constant(C.vars_ptr(), C.base(), N, ScalarTraits<K>::one())};
    std::vector<Jet<K>> pwB = pwA;
    for (int e = 1; e <= N; ++e) {
        pwA.push_back(pwA.back() * sA);
        pwB.push_back(pwB.back() * sB);
    }

    Jet<K> H(out_vars, std::vector<K>{A0, B0}, N);
    Jet<K> R = C;
    for (int d = 0; d <= N; ++d) {
        Jet<K> Rd = R.homogeneous_part(d);
        if (Rd.is_zero()) continue;
        // h_d = R_d composed with the inverse linear map; bucket by Y-degree
        std::vector<K> hcoef(static_cast<std::size_t>(d) + 1, ScalarTraits<K>::zero());
        const JetLayout& L = Rd.layout();
        for (int m = L.degree_start(d); m < L.degree_start(d + 1); ++m) {
            if (ScalarTraits<K>::is_zero(Rd.coeff(m))) continue;
            int a = L.exponents(m)[0], b = L.exponents(m)[1];
            // expand (i00 X + i01 Y)^a (i10 X + i11 Y)^b
            for (int i = 0; i <= a; ++i)
                for (int j = 0; j <= b; ++j) {
                    K term = Rd.coeff(m) * detail::binom_k<K>(a, i) * detail::binom_k<K>(b, j);
                    term = term * pow_scalar(i00, i) * pow_scalar(i01, a - i);
                    term = term * pow_scalar(i10, j) * pow_scalar(i11, b - j);
                    int ydeg = (a - i) + (b - j);
                    hcoef[ydeg] = hcoef[ydeg] + term;
                }
        }
        for (int ydeg = 0; ydeg <= d; ++ydeg) {
            if (ScalarTraits<K>::is_zero(hcoef[ydeg])) continue;
            Exponents e{};
            e[0] = static_cast<std::uint8_t>(d - ydeg);
            e[1] = static_cast<std::uint8_t>(ydeg);
            H.set_coeff(e, hcoef[ydeg]);
            R = R - pwA[d - ydeg] * pwB[ydeg] * hcoef[ydeg];
        }
    }
    if constexpr (ScalarTraits<K>::is_exact) {
        if (!R.is_zero()) throw Error("internal: graph solve left a nonzero residual");
    }
    return H;
}

// One-variable analogue: H(A) = C.
template <class K>
Jet<K> solve_graph1(const Jet<K>& C, const Jet<K>& A, VarsPtr out_vars) {
    C.require_same_frame(A);
    if (C.nvars() != 1 || out_vars->size() != 1)
        throw VarMismatchError("solve_graph1 expects one source variable");
    int N = C.order();
    const K A0 = A.constant_term();
    Jet<K> sA = A - A0;
    Exponents e1{};
    e1[0] = 1;
    K l0 = sA.coeff(e1);
    if (!ScalarTraits<K>::is_unit(l0))
        throw PreconditionError("graph-condition", "linearized change of variable is singular");

    std::vector<Jet<K>> pwA{Jet<K>::constant(C.vars_ptr(), C.base(), N, ScalarTraits<K>::one())};
    for (int e = 1; e <= N; ++e) pwA.push_back(pwA.back() * sA);

    Jet<K> H(out_vars, std::vector<K>{A0}, N);
    Jet<K> R = C;
    K lpow = ScalarTraits<K>::one();
    for (int d = 0; d <= N; ++d) {
        Exponents ed{};
        ed[0] = static_cast<std::uint8_t>(d);
        K v = R.coeff(ed);
        if (!ScalarTraits<K>::is_zero(v)) {
            K h = v / lpow;
            H.set_coeff(ed, h);
            R = R - pwA[d] * h;
        }
        lpow = lpow * l0;
    }
    if constexpr (ScalarTraits<K>::is_exact) {
        if (!R.is_zero()) throw Error("internal: graph solve left a nonzero residual");
    }
    return H;
}

}  // namespace jetinv
