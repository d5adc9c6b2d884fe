#pragma once

#include <optional>

#include "jetinv/derivation.hpp"
#include "jetinv/graph.hpp"

namespace jetinv {

template <class K>
using CJet = Jet<Complex<K>>;

// ---- lifts of tube data into the ambient graph variables ----

// curve u = F(x): graphing function of M^3 in C^2 depends on (x, y, v)
template <class K>
CJet<K> lift_tube_to_c2(const Jet<K>& f) {
    if (f.nvars() != 1) throw VarMismatchError("tube curve lift needs one variable");
    VarsPtr vars = make_vars({"x", "y", "v"});
    std::vector<Complex<K>> base{Complex<K>(f.base()[0]), ScalarTraits<Complex<K>>::zero(),
                                 ScalarTraits<Complex<K>>::zero()};
    CJet<K> F(vars, base, f.order());
    for (int i = 0; i < f.layout().size(); ++i) {
        Exponents e{};
        e[0] = f.layout().exponents(i)[0];
        F.set_coeff(e, Complex<K>(f.coeff(i)));
    }
    return F;
}

// surface u = F(x1, x2): graphing function of M^5 in C^3 depends on
// (x1, y1, x2, y2, v)
template <class K>
CJet<K> lift_tube_to_c3(const Jet<K>& f) {
    if (f.nvars() != 2) throw VarMismatchError("tube surface lift needs two variables");
    VarsPtr vars = make_vars({"x1", "y1", "x2", "y2", "v"});
    std::vector<Complex<K>> base(5, ScalarTraits<Complex<K>>::zero());
    base[0] = Complex<K>(f.base()[0]);
    base[2] = Complex<K>(f.base()[1]);
    CJet<K> F(vars, base, f.order());
    for (int i = 0; i < f.layout().size(); ++i) {
        Exponents e{};
        e[0] = f.layout().exponents(i)[0];
        e[2] = f.layout().exponents(i)[1];
        F.set_coeff(e, Complex<K>(f.coeff(i)));
    }
    return F;
}

namespace detail {

template <class K>
Complex<K> chalf() {
    return scalar_from_rational<Complex<K>>(rat(1, 2));
}
template <class K>
Complex<K> ci() {
    return ScalarTraits<Complex<K>>::i();
}
template <class K>
Complex<K> crat(long n, long d = 1) {
    return scalar_from_rational<Complex<K>>(rat(n, d));
}

// d/dz = (d/dx - i d/dy)/2 on jets in real variables, by variable index.
template <class K>
CJet<K> dz(const CJet<K>& F, int x_index, int y_index) {
    return (diff(F, x_index) - times_i(diff(F, y_index))) * chalf<K>();
}

}  // namespace detail

// ---- M^3 in C^2: graph u = F(x, y, v) ----

template <class K>
struct FrameC2 {
    CJet<K> A;
    Derivation<Complex<K>> L, Lbar;
    CJet<K> l;  // Levi factor
    CJet<K> P;
};

template <class K>
FrameC2<K> frame_c2(const CJet<K>& F) {
    if (F.nvars() != 3) throw VarMismatchError("frame_c2 expects a jet in (x, y, v)");
    if (F.order() < 3) throw PreconditionError("order-too-low", "frame_c2 needs order >= 3");
    using detail::chalf;
    using detail::ci;
    int N = F.order();
    CJet<K> Fv = diff(F, 2);
    CJet<K> A = -times_i(detail::dz(F, 0, 1)) / (times_i(Fv) + ScalarTraits<Complex<K>>::one());
    CJet<K> half = CJet<K>::constant(F.vars_ptr(), F.base(), N, chalf<K>());
    CJet<K> mihalf = CJet<K>::constant(F.vars_ptr(), F.base(), N, -(ci<K>() * chalf<K>()));
    Derivation<Complex<K>> L{{half, mihalf, A}};
    Derivation<Complex<K>> Lbar = L.conjugated();
    CJet<K> Ab = conj(A);
    CJet<K> l = times_i(L(Ab) - Lbar(A));
    if (!ScalarTraits<Complex<K>>::is_unit(l.constant_term()))
        throw PreconditionError("levi-degenerate", "the Levi factor vanishes at the base point");
    CJet<K> P = (L(l) - l.truncated(l.order() - 1) * diff(A, 2).truncated(l.order() - 1)) /
                l.truncated(l.order() - 1);
    return {A, L, Lbar, l, P};
}

// The sixth-order sphericity invariant of M^3 in C^2, evaluated by nested
// derivation application.
template <class K>
CJet<K> cartan_general(const CJet<K>& F) {
    if (F.order() < 6) throw PreconditionError("order-too-low", "the invariant needs order >= 6");
    FrameC2<K> fr = frame_c2(F);
    const auto& L = fr.L;
    const auto& Lb = fr.Lbar;
    CJet<K> Pb = conj(fr.P);
    auto c = [&](long n) { return detail::crat<K>(n); };
    CJet<K> t1 = Lb(L(Lb(Pb))) * c(-2);
    CJet<K> t2 = Lb(Lb(L(Pb))) * c(3);
    CJet<K> t3 = Pb * Lb(L(Pb)) * c(-7);
    CJet<K> t4 = Pb * L(Lb(Pb)) * c(4);
    CJet<K> t5 = L(Pb) * Lb(Pb) * c(-1);
    CJet<K> t6 = Pb * Pb * L(Pb) * c(2);
    return t1 + t2 + t3 + t4 + t5 + t6;
}

// ---- M^5 in C^3: graph u = F(x1, y1, x2, y2, v) ----

template <class K>
struct FrameC3 {
    CJet<K> A1, A2;
    Derivation<Complex<K>> L1, L2, Lb1, Lb2;
    CJet<K> lam11, lam21, lam12, lam22;  // rho_0(i [L_j, Lbar_k])
    CJet<K> l;                           // lam11
    CJet<K> k;                           // slant: Levi kernel K = k L1 + L2
    Derivation<Complex<K>> Kf;
    CJet<K> P;
    CJet<K> Tk;  // T(k) with T = i [L1, Lbar1] = l d/dv
};

// Frame data without the class gates; levi_checks and the conjugation tests
// use this directly.
template <class K>
FrameC3<K> frame_c3_raw(const CJet<K>& F) {
    if (F.nvars() != 5)
        throw VarMismatchError("frame_c3 expects a jet in (x1, y1, x2, y2, v)");
    if (F.order() < 3) throw PreconditionError("order-too-low", "frame_c3 needs order >= 3");
    using detail::chalf;
    using detail::ci;
    int N = F.order();
    CJet<K> Fv = diff(F, 4);
    CJet<K> den = times_i(Fv) + ScalarTraits<Complex<K>>::one();
    CJet<K> A1 = -times_i(detail::dz(F, 0, 1)) / den;
    CJet<K> A2 = -times_i(detail::dz(F, 2, 3)) / den;
    CJet<K> half = CJet<K>::constant(F.vars_ptr(), F.base(), N, chalf<K>());
    CJet<K> mihalf = CJet<K>::constant(F.vars_ptr(), F.base(), N, -(ci<K>() * chalf<K>()));
    CJet<K> zero(F.vars_ptr(), F.base(), N);
    Derivation<Complex<K>> L1{{half, mihalf, zero, zero, A1}};
    Derivation<Complex<K>> L2{{zero, zero, half, mihalf, A2}};
    Derivation<Complex<K>> Lb1 = L1.conjugated(), Lb2 = L2.conjugated();
    CJet<K> A1b = conj(A1), A2b = conj(A2);
    FrameC3<K> fr{A1,
                  A2,
                  L1,
                  L2,
                  Lb1,
                  Lb2,
                  times_i(L1(A1b) - Lb1(A1)),
                  times_i(L2(A1b) - Lb1(A2)),
                  times_i(L1(A2b) - Lb2(A1)),
                  times_i(L2(A2b) - Lb2(A2)),
                  zero,
                  zero,
                  Derivation<Complex<K>>{},
                  zero,
                  zero};
    fr.l = fr.lam11;
    return fr;
}

template <class K>
struct LeviData {
    CJet<K> det;             // determinant of the rho_0(i[L_j, Lbar_k]) matrix
    int rank_at_base;        // 0, 1 or 2
    bool degenerate_everywhere;  // det vanishes identically up to the jet order
    std::optional<bool> two_nondegenerate;  // meaningful for constant rank 1
};

template <class K>
LeviData<K> levi_checks(const CJet<K>& F) {
    FrameC3<K> fr = frame_c3_raw(F);
    CJet<K> det = fr.lam11 * fr.lam22 - fr.lam21 * fr.lam12;
    auto unit = [](const CJet<K>& j) { return ScalarTraits<Complex<K>>::is_unit(j.constant_term()); };
    int rank;
    bool any_entry = unit(fr.lam11) || unit(fr.lam21) || unit(fr.lam12) || unit(fr.lam22);
    if (!any_entry)
        rank = 0;
    else
        rank = unit(det) ? 2 : 1;
    LeviData<K> out{det, rank, det.negligible(), std::nullopt};
    if (rank == 1 && unit(fr.lam11)) {
        CJet<K> k = -(fr.lam21 / fr.lam11);
        CJet<K> S = fr.Lb1(k);
        out.two_nondegenerate = ScalarTraits<Complex<K>>::is_unit(S.constant_term());
    }
    return out;
}

// Frame with the class gates enforced: degenerate Levi form of rank exactly
// one, and 2-nondegeneracy.
template <class K>
FrameC3<K> frame_c3(const CJet<K>& F) {
    if (F.order() < 4) throw PreconditionError("order-too-low", "frame_c3 needs order >= 4");
    FrameC3<K> fr = frame_c3_raw(F);
    CJet<K> det = fr.lam11 * fr.lam22 - fr.lam21 * fr.lam12;
    if (!det.negligible())
        throw PreconditionError("levi-nondegenerate",
                                "the Levi form is not everywhere degenerate");
    if (!ScalarTraits<Complex<K>>::is_unit(fr.l.constant_term()))
        throw PreconditionError("levi-rank-0", "the Levi form vanishes at the base point");
    fr.k = -(fr.lam21 / fr.l);
    CJet<K> S = fr.Lb1(fr.k);
    if (!ScalarTraits<Complex<K>>::is_unit(S.constant_term()))
        throw PreconditionError("not-2-nondegenerate",
                                "the Levi kernel direction is stationary at the base point");
    using detail::chalf;
    using detail::ci;
    int N = F.order();
    CJet<K> half = CJet<K>::constant(F.vars_ptr(), F.base(), N, chalf<K>());
    CJet<K> mihalf = CJet<K>::constant(F.vars_ptr(), F.base(), N, -(ci<K>() * chalf<K>()));
    int nk = fr.k.order();
    fr.Kf = Derivation<Complex<K>>{{fr.k * chalf<K>(), fr.k * (-(ci<K>() * chalf<K>())),
                                    half.truncated(nk), mihalf.truncated(nk),
                                    fr.k * fr.A1.truncated(nk) + fr.A2.truncated(nk)}};
    int nl = fr.l.order();
    fr.P = (fr.L1(fr.l) - fr.l.truncated(nl - 1) * diff(fr.A1, 4).truncated(nl - 1)) /
           fr.l.truncated(nl - 1);
    fr.Tk = fr.l.truncated(nk - 1) * diff(fr.k, 4);
    return fr;
}

// First primary invariant W_0, by nested derivation application.
template <class K>
CJet<K> w0(const CJet<K>& F) {
    if (F.order() < 5) throw PreconditionError("order-too-low", "W_0 needs order >= 5");
    FrameC3<K> fr = frame_c3(F);
    auto c = [&](long n, long d = 1) { return detail::crat<K>(n, d); };
    CJet<K> S = fr.Lb1(fr.k);
    CJet<K> S2 = fr.Lb1(S);
    CJet<K> kb = conj(fr.k);
    CJet<K> Sb = fr.Lb1(kb);
    CJet<K> t1 = fr.Kf(S2) * c(-1, 3) / (S * S).truncated(S2.order() - 1);
    CJet<K> t2 = fr.Kf(S).truncated(S2.order()) * S2 * c(1, 3) /
                 (S * S * S).truncated(S2.order());
    CJet<K> t3 = fr.L1(Sb) * c(2, 3) / Sb.truncated(Sb.order() - 1);
    CJet<K> t4 = fr.L1(S) * c(2, 3) / S.truncated(S.order() - 1);
    CJet<K> t5 = times_i(fr.Tk) * c(1, 3) / S.truncated(fr.Tk.order());
    return t1 + t2 + t3 + t4 + t5;
}

// Second primary invariant J_0 (the conjugate of the displayed J-bar).
template <class K>
CJet<K> j0(const CJet<K>& F) {
    if (F.order() < 6) throw PreconditionError("order-too-low", "J_0 needs order >= 6");
    FrameC3<K> fr = frame_c3(F);
    auto c = [&](long n, long d = 1) { return detail::crat<K>(n, d); };
    CJet<K> S = fr.Lb1(fr.k);
    CJet<K> S2 = fr.Lb1(S);
    CJet<K> S3 = fr.Lb1(S2);
    CJet<K> S4 = fr.Lb1(S3);
    CJet<K> Pb = conj(fr.P);
    int NN = S4.order();
    auto t = [&](const CJet<K>& j) { return j.truncated(NN); };
    CJet<K> jbar = t(S4) / t(S) * c(1, 6) + t(S3) * t(S2) / t(S * S) * c(-5, 6) +
                   t(S3) / t(S) * t(Pb) * c(-1, 6) +
                   t(S2 * S2 * S2) / t(S * S * S) * c(20, 27) +
                   t(S2 * S2) / t(S * S) * t(Pb) * c(5, 18) +
                   t(S2) * t(fr.Lb1(Pb)) / t(S) * c(1, 6) +
                   t(S2) / t(S) * t(Pb) * t(Pb) * c(-1, 9) + t(fr.Lb1(fr.Lb1(Pb))) * c(-1, 6) +
                   t(fr.Lb1(Pb)) * t(Pb) * c(1, 3) + t(Pb) * t(Pb) * t(Pb) * c(-2, 27);
    return conj(jbar);
}

}  // namespace jetinv
