#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetinv/cr.hpp"
#include "jetinv/expr.hpp"
#include "jetinv/normalize.hpp"
#include "test_support.hpp"

using namespace jetinv;
using namespace jetinv::testing;

namespace {

const VarsPtr X = make_vars({"x"});
const VarsPtr XY = make_vars({"x", "y"});
using CK = Complex<Rational>;

RJet curve(const char* s, int order) {
    return eval_jet<Rational>(*parse_expression(s), X, {Rational(0)}, order);
}
RJet surf(const char* s, int order) {
    return eval_jet<Rational>(*parse_expression(s), XY, {Rational(0), Rational(0)}, order);
}

// a real jet as the matching complex jet on the ambient variables
CJet<Rational> lift_result_c2(const RJet& f, int order) {
    return lift_tube_to_c2(f.truncated(order));
}
CJet<Rational> lift_result_c3(const RJet& f, int order) {
    return lift_tube_to_c3(f.truncated(order));
}

}  // namespace

TEST_CASE("C^2 frame on tubes: A, l, P reduce to the stated real forms") {
    std::mt19937_64 rng(51);
    RJet f = random_jet0(rng, X, 7);
    f.set_coeff({2}, Rational(1));
    auto F = lift_tube_to_c2(f);
    auto fr = frame_c2(F);

    // A = -(i/2) F_x
    auto expectA = times_i(lift_result_c2(diff(f, 0), 6)) * scalar_from_rational<CK>(rat(-1, 2));
    CHECK(fr.A == expectA);
    // l = -(1/2) F_xx
    CHECK(fr.l == lift_result_c2(diff_n(f, 0, 2), 5) * scalar_from_rational<CK>(rat(-1, 2)));
    // P = (1/2) F_xxx / F_xx
    auto expectP =
        lift_result_c2(rat(1, 2) * diff_n(f, 0, 3) / diff_n(f, 0, 2).truncated(4), 4);
    CHECK(fr.P == expectP);
}

TEST_CASE("C^2 frame on the parabola tube: P = 0 and l = -1") {
    auto F = lift_tube_to_c2(curve("x^2", 6));
    auto fr = frame_c2(F);
    CHECK(fr.P.is_zero());
    CHECK(fr.l ==
          CJet<Rational>::constant(fr.l.vars_ptr(), fr.l.base(), fr.l.order(), CK(rat(-1))));
}

TEST_CASE("Levi degeneracy at the base is rejected") {
    CHECK_THROWS_AS(frame_c2(lift_tube_to_c2(curve("x^3", 6))), PreconditionError);
}

TEST_CASE("sphericity via nested derivations: model fixtures") {
    CHECK(cartan_general(lift_tube_to_c2(curve("x^2", 8))).is_zero());
    CHECK(cartan_general(lift_tube_to_c2(curve("exp(x)", 8))).is_zero());
    CHECK(!cartan_general(lift_tube_to_c2(curve("x^2+x^3", 8))).is_zero());
    CHECK_THROWS_AS(cartan_general(lift_tube_to_c2(curve("x^2", 5))), PreconditionError);
}

TEST_CASE("the cached tube polynomial equals the nested-derivation route") {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 6; ++t) {
        RJet f = random_jet0(rng, X, 8);
        std::uniform_int_distribution<int> pos(1, 3);
        f.set_coeff({2}, rat(pos(rng)));
        GraphSurface<Rational> C(f);
        RJet poly = cartan_tube(C);
        CJet<Rational> nested = cartan_general(lift_tube_to_c2(f));
        CHECK(nested == lift_result_c2(poly, nested.order()));
    }
}

TEST_CASE("C^3 frame on tubes: slant, T(k), Lbar1(k), P") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 3; ++t) {
        auto G = random_rank1_surface(rng, XY, 7);
        auto F = lift_tube_to_c3(G.F);
        auto fr = frame_c3(F);
        RJet fxx = diff_n(G.F, 0, 2);
        RJet fxy = diff(diff(G.F, 0), 1);
        CHECK(fr.k == lift_result_c3(-(fxy / fxx), fr.k.order()));
        CHECK(fr.Tk.is_zero());
        RJet snum = fxx * diff(fxx, 1) - fxy * diff(fxx, 0);
        RJet S_real = rat(-1, 2) * snum / (fxx * fxx).truncated(snum.order());
        CHECK(fr.Lb1(fr.k) == lift_result_c3(S_real, fr.k.order() - 1));
        CHECK(fr.P == lift_result_c3(rat(1, 2) * diff(fxx, 0) / fxx.truncated(fxx.order() - 1),
                                     fr.P.order()));
        // all of them are real
        CHECK(imag_part(fr.k).is_zero());
        CHECK(imag_part(fr.P).is_zero());
    }
}

TEST_CASE("slant derivative at the model base point is -1/2") {
    auto F = lift_tube_to_c3(surf("x^2/(1-y)", 6));
    auto fr = frame_c3(F);
    CK v = fr.Lb1(fr.k).constant_term();
    CHECK(v == CK(rat(-1, 2)));
}

TEST_CASE("conjugation symmetry on a non-tube graph") {
    // F depends on all five variables
    std::mt19937_64 rng(54);
    VarsPtr V5 = make_vars({"x1", "y1", "x2", "y2", "v"});
    RJet F(V5, std::vector<Rational>(5, Rational(0)), 4);
    for (int i = 0; i < F.layout().size(); ++i) F.coeff_ref(i) = rand_rat(rng, 2);
    auto Fc = complexify(F);
    auto fr = frame_c3_raw(Fc);
    CHECK(conj(fr.A1) == fr.Lb1.coef[4]);  // conj(A1) is the v-coefficient of Lbar1
    // conj(L1(f)) == Lbar1(conj(f)) for a random complex jet f
    CJet<Rational> f =
        times_i(complexify(random_jet0(rng, V5, 4))) + complexify(random_jet0(rng, V5, 4));
    CHECK(conj(fr.L1(f)) == fr.Lb1(conj(f)));
    // the diagonal Levi pairing is real
    CHECK(imag_part(fr.lam11).is_zero());
}

TEST_CASE("tube reduction: L1 acts on lifted functions as half d/dx1") {
    std::mt19937_64 rng(55);
    RJet g2 = random_jet0(rng, XY, 6);
    auto G = random_rank1_surface(rng, XY, 6);
    auto fr = frame_c3_raw(lift_tube_to_c3(G.F));
    CJet<Rational> lifted = lift_tube_to_c3(g2);
    CHECK(fr.L1(lifted) == lift_tube_to_c3(rat(1, 2) * diff(g2, 0)));
    CHECK(fr.L2(lifted) == lift_tube_to_c3(rat(1, 2) * diff(g2, 1)));
}

TEST_CASE("levi_checks classifies the three tube examples") {
    // nondegenerate base Hessian <-> Levi rank 2
    auto nd = levi_checks(lift_tube_to_c3(surf("x^2+y^2", 5)));
    CHECK(nd.rank_at_base == 2);
    CHECK(!nd.degenerate_everywhere);

    auto lc = levi_checks(lift_tube_to_c3(surf("x^2/(1-y)", 6)));
    CHECK(lc.rank_at_base == 1);
    CHECK(lc.degenerate_everywhere);
    REQUIRE(lc.two_nondegenerate.has_value());
    CHECK(*lc.two_nondegenerate);

    auto cyl = levi_checks(lift_tube_to_c3(surf("x^2", 6)));
    CHECK(cyl.rank_at_base == 1);
    CHECK(cyl.degenerate_everywhere);
    REQUIRE(cyl.two_nondegenerate.has_value());
    CHECK(!*cyl.two_nondegenerate);
}

TEST_CASE("frame gates produce distinct reports") {
    CHECK_THROWS_WITH_AS(frame_c3(lift_tube_to_c3(surf("x^2+y^2", 5))),
                         doctest::Contains("levi-nondegenerate"), PreconditionError);
    CHECK_THROWS_WITH_AS(frame_c3(lift_tube_to_c3(surf("x+y", 5))),
                         doctest::Contains("levi-rank-0"), PreconditionError);
    CHECK_THROWS_WITH_AS(frame_c3(lift_tube_to_c3(surf("x^2", 5))),
                         doctest::Contains("not-2-nondegenerate"), PreconditionError);
}

TEST_CASE("W_0 and J_0 vanish exactly on the model tube") {
    auto F = lift_tube_to_c3(surf("x^2/(1-y)", 8));
    CHECK(w0(F).is_zero());
    CHECK(j0(F).is_zero());
}

TEST_CASE("tube restrictions agree with the quotient and frame formulas") {
    std::mt19937_64 rng(56);
    for (int t = 0; t < 3; ++t) {
        auto G = random_rank1_surface(rng, XY, 7);
        auto F5 = lift_tube_to_c3(G.F);
        CJet<Rational> W = w0(F5);
        RJet wq = w_aff(G).quotient;
        CHECK(W == lift_result_c3(wq, W.order()));
        CJet<Rational> J = j0(F5);
        RJet ja = j_aff(G);
        CHECK(J == lift_result_c3(ja, J.order()));
    }
}

TEST_CASE("order gates for the primary invariants") {
    auto F = lift_tube_to_c3(surf("x^2/(1-y)", 4));
    CHECK_THROWS_AS(w0(F), PreconditionError);
    CHECK_THROWS_AS(j0(lift_tube_to_c3(surf("x^2/(1-y)", 5))), PreconditionError);
}

TEST_CASE("W_0 and J_0 are relative invariants under tube-preserving affine maps") {
    std::mt19937_64 rng(57);
    for (int t = 0; t < 2; ++t) {
        auto G = random_rank1_surface(rng, XY, 7);
        if (w_aff(G).quotient.is_zero() || j_aff(G).is_zero()) continue;
        auto g = random_near_identity(rng, 3);
        auto img = transform_graph(g, G);
        // compare through the tube restrictions: pullback(I') = unit * I
        RJet w_src = w_aff(G).quotient;
        RJet w_dst = pullback(w_aff(img).quotient, g, G);
        if (!ScalarTraits<Rational>::is_unit(w_src.constant_term())) continue;
        RJet ratio = w_dst / w_src;
        CHECK(ScalarTraits<Rational>::is_unit(ratio.constant_term()));
        // zero sets match in both directions
        CHECK(w_aff_num(img).is_zero() == w_aff_num(G).is_zero());
        RJet j_src = j_aff(G);
        if (ScalarTraits<Rational>::is_unit(j_src.constant_term())) {
            RJet j_ratio = pullback(j_aff(img), g, G) / j_src;
            CHECK(ScalarTraits<Rational>::is_unit(j_ratio.constant_term()));
        }
    }
}

namespace {

// Image of the graph u = F under the holomorphic reparametrization
// w -> w + eps w^2 of the last complex coordinate: the graphing function
// becomes genuinely v-dependent. Built with the implicit solver:
// v' = v (1 + 2 eps F), u' = F + eps (F^2 - v^2).
RJet w_quadratic_image(const RJet& F /* x-vars only */, const Rational& eps) {
    int N = F.order();
    int n = F.nvars();
    // solve v(x..., v') from  v (1 + 2 eps F) - v' = 0
    VarNames names = F.vars();
    names.push_back("vp");
    names.push_back("v");
    VarsPtr solveVars = make_vars(names);
    std::vector<Rational> sbase(n + 2, Rational(0));
    RJet Fl(solveVars, sbase, N);
    for (int i = 0; i < F.layout().size(); ++i) {
        Exponents e = F.layout().exponents(i);
        Fl.set_coeff(e, F.coeff(i));
    }
    RJet v = RJet::coordinate(solveVars, sbase, N, n + 1);
    RJet vp = RJet::coordinate(solveVars, sbase, N, n);
    RJet G = v * (Rational(1) + rat(2) * eps * Fl.truncated(N)) - vp;
    RJet v_of = implicit_solve(G);  // jet in (x..., vp)

    // outer U(x..., v) = F + eps (F^2 - v^2), composed with v = v_of
    VarNames onames = F.vars();
    onames.push_back("v");
    VarsPtr outerVars = make_vars(onames);
    std::vector<Rational> obase(n + 1, Rational(0));
    RJet Fo(outerVars, obase, N);
    for (int i = 0; i < F.layout().size(); ++i)
        Fo.set_coeff(F.layout().exponents(i), F.coeff(i));
    RJet vo = RJet::coordinate(outerVars, obase, N, n);
    RJet U = Fo + eps * (Fo * Fo - vo * vo);
    std::vector<RJet> inners;
    for (int i = 0; i < n; ++i)
        inners.push_back(RJet::coordinate(v_of.vars_ptr(), v_of.base(), N, i));
    inners.push_back(v_of);
    return compose(U, inners);  // jet in (x..., vp)
}

}  // namespace

TEST_CASE("non-tube spherical graphs: pluriharmonic and v-dependent images") {
    // u = 2x^2 - y^2 is the image of the sphere tube under w -> w + z^2
    VarsPtr V3 = make_vars({"x", "y", "v"});
    RJet F(V3, std::vector<Rational>(3, Rational(0)), 8);
    F.set_coeff({2, 0, 0}, rat(2));
    F.set_coeff({0, 2, 0}, rat(-1));
    CHECK(cartan_general(complexify(F)).is_zero());

    // a y-dependent perturbation breaks sphericity
    RJet P = F;
    P.set_coeff({3, 1, 0}, rat(1));
    CHECK(!cartan_general(complexify(P)).is_zero());

    // w -> w + (1/4) w^2 image of the parabola tube: v-dependent, spherical
    RJet par = curve("x^2", 8);
    RJet img = w_quadratic_image(par, rat(1, 4));
    REQUIRE(img.nvars() == 2);  // (x, vp)
    // lift (x, vp) -> (x, y, vp): no y-dependence
    VarsPtr V3b = make_vars({"x", "y", "vp"});
    RJet img3(V3b, std::vector<Rational>(3, Rational(0)), 8);
    for (int i = 0; i < img.layout().size(); ++i) {
        Exponents e = img.layout().exponents(i);
        Exponents e3{};
        e3[0] = e[0];
        e3[2] = e[1];
        img3.set_coeff(e3, img.coeff(i));
    }
    CHECK(!diff(img3, 2).is_zero());  // genuinely v-dependent
    CHECK(cartan_general(complexify(img3)).is_zero());
}

TEST_CASE("non-tube rank-one graphs keep W_0 and J_0 at zero") {
    // pluriharmonic addition: x1^2/(1-x2) + x1^2 - y1^2 (depends on y1)
    VarsPtr V5 = make_vars({"x1", "y1", "x2", "y2", "v"});
    RJet model2 = surf("x^2/(1-y)", 8);
    RJet F(V5, std::vector<Rational>(5, Rational(0)), 8);
    for (int i = 0; i < model2.layout().size(); ++i) {
        Exponents e2 = model2.layout().exponents(i);
        Exponents e5{};
        e5[0] = e2[0];
        e5[2] = e2[1];
        F.set_coeff(e5, model2.coeff(i));
    }
    {
        Exponents e{};
        e[0] = 2;
        F.set_coeff(e, F.coeff(e) + Rational(1));  // + x1^2
        Exponents ey{};
        ey[1] = 2;
        F.set_coeff(ey, rat(-1));  // - y1^2
    }
    auto Fc = complexify(F);
    CHECK(!diff(Fc, 1).is_zero());
    auto levi = levi_checks(Fc);
    CHECK(levi.rank_at_base == 1);
    CHECK(levi.degenerate_everywhere);
    CHECK(w0(Fc).is_zero());
    CHECK(j0(Fc).is_zero());

    // w -> w + (1/4) w^2 image of the rank-one tube model: v-dependent
    RJet img = w_quadratic_image(model2, rat(1, 4));  // vars (x, y, vp)
    RJet img5(V5, std::vector<Rational>(5, Rational(0)), 8);
    for (int i = 0; i < img.layout().size(); ++i) {
        Exponents e3 = img.layout().exponents(i);
        Exponents e5{};
        e5[0] = e3[0];
        e5[2] = e3[1];
        e5[4] = e3[2];
        img5.set_coeff(e5, img.coeff(i));
    }
    auto imgc = complexify(img5);
    CHECK(!diff(imgc, 4).is_zero());  // genuinely v-dependent
    CHECK(w0(imgc).is_zero());
    CHECK(j0(imgc).is_zero());
}

TEST_CASE("derivation commutators: i[L1, Lbar1] acts as l d/dv") {
    std::mt19937_64 rng(58);
    auto G = random_rank1_surface(rng, XY, 6);
    auto F = lift_tube_to_c3(G.F);
    auto fr = frame_c3_raw(F);
    auto comm = Derivation<CK>::commutator(fr.L1, fr.Lb1);
    // probe with a random complexified jet on the same frame
    VarsPtr V5 = F.vars_ptr();
    RJet pr(V5, std::vector<Rational>(5, Rational(0)), 5);
    for (int i = 0; i < pr.layout().size(); ++i) pr.coeff_ref(i) = rand_rat(rng, 2);
    CJet<Rational> probe = complexify(pr);
    CJet<Rational> lhs = times_i(comm.apply(probe));
    CJet<Rational> rhs = fr.l.truncated(probe.order() - 1) * diff(probe, 4);
    CHECK(lhs == rhs.truncated(lhs.order()));
}
