#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetinv/affine_invariants.hpp"
#include "jetinv/expr.hpp"
#include "jetinv/models.hpp"
#include "test_support.hpp"

using namespace jetinv;
using jetinv::testing::random_jet0;

namespace {

const VarsPtr X = make_vars({"x"});
const VarsPtr XY = make_vars({"x", "y"});

RJet from_expr(const char* s, const VarsPtr& vars, int order,
               std::vector<Rational> base = {}) {
    if (base.empty()) base.assign(vars->size(), Rational(0));
    return eval_jet<Rational>(*parse_expression(s), vars, base, order);
}

GraphSurface<Rational> curve(const char* s, int order) {
    return GraphSurface<Rational>(from_expr(s, X, order));
}
GraphSurface<Rational> surface(const char* s, int order) {
    return GraphSurface<Rational>(from_expr(s, XY, order));
}

// u = x h(y/x) around (1,1): a cone with vertex at the origin.
GraphSurface<Rational> cone_surface(std::mt19937_64& rng, int order) {
    RJet x = RJet::coordinate(XY, {Rational(1), Rational(1)}, order, 0);
    RJet y = RJet::coordinate(XY, {Rational(1), Rational(1)}, order, 1);
    RJet arg = y / x;
    RJet h(make_vars({"w"}), {Rational(1)}, order);  // random h expanded at w=1
    for (int i = 0; i < h.layout().size(); ++i) h.coeff_ref(i) = jetinv::testing::rand_rat(rng);
    RJet F = x * compose(h, {arg});
    return GraphSurface<Rational>(F);
}

}  // namespace

TEST_CASE("bordered Hessian fixtures") {
    // rho = u - x^2 in (x,u): determinant 2
    RJet F = from_expr("x^2", X, 5);
    RJet rho = rho_from_graph(F);
    RJet b = bordered_hessian(rho);
    CHECK(b == RJet::constant(rho.vars_ptr(), rho.base(), 3, Rational(2)));

    // linear rho: 0
    RJet lin = from_expr("3*x-1/2", X, 4);
    CHECK(bordered_hessian(rho_from_graph(lin)).is_zero());

    // rho = u - x^2/(1-y): identically zero up to order
    RJet lc = from_expr("x^2/(1-y)", XY, 8);
    CHECK(bordered_hessian(rho_from_graph(lc)).is_zero());

    CHECK_THROWS_AS(bordered_hessian(RJet(X, {Rational(0)}, 1)), PreconditionError);
}

TEST_CASE("hessian determinant and signature") {
    auto Gpp = surface("x^2+y^2", 4);
    CHECK(hessian_det(Gpp) == RJet::constant(XY, {Rational(0), Rational(0)}, 2, Rational(4)));
    Signature s = hessian_signature(Gpp);
    CHECK(s.pos == 2);
    CHECK(s.neg == 0);
    CHECK(s.zero == 0);

    Signature s2 = hessian_signature(surface("x^2-y^2", 4));
    CHECK(s2.pos == 1);
    CHECK(s2.neg == 1);

    auto lc = surface("x^2/(1-y)", 8);
    CHECK(hessian_det(lc).is_zero());
    Signature s3 = hessian_signature(lc);
    CHECK(s3.pos == 1);
    CHECK(s3.zero == 1);

    // off-diagonal quadratic part: signature (1,1)
    Signature s4 = hessian_signature(surface("x*y", 4));
    CHECK(s4.pos == 1);
    CHECK(s4.neg == 1);
}

TEST_CASE("Halphen invariant") {
    CHECK(halphen(curve("x^2", 8)).is_zero());
    CHECK(halphen(curve("3*x^2-2*x+5", 8)).is_zero());

    auto e = curve("exp(x)", 8);
    RJet expected = rat(-2) * analytic_lift(AnalyticFn::Exp, rat(2) * RJet::coordinate(X, {Rational(0)}, 4, 0));
    CHECK(halphen(e) == expected);

    CHECK_THROWS_AS(halphen(curve("x^3", 8)), PreconditionError);   // F_xx(0) = 0
    CHECK_THROWS_AS(halphen(curve("x^2", 3)), PreconditionError);   // order too low
}

TEST_CASE("Monge invariant") {
    CHECK(monge(curve("x^2", 8)).is_zero());
    CHECK(monge(curve("x^2/(1-x)", 9)).is_zero());  // lies on the conic x^2 + u x - u = 0

    auto e = curve("exp(x)", 9);
    RJet expected = rat(4) * analytic_lift(AnalyticFn::Exp, rat(3) * RJet::coordinate(X, {Rational(0)}, 4, 0));
    CHECK(monge(e) == expected);

    CHECK_THROWS_AS(monge(curve("x^2", 4)), PreconditionError);
}

TEST_CASE("tube sphericity invariant") {
    CHECK(cartan_tube(curve("x^2", 8)).is_zero());
    CHECK(cartan_tube(curve("exp(x)", 10)).is_zero());  // exact, rational coefficients
    // affine images of spherical tubes stay spherical
    CHECK(cartan_tube(curve("2*x^2+x", 8)).is_zero());

    // the printed polynomial is corrupted: it does NOT vanish on exp(x)
    CHECK(!cartan_tube_printed(curve("exp(x)", 10)).is_zero());

    CHECK_THROWS_AS(cartan_tube(curve("x^2", 5)), PreconditionError);
}

TEST_CASE("printed-vs-derived reconciliation of the sphericity polynomial") {
    auto notes = reconcile_cartan_tube_forms();
    REQUIRE(notes.size() == 5);
    int matched = 0, completed = 0;
    for (const auto& n : notes) {
        if (n.matches_derived) {
            CHECK(n.printed_weight == 12);
            ++matched;
        } else {
            CHECK(n.printed_weight < 12);
            CHECK(!n.completed_orders.empty());
            int w = 0;
            for (int o : n.completed_orders) w += o;
            CHECK(w == 12);
            ++completed;
        }
    }
    CHECK(matched == 2);
    CHECK(completed == 3);
}

TEST_CASE("S_aff") {
    CHECK(s_aff(surface("x^2", 6)).is_zero());  // cylinder

    auto lc = surface("x^2/(1-y)", 8);
    RJet num = s_aff_num(lc);
    // 4/(1-y)^3
    RJet y = RJet::coordinate(XY, {Rational(0), Rational(0)}, num.order(), 1);
    RJet one = RJet::constant(XY, {Rational(0), Rational(0)}, num.order(), Rational(1));
    CHECK(num == rat(4) * one / pow_int(one - y, 3));
    CHECK(num.constant_term() == Rational(4));

    auto g = surface("x^2*(1+y)", 8);
    CHECK(s_aff(g).constant_term() == Rational(1));
}

TEST_CASE("W_aff") {
    auto lc = surface("x^2/(1-y)", 8);
    CHECK(w_aff_num(lc).is_zero());
    CHECK(w_aff(lc).quotient.is_zero());

    auto pert = surface("x^2/(1-y)+x^3*y^2", 8);
    CHECK(!w_aff_num(pert).is_zero());

    // the frame route agrees with the quotient route on zero-Hessian graphs
    std::mt19937_64 rng(11);
    for (int t = 0; t < 3; ++t) {
        auto cone = cone_surface(rng, 8);
        if (!cone.fxx_nonzero() || !cone.s_num_nonzero()) continue;
        REQUIRE(cone.hessian_zero());
        CHECK(w_aff_frame(cone).is_zero());  // cones have vanishing first invariant
        CHECK(w_aff(cone).quotient.is_zero());
    }
}

TEST_CASE("J_aff and J~_aff") {
    auto lc = surface("x^2/(1-y)", 10);
    CHECK(j_aff(lc).is_zero());
    CHECK(j_tilde(lc).is_zero());

    // reduced three-term form equals the closed Monge quotient identically
    std::mt19937_64 rng(12);
    for (int t = 0; t < 4; ++t) {
        RJet F = random_jet0(rng, XY, 8);
        F.set_coeff({2, 0}, Rational(1));
        GraphSurface<Rational> G(F);
        auto half = rat(1, 2);
        RJet fxx = diff_n(F, 0, 2);
        RJet P = half * diff(fxx, 0) / fxx;
        RJet halfj = RJet::constant(XY, F.base(), F.order(), half);
        RJet zero(XY, F.base(), F.order());
        Derivation<Rational> L1{{halfj, zero}};
        RJet reduced = rat(-1, 6) * L1(L1(P)) + rat(1, 3) * L1(P) * P - rat(2, 27) * P * P * P;
        CHECK(reduced == j_tilde(G).truncated(reduced.order()));
    }

    // cones: first invariant vanishes, so J_aff collapses to J~_aff
    for (int t = 0; t < 3; ++t) {
        auto cone = cone_surface(rng, 9);
        if (!cone.fxx_nonzero() || !cone.s_num_nonzero()) continue;
        RJet ja = j_aff(cone);
        CHECK(ja == j_tilde(cone).truncated(ja.order()));
    }

    auto pert = surface("x^2+x^2*y+x^2*y^2+x^5", 8);
    CHECK(j_tilde(pert).constant_term() == rat(-5, 4));
    CHECK(!j_tilde(pert).is_zero());
}

TEST_CASE("constraint closure vanishes on cylinders") {
    auto cyl = surface("x^2", 7);
    for (const auto& [name, jet] : constraint_closure(cyl)) {
        CAPTURE(name);
        CHECK(jet.is_zero());
    }
}

TEST_CASE("constraint closure matches direct differentiation and printed formulas") {
    auto check_surface = [](const GraphSurface<Rational>& G) {
        auto closure = constraint_closure(G);
        const RJet& F = G.F;
        // direct differentiation oracle
        struct Item { const char* name; int j, k; };
        for (auto [name, j, k] : {Item{"F_yy", 0, 2}, Item{"F_xyy", 1, 2}, Item{"F_yyy", 0, 3},
                                  Item{"F_xxyy", 2, 2}, Item{"F_xyyy", 1, 3}, Item{"F_yyyy", 0, 4},
                                  Item{"F_xxyyy", 2, 3}, Item{"F_xyyyy", 1, 4}, Item{"F_yyyyy", 0, 5}}) {
            RJet direct = diff_n(diff_n(F, 1, k), 0, j);
            CHECK(closure.at(name) == direct.truncated(closure.at(name).order()));
        }
        // printed replacement formulas
        RJet f2 = diff_n(F, 0, 2), f11 = diff(diff(F, 0), 1);
        RJet f3 = diff(f2, 0), f21 = diff(f2, 1);
        RJet f4 = diff(f3, 0), f31 = diff(f3, 1);
        auto r = [](long n, long d = 1) { return rat(n, d); };
        RJet fxyy = r(2) * f11 * f21 / f2 - f11 * f11 * f3 / (f2 * f2);
        CHECK(closure.at("F_xyy") == fxyy.truncated(closure.at("F_xyy").order()));
        RJet fyyy = r(3) * f11 * f11 * f21 / (f2 * f2) - r(2) * f11 * f11 * f11 * f3 / (f2 * f2 * f2);
        CHECK(closure.at("F_yyy") == fyyy.truncated(closure.at("F_yyy").order()));
        RJet fxxyy = r(2) * f21 * f21 / f2 - r(4) * f11 * f21 * f3 / (f2 * f2) +
                     r(2) * f11 * f31 / f2 + r(2) * f11 * f11 * f3 * f3 / (f2 * f2 * f2) -
                     f11 * f11 * f4 / (f2 * f2);
        CHECK(closure.at("F_xxyy") == fxxyy.truncated(closure.at("F_xxyy").order()));
        RJet fxyyy = r(6) * f11 * f21 * f21 / (f2 * f2) -
                     r(12) * f11 * f11 * f3 * f21 / (f2 * f2 * f2) +
                     r(3) * f11 * f11 * f31 / (f2 * f2) +
                     r(6) * f11 * f11 * f11 * f3 * f3 / (f2 * f2 * f2 * f2) -
                     r(2) * f11 * f11 * f11 * f4 / (f2 * f2 * f2);
        CHECK(closure.at("F_xyyy") == fxyyy.truncated(closure.at("F_xyyy").order()));
        RJet fyyyy = r(12) * f11 * f11 * f21 * f21 / (f2 * f2 * f2) -
                     r(24) * f11 * f11 * f11 * f3 * f21 / (f2 * f2 * f2 * f2) +
                     r(12) * f11 * f11 * f11 * f11 * f3 * f3 / (f2 * f2 * f2 * f2 * f2) +
                     r(4) * f11 * f11 * f11 * f31 / (f2 * f2 * f2) -
                     r(3) * f11 * f11 * f11 * f11 * f4 / (f2 * f2 * f2 * f2);
        CHECK(closure.at("F_yyyy") == fyyyy.truncated(closure.at("F_yyyy").order()));
    };
    check_surface(surface("x^2/(1-y)", 9));
    std::mt19937_64 rng(13);
    for (;;) {
        auto cone = cone_surface(rng, 9);
        if (!cone.fxx_nonzero() || !cone.s_num_nonzero()) continue;
        check_surface(cone);
        break;
    }
}

TEST_CASE("closure rejects non-degenerate Hessians") {
    auto pp = surface("x^2+y^2", 6);
    CHECK_THROWS_AS(constraint_closure(pp), PreconditionError);
}
