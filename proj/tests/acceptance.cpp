// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Everything tagged "exact" is checked with exact rational
// arithmetic; float checks run at 256 bits against the stated tolerance.

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "jetinv/cli.hpp"
#include "jetinv/cr.hpp"
#include "jetinv/expr.hpp"
#include "jetinv/json_io.hpp"
#include "jetinv/normalize.hpp"
#include "jetinv/pde.hpp"
#include "test_support.hpp"

using namespace jetinv;
using namespace jetinv::testing;

namespace {

const VarsPtr X = make_vars({"x"});
const VarsPtr XY = make_vars({"x", "y"});

struct Harness {
    int failures = 0;
    void run(const char* label, const std::function<bool()>& body) {
        bool ok = false;
        std::string note;
        try {
            ok = body();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        std::printf("%s %s%s\n", ok ? "PASS" : "FAIL", label, note.c_str());
        if (!ok) ++failures;
        std::fflush(stdout);
    }
};

RJet curve(const char* s, int order) {
    return eval_jet<Rational>(*parse_expression(s), X, {Rational(0)}, order);
}
RJet surf(const char* s, int order) {
    return eval_jet<Rational>(*parse_expression(s), XY, {Rational(0), Rational(0)}, order);
}

// test-side oracle: impose the parabola constraint 3 F2 F4 = 5 F3^2
// coefficientwise, filling the jet degree by degree from f0..f3
RJet impose_halphen_closure(std::mt19937_64& rng, int N) {
    RJet f(X, {Rational(0)}, N);
    for (int d = 0; d <= 3; ++d) {
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(d);
        f.set_coeff(e, rand_rat(rng, 2));
    }
    std::uniform_int_distribution<int> pos(1, 3);
    Exponents e2{};
    e2[0] = 2;
    f.set_coeff(e2, rat(pos(rng)));
    for (int m = 3; m < N; ++m) {
        RJet f2 = diff_n(f, 0, 2), f3 = diff_n(f, 0, 3);
        RJet rhs = rat(5, 3) * f3 * f3 / f2.truncated(f3.order());
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(m - 3);
        Rational c = rhs.coeff(e);
        long denom = 1;
        for (int i = 0; i < 4; ++i) denom *= (m + 1 - i);
        e[0] = static_cast<std::uint8_t>(m + 1);
        f.set_coeff(e, c / Rational(denom));
    }
    return f;
}

bool criterion1() {
    RJet F = surf("x^2/(1-y)", 10);
    GraphSurface<Rational> G(F);
    bool ok = hessian_det(G).is_zero();
    ok = ok && w_aff_num(G).is_zero();
    ok = ok && j_tilde(G).is_zero();
    ok = ok && j_aff(G).is_zero();
    auto F5 = lift_tube_to_c3(F);
    ok = ok && w0(F5).is_zero();
    ok = ok && j0(F5).is_zero();
    return ok;
}

bool criterion2() {
    bool ok = cartan_tube(GraphSurface<Rational>(curve("x^2", 8))).is_zero();
    ok = ok && cartan_tube(GraphSurface<Rational>(curve("exp(x)", 8))).is_zero();

    set_working_precision(256);
    BigFloat tol = BigFloat::from_string("1e-40");
    FJet a = eval_jet<BigFloat>(*parse_expression("arcsin(exp(x))"), X, {BigFloat(rat(-1))}, 8);
    ok = ok && (jet_max_abs(cartan_tube(GraphSurface<BigFloat>(a))) < tol);
    FJet b = eval_jet<BigFloat>(*parse_expression("arcsinh(exp(x))"), X, {BigFloat(rat(0))}, 8);
    ok = ok && (jet_max_abs(cartan_tube(GraphSurface<BigFloat>(b))) < tol);

    // Halphen vanishes only for the parabola among the four
    ok = ok && halphen(GraphSurface<Rational>(curve("x^2", 8))).is_zero();
    ok = ok && !halphen(GraphSurface<Rational>(curve("exp(x)", 8))).is_zero();
    ok = ok && !(jet_max_abs(halphen(GraphSurface<BigFloat>(a))) < tol);
    ok = ok && !(jet_max_abs(halphen(GraphSurface<BigFloat>(b))) < tol);
    return ok;
}

bool criterion3() {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 50; ++t) {
        RJet f = impose_halphen_closure(rng, 8);
        GraphSurface<Rational> G(f);
        if (!halphen(G).is_zero()) return false;  // the closure really holds
        if (!cartan_tube(G).is_zero()) return false;
    }
    // the converse fails on the exponential witness
    GraphSurface<Rational> E(curve("exp(x)", 8));
    return cartan_tube(E).is_zero() && !halphen(E).is_zero();
}

bool criterion4() {
    std::mt19937_64 rng(102);
    const int kMaps = 100;
    // surface laws at jet order 6
    for (Law law : {Law::HessianDet, Law::HessianCongruence, Law::Fxx, Law::SAff, Law::WAffNum}) {
        for (int t = 0; t < kMaps; ++t) {
            auto g = random_near_identity(rng, 3);
            GraphSurface<Rational> G = [&] {
                if (law == Law::HessianDet || law == Law::HessianCongruence) {
                    RJet F = random_jet0(rng, XY, 6);
                    F.set_coeff({0, 0}, Rational(0));
                    F.set_coeff({2, 0}, Rational(1));
                    return GraphSurface<Rational>(F);
                }
                return random_rank1_surface(rng, XY, 6);
            }();
            auto res = verify_law(law, g, G);
            for (const auto& r : res.residuals)
                if (!r.is_zero()) return false;
        }
    }
    // both curve laws at jet order 6
    for (Law law : {Law::Halphen1D, Law::Monge1D}) {
        for (int t = 0; t < kMaps; ++t) {
            auto g = random_near_identity(rng, 2);
            RJet f = random_jet0(rng, X, 6);
            f.set_coeff({0}, Rational(0));
            f.set_coeff({2}, Rational(1));
            auto res = verify_law(law, g, GraphSurface<Rational>(f));
            for (const auto& r : res.residuals)
                if (!r.is_zero()) return false;
        }
    }
    return true;
}

bool criterion5() {
    std::mt19937_64 rng(103);
    // (a) the derived tube polynomial equals the nested-derivation invariant
    //     on 20 random curve jets; the printed form reconciles up to one
    //     constant factor on its weight-homogeneous terms, and the three
    //     corrupted terms are flagged with unique weight-12 completions
    for (int t = 0; t < 20; ++t) {
        RJet f = random_jet0(rng, X, 8);
        std::uniform_int_distribution<int> pos(1, 3);
        f.set_coeff({2}, rat(pos(rng)));
        GraphSurface<Rational> C(f);
        RJet derived = cartan_tube(C);
        CJet<Rational> nested = cartan_general(lift_tube_to_c2(f));
        if (!(nested == lift_tube_to_c2(derived.truncated(nested.order())))) return false;
    }
    auto notes = reconcile_cartan_tube_forms();
    int matched = 0, completed = 0;
    for (const auto& n : notes) {
        if (n.matches_derived) {
            if (n.printed_weight != 12) return false;
            ++matched;
        } else {
            int w = 0;
            for (int o : n.completed_orders) w += o;
            if (n.completed_orders.empty() || w != 12) return false;
            ++completed;
        }
    }
    if (matched != 2 || completed != 3) return false;

    // (b) W0/J0 tube restrictions against the quotient and frame formulas on
    //     20 random rank-1 jets at order 8
    for (int t = 0; t < 20; ++t) {
        auto G = random_rank1_surface(rng, XY, 8);
        auto F5 = lift_tube_to_c3(G.F);
        CJet<Rational> W = w0(F5);
        if (!(W == lift_tube_to_c3(w_aff(G).quotient.truncated(W.order())))) return false;
        CJet<Rational> J = j0(F5);
        if (!(J == lift_tube_to_c3(j_aff(G).truncated(J.order())))) return false;
    }

    // (c) j_tilde == the reduced three-term frame expression, identically
    for (int t = 0; t < 20; ++t) {
        RJet F = random_jet0(rng, XY, 8);
        F.set_coeff({2, 0}, Rational(1));
        GraphSurface<Rational> G(F);
        RJet fxx = diff_n(F, 0, 2);
        RJet P = rat(1, 2) * diff(fxx, 0) / fxx;
        RJet halfj = RJet::constant(XY, F.base(), F.order(), rat(1, 2));
        RJet zero(XY, F.base(), F.order());
        Derivation<Rational> L1{{halfj, zero}};
        RJet reduced = rat(-1, 6) * L1(L1(P)) + rat(1, 3) * L1(P) * P - rat(2, 27) * P * P * P;
        if (!(reduced == j_tilde(G).truncated(reduced.order()))) return false;
    }

    // (d) constraint closure against direct differentiation on affine images
    //     of the model tube
    for (int t = 0; t < 10; ++t) {
        auto g = random_near_identity(rng, 3, true);
        GraphSurface<Rational> img =
            transform_graph(g, GraphSurface<Rational>(surf("x^2/(1-y)", 8)));
        auto closure = constraint_closure(img);
        for (const auto& [name, jet] : closure) {
            int j = 0, k = 0;
            for (char c : name)
                if (c == 'x') ++j;
                else if (c == 'y') ++k;
            RJet direct = diff_n(diff_n(img.F, 1, k), 0, j);
            if (!(jet == direct.truncated(jet.order()))) return false;
        }
    }
    return true;
}

bool criterion6() {
    std::mt19937_64 rng(104);
    RJet model = lc_model_jet<Rational>(XY, 8);
    for (int t = 0; t < 25; ++t) {
        auto g = random_near_identity(rng, 3, /*with_translation=*/true);
        GraphSurface<Rational> img = transform_graph(g, GraphSurface<Rational>(model));
        auto res = normalize_to_model(img, 8);
        if (res.verdict != NormalizeVerdict::EquivalentToModel) return false;
        if (!((res.normalized - model).is_zero())) return false;
    }
    // perturbed input: an x^6 term added to the curve row before the
    // zero-Hessian closure, so the degenerate-Hessian hypothesis still holds
    VarsPtr xv = make_vars({"x"});
    RJet f(xv, {Rational(0)}, 8);
    f.set_coeff({2}, Rational(1));
    f.set_coeff({6}, Rational(1));
    RJet gr(xv, {Rational(0)}, 7);
    gr.set_coeff({2}, Rational(1));
    GraphSurface<Rational> P(propagate_zero_hessian_rows(f, gr, XY, 8));
    auto res = normalize_to_model(P, 8);
    if (res.verdict != NormalizeVerdict::Obstruction) return false;
    if (res.obstruction_step != "3") return false;
    if (res.witness[0] != 6 || res.witness[1] != 0) return false;
    // the witness is certified by the third invariant evaluating nonzero
    return !j_tilde(P).is_zero();
}

bool criterion7() {
    auto lc_init = PDEInitialData<Rational>::from_rationals(
        {Rational(0), Rational(0), Rational(2), Rational(0), Rational(0), Rational(0),
         Rational(0), Rational(2)});
    RJet F = pde_propagate(lc_init, 10, XY);
    if (!(F == lc_model_jet<Rational>(XY, 10))) return false;

    std::mt19937_64 rng(105);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> v;
        for (int i = 0; i < 8; ++i) v.push_back(rand_rat(rng, 2));
        std::uniform_int_distribution<int> pos(1, 3);
        v[2] = rat(pos(rng));
        auto init = PDEInitialData<Rational>::from_rationals(v);
        auto rep = compatibility_check(init, 9);
        if (!rep.all_zero || sgn(rep.max_abs) != 0) return false;
        // the three solved equations hold identically on the order-10 fill
        RJet G = pde_propagate(init, 10, XY);
        for (const auto& r : pde_residuals(G))
            if (!r.is_zero()) return false;
    }
    return true;
}

bool criterion8() {
    std::vector<std::string> cmd = {"invariants", "--model", "lc_tube", "--order", "8"};
    auto a = run_command(cmd);
    auto b = run_command(cmd);
    if (a.exit_code != 0 || b.exit_code != 0) return false;
    if (a.output != b.output) return false;
    std::vector<std::string> cmd2 = {"normalize", "--expr", "x^2/(1-y)", "--order", "8"};
    auto c = run_command(cmd2);
    auto d = run_command(cmd2);
    return c.exit_code == 0 && c.output == d.output;
}

}  // namespace

int main() {
    Harness h;
    h.run("criterion 1: model flatness, all six invariants exactly zero at order 10", criterion1);
    h.run("criterion 2: sphericity fixtures for the four spherical tube models", criterion2);
    h.run("criterion 3: parabola constraint forces sphericity on 50 random jets", criterion3);
    h.run("criterion 4: transformation-law residuals exactly zero on 100 maps per law",
          criterion4);
    h.run("criterion 5: cross-oracles (tube polynomial, W0/J0 restrictions, Monge quotient, "
          "closure)",
          criterion5);
    h.run("criterion 6: 25 normalization round-trips and the obstruction witness", criterion6);
    h.run("criterion 7: PDE propagation, compatibility, and solved-form residuals", criterion7);
    h.run("criterion 8: byte-identical reports for identical exact commands", criterion8);
    if (h.failures == 0) std::puts("acceptance: all criteria passed");
    else std::printf("acceptance: %d criteria FAILED\n", h.failures);
    return h.failures;
}
