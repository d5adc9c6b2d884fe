#include "jetinv/models.hpp"

namespace jetinv {

namespace {

std::vector<ModelEntry> build_library() {
    std::vector<ModelEntry> lib;
    auto add = [&](std::string name, std::string expr, VarNames vars, std::vector<long> base,
                   bool exact_ok, std::string note) {
        std::vector<Rational> b;
        for (long v : base) b.emplace_back(v);
        lib.push_back({std::move(name), std::move(expr), std::move(vars), std::move(b), exact_ok,
                       std::move(note)});
    };

    add("parabola", "x^2", {"x"}, {0}, true,
        "spherical tube over the parabola; Halphen and Monge invariants vanish");
    add("exp", "exp(x)", {"x"}, {0}, true,
        "spherical tube over the exponential curve; not affinely equivalent to the parabola");
    add("arcsin_exp", "arcsin(exp(x))", {"x"}, {-1}, false,
        "spherical tube, arcsin branch of the Dadok-Yang list (n = 1)");
    add("arcsinh_exp", "arcsinh(exp(x))", {"x"}, {0}, false,
        "spherical tube, arcsinh branch");
    add("lc_tube", "x^2/(1-y)", {"x", "y"}, {0, 0}, true,
        "maximally symmetric 2-nondegenerate Levi-rank-1 tube model");
    add("hyperbola_conic", "x^2/(1-x)", {"x"}, {0}, true,
        "curve on the conic x^2 + u x - u = 0; Monge invariant vanishes");

    // Dadok-Yang positive-Hessian tubes, item (a): sums of exponentials and squares.
    const char* names[] = {"x", "y", "z"};
    for (int n = 1; n <= 3; ++n) {
        for (int nu = 0; nu <= n; ++nu) {
            std::string expr;
            for (int i = 0; i < n; ++i) {
                if (i) expr += "+";
                expr += (i < nu) ? ("exp(" + std::string(names[i]) + ")")
                                 : (std::string(names[i]) + "^2");
            }
            VarNames vars(names, names + n);
            add("dy_a_n" + std::to_string(n) + "_nu" + std::to_string(nu), expr, vars,
                std::vector<long>(n, 0), true,
                "Dadok-Yang list (a), n=" + std::to_string(n) + ", nu=" + std::to_string(nu));
        }
    }
    // item (b): arcsin of a sum of exponentials, base at -1 per variable.
    add("dy_b_n1", "arcsin(exp(x))", {"x"}, {-1}, false, "Dadok-Yang list (b), n=1");
    add("dy_b_n2", "arcsin(exp(x)+exp(y))", {"x", "y"}, {-1, -1}, false,
        "Dadok-Yang list (b), n=2");
    // item (c): log(1 - sum of exponentials), base at -1 per variable.
    add("dy_c_n1", "log(1-exp(x))", {"x"}, {-1}, false, "Dadok-Yang list (c), n=1");
    add("dy_c_n2", "log(1-exp(x)-exp(y))", {"x", "y"}, {-1, -1}, false,
        "Dadok-Yang list (c), n=2");
    return lib;
}

}  // namespace

const std::vector<ModelEntry>& model_library() {
    static const std::vector<ModelEntry> lib = build_library();
    return lib;
}

const ModelEntry* find_model(const std::string& name) {
    for (const auto& m : model_library())
        if (m.name == name) return &m;
    return nullptr;
}

}  // namespace jetinv
