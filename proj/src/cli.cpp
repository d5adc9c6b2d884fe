#include "jetinv/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "jetinv/cr.hpp"
#include "jetinv/json_io.hpp"
#include "jetinv/models.hpp"
#include "jetinv/normalize.hpp"
#include "jetinv/report.hpp"

namespace jetinv {

namespace {

struct Options {
    std::string expr, model, file;
    std::string base;
    int order = 8;
    std::string backend = "exact";
    long precision = 256;
    std::string tolerance;
    std::string out;
    int dim = 0;  // 0 = infer
    // subcommand specific
    std::string map_file;
    std::string law = "all";
    int count = 5;
    unsigned seed = 1;
    std::string init_file, init_values;
    std::string batch_file;
};

void collect_vars(const Expr& e, std::set<std::string>& names) {
    if (e.kind == Expr::Kind::Var) names.insert(e.name);
    if (e.lhs) collect_vars(*e.lhs, names);
    if (e.rhs) collect_vars(*e.rhs, names);
}

std::map<std::string, Rational> parse_base(const std::string& s) {
    std::map<std::string, Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("--base expects name=value pairs");
        out[item.substr(0, eq)] = rat_from_string(item.substr(eq + 1));
    }
    return out;
}

std::optional<BigFloat> tolerance_of(const Options& opt) {
    if (opt.backend != "float") return std::nullopt;
    if (opt.tolerance.empty()) return default_report_tolerance();
    return BigFloat::from_string(opt.tolerance);
}

Json header(const Options& opt, const char* command) {
    Json h;
    h["schema"] = "1";
    h["command"] = command;
    h["backend"] = opt.backend;
    if (opt.backend == "float") {
        h["precision"] = opt.precision;
        h["tolerance"] = opt.tolerance.empty() ? "1e-40" : opt.tolerance;
    }
    h["order"] = opt.order;
    return h;
}

template <class K>
struct Input {
    Jet<K> F;
    Json descriptor;
};

template <class K>
Input<K> resolve_input(const Options& opt) {
    int sources = (!opt.expr.empty()) + (!opt.model.empty()) + (!opt.file.empty());
    if (sources != 1) throw Error("exactly one of --expr, --model, --file is required");
    if (!opt.file.empty()) {
        Json j = load_json_file(opt.file);
        Jet<K> F = jet_from_json<K>(j);
        return {F.order() == opt.order ? F : F.truncated(opt.order),
                Json{{"kind", "file"}, {"path", opt.file}}};
    }
    if (!opt.model.empty()) {
        const ModelEntry* m = find_model(opt.model);
        if (!m) throw Error("unknown model '" + opt.model + "'");
        std::vector<Rational> base = m->base;
        if (!opt.base.empty()) {
            auto over = parse_base(opt.base);
            for (std::size_t i = 0; i < m->variables.size(); ++i)
                if (over.count(m->variables[i])) base[i] = over[m->variables[i]];
        }
        VarsPtr vars = make_vars(m->variables);
        std::vector<K> kb;
        for (const auto& b : base) kb.push_back(scalar_from_rational<K>(b));
        Jet<K> F = eval_jet<K>(*parse_expression(m->expression), vars, kb, opt.order);
        Json d{{"kind", "model"}, {"name", m->name}, {"expression", m->expression}};
        return {F, d};
    }
    ExprPtr e = parse_expression(opt.expr);
    std::set<std::string> names;
    collect_vars(*e, names);
    if (names.empty()) {
        if (opt.dim == 2) names = {"x", "y"};
        else names = {"x"};
    }
    if (opt.dim != 0 && static_cast<int>(names.size()) != opt.dim)
        throw Error("--dim does not match the variables appearing in the expression");
    VarNames vn(names.begin(), names.end());
    auto over = opt.base.empty() ? std::map<std::string, Rational>{} : parse_base(opt.base);
    std::vector<K> base;
    Json jb = Json::object();
    for (const auto& n : vn) {
        Rational b = over.count(n) ? over[n] : Rational(0);
        base.push_back(scalar_from_rational<K>(b));
        jb[n] = rat_to_string(b);
    }
    Jet<K> F = eval_jet<K>(*e, make_vars(vn), base, opt.order);
    Json d{{"kind", "expr"}, {"expression", opt.expr}, {"vars", vn}, {"base", jb}};
    return {F, d};
}

template <class K>
Json entry_json(const Options& opt, const std::string& name,
                const std::function<Jet<K>()>& compute) {
    Json e;
    e["invariant"] = name;
    try {
        Jet<K> v = compute();
        e["verdict"] = verdict_name(classify_jet(v, tolerance_of(opt)));
        e["order_used"] = v.order();
        e["value_coeffs"] = jet_to_json(v).at("coeffs");
    } catch (const MathError& err) {
        e["verdict"] = verdict_name(Verdict::PreconditionFailed);
        e["reason"] = err.what();
    }
    return e;
}

template <class CK>
Json centry_json(const Options& opt, const std::string& name,
                 const std::function<Jet<CK>()>& compute) {
    Json e;
    e["invariant"] = name;
    try {
        Jet<CK> v = compute();
        e["verdict"] = verdict_name(classify_jet(v, tolerance_of(opt)));
        e["order_used"] = v.order();
        Json coeffs = Json::object();
        for (int i = 0; i < v.layout().size(); ++i) {
            if (ScalarTraits<CK>::is_zero(v.coeff(i))) continue;
            std::string key;
            for (int vv = 0; vv < v.nvars(); ++vv) {
                if (vv) key += ',';
                key += std::to_string(v.layout().exponents(i)[vv]);
            }
            coeffs[key] = scalar_string(v.coeff(i));
        }
        e["value_coeffs"] = coeffs;
    } catch (const MathError& err) {
        e["verdict"] = verdict_name(Verdict::PreconditionFailed);
        e["reason"] = err.what();
    }
    return e;
}

template <class K>
Json run_invariants(const Options& opt) {
    Input<K> in = resolve_input<K>(opt);
    Json out = header(opt, "invariants");
    out["input"] = in.descriptor;
    Json list = Json::array();
    int dim = in.F.nvars();
    using CK = Complex<K>;
    if (dim == 1) {
        GraphSurface<K> G(in.F);
        list.push_back(entry_json<K>(opt, "halphen", [&] { return halphen(G); }));
        list.push_back(entry_json<K>(opt, "monge", [&] { return monge(G); }));
        list.push_back(entry_json<K>(opt, "cartan_tube", [&] { return cartan_tube(G); }));
        list.push_back(centry_json<CK>(opt, "cartan_general",
                                       [&] { return cartan_general(lift_tube_to_c2(in.F)); }));
    } else if (dim == 2) {
        GraphSurface<K> G(in.F);
        list.push_back(entry_json<K>(opt, "hessian_det", [&] { return hessian_det(G); }));
        list.push_back(entry_json<K>(opt, "s_aff_num", [&] { return s_aff_num(G); }));
        list.push_back(entry_json<K>(opt, "s_aff", [&] { return s_aff(G); }));
        list.push_back(entry_json<K>(opt, "w_aff_num", [&] { return w_aff_num(G); }));
        list.push_back(entry_json<K>(opt, "w_aff", [&] { return w_aff(G).quotient; }));
        list.push_back(entry_json<K>(opt, "j_aff", [&] { return j_aff(G); }));
        list.push_back(entry_json<K>(opt, "j_tilde", [&] { return j_tilde(G); }));
        list.push_back(centry_json<CK>(opt, "w0", [&] { return w0(lift_tube_to_c3(in.F)); }));
        list.push_back(centry_json<CK>(opt, "j0", [&] { return j0(lift_tube_to_c3(in.F)); }));
    }
    list.push_back(
        entry_json<K>(opt, "bordered_hessian", [&] { return bordered_hessian(rho_from_graph(in.F)); }));
    out["invariants"] = list;
    Signature sig = hessian_signature(in.F);
    out["hessian_signature"] = Json{{"pos", sig.pos}, {"neg", sig.neg}, {"zero", sig.zero}};
    return out;
}

template <class K>
Json run_classify(const Options& opt) {
    Input<K> in = resolve_input<K>(opt);
    Json out = header(opt, "classify");
    out["input"] = in.descriptor;
    auto tol = tolerance_of(opt);
    int dim = in.F.nvars();
    if (dim == 1) {
        GraphSurface<K> G(in.F);
        Json e = Json::object();
        auto verdict_of = [&](const std::function<Jet<K>()>& f) -> std::pair<std::string, bool> {
            try {
                Verdict v = classify_jet(f(), tol);
                return {verdict_name(v), v != Verdict::Nonzero};
            } catch (const MathError& err) {
                return {verdict_name(Verdict::PreconditionFailed), false};
            }
        };
        auto [cv, cz] = verdict_of([&] { return cartan_tube(G); });
        auto [hv, hz] = verdict_of([&] { return halphen(G); });
        auto [mv, mz] = verdict_of([&] { return monge(G); });
        e["cartan_tube"] = cv;
        e["halphen"] = hv;
        e["monge"] = mv;
        e["spherical"] = cz;
        e["affinely_parabolic"] = hz;
        e["on_conic"] = mz;
        out["classification"] = e;
    } else if (dim == 2) {
        GraphSurface<K> G(in.F);
        Json hyp;
        hyp["fxx_nonzero"] = G.fxx_nonzero();
        hyp["hessian_degenerate"] = G.hessian_zero();
        hyp["two_nondegenerate"] = G.fxx_nonzero() && G.s_num_nonzero();
        out["hypotheses"] = hyp;
        Json e = Json::object();
        bool flat = false;
        if (hyp["fxx_nonzero"].get<bool>() && hyp["hessian_degenerate"].get<bool>() &&
            hyp["two_nondegenerate"].get<bool>()) {
            Verdict wv = classify_jet(w_aff_num(G), tol);
            Verdict jv = classify_jet(j_tilde(G), tol);
            e["w_aff"] = verdict_name(wv);
            e["j_tilde"] = verdict_name(jv);
            flat = (wv != Verdict::Nonzero) && (jv != Verdict::Nonzero);
            e["cr_flat"] = flat;
            e["equivalent_to_rank1_tube_model"] = flat;
        } else {
            e["w_aff"] = verdict_name(Verdict::PreconditionFailed);
            e["j_tilde"] = verdict_name(Verdict::PreconditionFailed);
            e["cr_flat"] = nullptr;
        }
        out["classification"] = e;
    } else {
        throw Error("classify handles graphs of one or two variables");
    }
    return out;
}

template <class K>
Json run_transform(const Options& opt) {
    Input<K> in = resolve_input<K>(opt);
    if (opt.map_file.empty()) throw Error("transform needs --map FILE");
    AffineMap<K> g = affine_map_from_json<K>(load_json_file(opt.map_file));
    Json out = header(opt, "transform");
    out["input"] = in.descriptor;
    out["map"] = affine_map_to_json(g);
    GraphSurface<K> G(in.F);
    GraphSurface<K> img = transform_graph(g, G);
    out["near_identity"] = g.near_identity();
    out["result"] = jet_to_json(img.F);
    return out;
}

template <class K>
Json run_normalize(const Options& opt) {
    Input<K> in = resolve_input<K>(opt);
    Json out = header(opt, "normalize");
    out["input"] = in.descriptor;
    GraphSurface<K> G(in.F);
    NormalizationResult<K> r = normalize_to_model(G, opt.order);
    out["verdict"] = r.verdict == NormalizeVerdict::EquivalentToModel ? "equivalent-to-model"
                                                                      : "obstruction";
    if (r.verdict == NormalizeVerdict::Obstruction) {
        out["obstruction_step"] = r.obstruction_step;
        out["witness"] = Json{{"monomial", std::to_string(r.witness[0]) + "," +
                                               std::to_string(r.witness[1])},
                              {"value", scalar_string(r.witness_value)}};
    }
    out["map"] = affine_map_to_json(r.composed_map);
    out["normalized"] = jet_to_json(r.normalized);
    out["steps"] = r.steps;
    return out;
}

template <class K>
Json run_propagate(const Options& opt) {
    if (opt.init_file.empty() == opt.init_values.empty())
        throw Error("propagate needs exactly one of --init FILE or --init-values LIST");
    PDEInitialData<K> init = [&] {
        if (!opt.init_file.empty()) return pde_init_from_json<K>(load_json_file(opt.init_file));
        std::vector<Rational> v;
        std::stringstream ss(opt.init_values);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(rat_from_string(tok));
        return PDEInitialData<K>::from_rationals(v);
    }();
    Json out = header(opt, "propagate");
    out["init"] = pde_init_to_json(init);
    Jet<K> F = pde_propagate(init, opt.order);
    out["result"] = jet_to_json(F);
    auto rep = compatibility_check(init, opt.order);
    out["compatibility"] = Json{{"coefficients_checked", rep.coefficients_checked},
                                {"multi_route_coefficients", rep.multi_route_coefficients},
                                {"all_zero", rep.all_zero}};
    return out;
}

std::optional<Law> law_by_name(const std::string& s) {
    for (Law l : all_laws())
        if (s == law_name(l)) return l;
    return std::nullopt;
}

template <class K>
AffineMap<K> random_near_identity_map(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> dev(-4, 4);
    for (;;) {
        AffineMap<K> g = AffineMap<K>::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g.e(i, j) = g.e(i, j) + scalar_from_rational<K>(rat(dev(rng), 16));
        if (ScalarTraits<K>::is_unit(g.delta())) return g;
    }
}

template <class K>
Json run_verify_laws(const Options& opt) {
    Input<K> in = resolve_input<K>(opt);
    GraphSurface<K> G(in.F);
    Json out = header(opt, "verify-laws");
    out["input"] = in.descriptor;
    out["seed"] = opt.seed;
    std::vector<Law> laws;
    bool single = (opt.law != "all");
    if (single) {
        auto l = law_by_name(opt.law);
        if (!l) throw Error("unknown law '" + opt.law + "'");
        laws.push_back(*l);
    } else {
        for (Law l : all_laws()) {
            bool is_curve = (l == Law::Halphen1D || l == Law::Monge1D);
            if (is_curve == (G.dim() == 1)) laws.push_back(l);
        }
    }
    std::optional<AffineMap<K>> fixed_map;
    if (!opt.map_file.empty())
        fixed_map = affine_map_from_json<K>(load_json_file(opt.map_file));
    Json list = Json::array();
    for (Law l : laws) {
        Json e;
        e["law"] = law_name(l);
        std::mt19937_64 rng(opt.seed);
        int n = (l == Law::Halphen1D || l == Law::Monge1D) ? 2 : 3;
        try {
            bool all_zero = true;
            int checked = 0;
            for (int t = 0; t < (fixed_map ? 1 : opt.count); ++t) {
                AffineMap<K> g = fixed_map ? *fixed_map : random_near_identity_map<K>(rng, n);
                auto res = verify_law(l, g, G);
                ++checked;
                if (!res.all_zero) all_zero = false;
            }
            e["maps_checked"] = checked;
            e["all_zero"] = all_zero;
        } catch (const MathError& err) {
            if (single) throw;
            e["status"] = "precondition-failed";
            e["reason"] = err.what();
        }
        list.push_back(e);
    }
    out["laws"] = list;
    return out;
}

Json run_models(const Options& opt) {
    Json out = header(opt, "models");
    Json list = Json::array();
    for (const auto& m : model_library()) {
        Json e;
        e["name"] = m.name;
        e["expression"] = m.expression;
        e["vars"] = m.variables;
        Json b = Json::object();
        for (std::size_t i = 0; i < m.variables.size(); ++i)
            b[m.variables[i]] = rat_to_string(m.base[i]);
        e["base"] = b;
        e["backend"] = m.exact_ok ? "exact" : "float";
        e["note"] = m.note;
        list.push_back(e);
    }
    out["models"] = list;
    return out;
}

Json run_batch(const Options& opt) {
    Json cmds = load_json_file(opt.batch_file);
    if (!cmds.is_array()) throw Error("batch file must hold a JSON array of argv arrays");
    Json out;
    out["schema"] = "1";
    out["command"] = "batch";
    Json entries = Json::array();
    for (const auto& c : cmds) {
        std::vector<std::string> argv = c.get<std::vector<std::string>>();
        CliResult r = run_command(argv);
        Json e;
        e["argv"] = argv;
        e["exit_code"] = r.exit_code;
        try {
            e["report"] = Json::parse(r.output);
        } catch (...) {
            e["report"] = r.output;
        }
        entries.push_back(e);
    }
    out["entries"] = entries;
    return out;
}

template <class Fn>
Json dispatch_backend(const Options& opt, Fn&& fn) {
    if (opt.backend == "exact") return fn(Rational{});
    if (opt.backend == "float") {
        if (opt.precision < 128) throw Error("--precision must be at least 128");
        set_working_precision(static_cast<mpfr_prec_t>(opt.precision));
        return fn(BigFloat{});
    }
    throw Error("--backend must be 'exact' or 'float'");
}

}  // namespace

CliResult run_command(const std::vector<std::string>& args) {
    Options opt;
    CLI::App app{"affine and CR differential invariants on truncated jets"};
    app.name("jetinv");
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input) {
            sub->add_option("--expr", opt.expr, "graphing function as an expression");
            sub->add_option("--model", opt.model, "built-in model name");
            sub->add_option("--file", opt.file, "jet JSON file");
            sub->add_option("--base", opt.base, "base point, e.g. x=0,y=1/2");
            sub->add_option("--dim", opt.dim, "expected graph dimension (1 or 2)");
        }
        sub->add_option("--order", opt.order, "truncation order");
        sub->add_option("--backend", opt.backend, "exact | float")
            ->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--precision", opt.precision, "float precision in bits (>= 128)");
        sub->add_option("--tolerance", opt.tolerance, "float verdict tolerance");
        sub->add_option("--out", opt.out, "write the JSON report to a file");
    };

    CLI::App* inv = app.add_subcommand("invariants", "invariant report for a graph");
    add_common(inv, true);
    CLI::App* cls = app.add_subcommand("classify", "classification verdicts for a graph");
    add_common(cls, true);
    CLI::App* trf = app.add_subcommand("transform", "push a graph through an affine map");
    add_common(trf, true);
    trf->add_option("--map", opt.map_file, "affine map JSON file")->required();
    CLI::App* nrm = app.add_subcommand("normalize", "normalize to the rank-one tube model");
    add_common(nrm, true);
    CLI::App* prp = app.add_subcommand("propagate", "fill a jet from PDE initial data");
    add_common(prp, false);
    prp->add_option("--init", opt.init_file, "initial data JSON file");
    prp->add_option("--init-values", opt.init_values,
                    "comma list u00,u10,u20,u30,u40,u01,u11,u21");
    CLI::App* vfl = app.add_subcommand("verify-laws", "check transformation laws on random maps");
    add_common(vfl, true);
    vfl->add_option("--law", opt.law, "law name or 'all'");
    vfl->add_option("--count", opt.count, "number of random maps per law");
    vfl->add_option("--seed", opt.seed, "random seed");
    vfl->add_option("--map", opt.map_file, "use one fixed affine map JSON file");
    CLI::App* mdl = app.add_subcommand("models", "list the built-in model library");
    bool list_models = true;
    mdl->add_flag("--list", list_models, "enumerate the library (default)");
    add_common(mdl, false);
    CLI::App* bat = app.add_subcommand("batch", "run a JSON array of commands");
    bat->add_option("file", opt.batch_file, "batch JSON file")->required();

    std::vector<const char*> argv;
    argv.push_back("jetinv");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::stringstream ss;
        int code = app.exit(e, ss, ss);
        return {code == 0 ? 0 : 1, ss.str()};
    }

    try {
        Json out;
        if (mdl->parsed()) out = run_models(opt);
        else if (bat->parsed()) out = run_batch(opt);
        else if (inv->parsed())
            out = dispatch_backend(opt, [&]<class K>(K) { return run_invariants<K>(opt); });
        else if (cls->parsed())
            out = dispatch_backend(opt, [&]<class K>(K) { return run_classify<K>(opt); });
        else if (trf->parsed())
            out = dispatch_backend(opt, [&]<class K>(K) { return run_transform<K>(opt); });
        else if (nrm->parsed())
            out = dispatch_backend(opt, [&]<class K>(K) { return run_normalize<K>(opt); });
        else if (prp->parsed())
            out = dispatch_backend(opt, [&]<class K>(K) { return run_propagate<K>(opt); });
        else if (vfl->parsed())
            out = dispatch_backend(opt, [&]<class K>(K) { return run_verify_laws<K>(opt); });
        std::string text = out.dump(2) + "\n";
        if (!opt.out.empty()) {
            std::ofstream f(opt.out);
            if (!f) throw Error("cannot write '" + opt.out + "'");
            f << text;
        }
        return {0, text};
    } catch (const MathError& e) {
        Json err{{"schema", "1"}, {"error", "precondition"}, {"which", e.which},
                 {"message", e.what()}};
        return {2, err.dump(2) + "\n"};
    } catch (const Error& e) {
        Json err{{"schema", "1"}, {"error", "usage"}, {"message", e.what()}};
        return {1, err.dump(2) + "\n"};
    } catch (const std::exception& e) {
        Json err{{"schema", "1"}, {"error", "internal"}, {"message", e.what()}};
        return {1, err.dump(2) + "\n"};
    }
}

}  // namespace jetinv
