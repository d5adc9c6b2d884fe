#pragma once

#include <json.hpp>
#include <string>

#include "jetinv/affine_map.hpp"
#include "jetinv/jet.hpp"
#include "jetinv/pde.hpp"

namespace jetinv {

using Json = nlohmann::ordered_json;

// ---- scalar <-> string ----

template <class K>
std::string scalar_string(const K& v) {
    return ScalarTraits<K>::to_string(v);
}
template <class K>
std::string scalar_string(const Complex<K>& v) {
    if (ScalarTraits<K>::is_zero(v.im)) return ScalarTraits<K>::to_string(v.re);
    return ScalarTraits<K>::to_string(v.re) + "+" + ScalarTraits<K>::to_string(v.im) + "i";
}

// Accepts exact "p/q" strings and decimal/scientific literals.
template <class K>
K scalar_from_string(const std::string& s) {
    if constexpr (ScalarTraits<K>::is_exact) {
        return rat_from_string(s);
    } else {
        if (s.find('/') != std::string::npos)
            return ScalarTraits<K>::from_rational(rat_from_string(s));
        return BigFloat::from_string(s, working_precision());
    }
}

// ---- jets ----

template <class K>
Json jet_to_json(const Jet<K>& j) {
    Json out;
    out["vars"] = j.vars();
    out["order"] = j.order();
    Json base = Json::object();
    for (std::size_t i = 0; i < j.vars().size(); ++i)
        base[j.vars()[i]] = scalar_string(j.base()[i]);
    out["base"] = base;
    Json coeffs = Json::object();
    for (int i = 0; i < j.layout().size(); ++i) {
        if (ScalarTraits<K>::is_zero(j.coeff(i))) continue;
        std::string key;
        for (int v = 0; v < j.nvars(); ++v) {
            if (v) key += ',';
            key += std::to_string(j.layout().exponents(i)[v]);
        }
        coeffs[key] = scalar_string(j.coeff(i));
    }
    out["coeffs"] = coeffs;
    return out;
}

template <class K>
Jet<K> jet_from_json(const Json& in) {
    if (!in.contains("vars") || !in.contains("order") || !in.contains("coeffs"))
        throw Error("jet JSON needs 'vars', 'order' and 'coeffs'");
    VarNames names = in.at("vars").get<VarNames>();
    int order = in.at("order").get<int>();
    std::vector<K> base(names.size(), ScalarTraits<K>::zero());
    if (in.contains("base"))
        for (std::size_t i = 0; i < names.size(); ++i)
            if (in.at("base").contains(names[i]))
                base[i] = scalar_from_string<K>(in.at("base").at(names[i]).get<std::string>());
    Jet<K> j(make_vars(names), base, order);
    for (auto it = in.at("coeffs").begin(); it != in.at("coeffs").end(); ++it) {
        Exponents e{};
        const std::string& key = it.key();
        std::size_t pos = 0;
        for (int v = 0; v < j.nvars(); ++v) {
            std::size_t comma = key.find(',', pos);
            std::string tok = key.substr(pos, comma == std::string::npos ? comma : comma - pos);
            e[v] = static_cast<std::uint8_t>(std::stoi(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        j.set_coeff(e, scalar_from_string<K>(it.value().template get<std::string>()));
    }
    return j;
}

// ---- affine maps ----

template <class K>
Json affine_map_to_json(const AffineMap<K>& g) {
    Json m = Json::array();
    for (int i = 0; i < g.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.n; ++j) row.push_back(scalar_string(g.e(i, j)));
        m.push_back(row);
    }
    Json t = Json::array();
    for (int i = 0; i < g.n; ++i) t.push_back(scalar_string(g.t[i]));
    return Json{{"matrix", m}, {"translation", t}};
}

template <class K>
AffineMap<K> affine_map_from_json(const Json& in) {
    if (!in.contains("matrix")) throw Error("affine map JSON needs 'matrix'");
    const Json& m = in.at("matrix");
    int n = static_cast<int>(m.size());
    if (n != 2 && n != 3) throw Error("affine map must be 2x2 or 3x3");
    AffineMap<K> g = AffineMap<K>::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.e(i, j) = scalar_from_string<K>(m.at(i).at(j).get<std::string>());
    if (in.contains("translation"))
        for (int i = 0; i < n; ++i)
            g.t[i] = scalar_from_string<K>(in.at("translation").at(i).get<std::string>());
    return g;
}

// ---- PDE initial data ----

template <class K>
Json pde_init_to_json(const PDEInitialData<K>& d) {
    return Json{{"u00", scalar_string(d.u00)}, {"u10", scalar_string(d.u10)},
                {"u20", scalar_string(d.u20)}, {"u30", scalar_string(d.u30)},
                {"u40", scalar_string(d.u40)}, {"u01", scalar_string(d.u01)},
                {"u11", scalar_string(d.u11)}, {"u21", scalar_string(d.u21)}};
}

template <class K>
PDEInitialData<K> pde_init_from_json(const Json& in) {
    auto get = [&](const char* key) {
        if (!in.contains(key)) throw Error(std::string("initial data misses '") + key + "'");
        return scalar_from_string<K>(in.at(key).get<std::string>());
    };
    return {get("u00"), get("u10"), get("u20"), get("u30"),
            get("u40"), get("u01"), get("u11"), get("u21")};
}

Json load_json_file(const std::string& path);

}  // namespace jetinv
