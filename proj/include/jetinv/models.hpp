#pragma once

#include <string>
#include <vector>

#include "jetinv/expr.hpp"

namespace jetinv {

// Built-in graphing functions with their documented base points.
struct ModelEntry {
    std::string name;
    std::string expression;
    VarNames variables;
    std::vector<Rational> base;
    bool exact_ok;     // evaluates on the exact backend at this base point
    std::string note;  // provenance / expected classification
};

const std::vector<ModelEntry>& model_library();
const ModelEntry* find_model(const std::string& name);

// Evaluate a model at its documented base point.
template <class K>
Jet<K> eval_model(const ModelEntry& m, int order) {
    if constexpr (ScalarTraits<K>::is_exact) {
        if (!m.exact_ok)
            throw NeedsFloatError("model '" + m.name + "' requires the float backend");
    }
    std::vector<K> base;
    for (const auto& b : m.base) base.push_back(scalar_from_rational<K>(b));
    VarsPtr vars = make_vars(m.variables);
    ExprPtr e = parse_expression(m.expression);
    return eval_jet<K>(*e, vars, base, order);
}

}  // namespace jetinv
