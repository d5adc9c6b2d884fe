#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jetinv/analytic.hpp"
#include "jetinv/jet.hpp"

namespace jetinv {

// AST of the analytic-expression language: rational literals, variables,
// + - * /, integer powers, and the built-in unary functions.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Add, Sub, Mul, Div, Neg, Pow, Call };
    Kind kind;
    Rational number;         // Number
    std::string name;        // Var
    ExprPtr lhs, rhs;        // binary ops; Neg/Pow/Call use lhs only
    long exponent = 0;       // Pow
    AnalyticFn fn = AnalyticFn::Exp;  // Call
};

ExprPtr parse_expression(const std::string& text);
std::string print_expression(const Expr& e);

// Evaluate to a jet at `base` via jet arithmetic and analytic lifts.
template <class K>
Jet<K> eval_jet(const Expr& e, const VarsPtr& vars, const std::vector<K>& base, int order) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return Jet<K>::constant(vars, base, order, scalar_from_rational<K>(e.number));
        case Expr::Kind::Var: {
            for (std::size_t i = 0; i < vars->size(); ++i)
                if ((*vars)[i] == e.name)
                    return Jet<K>::coordinate(vars, base, order, static_cast<int>(i));
            throw VarMismatchError("expression uses undeclared variable '" + e.name + "'");
        }
        case Expr::Kind::Add:
            return eval_jet(*e.lhs, vars, base, order) + eval_jet(*e.rhs, vars, base, order);
        case Expr::Kind::Sub:
            return eval_jet(*e.lhs, vars, base, order) - eval_jet(*e.rhs, vars, base, order);
        case Expr::Kind::Mul:
            return eval_jet(*e.lhs, vars, base, order) * eval_jet(*e.rhs, vars, base, order);
        case Expr::Kind::Div:
            return eval_jet(*e.lhs, vars, base, order) / eval_jet(*e.rhs, vars, base, order);
        case Expr::Kind::Neg:
            return -eval_jet(*e.lhs, vars, base, order);
        case Expr::Kind::Pow:
            return pow_int(eval_jet(*e.lhs, vars, base, order), e.exponent);
        case Expr::Kind::Call:
            return analytic_lift(e.fn, eval_jet(*e.lhs, vars, base, order));
    }
    throw Error("unreachable");
}

}  // namespace jetinv
