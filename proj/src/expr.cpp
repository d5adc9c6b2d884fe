#include "jetinv/expr.hpp"

#include <cctype>
#include <optional>

namespace jetinv {

namespace {

ExprPtr mk(Expr e) { return std::make_shared<Expr>(std::move(e)); }

ExprPtr number(Rational q) {
    Expr e;
    e.kind = Expr::Kind::Number;
    e.number = std::move(q);
    return mk(std::move(e));
}

ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = k;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return mk(std::move(e));
}

std::optional<AnalyticFn> fn_by_name(const std::string& s) {
    if (s == "exp") return AnalyticFn::Exp;
    if (s == "log") return AnalyticFn::Log;
    if (s == "sin") return AnalyticFn::Sin;
    if (s == "cos") return AnalyticFn::Cos;
    if (s == "arcsin") return AnalyticFn::Arcsin;
    if (s == "arcsinh") return AnalyticFn::Arcsinh;
    if (s == "sqrt") return AnalyticFn::Sqrt;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    ExprPtr run() {
        ExprPtr e = sum();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    // sum := term (('+'|'-') term)*
    ExprPtr sum() {
        ExprPtr e = term();
        for (;;) {
            skip_ws();
            if (eat('+'))
                e = binary(Expr::Kind::Add, e, term());
            else if (eat('-'))
                e = binary(Expr::Kind::Sub, e, term());
            else
                return e;
        }
    }

    // term := factor (('*'|'/') factor)*
    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            skip_ws();
            if (eat('*'))
                e = binary(Expr::Kind::Mul, e, factor());
            else if (eat('/'))
                e = binary(Expr::Kind::Div, e, factor());
            else
                return e;
        }
    }

    // factor := '-' factor | power
    ExprPtr factor() {
        skip_ws();
        if (eat('-')) {
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.lhs = factor();
            return mk(std::move(e));
        }
        return power();
    }

    // power := atom ('^' signed-integer)?
    ExprPtr power() {
        ExprPtr a = atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) throw ParseError("integer exponent expected", pos_);
            long e = std::stol(s_.substr(start, pos_ - start));
            Expr p;
            p.kind = Expr::Kind::Pow;
            p.lhs = a;
            p.exponent = neg ? -e : e;
            return mk(std::move(p));
        }
        return a;
    }

    // atom := number | name '(' sum ')' | name | '(' sum ')'
    ExprPtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '(') {
                auto fn = fn_by_name(name);
                if (!fn) throw ParseError("unknown function '" + name + "'", start);
                ++pos_;
                ExprPtr arg = sum();
                expect(')');
                Expr e;
                e.kind = Expr::Kind::Call;
                e.fn = *fn;
                e.lhs = arg;
                return mk(std::move(e));
            }
            Expr e;
            e.kind = Expr::Kind::Var;
            e.name = name;
            return mk(std::move(e));
        }
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            expect(')');
            return e;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr literal() {
        std::size_t start = pos_;
        bool saw_digit = false, saw_dot = false;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                saw_digit = true;
                ++pos_;
            } else if (c == '.' && !saw_dot) {
                saw_dot = true;
                ++pos_;
            } else {
                break;
            }
        }
        if (!saw_digit) throw ParseError("malformed number literal", start);
        return number(rat_from_string(s_.substr(start, pos_ - start)));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print_rec(const Expr& e, int parent_prec, std::string& out) {
    int prec = precedence(e.kind);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e.kind) {
        case Expr::Kind::Number: out += rat_to_string(e.number); break;
        case Expr::Kind::Var: out += e.name; break;
        case Expr::Kind::Add:
            print_rec(*e.lhs, prec, out);
            out += '+';
            print_rec(*e.rhs, prec + 1, out);
            break;
        case Expr::Kind::Sub:
            print_rec(*e.lhs, prec, out);
            out += '-';
            print_rec(*e.rhs, prec + 1, out);
            break;
        case Expr::Kind::Mul:
            print_rec(*e.lhs, prec, out);
            out += '*';
            print_rec(*e.rhs, prec + 1, out);
            break;
        case Expr::Kind::Div:
            print_rec(*e.lhs, prec, out);
            out += '/';
            print_rec(*e.rhs, prec + 1, out);
            break;
        case Expr::Kind::Neg:
            out += '-';
            print_rec(*e.lhs, prec + 1, out);
            break;
        case Expr::Kind::Pow:
            print_rec(*e.lhs, prec + 1, out);
            out += '^';
            out += std::to_string(e.exponent);
            break;
        case Expr::Kind::Call:
            out += analytic_fn_name(e.fn);
            out += '(';
            print_rec(*e.lhs, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).run(); }

std::string print_expression(const Expr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

}  // namespace jetinv
