#pragma once

// Small expression language for time-dependent coefficients: numbers, the
// variable t, + - * / ^, parentheses and a fixed set of functions.  Trees
// support evaluation and analytic differentiation.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcnls {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

enum class node_kind { number, var_t, add, sub, mul, div, pow, neg, call };

struct expr_node;
using expr_ptr = std::shared_ptr<const expr_node>;

struct expr_node {
    node_kind kind;
    double value = 0.0;      // number
    std::string func;        // call
    expr_ptr lhs, rhs;       // children (rhs unused for neg/call)
};

inline expr_ptr make_num(double v) {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::number;
    n->value = v;
    return n;
}

inline expr_ptr make_var() {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::var_t;
    return n;
}

inline expr_ptr make_bin(node_kind k, expr_ptr a, expr_ptr b) {
    auto n = std::make_shared<expr_node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

inline expr_ptr make_neg(expr_ptr a) {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::neg;
    n->lhs = std::move(a);
    return n;
}

inline expr_ptr make_call(std::string f, expr_ptr a) {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::call;
    n->func = std::move(f);
    n->lhs = std::move(a);
    return n;
}

inline bool is_known_function(const std::string& f) {
    static const char* names[] = {"sin",  "cos",  "tan",  "sinh", "cosh",
                                  "tanh", "coth", "csch", "sech", "exp",
                                  "ln",   "sqrt", "abs"};
    for (auto* n : names)
        if (f == n) return true;
    return false;
}

inline double eval_call(const std::string& f, double x) {
    if (f == "sin") return std::sin(x);
    if (f == "cos") return std::cos(x);
    if (f == "tan") return std::tan(x);
    if (f == "sinh") return std::sinh(x);
    if (f == "cosh") return std::cosh(x);
    if (f == "tanh") return std::tanh(x);
    if (f == "coth") return std::cosh(x) / std::sinh(x);
    if (f == "csch") return 1.0 / std::sinh(x);
    if (f == "sech") return 1.0 / std::cosh(x);
    if (f == "exp") return std::exp(x);
    if (f == "ln") return std::log(x);
    if (f == "sqrt") return std::sqrt(x);
    if (f == "abs") return std::fabs(x);
    throw std::logic_error("unknown function: " + f);
}

inline double eval(const expr_ptr& e, double t) {
    switch (e->kind) {
        case node_kind::number: return e->value;
        case node_kind::var_t: return t;
        case node_kind::add: return eval(e->lhs, t) + eval(e->rhs, t);
        case node_kind::sub: return eval(e->lhs, t) - eval(e->rhs, t);
        case node_kind::mul: return eval(e->lhs, t) * eval(e->rhs, t);
        case node_kind::div: return eval(e->lhs, t) / eval(e->rhs, t);
        case node_kind::pow: return std::pow(eval(e->lhs, t), eval(e->rhs, t));
        case node_kind::neg: return -eval(e->lhs, t);
        case node_kind::call: return eval_call(e->func, eval(e->lhs, t));
    }
    return 0.0;
}

// Analytic derivative as a new tree.  No simplification beyond dropping
// trivially-zero branches.
inline bool is_zero(const expr_ptr& e) {
    return e->kind == node_kind::number && e->value == 0.0;
}
inline bool is_one(const expr_ptr& e) {
    return e->kind == node_kind::number && e->value == 1.0;
}

inline expr_ptr add(expr_ptr a, expr_ptr b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return make_bin(node_kind::add, std::move(a), std::move(b));
}
inline expr_ptr sub(expr_ptr a, expr_ptr b) {
    if (is_zero(b)) return a;
    if (is_zero(a)) return make_neg(std::move(b));
    return make_bin(node_kind::sub, std::move(a), std::move(b));
}
inline expr_ptr mul(expr_ptr a, expr_ptr b) {
    if (is_zero(a) || is_zero(b)) return make_num(0.0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return make_bin(node_kind::mul, std::move(a), std::move(b));
}
inline expr_ptr divi(expr_ptr a, expr_ptr b) {
    if (is_zero(a)) return make_num(0.0);
    if (is_one(b)) return a;
    return make_bin(node_kind::div, std::move(a), std::move(b));
}

inline expr_ptr diff(const expr_ptr& e);

inline expr_ptr diff_call(const std::string& f, const expr_ptr& u) {
    expr_ptr du = diff(u);
    if (is_zero(du)) return make_num(0.0);
    expr_ptr outer;
    if (f == "sin")
        outer = make_call("cos", u);
    else if (f == "cos")
        outer = make_neg(make_call("sin", u));
    else if (f == "tan")
        outer = divi(make_num(1.0), mul(make_call("cos", u), make_call("cos", u)));
    else if (f == "sinh")
        outer = make_call("cosh", u);
    else if (f == "cosh")
        outer = make_call("sinh", u);
    else if (f == "tanh")
        outer = mul(make_call("sech", u), make_call("sech", u));
    else if (f == "coth")
        outer = make_neg(mul(make_call("csch", u), make_call("csch", u)));
    else if (f == "csch")
        outer = make_neg(mul(make_call("csch", u), make_call("coth", u)));
    else if (f == "sech")
        outer = make_neg(mul(make_call("sech", u), make_call("tanh", u)));
    else if (f == "exp")
        outer = make_call("exp", u);
    else if (f == "ln")
        outer = divi(make_num(1.0), u);
    else if (f == "sqrt")
        outer = divi(make_num(0.5), make_call("sqrt", u));
    else if (f == "abs")
        outer = divi(u, make_call("abs", u));  // sign(u), undefined at 0
    else
        throw std::logic_error("no derivative for " + f);
    return mul(outer, du);
}

inline expr_ptr diff(const expr_ptr& e) {
    switch (e->kind) {
        case node_kind::number: return make_num(0.0);
        case node_kind::var_t: return make_num(1.0);
        case node_kind::add: return add(diff(e->lhs), diff(e->rhs));
        case node_kind::sub: return sub(diff(e->lhs), diff(e->rhs));
        case node_kind::mul:
            return add(mul(diff(e->lhs), e->rhs), mul(e->lhs, diff(e->rhs)));
        case node_kind::div:
            return divi(sub(mul(diff(e->lhs), e->rhs), mul(e->lhs, diff(e->rhs))),
                        mul(e->rhs, e->rhs));
        case node_kind::pow: {
            // u^v: handle the common constant-exponent case directly,
            // otherwise d(u^v) = u^v (v' ln u + v u'/u).
            if (e->rhs->kind == node_kind::number) {
                double p = e->rhs->value;
                if (p == 0.0) return make_num(0.0);
                return mul(mul(make_num(p),
                               make_bin(node_kind::pow, e->lhs, make_num(p - 1.0))),
                           diff(e->lhs));
            }
            expr_ptr term = add(mul(diff(e->rhs), make_call("ln", e->lhs)),
                                mul(e->rhs, divi(diff(e->lhs), e->lhs)));
            return mul(e, term);
        }
        case node_kind::neg: return make_neg(diff(e->lhs));
        case node_kind::call: return diff_call(e->func, e->lhs);
    }
    return make_num(0.0);
}

inline void render(const expr_ptr& e, std::string& out) {
    switch (e->kind) {
        case node_kind::number: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", e->value);
            out += buf;
            break;
        }
        case node_kind::var_t: out += 't'; break;
        case node_kind::add:
            out += '(';
            render(e->lhs, out);
            out += '+';
            render(e->rhs, out);
            out += ')';
            break;
        case node_kind::sub:
            out += '(';
            render(e->lhs, out);
            out += '-';
            render(e->rhs, out);
            out += ')';
            break;
        case node_kind::mul:
            out += '(';
            render(e->lhs, out);
            out += '*';
            render(e->rhs, out);
            out += ')';
            break;
        case node_kind::div:
            out += '(';
            render(e->lhs, out);
            out += '/';
            render(e->rhs, out);
            out += ')';
            break;
        case node_kind::pow:
            out += '(';
            render(e->lhs, out);
            out += '^';
            render(e->rhs, out);
            out += ')';
            break;
        case node_kind::neg:
            out += "(-";
            render(e->lhs, out);
            out += ')';
            break;
        case node_kind::call:
            out += e->func;
            out += '(';
            render(e->lhs, out);
            out += ')';
            break;
    }
}

// Recursive-descent parser.  No implicit multiplication.
class parser {
public:
    explicit parser(std::string src) : src_(std::move(src)) {}

    expr_ptr parse() {
        expr_ptr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size())
            throw parse_error("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    expr_ptr parse_expr() {
        expr_ptr e = parse_term();
        for (;;) {
            if (consume('+'))
                e = make_bin(node_kind::add, e, parse_term());
            else if (consume('-'))
                e = make_bin(node_kind::sub, e, parse_term());
            else
                return e;
        }
    }

    expr_ptr parse_term() {
        expr_ptr e = parse_unary();
        for (;;) {
            if (consume('*'))
                e = make_bin(node_kind::mul, e, parse_unary());
            else if (consume('/'))
                e = make_bin(node_kind::div, e, parse_unary());
            else
                return e;
        }
    }

    expr_ptr parse_unary() {
        if (consume('-')) return make_neg(parse_unary());
        if (consume('+')) return parse_unary();
        return parse_power();
    }

    expr_ptr parse_power() {
        expr_ptr base = parse_atom();
        if (consume('^')) return make_bin(node_kind::pow, base, parse_unary());
        return base;
    }

    expr_ptr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw parse_error("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            expr_ptr e = parse_expr();
            if (!consume(')')) throw parse_error("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    expr_ptr parse_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        // optional exponent
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = save;  // 'e' belonged to an identifier context; reject
            }
        }
        try {
            return make_num(std::stod(src_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
            throw parse_error("malformed number", start);
        }
    }

    expr_ptr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        std::string name = src_.substr(start, pos_ - start);
        if (name == "t") return make_var();
        if (name == "pi") return make_num(3.14159265358979323846);
        if (!is_known_function(name))
            throw parse_error("unknown identifier '" + name + "'", start);
        if (!consume('('))
            throw parse_error("expected '(' after function '" + name + "'", pos_);
        expr_ptr arg = parse_expr();
        if (!consume(')')) throw parse_error("expected ')'", pos_);
        return make_call(name, arg);
    }
};

}  // namespace detail

// Evaluatable time function with analytic first and second derivatives.
// Either expression-backed (parsed tree) or callback-backed (e.g. phase
// functions coming out of an ODE solve).
class TimeFunction {
public:
    TimeFunction() : TimeFunction(constant(0.0)) {}

    static TimeFunction constant(double v) {
        TimeFunction f(0);
        f.tree_ = detail::make_num(v);
        f.finish_from_tree();
        return f;
    }

    static TimeFunction from_tree(detail::expr_ptr tree) {
        TimeFunction f(0);
        f.tree_ = std::move(tree);
        f.finish_from_tree();
        return f;
    }

    static TimeFunction from_callables(std::function<double(double)> v,
                                       std::function<double(double)> dv = nullptr,
                                       std::function<double(double)> d2v = nullptr) {
        TimeFunction f(0);
        f.value_ = std::move(v);
        f.deriv_ = dv ? std::move(dv) : fd_derivative(f.value_);
        f.deriv2_ = d2v ? std::move(d2v) : fd_derivative(f.deriv_);
        return f;
    }

    double value(double t) const { return value_(t); }
    double deriv(double t) const { return deriv_(t); }
    double deriv2(double t) const { return deriv2_(t); }
    double operator()(double t) const { return value_(t); }

    bool has_tree() const { return static_cast<bool>(tree_); }
    const detail::expr_ptr& tree() const { return tree_; }

    bool is_identically_zero() const {
        return tree_ && detail::is_zero(tree_);
    }

    std::string render() const {
        if (!tree_) return "<callable>";
        std::string out;
        detail::render(tree_, out);
        return out;
    }

private:
    TimeFunction(int) {}  // uninitialized marker, internal

    void finish_from_tree() {
        auto tree = tree_;
        auto dtree = detail::diff(tree);
        auto d2tree = detail::diff(dtree);
        value_ = [tree](double t) { return detail::eval(tree, t); };
        deriv_ = [dtree](double t) { return detail::eval(dtree, t); };
        deriv2_ = [d2tree](double t) { return detail::eval(d2tree, t); };
    }

    // 4th-order central difference fallback for callback-backed functions.
    static std::function<double(double)> fd_derivative(std::function<double(double)> f) {
        return [f](double t) {
            double h = 1e-4 * std::max(1.0, std::fabs(t));
            return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
        };
    }

    detail::expr_ptr tree_;
    std::function<double(double)> value_, deriv_, deriv2_;
};

inline TimeFunction parse_time_expression(const std::string& source) {
    detail::parser p(source);
    return TimeFunction::from_tree(p.parse());
}

}  // namespace vcnls
