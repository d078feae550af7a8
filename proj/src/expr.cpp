#include "polysinc/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polysinc/special_functions.hpp"

namespace polysinc::expr {

enum class Kind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Node {
    Kind kind;
    double value = 0.0;       // Constant
    std::string func;         // Call
    NodePtr lhs, rhs;         // operands (Neg/Call use lhs only)
    std::string span;         // source text, for diagnostics
};

namespace {

NodePtr make_const(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

NodePtr make_var() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->span = "x";
    return n;
}

bool is_const(const NodePtr& n, double v) {
    return n->kind == Kind::Constant && n->value == v;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
    // Constant folding only; no algebraic rewriting beyond the identities
    // needed to keep derivatives readable.
    if (a->kind == Kind::Constant && b->kind == Kind::Constant) {
        switch (k) {
            case Kind::Add: return make_const(a->value + b->value);
            case Kind::Sub: return make_const(a->value - b->value);
            case Kind::Mul: return make_const(a->value * b->value);
            case Kind::Pow: return make_const(std::pow(a->value, b->value));
            default: break;  // folding a constant division could hide 1/0
        }
    }
    if (k == Kind::Add && is_const(a, 0.0)) return b;
    if (k == Kind::Add && is_const(b, 0.0)) return a;
    if (k == Kind::Sub && is_const(b, 0.0)) return a;
    if (k == Kind::Mul && (is_const(a, 0.0) || is_const(b, 0.0))) return make_const(0.0);
    if (k == Kind::Mul && is_const(a, 1.0)) return b;
    if (k == Kind::Mul && is_const(b, 1.0)) return a;
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_neg(NodePtr a) {
    if (a->kind == Kind::Constant) return make_const(-a->value);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_call(std::string func, NodePtr arg, std::string span = {}) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->func = std::move(func);
    n->lhs = std::move(arg);
    n->span = std::move(span);
    return n;
}

const char* const kFunctions[] = {"exp", "ln", "sin", "cos", "tan",
                                  "sqrt", "atan", "erf", "abs"};

bool known_function(const std::string& name) {
    for (const char* f : kFunctions) {
        if (name == f) return true;
    }
    return false;
}

class Parser {
  public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError("empty expression", 0);
        }
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) {
            fail("unexpected trailing input");
        }
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
    }

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

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume('+')) {
                lhs = make_binary(Kind::Add, lhs, parse_term());
            } else if (consume('-')) {
                lhs = make_binary(Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (consume('*')) {
                lhs = make_binary(Kind::Mul, lhs, parse_factor());
            } else if (consume('/')) {
                lhs = make_binary(Kind::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        skip_ws();
        // unary minus groups around the whole power: -x^2 is -(x^2)
        if (pos_ < src_.size() && src_[pos_] == '-') {
            if (++depth_ > 2000) fail("expression nested too deeply");
            struct DepthGuard {
                int& d;
                ~DepthGuard() { --d; }
            } guard{depth_};
            ++pos_;
            return make_neg(parse_factor());
        }
        NodePtr base = parse_base();
        if (consume('^')) {
            return make_binary(Kind::Pow, base, parse_factor());  // right assoc
        }
        return base;
    }

    NodePtr parse_base() {
        if (++depth_ > 2000) fail("expression nested too deeply");
        struct DepthGuard {
            int& d;
            ~DepthGuard() { --d; }
        } guard{depth_};
        skip_ws();
        if (pos_ >= src_.size()) fail("expected expression");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return parse_ident();
        }
        fail("expected number, 'x', 'pi', function call, or '('");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(src_.substr(start), &consumed);
        } catch (const std::exception&) {
            fail("malformed number");
        }
        pos_ = start + consumed;
        return make_const(v);
    }

    NodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isalpha(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::string name = src_.substr(start, pos_ - start);
        if (name == "x") return make_var();
        if (name == "pi") return make_const(std::numbers::pi);
        if (!known_function(name)) {
            pos_ = start;
            fail("unknown function or identifier '" + name + "'");
        }
        if (!consume('(')) fail("expected '(' after '" + name + "'");
        const std::size_t arg_start = pos_;
        NodePtr arg = parse_expr();
        const std::size_t arg_end = pos_;
        if (!consume(')')) fail("expected ')'");
        return make_call(name, std::move(arg),
                         name + "(" + src_.substr(arg_start, arg_end - arg_start) + ")");
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

std::string node_span(const Node& n);

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case Kind::Constant: return n.value;
        case Kind::Variable: return x;
        case Kind::Neg: return -eval_node(*n.lhs, x);
        case Kind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case Kind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
        case Kind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case Kind::Div: {
            const double denom = eval_node(*n.rhs, x);
            if (denom == 0.0) throw EvalError("division by zero", node_span(n));
            return eval_node(*n.lhs, x) / denom;
        }
        case Kind::Pow: {
            const double v = std::pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
            if (std::isnan(v)) throw EvalError("domain error in power", node_span(n));
            return v;
        }
        case Kind::Call: {
            const double arg = eval_node(*n.lhs, x);
            if (n.func == "exp") return std::exp(arg);
            if (n.func == "ln") {
                if (arg <= 0.0) throw EvalError("ln of non-positive value", node_span(n));
                return std::log(arg);
            }
            if (n.func == "sin") return std::sin(arg);
            if (n.func == "cos") return std::cos(arg);
            if (n.func == "tan") return std::tan(arg);
            if (n.func == "sqrt") {
                if (arg < 0.0) throw EvalError("sqrt of negative value", node_span(n));
                return std::sqrt(arg);
            }
            if (n.func == "atan") return std::atan(arg);
            if (n.func == "erf") return special::erf(arg);
            if (n.func == "abs") return std::abs(arg);
            throw EvalError("unknown function '" + n.func + "'", node_span(n));
        }
    }
    throw EvalError("corrupt expression node", "");
}

NodePtr diff_node(const NodePtr& n);

NodePtr diff_call(const Node& n) {
    const NodePtr& u = n.lhs;
    const NodePtr du = diff_node(u);
    NodePtr outer;
    if (n.func == "exp") {
        outer = make_call("exp", u);
    } else if (n.func == "ln") {
        return make_binary(Kind::Div, du, u);
    } else if (n.func == "sin") {
        outer = make_call("cos", u);
    } else if (n.func == "cos") {
        outer = make_neg(make_call("sin", u));
    } else if (n.func == "tan") {
        // 1 + tan(u)^2
        outer = make_binary(Kind::Add, make_const(1.0),
                            make_binary(Kind::Pow, make_call("tan", u), make_const(2.0)));
    } else if (n.func == "sqrt") {
        return make_binary(Kind::Div, du,
                           make_binary(Kind::Mul, make_const(2.0), make_call("sqrt", u)));
    } else if (n.func == "atan") {
        return make_binary(
            Kind::Div, du,
            make_binary(Kind::Add, make_const(1.0),
                        make_binary(Kind::Pow, u, make_const(2.0))));
    } else if (n.func == "erf") {
        // (2/sqrt(pi)) e^{-u^2}
        outer = make_binary(
            Kind::Mul, make_const(2.0 / std::sqrt(std::numbers::pi)),
            make_call("exp", make_neg(make_binary(Kind::Pow, u, make_const(2.0)))));
    } else if (n.func == "abs") {
        outer = make_binary(Kind::Div, u, make_call("abs", u));  // sign(u)
    } else {
        throw EvalError("cannot differentiate '" + n.func + "'", node_span(n));
    }
    return make_binary(Kind::Mul, outer, du);
}

NodePtr diff_node(const NodePtr& n) {
    switch (n->kind) {
        case Kind::Constant: return make_const(0.0);
        case Kind::Variable: return make_const(1.0);
        case Kind::Neg: return make_neg(diff_node(n->lhs));
        case Kind::Add: return make_binary(Kind::Add, diff_node(n->lhs), diff_node(n->rhs));
        case Kind::Sub: return make_binary(Kind::Sub, diff_node(n->lhs), diff_node(n->rhs));
        case Kind::Mul:
            return make_binary(Kind::Add,
                               make_binary(Kind::Mul, diff_node(n->lhs), n->rhs),
                               make_binary(Kind::Mul, n->lhs, diff_node(n->rhs)));
        case Kind::Div:
            // (u'v - uv') / v^2
            return make_binary(
                Kind::Div,
                make_binary(Kind::Sub,
                            make_binary(Kind::Mul, diff_node(n->lhs), n->rhs),
                            make_binary(Kind::Mul, n->lhs, diff_node(n->rhs))),
                make_binary(Kind::Pow, n->rhs, make_const(2.0)));
        case Kind::Pow: {
            if (n->rhs->kind == Kind::Constant) {
                // c * u^{c-1} * u'
                const double c = n->rhs->value;
                return make_binary(
                    Kind::Mul, make_const(c),
                    make_binary(Kind::Mul,
                                make_binary(Kind::Pow, n->lhs, make_const(c - 1.0)),
                                diff_node(n->lhs)));
            }
            // u^v = exp(v ln u):  u^v * (v' ln u + v u'/u)
            return make_binary(
                Kind::Mul, n,
                make_binary(
                    Kind::Add,
                    make_binary(Kind::Mul, diff_node(n->rhs), make_call("ln", n->lhs)),
                    make_binary(Kind::Div,
                                make_binary(Kind::Mul, n->rhs, diff_node(n->lhs)),
                                n->lhs)));
        }
        case Kind::Call: return diff_call(*n);
    }
    throw EvalError("corrupt expression node", "");
}

void print_node(const Node& n, std::ostream& os) {
    switch (n.kind) {
        case Kind::Constant: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.value;
            const std::string s = tmp.str();
            if (n.value < 0.0) {
                os << "(" << s << ")";
            } else {
                os << s;
            }
            return;
        }
        case Kind::Variable: os << "x"; return;
        case Kind::Neg:
            os << "(-";
            print_node(*n.lhs, os);
            os << ")";
            return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow: {
            const char op = n.kind == Kind::Add   ? '+'
                            : n.kind == Kind::Sub ? '-'
                            : n.kind == Kind::Mul ? '*'
                            : n.kind == Kind::Div ? '/'
                                                  : '^';
            os << "(";
            print_node(*n.lhs, os);
            os << op;
            print_node(*n.rhs, os);
            os << ")";
            return;
        }
        case Kind::Call:
            os << n.func << "(";
            print_node(*n.lhs, os);
            os << ")";
            return;
    }
}

std::string node_span(const Node& n) {
    if (!n.span.empty()) return n.span;
    std::ostringstream os;
    print_node(n, os);
    return os.str();
}

}  // namespace

Expr Expr::parse(const std::string& src) {
    Parser p(src);
    return Expr(p.run());
}

double Expr::eval(double x) const {
    if (!root_) throw EvalError("empty expression", "");
    return eval_node(*root_, x);
}

Expr Expr::derivative() const {
    if (!root_) throw EvalError("empty expression", "");
    return Expr(diff_node(root_));
}

std::string Expr::to_string() const {
    if (!root_) return "";
    std::ostringstream os;
    print_node(*root_, os);
    return os.str();
}

}  // namespace polysinc::expr
