#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace polysinc::expr {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg), offset(offset) {}
    std::size_t offset;
};

struct EvalError : std::runtime_error {
    EvalError(const std::string& msg, std::string span)
        : std::runtime_error(msg + " in '" + span + "'"), span(std::move(span)) {}
    std::string span;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Arithmetic expressions in one variable x.  Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?            (right associative)
//   base   := number | 'x' | 'pi' | ident '(' expr ')' | '(' expr ')' | '-' base
// No implicit multiplication.  Functions: exp ln sin cos tan sqrt atan erf abs.
class Expr {
  public:
    Expr() = default;

    static Expr parse(const std::string& src);

    double eval(double x) const;

    // Symbolic d/dx, unsimplified except constant folding.
    Expr derivative() const;

    std::string to_string() const;

    bool empty() const { return root_ == nullptr; }

  private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

}  // namespace polysinc::expr
