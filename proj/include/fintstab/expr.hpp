#pragma once

#include <map>
#include <memory>
#include <string>

#include "fintstab/errors.hpp"

namespace fintstab {

/// Tiny arithmetic expression evaluator used for user-defined delay
/// functions, e.g. "0.4 + 0.1*sin((i + 2*j)*t)". Supports + - * / ^, unary
/// minus, parentheses, numeric literals, free variables resolved from a
/// name->value map at evaluation time, and the functions sin, cos, tan,
/// exp, log, sqrt, abs, floor. Parsed once, evaluated many times.
class Expr {
public:
    struct Node;

    static Expr parse(const std::string& text);

    double eval(const std::map<std::string, double>& vars) const;
    const std::string& text() const { return text_; }

    Expr(const Expr&) = default;
    Expr(Expr&&) = default;
    Expr& operator=(const Expr&) = default;
    Expr& operator=(Expr&&) = default;
    ~Expr() = default;

private:
    Expr(std::shared_ptr<const Node> root, std::string text);

    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace fintstab
