#include "fintstab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace fintstab {

struct Expr::Node {
    enum class Kind { Constant, Variable, Unary, Binary, Call } kind;
    double value = 0.0;          // Constant
    std::string name;            // Variable / Call
    char op = 0;                 // Unary ('-') / Binary
    std::shared_ptr<const Node> lhs, rhs;  // Binary; Unary/Call use lhs
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
        return e;
    }

private:
    // expression := term (('+'|'-') term)*
    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                const char op = take();
                lhs = binary(op, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*' || peek() == '/') {
                const char op = take();
                lhs = binary(op, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    // factor := unary ('^' factor)?   (right-associative power)
    NodePtr factor() {
        NodePtr base = unary();
        skip_ws();
        if (peek() == '^') {
            take();
            return binary('^', base, factor());
        }
        return base;
    }

    NodePtr unary() {
        skip_ws();
        if (peek() == '-') {
            take();
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::Unary;
            n->op = '-';
            n->lhs = unary();
            return n;
        }
        if (peek() == '+') {
            take();
            return unary();
        }
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            take();
            NodePtr e = expression();
            skip_ws();
            if (take() != ')') fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = identifier();
            skip_ws();
            if (peek() == '(') {
                take();
                auto n = std::make_shared<Expr::Node>();
                n->kind = Expr::Node::Kind::Call;
                n->name = std::move(name);
                n->lhs = expression();
                skip_ws();
                if (take() != ')') fail("expected ')' after function argument");
                return n;
            }
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::Variable;
            n->name = std::move(name);
            return n;
        }
        fail("unexpected character");
        return nullptr;
    }

    NodePtr number() {
        const char* start = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - start);
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Constant;
        n->value = v;
        return n;
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
        }
        return s_.substr(start, pos_ - start);
    }

    static NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Binary;
        n->op = op;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char take() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression parse error at offset " + std::to_string(pos_) + ": " + what +
                          " in \"" + s_ + "\"");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, const std::map<std::string, double>& vars) {
    using Kind = Expr::Node::Kind;
    switch (n.kind) {
        case Kind::Constant:
            return n.value;
        case Kind::Variable: {
            const auto it = vars.find(n.name);
            if (it == vars.end()) throw ConfigError("expression: unknown variable '" + n.name + "'");
            return it->second;
        }
        case Kind::Unary:
            return -eval_node(*n.lhs, vars);
        case Kind::Binary: {
            const double a = eval_node(*n.lhs, vars);
            const double b = eval_node(*n.rhs, vars);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            throw ConfigError("expression: bad operator");
        }
        case Kind::Call: {
            const double a = eval_node(*n.lhs, vars);
            if (n.name == "sin") return std::sin(a);
            if (n.name == "cos") return std::cos(a);
            if (n.name == "tan") return std::tan(a);
            if (n.name == "exp") return std::exp(a);
            if (n.name == "log") return std::log(a);
            if (n.name == "sqrt") return std::sqrt(a);
            if (n.name == "abs") return std::fabs(a);
            if (n.name == "floor") return std::floor(a);
            throw ConfigError("expression: unknown function '" + n.name + "'");
        }
    }
    throw ConfigError("expression: bad node");
}

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    return Expr(p.parse(), text);
}

double Expr::eval(const std::map<std::string, double>& vars) const {
    return eval_node(*root_, vars);
}

}  // namespace fintstab
