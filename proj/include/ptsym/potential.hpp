#pragma once

// Recursive-descent parser and evaluator for 1D potential expressions.
//
// Grammar (standard precedence, ^ binds tightest and is right-associative,
// unary minus sits between ^ and * /):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
//   func    := exp | sin | cos | tanh | abs | sqrt

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "ptsym/errors.hpp"

namespace ptsym {

namespace expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Exp, Sin, Cos, Tanh, Abs, Sqrt };

struct Node {
    enum class Kind { Constant, Variable, Unary, Binary, Call };

    Kind kind;
    double value = 0.0;               // Constant
    BinaryOp op = BinaryOp::Add;      // Binary
    Func func = Func::Exp;            // Call
    std::unique_ptr<Node> lhs, rhs;   // Unary/Call use lhs only
};

/// x^e with an exact repeated-multiplication path for small integer
/// exponents, so that even powers evaluate bitwise-symmetrically in x.
inline double power(double base, double exponent) {
    const double rounded = std::nearbyint(exponent);
    if (rounded == exponent && std::abs(rounded) <= 64.0) {
        long n = static_cast<long>(rounded);
        const bool negative = n < 0;
        n = negative ? -n : n;
        double result = 1.0;
        double factor = base;
        while (n > 0) {
            if (n & 1) result *= factor;
            factor *= factor;
            n >>= 1;
        }
        return negative ? 1.0 / result : result;
    }
    return std::pow(base, exponent);
}

inline double eval(const Node& node, double x) {
    switch (node.kind) {
    case Node::Kind::Constant: return node.value;
    case Node::Kind::Variable: return x;
    case Node::Kind::Unary: return -eval(*node.lhs, x);
    case Node::Kind::Binary: {
        const double a = eval(*node.lhs, x);
        const double b = eval(*node.rhs, x);
        switch (node.op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div: return a / b;
        case BinaryOp::Pow: return power(a, b);
        }
        return 0.0;
    }
    case Node::Kind::Call: {
        const double a = eval(*node.lhs, x);
        switch (node.func) {
        case Func::Exp: return std::exp(a);
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Tanh: return std::tanh(a);
        case Func::Abs: return std::abs(a);
        case Func::Sqrt: return std::sqrt(a);
        }
        return 0.0;
    }
    }
    return 0.0;
}

inline const char* func_name(Func f) {
    switch (f) {
    case Func::Exp: return "exp";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tanh: return "tanh";
    case Func::Abs: return "abs";
    case Func::Sqrt: return "sqrt";
    }
    return "?";
}

inline void format(const Node& node, std::string& out) {
    switch (node.kind) {
    case Node::Kind::Constant: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", node.value);
        out += buf;
        return;
    }
    case Node::Kind::Variable: out += 'x'; return;
    case Node::Kind::Unary:
        out += "(-";
        format(*node.lhs, out);
        out += ')';
        return;
    case Node::Kind::Binary: {
        const char symbol = node.op == BinaryOp::Add   ? '+'
                            : node.op == BinaryOp::Sub ? '-'
                            : node.op == BinaryOp::Mul ? '*'
                            : node.op == BinaryOp::Div ? '/'
                                                       : '^';
        out += '(';
        format(*node.lhs, out);
        out += symbol;
        format(*node.rhs, out);
        out += ')';
        return;
    }
    case Node::Kind::Call:
        out += func_name(node.func);
        out += '(';
        format(*node.lhs, out);
        out += ')';
        return;
    }
}

} // namespace expr

/// An immutable potential V(x). Copies share the parsed tree.
class PotentialExpr {
public:
    explicit PotentialExpr(std::shared_ptr<const expr::Node> root) : root_(std::move(root)) {}

    double operator()(double x) const { return expr::eval(*root_, x); }

    /// Re-parseable text form (fully parenthesized).
    std::string to_string() const {
        std::string out;
        expr::format(*root_, out);
        return out;
    }

private:
    std::shared_ptr<const expr::Node> root_;
};

namespace expr {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::unique_ptr<Node> run() {
        skip_whitespace();
        if (at_end()) throw SyntaxError("empty expression", 0);
        auto node = parse_expression();
        skip_whitespace();
        if (!at_end()) throw SyntaxError("unexpected trailing input", pos_);
        return node;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_whitespace() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_whitespace();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::unique_ptr<Node> parse_expression() {
        auto node = parse_term();
        for (;;) {
            if (consume('+')) {
                node = make_binary(BinaryOp::Add, std::move(node), parse_term());
            } else if (consume('-')) {
                node = make_binary(BinaryOp::Sub, std::move(node), parse_term());
            } else {
                return node;
            }
        }
    }

    std::unique_ptr<Node> parse_term() {
        auto node = parse_unary();
        for (;;) {
            if (consume('*')) {
                node = make_binary(BinaryOp::Mul, std::move(node), parse_unary());
            } else if (consume('/')) {
                node = make_binary(BinaryOp::Div, std::move(node), parse_unary());
            } else {
                return node;
            }
        }
    }

    std::unique_ptr<Node> parse_unary() {
        if (consume('-')) {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::Unary;
            node->lhs = parse_unary();
            return node;
        }
        return parse_power();
    }

    std::unique_ptr<Node> parse_power() {
        auto base = parse_primary();
        if (consume('^')) {
            // Right-associative; the exponent may carry its own unary minus.
            return make_binary(BinaryOp::Pow, std::move(base), parse_unary());
        }
        return base;
    }

    std::unique_ptr<Node> parse_primary() {
        skip_whitespace();
        if (at_end()) throw SyntaxError("unexpected end of expression", pos_);
        const char c = peek();

        if (c == '(') {
            ++pos_;
            auto node = parse_expression();
            if (!consume(')')) throw SyntaxError("expected ')'", pos_);
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::unique_ptr<Node> parse_number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
            ++end;
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp_end = end + 1;
            if (exp_end < text_.size() && (text_[exp_end] == '+' || text_[exp_end] == '-'))
                ++exp_end;
            if (exp_end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp_end]))) {
                end = exp_end;
                while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end])))
                    ++end;
            }
        }
        double value = 0.0;
        const auto result = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (result.ec != std::errc() || result.ptr != text_.data() + end)
            throw SyntaxError("malformed number", start);
        pos_ = end;
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Constant;
        node->value = value;
        return node;
    }

    std::unique_ptr<Node> parse_identifier() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                             text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));

        if (name == "x") {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::Variable;
            return node;
        }

        const bool is_call = [&] {
            const std::size_t saved = pos_;
            skip_whitespace();
            const bool paren = peek() == '(';
            pos_ = saved;
            return paren;
        }();

        if (!is_call) throw UnknownIdentifierError(name, start);

        Func func;
        if (name == "exp") func = Func::Exp;
        else if (name == "sin") func = Func::Sin;
        else if (name == "cos") func = Func::Cos;
        else if (name == "tanh") func = Func::Tanh;
        else if (name == "abs") func = Func::Abs;
        else if (name == "sqrt") func = Func::Sqrt;
        else throw UnknownFunctionError(name, start);

        if (!consume('(')) throw SyntaxError("expected '(' after function name", pos_);
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Call;
        node->func = func;
        node->lhs = parse_expression();
        if (!consume(')')) throw SyntaxError("expected ')'", pos_);
        return node;
    }

    static std::unique_ptr<Node> make_binary(BinaryOp op, std::unique_ptr<Node> lhs,
                                             std::unique_ptr<Node> rhs) {
        auto node = std::make_unique<Node>();
        node->kind = Node::Kind::Binary;
        node->op = op;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }
};

} // namespace expr

inline PotentialExpr parse_potential(std::string_view text) {
    expr::Parser parser(text);
    return PotentialExpr(std::shared_ptr<const expr::Node>(parser.run()));
}

} // namespace ptsym
