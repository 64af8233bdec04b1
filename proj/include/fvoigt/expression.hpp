#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvoigt {

/// A parsed arithmetic expression in one named variable. The grammar
/// covers numeric literals, the variable, the four operations, powers
/// with a literal exponent, and sin, cos, exp. Affine expressions are
/// recognized during parsing so a Lipschitz constant can be read off
/// without the caller resorting to sampling.
class Expression {
  public:
    static Expression parse(const std::string& text, const std::string& variable);

    double operator()(double v) const { return eval(root_, v); }

    bool affine() const { return affine_ok_; }
    double affine_slope() const {
        if (!affine_ok_) throw std::logic_error("Expression: not affine");
        return affine_slope_;
    }
    const std::string& text() const { return text_; }

  private:
    enum class Op { constant, variable, add, sub, mul, div, neg, pow, sin, cos, exp };

    struct Node {
        Op op;
        int left = -1;
        int right = -1;
        double value = 0.0;
    };

    struct Affinity {
        bool ok = false;
        double intercept = 0.0;
        double slope = 0.0;
    };

    std::string text_;
    std::vector<Node> nodes_;
    int root_ = -1;
    bool affine_ok_ = false;
    double affine_slope_ = 0.0;

    double eval(int idx, double v) const {
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        switch (n.op) {
            case Op::constant: return n.value;
            case Op::variable: return v;
            case Op::add: return eval(n.left, v) + eval(n.right, v);
            case Op::sub: return eval(n.left, v) - eval(n.right, v);
            case Op::mul: return eval(n.left, v) * eval(n.right, v);
            case Op::div: return eval(n.left, v) / eval(n.right, v);
            case Op::neg: return -eval(n.left, v);
            case Op::pow: return std::pow(eval(n.left, v), n.value);
            case Op::sin: return std::sin(eval(n.left, v));
            case Op::cos: return std::cos(eval(n.left, v));
            case Op::exp: return std::exp(eval(n.left, v));
        }
        return 0.0;
    }

    class Parser;
};

class Expression::Parser {
  public:
    Parser(const std::string& text, const std::string& variable, Expression& out)
        : text_(text), variable_(variable), out_(out) {}

    void run() {
        Result r = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character", pos_);
        out_.root_ = r.node;
        out_.affine_ok_ = r.aff.ok;
        out_.affine_slope_ = r.aff.slope;
    }

  private:
    struct Result {
        int node;
        Affinity aff;
    };

    const std::string& text_;
    const std::string& variable_;
    Expression& out_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        std::string msg = "expression: " + what;
        if (at < text_.size()) msg += " '" + std::string(1, text_[at]) + "'";
        msg += " at position " + std::to_string(at + 1);
        throw std::domain_error(msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int emit(Op op, int left = -1, int right = -1, double value = 0.0) {
        out_.nodes_.push_back({op, left, right, value});
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    Result parse_sum() {
        Result acc = parse_product();
        for (;;) {
            if (consume('+')) {
                Result rhs = parse_product();
                acc.node = emit(Op::add, acc.node, rhs.node);
                acc.aff = combine_linear(acc.aff, rhs.aff, +1.0);
            } else if (consume('-')) {
                Result rhs = parse_product();
                acc.node = emit(Op::sub, acc.node, rhs.node);
                acc.aff = combine_linear(acc.aff, rhs.aff, -1.0);
            } else {
                return acc;
            }
        }
    }

    Result parse_product() {
        Result acc = parse_unary();
        for (;;) {
            if (consume('*')) {
                Result rhs = parse_unary();
                acc.node = emit(Op::mul, acc.node, rhs.node);
                acc.aff = combine_product(acc.aff, rhs.aff);
            } else if (consume('/')) {
                Result rhs = parse_unary();
                acc.node = emit(Op::div, acc.node, rhs.node);
                acc.aff = combine_quotient(acc.aff, rhs.aff);
            } else {
                return acc;
            }
        }
    }

    Result parse_power() {
        Result base = parse_primary();
        skip_space();
        if (!consume('^')) return base;
        skip_space();
        const std::size_t at = pos_;
        double sign = 1.0;
        if (consume('-')) sign = -1.0;
        skip_space();
        if (pos_ >= text_.size() || !looks_numeric(text_[pos_]))
            fail("power needs a literal exponent", at < text_.size() ? at : text_.size() - 1);
        const double k = sign * read_number();
        Result r;
        r.node = emit(Op::pow, base.node, -1, k);
        r.aff.ok = base.aff.ok && (k == 0.0 || k == 1.0 || base.aff.slope == 0.0);
        if (r.aff.ok) {
            if (k == 1.0) {
                r.aff = base.aff;
            } else {
                r.aff.intercept = std::pow(base.aff.intercept, k);
                r.aff.slope = 0.0;
            }
        }
        return r;
    }

    Result parse_unary() {
        if (consume('-')) {
            Result inner = parse_unary();
            Result r;
            r.node = emit(Op::neg, inner.node);
            r.aff = inner.aff;
            r.aff.intercept = -r.aff.intercept;
            r.aff.slope = -r.aff.slope;
            return r;
        }
        return parse_power();
    }

    Result parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression", text_.empty() ? 0 : text_.size() - 1);
        const char c = text_[pos_];
        if (looks_numeric(c)) {
            Result r;
            const double v = read_number();
            r.node = emit(Op::constant, -1, -1, v);
            r.aff = {true, v, 0.0};
            return r;
        }
        if (c == '(') {
            ++pos_;
            Result inner = parse_sum();
            if (!consume(')')) fail("expected closing parenthesis", pos_);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            std::string name;
            while (pos_ < text_.size() &&
                   std::isalpha(static_cast<unsigned char>(text_[pos_])))
                name += text_[pos_++];
            if (name == variable_) {
                Result r;
                r.node = emit(Op::variable);
                r.aff = {true, 0.0, 1.0};
                return r;
            }
            Op op;
            if (name == "sin")
                op = Op::sin;
            else if (name == "cos")
                op = Op::cos;
            else if (name == "exp")
                op = Op::exp;
            else
                throw std::domain_error("expression: unknown identifier '" + name +
                                        "' at position " + std::to_string(at + 1));
            if (!consume('(')) fail("function call needs parentheses", pos_);
            Result inner = parse_sum();
            if (!consume(')')) fail("expected closing parenthesis", pos_);
            Result r;
            r.node = emit(op, inner.node);
            r.aff.ok = inner.aff.ok && inner.aff.slope == 0.0;
            if (r.aff.ok) {
                const double a = inner.aff.intercept;
                r.aff.intercept = op == Op::sin ? std::sin(a) : op == Op::cos ? std::cos(a)
                                                                              : std::exp(a);
            }
            return r;
        }
        fail("unexpected character", pos_);
    }

    static bool looks_numeric(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

    double read_number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    static Affinity combine_linear(const Affinity& l, const Affinity& r, double sign) {
        Affinity a;
        a.ok = l.ok && r.ok;
        if (a.ok) {
            a.intercept = l.intercept + sign * r.intercept;
            a.slope = l.slope + sign * r.slope;
        }
        return a;
    }

    static Affinity combine_product(const Affinity& l, const Affinity& r) {
        Affinity a;
        a.ok = l.ok && r.ok && (l.slope == 0.0 || r.slope == 0.0);
        if (a.ok) {
            a.intercept = l.intercept * r.intercept;
            a.slope = l.intercept * r.slope + r.intercept * l.slope;
        }
        return a;
    }

    static Affinity combine_quotient(const Affinity& l, const Affinity& r) {
        Affinity a;
        a.ok = l.ok && r.ok && r.slope == 0.0 && r.intercept != 0.0;
        if (a.ok) {
            a.intercept = l.intercept / r.intercept;
            a.slope = l.slope / r.intercept;
        }
        return a;
    }
};

inline Expression Expression::parse(const std::string& text, const std::string& variable) {
    Expression e;
    e.text_ = text;
    Parser p(text, variable, e);
    p.run();
    return e;
}

}  // namespace fvoigt
