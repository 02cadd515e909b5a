#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "util.hpp"

namespace nifslab {

struct Expr::Node {
    enum class Op { num, var_t, var_j, imag_unit, neg, add, sub, mul, div, pow };
    Op op = Op::num;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = value;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expression();
        skip_space();
        if (pos_ != text_.size()) error("trailing characters");
        return e;
    }

private:
    NodePtr expression() {
        NodePtr lhs = term();
        while (true) {
            skip_space();
            if (accept('+'))
                lhs = make(Node::Op::add, lhs, term());
            else if (accept('-'))
                lhs = make(Node::Op::sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (true) {
            skip_space();
            if (accept('*'))
                lhs = make(Node::Op::mul, lhs, factor());
            else if (accept('/'))
                lhs = make(Node::Op::div, lhs, factor());
            else
                return lhs;
        }
    }

    NodePtr factor() {
        NodePtr base = unary();
        skip_space();
        if (accept('^')) return make(Node::Op::pow, base, factor()); // right associative
        return base;
    }

    NodePtr unary() {
        skip_space();
        if (accept('-')) return make(Node::Op::neg, unary());
        return primary();
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) error("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            skip_space();
            if (!accept(')')) error("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == 't') {
            ++pos_;
            return make(Node::Op::var_t);
        }
        if (c == 'j') {
            ++pos_;
            return make(Node::Op::var_j);
        }
        if (c == 'i') {
            ++pos_;
            return make(Node::Op::imag_unit);
        }
        error(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
            ++end;
        // allow exponents like 1e-3
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t mark = end + 1;
            if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
            if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
                ++mark;
                while (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) ++mark;
                end = mark;
            }
        }
        const std::string token = text_.substr(pos_, end - pos_);
        try {
            const double v = std::stod(token);
            pos_ = end;
            return make(Node::Op::num, nullptr, nullptr, v);
        } catch (const std::exception&) {
            error("bad numeric literal '" + token + "'");
        }
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void error(const std::string& what) {
        fail(Errc::parse, "expression \"" + text_ + "\": " + what + " at offset " + std::to_string(pos_));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

Complex eval_node(const Node& n, Complex t, int level) {
    switch (n.op) {
    case Node::Op::num: return Complex(n.value, 0.0);
    case Node::Op::var_t: return t;
    case Node::Op::var_j: return Complex(static_cast<double>(level), 0.0);
    case Node::Op::imag_unit: return Complex(0.0, 1.0);
    case Node::Op::neg: return -eval_node(*n.lhs, t, level);
    case Node::Op::add: return eval_node(*n.lhs, t, level) + eval_node(*n.rhs, t, level);
    case Node::Op::sub: return eval_node(*n.lhs, t, level) - eval_node(*n.rhs, t, level);
    case Node::Op::mul: return eval_node(*n.lhs, t, level) * eval_node(*n.rhs, t, level);
    case Node::Op::div: return eval_node(*n.lhs, t, level) / eval_node(*n.rhs, t, level);
    case Node::Op::pow: {
        const Complex base = eval_node(*n.lhs, t, level);
        const Complex exponent = eval_node(*n.rhs, t, level);
        if (exponent.imag() == 0.0 && exponent.real() == std::floor(exponent.real()) &&
            std::abs(exponent.real()) <= 64.0) {
            // exact small integer powers, the common case in map rules
            Complex acc(1.0, 0.0);
            const int k = static_cast<int>(std::abs(exponent.real()));
            for (int it = 0; it < k; ++it) acc *= base;
            return exponent.real() < 0 ? Complex(1.0, 0.0) / acc : acc;
        }
        return std::pow(base, exponent);
    }
    }
    fail(Errc::internal, "unreachable expression node");
}

bool mentions(const Node& n, Node::Op what) {
    if (n.op == what) return true;
    if (n.lhs && mentions(*n.lhs, what)) return true;
    if (n.rhs && mentions(*n.rhs, what)) return true;
    return false;
}

} // namespace

Expr Expr::parse(const std::string& text) {
    Expr e;
    e.root_ = Parser(text).run();
    e.text_ = text;
    return e;
}

Expr Expr::constant(Complex value) {
    Expr e;
    if (value.imag() == 0.0) {
        e.root_ = make(Node::Op::num, nullptr, nullptr, value.real());
    } else {
        auto re = make(Node::Op::num, nullptr, nullptr, value.real());
        auto im = make(Node::Op::num, nullptr, nullptr, value.imag());
        e.root_ = make(Node::Op::add, re, make(Node::Op::mul, im, make(Node::Op::imag_unit)));
    }
    std::ostringstream os;
    os << value.real();
    if (value.imag() != 0.0) os << "+" << value.imag() << "*i";
    e.text_ = os.str();
    return e;
}

Complex Expr::eval(Complex t, int level) const {
    if (!root_) fail(Errc::internal, "evaluating empty expression");
    return eval_node(*root_, t, level);
}

bool Expr::depends_on_t() const { return root_ && mentions(*root_, Node::Op::var_t); }
bool Expr::depends_on_level() const { return root_ && mentions(*root_, Node::Op::var_j); }

} // namespace nifslab
