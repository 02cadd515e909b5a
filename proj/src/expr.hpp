#pragma once

#include <complex>
#include <memory>
#include <string>

namespace nifslab {

using Complex = std::complex<double>;

// Arithmetic expression in the parameter `t` (complex) and the level `j`
// (integer), used by map rules loaded from family configurations.
// Grammar: + - * / ^ (right-assoc), unary minus, parentheses, decimal
// literals, and the symbols t, j, i (imaginary unit).
class Expr {
public:
    static Expr parse(const std::string& text);
    static Expr constant(Complex value);

    Complex eval(Complex t, int level) const;
    bool depends_on_t() const;
    bool depends_on_level() const;
    const std::string& text() const { return text_; }

private:
    struct Node;
    Expr() = default;
    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace nifslab
