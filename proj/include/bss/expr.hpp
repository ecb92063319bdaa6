#ifndef BSS_EXPR_HPP
#define BSS_EXPR_HPP

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bss/scalar.hpp"

namespace bss {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Rational expression over tape cells and named parameters.
struct Expr {
    enum class Op { Const, Cell, Param, Add, Sub, Mul, Div, Neg, Pow };

    Op op = Op::Const;
    Scalar value;       // Const
    long cell = 0;      // Cell
    std::string name;   // Param
    unsigned exponent = 0;  // Pow
    std::vector<ExprPtr> args;

    static ExprPtr constant(Scalar v);
    static ExprPtr cell_ref(long index);
    static ExprPtr param(std::string name);
    static ExprPtr binary(Op op, ExprPtr a, ExprPtr b);
    static ExprPtr neg(ExprPtr a);
    static ExprPtr pow(ExprPtr a, unsigned exponent);
};

inline ExprPtr operator+(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Op::Add, std::move(a), std::move(b)); }
inline ExprPtr operator-(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Op::Sub, std::move(a), std::move(b)); }
inline ExprPtr operator*(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Op::Mul, std::move(a), std::move(b)); }
inline ExprPtr operator/(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Op::Div, std::move(a), std::move(b)); }
inline ExprPtr operator-(ExprPtr a) { return Expr::neg(std::move(a)); }

/// Structural equality; constants compare by exact value.
bool same_expr(const Expr& a, const Expr& b);

/// Surface syntax used by the machine DSL, e.g. `(x1 + 2 / x1) / 2`.
std::string render(const Expr& e);

void collect_cells(const Expr& e, std::set<long>& out);
void collect_params(const Expr& e, std::set<std::string>& out);
/// True if no division has a divisor that mentions a cell.
bool is_polynomial_in_cells(const Expr& e);
bool mentions_cells(const Expr& e);

/// Evaluates with the given cell and parameter lookups; arithmetic errors propagate.
Scalar evaluate(const Expr& e, const std::function<Scalar(long)>& cell,
                const std::function<Scalar(const std::string&)>& param);

}  // namespace bss

#endif
