#include "bss/expr.hpp"

#include "bss/error.hpp"

namespace bss {

ExprPtr Expr::constant(Scalar v) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Const;
    e->value = std::move(v);
    return e;
}

ExprPtr Expr::cell_ref(long index) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Cell;
    e->cell = index;
    return e;
}

ExprPtr Expr::param(std::string name) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Param;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::binary(Op op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
}

ExprPtr Expr::neg(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Neg;
    e->args = {std::move(a)};
    return e;
}

ExprPtr Expr::pow(ExprPtr a, unsigned exponent) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Pow;
    e->exponent = exponent;
    e->args = {std::move(a)};
    return e;
}

namespace {

bool same_scalar(const Scalar& a, const Scalar& b) {
    if (a.is_stream() || b.is_stream()) return a.is_stream() && b.is_stream() && a.stream().same_node(b.stream());
    if (a.is_integer() != b.is_integer()) return false;
    return compare(a, b) == Sign::Zero;
}

}  // namespace

bool same_expr(const Expr& a, const Expr& b) {
    if (a.op != b.op || a.args.size() != b.args.size()) return false;
    switch (a.op) {
    case Expr::Op::Const:
        if (!same_scalar(a.value, b.value)) return false;
        break;
    case Expr::Op::Cell:
        if (a.cell != b.cell) return false;
        break;
    case Expr::Op::Param:
        if (a.name != b.name) return false;
        break;
    case Expr::Op::Pow:
        if (a.exponent != b.exponent) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_expr(*a.args[i], *b.args[i])) return false;
    return true;
}

namespace {

// precedence: 1 additive, 2 multiplicative, 3 unary, 4 power, 5 atom
int precedence(const Expr& e) {
    switch (e.op) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div: return 2;
    case Expr::Op::Neg: return 3;
    case Expr::Op::Pow: return 4;
    case Expr::Op::Const:
        if (e.value.is_exact_rational() && sgn(e.value.to_rational()) < 0) return 3;
        if (e.value.is_rational() && e.value.to_rational().get_den() != 1) return 4;
        return 5;
    default: return 5;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    std::string s = render(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string render(const Expr& e) {
    switch (e.op) {
    case Expr::Op::Const: return e.value.to_string();
    case Expr::Op::Cell: return "x" + std::to_string(e.cell);
    case Expr::Op::Param: return e.name;
    case Expr::Op::Add: return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case Expr::Op::Sub: return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case Expr::Op::Mul: return wrap(*e.args[0], 2) + " * " + wrap(*e.args[1], 3);
    case Expr::Op::Div: return wrap(*e.args[0], 2) + " / " + wrap(*e.args[1], 3);
    case Expr::Op::Neg: {
        // a bare literal after '-' would be read back as a negative constant
        const bool literal = e.args[0]->op == Expr::Op::Const;
        return "-" + (literal ? "(" + render(*e.args[0]) + ")" : wrap(*e.args[0], 3));
    }
    case Expr::Op::Pow: return wrap(*e.args[0], 5) + "^" + std::to_string(e.exponent);
    }
    return "?";
}

void collect_cells(const Expr& e, std::set<long>& out) {
    if (e.op == Expr::Op::Cell) out.insert(e.cell);
    for (const auto& a : e.args) collect_cells(*a, out);
}

void collect_params(const Expr& e, std::set<std::string>& out) {
    if (e.op == Expr::Op::Param) out.insert(e.name);
    for (const auto& a : e.args) collect_params(*a, out);
}

bool mentions_cells(const Expr& e) {
    if (e.op == Expr::Op::Cell) return true;
    for (const auto& a : e.args)
        if (mentions_cells(*a)) return true;
    return false;
}

bool is_polynomial_in_cells(const Expr& e) {
    if (e.op == Expr::Op::Div && mentions_cells(*e.args[1])) return false;
    for (const auto& a : e.args)
        if (!is_polynomial_in_cells(*a)) return false;
    return true;
}

Scalar evaluate(const Expr& e, const std::function<Scalar(long)>& cell,
                const std::function<Scalar(const std::string&)>& param) {
    switch (e.op) {
    case Expr::Op::Const: return e.value;
    case Expr::Op::Cell: return cell(e.cell);
    case Expr::Op::Param: return param(e.name);
    case Expr::Op::Neg: return negate(evaluate(*e.args[0], cell, param));
    case Expr::Op::Pow: return power(evaluate(*e.args[0], cell, param), e.exponent);
    default: break;
    }
    Scalar a = evaluate(*e.args[0], cell, param);
    Scalar b = evaluate(*e.args[1], cell, param);
    switch (e.op) {
    case Expr::Op::Add: return a + b;
    case Expr::Op::Sub: return a - b;
    case Expr::Op::Mul: return a * b;
    case Expr::Op::Div: return a / b;
    default: break;
    }
    throw Error(ErrorKind::UnsupportedNode, "bad expression");
}

}  // namespace bss
