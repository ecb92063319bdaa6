#ifndef BSS_PATHS_HPP
#define BSS_PATHS_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bss/machine.hpp"

namespace bss {

/// Exponent vector over the input variables x1..xn.
using Monomial = std::vector<unsigned>;

/// Graded lexicographic order, largest monomial first.
struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

using ExpandedPoly = std::map<Monomial, Scalar, GradedLexGreater>;

/// Node of a hash-consed polynomial DAG in the input variables.  Small polynomials
/// also carry their expanded canonical form; equal expanded forms share one node.
struct PolyNode {
    enum class Op { Const, Var, Add, Sub, Mul, Neg, Pow };
    Op op = Op::Const;
    Scalar value;       // Const
    std::size_t var = 0;  // Var: index of x_{var+1}
    unsigned exponent = 0;
    std::shared_ptr<const PolyNode> a, b;
    std::optional<ExpandedPoly> expanded;
    std::size_t id = 0;  // creation order within its arena
};

using Poly = std::shared_ptr<const PolyNode>;

/// Builds and interns polynomials over a fixed number of variables.
class PolyArena {
public:
    explicit PolyArena(std::size_t vars, std::size_t term_cap = 128);

    std::size_t vars() const { return vars_; }
    Poly constant(const Scalar& c);
    Poly var(std::size_t i);
    Poly add(const Poly& a, const Poly& b);
    Poly sub(const Poly& a, const Poly& b);
    Poly mul(const Poly& a, const Poly& b);
    Poly neg(const Poly& a);
    Poly pow(const Poly& a, unsigned e);
    /// Multiplies by a nonzero constant.
    Poly scale(const Poly& a, const Scalar& c);

    static bool is_constant(const Poly& p);
    static const Scalar& constant_value(const Poly& p);

private:
    Poly intern(PolyNode n);
    std::size_t vars_;
    std::size_t term_cap_;
    std::size_t next_id_ = 0;
    std::unordered_map<std::string, Poly> table_;
};

/// Canonical rendering: expanded polynomials as sums of terms in graded-lex order,
/// larger ones as a straight-line program `let t1 = ...; t2 = ...; in t2`.
std::string render(const Poly& p);

/// Quotient of polynomials; the denominator is nonzero on the cell that holds it.
struct RationalExpr {
    Poly num;
    Poly den;
};

std::string render(const RationalExpr& r);

enum class Relation { Geq, Lt, Eq, Ne };
std::string_view to_string(Relation r);

struct SignCondition {
    Poly poly;
    Relation rel = Relation::Geq;
    bool side = false;  // divisor-nonzero side condition rather than a branch test
};

struct Cell {
    std::size_t dim = 0;
    std::vector<std::string> path;
    std::vector<SignCondition> conditions;
    std::vector<RationalExpr> output;  // halting cells only
    bool truncated = false;
    std::string field = "Q";  // field generated by the constants in the cell
};

/// All paths of at most `depth` steps from the input node; halting cells end at an
/// output node, truncated cells ran out of depth.  Paths that divide by zero are
/// dropped.  Order: depth first, the 1-edge explored before the 0-edge.
/// Throws ParameterNotEncodable for stream parameters, UnsupportedNode for oracle
/// nodes or a symbolic default output length, DimensionMismatch.
std::vector<Cell> enumerate_paths(const Machine& m, std::size_t input_dim, std::size_t depth);

/// Values of DAG nodes at one point, reusable across cells from one enumeration.
class PointEvaluator {
public:
    explicit PointEvaluator(Word point);
    const Scalar& value(const Poly& p);
    Scalar value(const RationalExpr& r);
    const Word& point() const { return point_; }

private:
    Word point_;
    std::unordered_map<const PolyNode*, Scalar> memo_;
    std::vector<Poly> keep_;  // keeps memo keys alive
};

bool holds(PointEvaluator& at, const SignCondition& c);
/// Conditions are checked in path order and the check stops at the first failure.
bool cell_contains(const Cell& c, PointEvaluator& at);
bool cell_contains(const Cell& c, const Word& point);

bool check_equational(const Machine& m);

/// JSON array of cells; format_version included in each record's envelope.
std::string cells_to_json(const std::vector<Cell>& cells, const std::string& machine_name);

}  // namespace bss

#endif
