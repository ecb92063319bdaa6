#ifndef BSS_STRUCTURES_HPP
#define BSS_STRUCTURES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bss/machine.hpp"

namespace bss {

using Natural = std::uint64_t;

/// Cantor pairing (a+b)(a+b+1)/2 + b.
Natural pair(Natural a, Natural b);
std::pair<Natural, Natural> unpair(Natural z);

struct Signature {
    std::map<std::string, int> relations;
    std::map<std::string, int> functions;
    std::vector<std::string> constants;
};

/// Throws SignatureMismatch on negative arities or a name used twice.
void check_signature(const Signature& sig);

/// A relation given by a machine that halts exactly on members, optionally with a
/// second machine halting exactly on non-members.  Without a complement the
/// decider must halt everywhere with output 1 or 0.
struct RelationDecider {
    Machine member;
    std::optional<Machine> complement;
};

struct RStructure {
    Signature sig;
    std::size_t element_length = 1;  // universe elements are words of this length
    Machine universe;                // halts exactly on elements
    std::map<std::string, RelationDecider> relations;  // inputs: concatenated arguments
    std::map<std::string, Machine> functions;          // output: the value word
    std::map<std::string, Word> constants;
    Oracle oracle;  // consulted by oracle nodes; may be empty
    /// Explicit element list for finite structures.
    std::optional<std::vector<Word>> finite_universe;
    /// Explicit relation tables, when known independently of the machines.
    std::map<std::string, std::vector<std::vector<Word>>> tables;
};

using PairSet = std::set<std::pair<Natural, Natural>>;

/// Machine over the stream backend with parameter `ell` (bound through the stream
/// source name "ell"): on input (i) it halts with output (1) iff digit i of ell is 1.
/// With `complement`, it halts with output (0) iff the digit is 0.  Digit 0 has
/// weight 1.
Machine build_digit_extractor(const Scalar& ell, bool complement = false);

/// Same loop preceded by the pairing chain: input (a, b), digit index pair(a, b).
Machine build_pair_extractor(const Scalar& ell, bool complement = false);

/// The stream real with digit pair(a,b) equal to 1 iff (a,b) is in D.
Scalar order_real(const PairSet& d);

struct OrderPresentation {
    PairSet d;
    Scalar ell;
};

/// Throws NotAStrictOrder unless D is irreflexive, transitive and total on its field.
void check_strict_order(const PairSet& d);
std::pair<OrderPresentation, RStructure> build_order_structure(const PairSet& d);

/// V^n: elements are words of length n; functions add(u, v) and scale(c, v).
RStructure vs_make(std::size_t n, Backend backend = Backend::RationalField);
std::vector<Word> vs_basis(std::size_t n);

struct VsIso {
    Machine forward;  // (l1..ln) -> sum li*ai
    std::function<Word(const Word&)> inverse;  // test oracle, not a machine
};

/// Throws DependentBasis when the target vectors are linearly dependent, and
/// DimensionMismatch when their lengths differ or the count is not n.
VsIso vs_iso(std::size_t n, const std::vector<Word>& target_basis);

/// Rank of the vectors by exact elimination.
std::size_t rank_of(const std::vector<Word>& vectors);

/// Disjoint union of cycles: for n >= n_min a cycle of length 2n when S(n), 2n+1
/// otherwise.  Vertices are pairs (n, j).  With n_max the universe is finite.
RStructure cycle_graph_structure(Oracle s, Natural n_min = 2, std::optional<Natural> n_max = std::nullopt);
Natural cycle_length(const Oracle& s, Natural n);

struct FiniteRelation {
    int arity = 2;
    std::vector<std::vector<Natural>> tuples;
};

/// Structure on the naturals 0..size-1 with relations given by explicit tables;
/// the decider machines test membership through a product of squared distances.
RStructure finite_structure(std::size_t size, const std::map<std::string, FiniteRelation>& relations);

/// Machine over the rationals on inputs of length `arity`.  As a decider it halts
/// with (1) on listed tuples and (0) elsewhere; as a semi-decider it halts with the
/// empty word on listed tuples and loops elsewhere.
Machine table_machine(std::size_t arity, const std::vector<std::vector<Natural>>& tuples, bool semi = false);

enum class Truth { False, True, Unknown };
std::string_view to_string(Truth t);
inline Truth truth(bool b) { return b ? Truth::True : Truth::False; }

struct Term {
    enum class Kind { Literal, Variable, Constant, Apply } kind = Kind::Literal;
    Word literal;
    std::string name;
    std::vector<Term> args;
};

/// R(t1..tk) or t1 = t2.
struct Atom {
    std::string relation;  // "=" for equality
    std::vector<Term> args;
};

using Valuation = std::map<std::string, Word>;

/// Infix atomic sentences: `0 < 2`, `E((2,0),(2,2))`, `add((1,0),(0,1)) = (1,1)`.
/// A leading `not` negates.
std::pair<Atom, bool> parse_atomic(std::string_view text, const Signature& sig);

/// Value of a closed term (after substituting the assignment); nullopt when a
/// function machine does not halt within the budget.
std::optional<Word> eval_term(const RStructure& s, const Term& t, const Valuation& asg, std::size_t budget);

/// Throws SignatureMismatch for unknown symbols or wrong arities.
Truth atomic_truth(const RStructure& s, const Atom& a, const Valuation& asg, std::size_t budget);
Truth atomic_truth(const RStructure& s, std::string_view sentence, std::size_t budget);

}  // namespace bss

#endif
