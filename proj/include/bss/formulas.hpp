#ifndef BSS_FORMULAS_HPP
#define BSS_FORMULAS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bss/structures.hpp"

namespace bss {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, Not, And, Or, Exists, Forall, OrEnum, AndEnum, Limit };
    Kind kind = Kind::Atom;
    bss::Atom atom;
    std::vector<FormulaPtr> children;  // body is children[0] for binders
    std::vector<std::string> vars;     // bound variables, or the index variable
    // countable nodes: indices are the naturals on which `index_set` halts
    std::shared_ptr<const Machine> index_set;
    std::optional<Natural> bound;  // declared: indices are < bound
    std::string field = "Q";       // parameter field tag, recorded only
};

FormulaPtr atom(bss::Atom a);
FormulaPtr negation(FormulaPtr f);
FormulaPtr conjunction(std::vector<FormulaPtr> fs);
FormulaPtr disjunction(std::vector<FormulaPtr> fs);
FormulaPtr exists(std::vector<std::string> vars, FormulaPtr body);
FormulaPtr forall(std::vector<std::string> vars, FormulaPtr body);
FormulaPtr or_enum(std::string index, std::shared_ptr<const Machine> index_set, std::optional<Natural> bound, FormulaPtr body);
FormulaPtr and_enum(std::string index, std::shared_ptr<const Machine> index_set, std::optional<Natural> bound, FormulaPtr body);

/// S-expressions:
///   (atom R t ...) (= t t) (not f) (and f ...) (or f ...) (implies f g)
///   (exists (y ...) f) (forall (y ...) f)
///   (or-enum (machine "idx.bss") (i) [(bound N)] [(field "Q")] f), and-enum alike
///   (limit ...) for transfinite levels
/// Terms: a symbol (variable or constant), a scalar literal, (word s ...), or
/// (f t ...) for a function symbol.  Machine paths are relative to `base_dir`.
FormulaPtr parse_formula(std::string_view text, const Signature& sig, const std::string& base_dir = ".");
FormulaPtr load_formula_file(const std::string& path, const Signature& sig);
std::string render(const Formula& f);

/// Negation normal form: negations only directly above atoms.
FormulaPtr nnf(const FormulaPtr& f);

struct Level {
    enum class Kind { Delta0, Sigma, Pi };
    unsigned n = 0;
    Kind kind = Kind::Delta0;
    bool operator==(const Level& o) const { return n == o.n && kind == o.kind; }
};
std::string to_string(const Level& l);

/// Least finite level of the negation normal form.  Throws TransfiniteNotSupported.
Level classify(const FormulaPtr& f);

/// Tarskian truth over s.finite_universe; relation tables are used when present,
/// otherwise the deciders with `machine_budget`.  Throws InfiniteUniverse,
/// UnboundedEnumerator.
bool eval_finite(const RStructure& s, const FormulaPtr& f, const Valuation& asg, std::size_t machine_budget = 1000000);

/// Witness candidates for quantified variables.
struct Witnesses {
    std::function<std::optional<Word>(Natural)> nth;  // nullopt past the end
    bool exhaustive = false;  // the list covers the whole universe

    static Witnesses list(std::vector<Word> words, bool exhaustive = false);
    /// Rationals p/q in order of max(|p|, q), for one-element words.
    static Witnesses rational_grid();
};

/// Dovetailed search of at most `budget` stages, each machine run limited to
/// `budget` steps.  Sigma_1: true or unknown, and false only by exhaustion of
/// exhaustive witnesses and bounded indices.  Pi_1 dually.  Throws LevelTooHigh.
Truth eval_budgeted(const RStructure& s, const FormulaPtr& f, const Valuation& asg, const Witnesses& w, std::size_t budget);

}  // namespace bss

#endif
