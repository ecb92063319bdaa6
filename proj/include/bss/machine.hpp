#ifndef BSS_MACHINE_HPP
#define BSS_MACHINE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bss/expr.hpp"
#include "bss/scalar.hpp"

namespace bss {

using Word = std::vector<Scalar>;

std::string render(const Word& w);
/// Parses a comma-separated list of scalar literals ("" is the empty word).
Word parse_word(std::string_view text);
/// Exact equality of words; stream entries are equal only to the same stream.
bool same_word(const Word& a, const Word& b);

/// Bi-infinite tape with finite support.  Logical cell i lives at support[i + offset].
class Tape {
public:
    Scalar get(long i) const;
    void set(long i, Scalar v);
    void shift_left() { ++offset_; }   // new x_i = old x_{i+1}
    void shift_right() { --offset_; }  // new x_i = old x_{i-1}

    long offset() const { return offset_; }
    const std::map<long, Scalar>& support() const { return support_; }

    friend bool operator==(const Tape& a, const Tape& b);

private:
    long offset_ = 0;
    std::map<long, Scalar> support_;
};

enum class NodeKind { Input, Compute, Branch, Shift, Output, Oracle };
enum class EdgeLabel { Next, Zero, One };
enum class BranchRel { Geq, Eq };

std::string_view to_string(NodeKind k);

struct Assignment {
    long cell = 0;
    ExprPtr expr;
};

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Output;
    /// Input placement, output extraction or oracle query; nullopt selects the
    /// length-tagged default (cell 0 holds the length, cells 1.. the entries).
    std::optional<std::vector<long>> cells;
    std::vector<Assignment> assignments;  // Compute
    ExprPtr test;                          // Branch
    BranchRel rel = BranchRel::Geq;        // Branch
    bool left = true;                      // Shift
    long target = 0;                       // Oracle
};

struct Edge {
    std::string from;
    std::string to;
    EdgeLabel label = EdgeLabel::Next;
};

struct Machine {
    std::string name = "machine";
    Backend backend = Backend::RationalField;
    bool equational = false;
    std::vector<std::pair<std::string, Scalar>> params;
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    Machine& add_node(Node n);
    Machine& add_edge(std::string from, std::string to, EdgeLabel label = EdgeLabel::Next);
    Machine& add_param(std::string name, Scalar value);

    const Node* find(const std::string& id) const;
    std::optional<Scalar> param(const std::string& name) const;
};

// Node constructors.
Node input_node(std::string id, std::optional<std::vector<long>> cells = std::nullopt);
Node compute_node(std::string id, std::vector<Assignment> assignments);
Node branch_node(std::string id, ExprPtr test, BranchRel rel = BranchRel::Geq);
Node shift_node(std::string id, bool left);
Node output_node(std::string id, std::optional<std::vector<long>> cells = std::nullopt);
Node oracle_node(std::string id, std::optional<std::vector<long>> query, long target);

struct Violation {
    std::string node;  // empty for machine-wide violations
    std::string clause;
};

std::vector<Violation> validate(const Machine& m);
/// Throws ValidationError listing every violation.
void require_valid(const Machine& m);

/// Node indices in canonical order: breadth first from the input node, 1-edges
/// before 0-edges, then unreachable nodes in insertion order.
std::vector<std::size_t> canonical_order(const Machine& m);

/// Total membership test for the oracle set X.
using Oracle = std::function<bool(const Word&)>;

struct Config {
    std::string node;
    Tape tape;
    std::size_t steps = 0;
};

enum class OutcomeKind { Halted, OutOfBudget, Stuck };
enum class StuckReason { DivisionByZero, IndeterminateBranch, OracleUnavailable, IndeterminateOperand, MalformedOutput };

std::string_view to_string(OutcomeKind k);
std::string_view to_string(StuckReason r);

struct RunOutcome {
    OutcomeKind kind = OutcomeKind::OutOfBudget;
    Word output;               // Halted
    std::size_t steps = 0;     // node visits, including the output node when halted
    Config last;               // configuration where the run ended
    StuckReason reason = StuckReason::DivisionByZero;  // Stuck
    std::string detail;

    bool halted() const { return kind == OutcomeKind::Halted; }
};

/// Same outcome class, and for Halted the same output word.
bool same_outcome(const RunOutcome& a, const RunOutcome& b);
std::string describe(const RunOutcome& r);

struct TraceEvent {
    std::size_t step = 0;
    std::string node;
    long offset = 0;
    std::vector<std::pair<long, Scalar>> touched;  // cells written by this step, after the write
};

using TraceHook = std::function<void(const TraceEvent&)>;

/// A validated machine with resolved edges, shared by step() and run().
class Program {
public:
    explicit Program(Machine m);  // throws ValidationError

    const Machine& machine() const { return m_; }
    std::size_t input_index() const { return input_; }
    std::size_t index(const std::string& id) const;
    /// Successor of node i along the given label.
    std::size_t next(std::size_t i, EdgeLabel label) const;
    const Scalar& param_value(const std::string& name) const;

private:
    Machine m_;
    std::size_t input_ = 0;
    std::map<std::string, std::size_t> index_;
    std::vector<std::array<std::size_t, 3>> next_;
    std::map<std::string, Scalar> params_;
};

struct StepResult {
    enum class Kind { Continue, Halt, Stuck } kind = Kind::Continue;
    Word output;
    StuckReason reason = StuckReason::DivisionByZero;
    std::string detail;
    std::vector<std::pair<long, Scalar>> touched;
};

/// Applies the node at c.node (the input node consumes `input`) and advances c.
StepResult step(const Program& p, Config& c, const Word& input, const Oracle* oracle = nullptr);

RunOutcome run(const Program& p, const Word& input, std::size_t budget, const Oracle* oracle = nullptr,
               const TraceHook& trace = {});
RunOutcome run(const Machine& m, const Word& input, std::size_t budget, const Oracle* oracle = nullptr);

/// Flat word code of the machine; throws UnencodableParameter for stream parameters.
Word encode_machine(const Machine& m);
/// Inverse of encode_machine; nodes are named n0, n1, ... and parameters p0, p1, ...
/// Throws DecodeError.
Machine decode_machine(const Word& w);

/// Equality up to renaming of nodes and parameters (compared in canonical order).
bool structurally_equal(const Machine& a, const Machine& b);

}  // namespace bss

#endif
