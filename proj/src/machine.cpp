#include "bss/machine.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "bss/error.hpp"

namespace bss {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr long kMaxOutputLength = 1 << 20;

std::size_t label_slot(EdgeLabel l) { return static_cast<std::size_t>(l); }
}  // namespace

std::string render(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += w[i].to_string();
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word w;
    std::size_t start = 0;
    int depth = 0;
    bool blank = true;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        const char c = i < text.size() ? text[i] : ',';
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c != ',' && !std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (c == ',' && depth == 0) {
            std::string_view item = text.substr(start, i - start);
            if (blank && i == text.size() && w.empty()) break;
            w.push_back(parse_scalar(item));
            start = i + 1;
            blank = true;
        }
    }
    return w;
}

bool same_word(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_stream() || b[i].is_stream()) {
            if (!(a[i].is_stream() && b[i].is_stream() && a[i].stream().same_node(b[i].stream()))) return false;
        } else if (compare(a[i], b[i]) != Sign::Zero) {
            return false;
        }
    }
    return true;
}

Scalar Tape::get(long i) const {
    auto it = support_.find(i + offset_);
    return it == support_.end() ? Scalar(0L) : it->second;
}

void Tape::set(long i, Scalar v) {
    if (is_zero(v))
        support_.erase(i + offset_);
    else
        support_.insert_or_assign(i + offset_, std::move(v));
}

bool operator==(const Tape& a, const Tape& b) {
    if (a.support_.size() != b.support_.size()) return false;
    // compare logical cells, so tapes that differ only by a relabelled offset are equal
    auto i = a.support_.begin();
    auto j = b.support_.begin();
    for (; i != a.support_.end(); ++i, ++j) {
        if (i->first - a.offset_ != j->first - b.offset_) return false;
        if (!same_word({i->second}, {j->second})) return false;
    }
    return true;
}

std::string_view to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Input: return "input";
    case NodeKind::Compute: return "compute";
    case NodeKind::Branch: return "branch";
    case NodeKind::Shift: return "shift";
    case NodeKind::Output: return "output";
    case NodeKind::Oracle: return "oracle";
    }
    return "?";
}

std::string_view to_string(OutcomeKind k) {
    switch (k) {
    case OutcomeKind::Halted: return "Halted";
    case OutcomeKind::OutOfBudget: return "OutOfBudget";
    case OutcomeKind::Stuck: return "Stuck";
    }
    return "?";
}

std::string_view to_string(StuckReason r) {
    switch (r) {
    case StuckReason::DivisionByZero: return "DivisionByZero";
    case StuckReason::IndeterminateBranch: return "IndeterminateBranch";
    case StuckReason::OracleUnavailable: return "OracleUnavailable";
    case StuckReason::IndeterminateOperand: return "IndeterminateOperand";
    case StuckReason::MalformedOutput: return "MalformedOutput";
    }
    return "?";
}

Machine& Machine::add_node(Node n) {
    nodes.push_back(std::move(n));
    return *this;
}

Machine& Machine::add_edge(std::string from, std::string to, EdgeLabel label) {
    edges.push_back({std::move(from), std::move(to), label});
    return *this;
}

Machine& Machine::add_param(std::string pname, Scalar value) {
    params.emplace_back(std::move(pname), std::move(value));
    return *this;
}

const Node* Machine::find(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

std::optional<Scalar> Machine::param(const std::string& pname) const {
    for (const auto& [k, v] : params)
        if (k == pname) return v;
    return std::nullopt;
}

Node input_node(std::string id, std::optional<std::vector<long>> cells) {
    Node n;
    n.id = std::move(id);
    n.kind = NodeKind::Input;
    n.cells = std::move(cells);
    return n;
}

Node compute_node(std::string id, std::vector<Assignment> assignments) {
    Node n;
    n.id = std::move(id);
    n.kind = NodeKind::Compute;
    n.assignments = std::move(assignments);
    return n;
}

Node branch_node(std::string id, ExprPtr test, BranchRel rel) {
    Node n;
    n.id = std::move(id);
    n.kind = NodeKind::Branch;
    n.test = std::move(test);
    n.rel = rel;
    return n;
}

Node shift_node(std::string id, bool left) {
    Node n;
    n.id = std::move(id);
    n.kind = NodeKind::Shift;
    n.left = left;
    return n;
}

Node output_node(std::string id, std::optional<std::vector<long>> cells) {
    Node n;
    n.id = std::move(id);
    n.kind = NodeKind::Output;
    n.cells = std::move(cells);
    return n;
}

Node oracle_node(std::string id, std::optional<std::vector<long>> query, long target) {
    Node n;
    n.id = std::move(id);
    n.kind = NodeKind::Oracle;
    n.cells = std::move(query);
    n.target = target;
    return n;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_scalar(const Scalar& v, Backend b, const std::string& where, std::vector<Violation>& out,
                  const std::string& node) {
    if (!fits_backend(v, b))
        out.push_back({node, where + " " + v.to_string() + " is not in the " + std::string(to_string(b)) + " backend"});
}

void check_expr(const Machine& m, const Expr& e, const std::string& node, std::vector<Violation>& out) {
    switch (e.op) {
    case Expr::Op::Const: check_scalar(e.value, m.backend, "constant", out, node); break;
    case Expr::Op::Param:
        if (!m.param(e.name)) out.push_back({node, "parameter '" + e.name + "' is not bound"});
        break;
    case Expr::Op::Div:
        if (m.backend == Backend::IntegerRing) out.push_back({node, "division is not a ring operation over integer"});
        break;
    default: break;
    }
    for (const auto& a : e.args) check_expr(m, *a, node, out);
}

}  // namespace

std::vector<Violation> validate(const Machine& m) {
    std::vector<Violation> out;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        if (!index.emplace(m.nodes[i].id, i).second) out.push_back({m.nodes[i].id, "duplicate node id"});

    std::set<std::string> pnames;
    for (const auto& [pname, value] : m.params) {
        if (!pnames.insert(pname).second) out.push_back({"", "duplicate parameter '" + pname + "'"});
        check_scalar(value, m.backend, "parameter " + pname + " =", out, "");
    }

    std::size_t inputs = 0;
    for (const auto& n : m.nodes)
        if (n.kind == NodeKind::Input) ++inputs;
    if (inputs == 0) out.push_back({"", "machine needs exactly one input node, found none"});
    if (inputs > 1) out.push_back({"", "input node must be unique, found " + std::to_string(inputs)});

    std::vector<std::vector<EdgeLabel>> outgoing(m.nodes.size());
    std::vector<std::size_t> incoming(m.nodes.size(), 0);
    for (const auto& e : m.edges) {
        auto f = index.find(e.from);
        auto t = index.find(e.to);
        if (f == index.end()) out.push_back({e.from, "edge from unknown node"});
        if (t == index.end()) out.push_back({e.to, "edge to unknown node"});
        if (f == index.end() || t == index.end()) continue;
        outgoing[f->second].push_back(e.label);
        ++incoming[t->second];
    }

    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        const Node& n = m.nodes[i];
        const auto& outs = outgoing[i];
        switch (n.kind) {
        case NodeKind::Input:
            if (incoming[i]) out.push_back({n.id, "input node has incoming edges"});
            [[fallthrough]];
        case NodeKind::Compute:
        case NodeKind::Shift:
        case NodeKind::Oracle:
            if (outs.size() != 1 || outs[0] != EdgeLabel::Next)
                out.push_back({n.id, std::string(to_string(n.kind)) + " node needs exactly one unlabelled out-edge"});
            break;
        case NodeKind::Output:
            if (!outs.empty()) out.push_back({n.id, "output node has out-edges"});
            break;
        case NodeKind::Branch: {
            const bool ok = outs.size() == 2 &&
                            ((outs[0] == EdgeLabel::One && outs[1] == EdgeLabel::Zero) ||
                             (outs[0] == EdgeLabel::Zero && outs[1] == EdgeLabel::One));
            if (!ok) out.push_back({n.id, "branch needs two out-edges labelled 1 and 0"});
            if (!n.test) {
                out.push_back({n.id, "branch has no test polynomial"});
            } else {
                if (!is_polynomial_in_cells(*n.test)) out.push_back({n.id, "branch test must be a polynomial in the cells"});
                check_expr(m, *n.test, n.id, out);
            }
            if (m.equational && n.rel != BranchRel::Eq) out.push_back({n.id, "equational machine has an order branch"});
            break;
        }
        }
        if (n.kind == NodeKind::Compute) {
            std::set<long> targets;
            for (const auto& a : n.assignments) {
                if (!targets.insert(a.cell).second) out.push_back({n.id, "cell x" + std::to_string(a.cell) + " assigned twice"});
                if (!a.expr)
                    out.push_back({n.id, "assignment without expression"});
                else
                    check_expr(m, *a.expr, n.id, out);
            }
        }
        if (n.kind != NodeKind::Compute && !n.assignments.empty()) out.push_back({n.id, "assignments on a non-compute node"});
    }

    // connectivity of the underlying undirected graph
    if (!m.nodes.empty()) {
        std::vector<std::vector<std::size_t>> adj(m.nodes.size());
        for (const auto& e : m.edges) {
            auto f = index.find(e.from);
            auto t = index.find(e.to);
            if (f == index.end() || t == index.end()) continue;
            adj[f->second].push_back(t->second);
            adj[t->second].push_back(f->second);
        }
        std::vector<bool> seen(m.nodes.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (auto w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        for (std::size_t i = 0; i < m.nodes.size(); ++i)
            if (!seen[i]) out.push_back({m.nodes[i].id, "node is not connected to the rest of the graph"});
    } else {
        out.push_back({"", "machine has no nodes"});
    }
    return out;
}

void require_valid(const Machine& m) {
    auto v = validate(m);
    if (v.empty()) return;
    std::string msg = m.name + ":";
    for (const auto& x : v) msg += (x.node.empty() ? " " : " [" + x.node + "] ") + x.clause + ";";
    throw Error(ErrorKind::ValidationError, msg);
}

std::vector<std::size_t> canonical_order(const Machine& m) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) index.emplace(m.nodes[i].id, i);
    std::vector<std::array<std::size_t, 3>> next(m.nodes.size(), {kNone, kNone, kNone});
    for (const auto& e : m.edges) {
        auto f = index.find(e.from);
        auto t = index.find(e.to);
        if (f != index.end() && t != index.end()) next[f->second][label_slot(e.label)] = t->second;
    }
    std::vector<std::size_t> order;
    std::vector<bool> seen(m.nodes.size(), false);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        if (m.nodes[i].kind == NodeKind::Input) {
            queue.push_back(i);
            seen[i] = true;
            break;
        }
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (EdgeLabel l : {EdgeLabel::Next, EdgeLabel::One, EdgeLabel::Zero}) {
            std::size_t w = next[v][label_slot(l)];
            if (w != kNone && !seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        if (!seen[i]) order.push_back(i);
    return order;
}

// ---------------------------------------------------------------------------
// Interpreter

Program::Program(Machine m) : m_(std::move(m)) {
    require_valid(m_);
    next_.assign(m_.nodes.size(), {kNone, kNone, kNone});
    for (std::size_t i = 0; i < m_.nodes.size(); ++i) {
        index_.emplace(m_.nodes[i].id, i);
        if (m_.nodes[i].kind == NodeKind::Input) input_ = i;
    }
    for (const auto& e : m_.edges) next_[index_.at(e.from)][label_slot(e.label)] = index_.at(e.to);
    for (const auto& [k, v] : m_.params) params_.emplace(k, v);
}

std::size_t Program::index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorKind::UnboundName, "no node '" + id + "'");
    return it->second;
}

std::size_t Program::next(std::size_t i, EdgeLabel label) const { return next_[i][label_slot(label)]; }

const Scalar& Program::param_value(const std::string& pname) const { return params_.at(pname); }

namespace {

struct Stuck {
    StuckReason reason;
    std::string detail;
};

Scalar eval_on(const Program& p, const Expr& e, const Tape& t) {
    try {
        return evaluate(
            e, [&](long i) { return t.get(i); }, [&](const std::string& n) { return p.param_value(n); });
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::DivisionByZero) throw Stuck{StuckReason::DivisionByZero, err.what()};
        if (err.kind() == ErrorKind::IndeterminateOperand) throw Stuck{StuckReason::IndeterminateOperand, err.what()};
        throw;
    }
}

std::optional<bool> branch_taken(const Scalar& h, BranchRel rel) {
    if (rel == BranchRel::Geq) return is_nonnegative(h);
    if (h.is_stream()) {
        if (h.stream().strict_sign()) return false;
        return std::nullopt;
    }
    return is_zero(h);
}

std::optional<long> small_natural(const Scalar& v) {
    if (!v.is_exact_rational()) return std::nullopt;
    Rational q = v.to_rational();
    if (q.get_den() != 1 || sgn(q) < 0 || q > kMaxOutputLength) return std::nullopt;
    return q.get_num().get_si();
}

Word read_word(const Tape& t, const std::optional<std::vector<long>>& cells, const std::string& what) {
    Word w;
    if (cells) {
        for (long c : *cells) w.push_back(t.get(c));
        return w;
    }
    auto len = small_natural(t.get(0));
    if (!len) throw Stuck{StuckReason::MalformedOutput, what + " length cell x0 = " + t.get(0).to_string() + " is not a natural number"};
    for (long i = 1; i <= *len; ++i) w.push_back(t.get(i));
    return w;
}

// Executes node i on the tape; returns the successor index, or kNone at an output node.
std::size_t exec(const Program& p, std::size_t i, Tape& tape, const Word& input, const Oracle* oracle, StepResult& r) {
    const Node& n = p.machine().nodes[i];
    switch (n.kind) {
    case NodeKind::Input: {
        const Backend b = p.machine().backend;
        auto place = [&](long cell, const Scalar& v) {
            tape.set(cell, v);
            r.touched.emplace_back(cell, v);
        };
        Word w;
        w.reserve(input.size());
        for (const auto& v : input) w.push_back(promote(v, b));
        if (n.cells) {
            if (n.cells->size() != w.size())
                throw Error(ErrorKind::InputMismatch, "input node " + n.id + " takes " + std::to_string(n.cells->size()) +
                                                          " entries, got " + std::to_string(w.size()));
            for (std::size_t k = 0; k < w.size(); ++k) place((*n.cells)[k], w[k]);
        } else {
            place(0, Scalar(static_cast<long>(w.size())));
            for (std::size_t k = 0; k < w.size(); ++k) place(static_cast<long>(k) + 1, w[k]);
        }
        return p.next(i, EdgeLabel::Next);
    }
    case NodeKind::Compute: {
        std::vector<Scalar> values;
        values.reserve(n.assignments.size());
        for (const auto& a : n.assignments) values.push_back(eval_on(p, *a.expr, tape));
        for (std::size_t k = 0; k < values.size(); ++k) {
            tape.set(n.assignments[k].cell, values[k]);
            r.touched.emplace_back(n.assignments[k].cell, values[k]);
        }
        return p.next(i, EdgeLabel::Next);
    }
    case NodeKind::Branch: {
        Scalar h = eval_on(p, *n.test, tape);
        auto taken = branch_taken(h, n.rel);
        if (!taken) throw Stuck{StuckReason::IndeterminateBranch, "sign of " + h.to_string() + " at " + n.id + " undecided"};
        return p.next(i, *taken ? EdgeLabel::One : EdgeLabel::Zero);
    }
    case NodeKind::Shift:
        if (n.left)
            tape.shift_left();
        else
            tape.shift_right();
        return p.next(i, EdgeLabel::Next);
    case NodeKind::Oracle: {
        if (!oracle || !*oracle) throw Stuck{StuckReason::OracleUnavailable, "oracle node " + n.id + " without an oracle"};
        Word q = read_word(tape, n.cells, "oracle query");
        Scalar bit((*oracle)(q) ? 1L : 0L);
        tape.set(n.target, bit);
        r.touched.emplace_back(n.target, bit);
        return p.next(i, EdgeLabel::Next);
    }
    case NodeKind::Output:
        r.output = read_word(tape, n.cells, "output");
        return kNone;
    }
    return kNone;
}

}  // namespace

StepResult step(const Program& p, Config& c, const Word& input, const Oracle* oracle) {
    StepResult r;
    const std::size_t i = p.index(c.node);
    try {
        std::size_t nxt = exec(p, i, c.tape, input, oracle, r);
        ++c.steps;
        if (nxt == kNone) {
            r.kind = StepResult::Kind::Halt;
        } else {
            c.node = p.machine().nodes[nxt].id;
        }
    } catch (const Stuck& s) {
        r.kind = StepResult::Kind::Stuck;
        r.reason = s.reason;
        r.detail = s.detail;
    }
    return r;
}

RunOutcome run(const Program& p, const Word& input, std::size_t budget, const Oracle* oracle, const TraceHook& trace) {
    RunOutcome out;
    const auto& nodes = p.machine().nodes;
    std::size_t i = p.input_index();
    Tape tape;
    std::size_t steps = 0;
    auto finish = [&](OutcomeKind k) {
        out.kind = k;
        out.steps = steps;
        out.last = Config{nodes[i].id, tape, steps};
        return out;
    };
    for (;;) {
        if (steps >= budget) return finish(OutcomeKind::OutOfBudget);
        const Node& n = nodes[i];
        // a compute node with no assignments looping to itself never changes the configuration
        if (n.kind == NodeKind::Compute && n.assignments.empty() && p.next(i, EdgeLabel::Next) == i) {
            steps = budget;
            return finish(OutcomeKind::OutOfBudget);
        }
        StepResult r;
        std::size_t nxt;
        try {
            nxt = exec(p, i, tape, input, oracle, r);
        } catch (const Stuck& s) {
            out.reason = s.reason;
            out.detail = s.detail;
            return finish(OutcomeKind::Stuck);
        }
        ++steps;
        if (trace) trace(TraceEvent{steps, n.id, tape.offset(), std::move(r.touched)});
        if (nxt == kNone) {
            out.output = std::move(r.output);
            return finish(OutcomeKind::Halted);
        }
        // likewise a branch that re-enters itself will take the same edge forever
        if (n.kind == NodeKind::Branch && nxt == i) {
            steps = budget;
            return finish(OutcomeKind::OutOfBudget);
        }
        i = nxt;
    }
}

RunOutcome run(const Machine& m, const Word& input, std::size_t budget, const Oracle* oracle) {
    return run(Program(m), input, budget, oracle);
}

bool same_outcome(const RunOutcome& a, const RunOutcome& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == OutcomeKind::Halted) return same_word(a.output, b.output);
    if (a.kind == OutcomeKind::Stuck) return a.reason == b.reason;
    return true;
}

std::string describe(const RunOutcome& r) {
    switch (r.kind) {
    case OutcomeKind::Halted: return "Halted(" + render(r.output) + ") after " + std::to_string(r.steps) + " steps";
    case OutcomeKind::OutOfBudget: return "OutOfBudget at " + r.last.node + " after " + std::to_string(r.steps) + " steps";
    case OutcomeKind::Stuck: return "Stuck(" + std::string(to_string(r.reason)) + ") at " + r.last.node + ": " + r.detail;
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Coding

namespace {

long backend_code(Backend b) { return static_cast<long>(b); }

struct Encoder {
    Word w;
    std::map<std::string, long> param_index;
    bool placeholder_streams = false;

    void integer(long v) { w.emplace_back(v); }
    void cells(const std::optional<std::vector<long>>& c) {
        if (!c) {
            integer(-1);
            return;
        }
        integer(static_cast<long>(c->size()));
        for (long x : *c) integer(x);
    }
    void expr(const Expr& e) {
        integer(static_cast<long>(e.op));
        switch (e.op) {
        case Expr::Op::Const:
            if (e.value.is_stream()) throw Error(ErrorKind::UnencodableParameter, "stream constant in expression");
            w.push_back(e.value);
            break;
        case Expr::Op::Cell: integer(e.cell); break;
        case Expr::Op::Param: integer(param_index.at(e.name)); break;
        case Expr::Op::Pow:
            integer(static_cast<long>(e.exponent));
            expr(*e.args[0]);
            break;
        default:
            for (const auto& a : e.args) expr(*a);
        }
    }
};

Word encode_impl(const Machine& m, bool placeholder_streams) {
    require_valid(m);
    Encoder enc;
    enc.placeholder_streams = placeholder_streams;
    for (std::size_t k = 0; k < m.params.size(); ++k) {
        enc.param_index.emplace(m.params[k].first, static_cast<long>(k));
        if (m.params[k].second.is_stream() && !placeholder_streams)
            throw Error(ErrorKind::UnencodableParameter, "parameter '" + m.params[k].first + "' is a digit stream");
    }
    auto order = canonical_order(m);
    std::map<std::string, long> position;
    for (std::size_t k = 0; k < order.size(); ++k) position.emplace(m.nodes[order[k]].id, static_cast<long>(k));

    std::vector<std::array<long, 3>> edges;
    for (const auto& e : m.edges) edges.push_back({position.at(e.from), static_cast<long>(e.label), position.at(e.to)});
    std::sort(edges.begin(), edges.end());

    enc.integer(static_cast<long>(m.nodes.size()));
    enc.integer(static_cast<long>(edges.size()));
    enc.integer(static_cast<long>(m.params.size()));
    enc.integer(backend_code(m.backend));
    enc.integer(m.equational ? 1 : 0);
    for (std::size_t k : order) {
        const Node& n = m.nodes[k];
        enc.integer(static_cast<long>(n.kind));
        switch (n.kind) {
        case NodeKind::Input:
        case NodeKind::Output: enc.cells(n.cells); break;
        case NodeKind::Compute:
            enc.integer(static_cast<long>(n.assignments.size()));
            for (const auto& a : n.assignments) {
                enc.integer(a.cell);
                enc.expr(*a.expr);
            }
            break;
        case NodeKind::Branch:
            enc.integer(n.rel == BranchRel::Eq ? 1 : 0);
            enc.expr(*n.test);
            break;
        case NodeKind::Shift: enc.integer(n.left ? 0 : 1); break;
        case NodeKind::Oracle:
            enc.cells(n.cells);
            enc.integer(n.target);
            break;
        }
    }
    for (const auto& e : edges) {
        enc.integer(e[0]);
        enc.integer(e[2]);
        enc.integer(e[1]);
    }
    for (const auto& [pname, value] : m.params) {
        if (value.is_stream())
            enc.w.emplace_back(-1L);  // placeholder, compared separately
        else
            enc.w.push_back(value);
    }
    return enc.w;
}

struct Decoder {
    const Word& w;
    std::size_t pos = 0;

    const Scalar& next_scalar(const char* what) {
        if (pos >= w.size()) throw DecodeError(pos, std::string("word ends before ") + what);
        return w[pos++];
    }
    long integer(const char* what, long lo, long hi) {
        const std::size_t at = pos;
        const Scalar& s = next_scalar(what);
        if (!s.is_integer()) throw DecodeError(at, std::string(what) + " must be an integer, got " + s.to_string());
        const Integer& z = std::get<Integer>(s.value());
        if (z < lo || z > hi)
            throw DecodeError(at, std::string(what) + " " + z.get_str() + " outside [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
        return z.get_si();
    }
    long count(const char* what) { return integer(what, 0, static_cast<long>(w.size() - std::min(pos, w.size()))); }
    std::optional<std::vector<long>> cells() {
        long k = integer("cell count", -1, static_cast<long>(w.size()));
        if (k < 0) return std::nullopt;
        std::vector<long> c;
        for (long i = 0; i < k; ++i) c.push_back(integer("cell index", std::numeric_limits<long>::min() / 2, std::numeric_limits<long>::max() / 2));
        return c;
    }
    ExprPtr expr(long params, int depth) {
        if (depth > 10000) throw DecodeError(pos, "expression nesting too deep");
        const long tag = integer("expression tag", 0, static_cast<long>(Expr::Op::Pow));
        switch (static_cast<Expr::Op>(tag)) {
        case Expr::Op::Const: {
            const std::size_t at = pos;
            const Scalar& s = next_scalar("constant");
            if (s.is_stream()) throw DecodeError(at, "stream constant");
            return Expr::constant(s);
        }
        case Expr::Op::Cell: return Expr::cell_ref(integer("cell index", std::numeric_limits<long>::min() / 2, std::numeric_limits<long>::max() / 2));
        case Expr::Op::Param: {
            const std::size_t at = pos;
            long k = integer("parameter index", 0, std::numeric_limits<long>::max());
            if (k >= params) throw DecodeError(at, "parameter index " + std::to_string(k) + " out of range");
            return Expr::param("p" + std::to_string(k));
        }
        case Expr::Op::Neg: return Expr::neg(expr(params, depth + 1));
        case Expr::Op::Pow: {
            long e = integer("exponent", 0, 1 << 16);
            return Expr::pow(expr(params, depth + 1), static_cast<unsigned>(e));
        }
        default: {
            auto a = expr(params, depth + 1);
            auto b = expr(params, depth + 1);
            return Expr::binary(static_cast<Expr::Op>(tag), std::move(a), std::move(b));
        }
        }
    }
};

}  // namespace

Word encode_machine(const Machine& m) { return encode_impl(m, false); }

Machine decode_machine(const Word& w) {
    Decoder d{w};
    const long nodes = d.count("node count");
    const long edges = d.count("edge count");
    const long params = d.count("parameter count");
    Machine m;
    m.name = "decoded";
    m.backend = static_cast<Backend>(d.integer("backend", 0, 3));
    m.equational = d.integer("equational flag", 0, 1) == 1;
    auto node_name = [](long k) { return "n" + std::to_string(k); };
    for (long k = 0; k < nodes; ++k) {
        Node n;
        n.id = node_name(k);
        n.kind = static_cast<NodeKind>(d.integer("node tag", 0, static_cast<long>(NodeKind::Oracle)));
        switch (n.kind) {
        case NodeKind::Input:
        case NodeKind::Output: n.cells = d.cells(); break;
        case NodeKind::Compute: {
            long a = d.count("assignment count");
            for (long j = 0; j < a; ++j) {
                long cell = d.integer("cell index", std::numeric_limits<long>::min() / 2, std::numeric_limits<long>::max() / 2);
                n.assignments.push_back({cell, d.expr(params, 0)});
            }
            break;
        }
        case NodeKind::Branch:
            n.rel = d.integer("branch relation", 0, 1) == 1 ? BranchRel::Eq : BranchRel::Geq;
            n.test = d.expr(params, 0);
            break;
        case NodeKind::Shift: n.left = d.integer("shift direction", 0, 1) == 0; break;
        case NodeKind::Oracle:
            n.cells = d.cells();
            n.target = d.integer("cell index", std::numeric_limits<long>::min() / 2, std::numeric_limits<long>::max() / 2);
            break;
        }
        m.nodes.push_back(std::move(n));
    }
    for (long k = 0; k < edges; ++k) {
        const std::size_t at = d.pos;
        long from = d.integer("edge source", 0, std::numeric_limits<long>::max());
        long to = d.integer("edge target", 0, std::numeric_limits<long>::max());
        if (from >= nodes || to >= nodes) throw DecodeError(at, "edge refers to node " + std::to_string(std::max(from, to)) + " of " + std::to_string(nodes));
        long label = d.integer("edge label", 0, 2);
        m.add_edge(node_name(from), node_name(to), static_cast<EdgeLabel>(label));
    }
    for (long k = 0; k < params; ++k) {
        const std::size_t at = d.pos;
        const Scalar& s = d.next_scalar("parameter");
        if (s.is_stream()) throw DecodeError(at, "stream parameter");
        m.add_param("p" + std::to_string(k), s);
    }
    if (d.pos != w.size()) throw DecodeError(d.pos, "trailing entries after the machine code");
    auto v = validate(m);
    if (!v.empty()) throw DecodeError(w.size(), "decoded machine is invalid: " + (v[0].node.empty() ? "" : v[0].node + ": ") + v[0].clause);
    return m;
}

bool structurally_equal(const Machine& a, const Machine& b) {
    if (!same_word(encode_impl(a, true), encode_impl(b, true))) return false;
    for (std::size_t k = 0; k < a.params.size(); ++k) {
        const Scalar& x = a.params[k].second;
        const Scalar& y = b.params[k].second;
        if (x.is_stream() && x.to_string() != y.to_string()) return false;
    }
    return true;
}

}  // namespace bss
