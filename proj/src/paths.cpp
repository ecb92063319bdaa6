#include "bss/paths.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "bss/error.hpp"

namespace bss {

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da > db;
    return a > b;
}

namespace {

std::string var_name(std::size_t i) { return "x" + std::to_string(i + 1); }

std::string render_monomial(const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += var_name(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

std::string render_expanded(const ExpandedPoly& e) {
    if (e.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [mono, coeff] : e) {
        const bool negative = sign(coeff) == Sign::Negative;
        Scalar mag = negative ? negate(coeff) : coeff;
        const std::string mtext = render_monomial(mono);
        std::string ctext = mag.to_string();
        std::string term;
        if (mtext.empty())
            term = ctext;
        else if (exactly_equal(mag, Scalar(1L)))
            term = mtext;
        else
            term = ctext + "*" + mtext;
        if (first)
            s += negative ? "-" + term : term;
        else
            s += negative ? " - " + term : " + " + term;
        first = false;
    }
    return s;
}

void add_into(ExpandedPoly& out, const ExpandedPoly& e, bool subtract) {
    for (const auto& [mono, coeff] : e) {
        auto it = out.find(mono);
        if (it == out.end()) {
            out.emplace(mono, subtract ? negate(coeff) : coeff);
        } else {
            it->second = subtract ? it->second - coeff : it->second + coeff;
            if (is_zero(it->second)) out.erase(it);
        }
    }
}

std::optional<ExpandedPoly> multiply(const ExpandedPoly& a, const ExpandedPoly& b, std::size_t cap) {
    if (a.size() * b.size() > 4 * cap) return std::nullopt;
    ExpandedPoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            auto it = out.find(m);
            Scalar prod = ca * cb;
            if (it == out.end()) {
                out.emplace(std::move(m), std::move(prod));
            } else {
                it->second = it->second + prod;
                if (is_zero(it->second)) out.erase(it);
            }
        }
    if (out.size() > cap) return std::nullopt;
    return out;
}

}  // namespace

PolyArena::PolyArena(std::size_t vars, std::size_t term_cap) : vars_(vars), term_cap_(term_cap) {}

bool PolyArena::is_constant(const Poly& p) { return p->op == PolyNode::Op::Const; }

const Scalar& PolyArena::constant_value(const Poly& p) { return p->value; }

Poly PolyArena::intern(PolyNode n) {
    std::string key;
    if (n.expanded) {
        if (n.expanded->empty() || (n.expanded->size() == 1 && n.expanded->begin()->first == Monomial(vars_, 0))) {
            n.op = PolyNode::Op::Const;
            n.value = n.expanded->empty() ? Scalar(0L) : n.expanded->begin()->second;
            n.a.reset();
            n.b.reset();
        }
        key = "E" + render_expanded(*n.expanded);
    } else {
        key = "O" + std::to_string(static_cast<int>(n.op)) + ":" + std::to_string(n.a ? n.a->id : 0) + ":" +
              std::to_string(n.b ? n.b->id : 0) + ":" + std::to_string(n.exponent);
    }
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    n.id = ++next_id_;
    auto p = std::make_shared<const PolyNode>(std::move(n));
    table_.emplace(std::move(key), p);
    return p;
}

Poly PolyArena::constant(const Scalar& c) {
    PolyNode n;
    n.op = PolyNode::Op::Const;
    n.value = c;
    n.expanded.emplace();
    if (!is_zero(c)) n.expanded->emplace(Monomial(vars_, 0), c);
    return intern(std::move(n));
}

Poly PolyArena::var(std::size_t i) {
    PolyNode n;
    n.op = PolyNode::Op::Var;
    n.var = i;
    Monomial m(vars_, 0);
    m[i] = 1;
    n.expanded.emplace();
    n.expanded->emplace(std::move(m), Scalar(1L));
    return intern(std::move(n));
}

Poly PolyArena::add(const Poly& a, const Poly& b) {
    if (is_constant(a) && is_zero(a->value)) return b;
    if (is_constant(b) && is_zero(b->value)) return a;
    PolyNode n;
    n.op = PolyNode::Op::Add;
    n.a = a;
    n.b = b;
    if (a->expanded && b->expanded && a->expanded->size() + b->expanded->size() <= 2 * term_cap_) {
        ExpandedPoly e = *a->expanded;
        add_into(e, *b->expanded, false);
        if (e.size() <= term_cap_) n.expanded = std::move(e);
    }
    return intern(std::move(n));
}

Poly PolyArena::sub(const Poly& a, const Poly& b) {
    if (is_constant(b) && is_zero(b->value)) return a;
    PolyNode n;
    n.op = PolyNode::Op::Sub;
    n.a = a;
    n.b = b;
    if (a->expanded && b->expanded && a->expanded->size() + b->expanded->size() <= 2 * term_cap_) {
        ExpandedPoly e = *a->expanded;
        add_into(e, *b->expanded, true);
        if (e.size() <= term_cap_) n.expanded = std::move(e);
    }
    return intern(std::move(n));
}

Poly PolyArena::mul(const Poly& a, const Poly& b) {
    if (is_constant(a) && exactly_equal(a->value, Scalar(1L))) return b;
    if (is_constant(b) && exactly_equal(b->value, Scalar(1L))) return a;
    if ((is_constant(a) && is_zero(a->value)) || (is_constant(b) && is_zero(b->value))) return constant(Scalar(0L));
    PolyNode n;
    n.op = PolyNode::Op::Mul;
    n.a = a;
    n.b = b;
    if (a->expanded && b->expanded) n.expanded = multiply(*a->expanded, *b->expanded, term_cap_);
    return intern(std::move(n));
}

Poly PolyArena::neg(const Poly& a) {
    PolyNode n;
    n.op = PolyNode::Op::Neg;
    n.a = a;
    if (a->expanded) {
        n.expanded.emplace();
        for (const auto& [m, c] : *a->expanded) n.expanded->emplace(m, negate(c));
    }
    return intern(std::move(n));
}

Poly PolyArena::pow(const Poly& a, unsigned e) {
    if (e == 0) return constant(Scalar(1L));
    if (e == 1) return a;
    PolyNode n;
    n.op = PolyNode::Op::Pow;
    n.a = a;
    n.exponent = e;
    if (a->expanded) {
        std::optional<ExpandedPoly> acc = *a->expanded;
        for (unsigned k = 1; k < e && acc; ++k) acc = multiply(*acc, *a->expanded, term_cap_);
        n.expanded = std::move(acc);
    }
    return intern(std::move(n));
}

Poly PolyArena::scale(const Poly& a, const Scalar& c) {
    if (exactly_equal(c, Scalar(1L))) return a;
    return mul(constant(c), a);
}

std::string render(const Poly& p) {
    if (p->expanded) return render_expanded(*p->expanded);
    // straight-line program over the non-expanded part of the DAG
    std::map<const PolyNode*, std::string> names;
    std::vector<std::string> lines;
    std::function<std::string(const Poly&)> name_of = [&](const Poly& q) -> std::string {
        if (q->expanded) {
            std::string s = render_expanded(*q->expanded);
            if (q->op == PolyNode::Op::Const || q->op == PolyNode::Op::Var) {
                if (s.find_first_of(" -/") == std::string::npos) return s;
            }
            return "(" + s + ")";
        }
        if (auto it = names.find(q.get()); it != names.end()) return it->second;
        std::string rhs;
        switch (q->op) {
        case PolyNode::Op::Add: rhs = name_of(q->a) + " + " + name_of(q->b); break;
        case PolyNode::Op::Sub: rhs = name_of(q->a) + " - " + name_of(q->b); break;
        case PolyNode::Op::Mul: rhs = name_of(q->a) + " * " + name_of(q->b); break;
        case PolyNode::Op::Neg: rhs = "-" + name_of(q->a); break;
        case PolyNode::Op::Pow: rhs = name_of(q->a) + "^" + std::to_string(q->exponent); break;
        default: rhs = "?"; break;
        }
        std::string name = "t" + std::to_string(lines.size() + 1);
        lines.push_back(name + " = " + rhs);
        names.emplace(q.get(), name);
        return name;
    };
    std::string result = name_of(p);
    std::string out = "let ";
    for (std::size_t i = 0; i < lines.size(); ++i) out += (i ? "; " : "") + lines[i];
    return out + "; in " + result;
}

std::string render(const RationalExpr& r) {
    if (PolyArena::is_constant(r.den) && exactly_equal(r.den->value, Scalar(1L))) return render(r.num);
    return "(" + render(r.num) + ") / (" + render(r.den) + ")";
}

std::string_view to_string(Relation r) {
    switch (r) {
    case Relation::Geq: return ">=0";
    case Relation::Lt: return "<0";
    case Relation::Eq: return "=0";
    case Relation::Ne: return "!=0";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Symbolic execution

namespace {

bool relation_holds(Relation rel, Sign s) {
    switch (rel) {
    case Relation::Geq: return s != Sign::Negative;
    case Relation::Lt: return s == Sign::Negative;
    case Relation::Eq: return s == Sign::Zero;
    case Relation::Ne: return s != Sign::Zero;
    }
    return false;
}

bool contradicts(Relation a, Relation b) {
    auto pair = [&](Relation x, Relation y) { return (a == x && b == y) || (a == y && b == x); };
    return pair(Relation::Geq, Relation::Lt) || pair(Relation::Eq, Relation::Ne) || pair(Relation::Eq, Relation::Lt);
}

bool known_positive(const Poly& p) {
    switch (p->op) {
    case PolyNode::Op::Const: return sign(p->value) == Sign::Positive;
    case PolyNode::Op::Mul: return p->a == p->b || (known_positive(p->a) && known_positive(p->b));
    case PolyNode::Op::Pow: return p->exponent % 2 == 0 || known_positive(p->a);
    default: return false;
    }
}

struct Dead {};  // the path divides by zero

struct SymState {
    std::size_t node = 0;
    std::size_t steps = 0;
    long offset = 0;
    std::map<long, RationalExpr> cells;
    std::vector<std::string> path;
    std::vector<SignCondition> conditions;
};

class Enumerator {
public:
    Enumerator(const Program& p, std::size_t dim, std::size_t depth)
        : p_(p), dim_(dim), depth_(depth), arena_(dim), zero_(arena_.constant(Scalar(0L))), one_(arena_.constant(Scalar(1L))) {
        field_ = machine_field();
    }

    std::vector<Cell> run() {
        SymState s;
        s.node = p_.input_index();
        explore(std::move(s));
        return std::move(cells_);
    }

private:
    const Program& p_;
    std::size_t dim_;
    std::size_t depth_;
    PolyArena arena_;
    Poly zero_;
    Poly one_;
    std::string field_;
    std::vector<Cell> cells_;

    std::string machine_field() const {
        std::set<std::string> gens;
        std::function<void(const Expr&)> walk = [&](const Expr& e) {
            if (e.op == Expr::Op::Const && e.value.is_algebraic()) gens.insert(e.value.to_string());
            if (e.op == Expr::Op::Param) {
                const Scalar& v = p_.param_value(e.name);
                if (v.is_algebraic()) gens.insert(v.to_string());
            }
            for (const auto& a : e.args) walk(*a);
        };
        for (const auto& n : p_.machine().nodes) {
            if (n.test) walk(*n.test);
            for (const auto& a : n.assignments) walk(*a.expr);
        }
        if (gens.empty()) return "Q";
        std::string s = "Q(";
        bool first = true;
        for (const auto& g : gens) {
            s += (first ? "" : ", ") + g;
            first = false;
        }
        return s + ")";
    }

    RationalExpr konst(const Scalar& c) { return {arena_.constant(c), one_}; }

    RationalExpr get(const SymState& s, long i) {
        auto it = s.cells.find(i + s.offset);
        return it == s.cells.end() ? RationalExpr{zero_, one_} : it->second;
    }

    void set(SymState& s, long i, RationalExpr v) {
        if (PolyArena::is_constant(v.num) && is_zero(v.num->value))
            s.cells.erase(i + s.offset);
        else
            s.cells.insert_or_assign(i + s.offset, std::move(v));
    }

    Poly normalized(const Poly& p) {
        if (!p->expanded || p->expanded->empty() || PolyArena::is_constant(p)) return p;
        Scalar lc = p->expanded->begin()->second;
        if (sign(lc) == Sign::Negative) lc = negate(lc);
        if (exactly_equal(lc, Scalar(1L))) return p;
        return arena_.scale(p, Scalar(1L) / lc);
    }

    // Appends a condition; returns false if the path becomes syntactically infeasible.
    bool add_condition(SymState& s, Poly poly, Relation rel, bool side) {
        poly = normalized(poly);
        if (PolyArena::is_constant(poly)) {
            if (!relation_holds(rel, sign(poly->value))) return false;
        } else {
            for (const auto& c : s.conditions)
                if (c.poly == poly && contradicts(c.rel, rel)) return false;
        }
        s.conditions.push_back({std::move(poly), rel, side});
        return true;
    }

    RationalExpr radd(const RationalExpr& a, const RationalExpr& b, bool subtract) {
        auto op = [&](const Poly& x, const Poly& y) { return subtract ? arena_.sub(x, y) : arena_.add(x, y); };
        if (a.den == b.den) return {op(a.num, b.num), a.den};
        return {op(arena_.mul(a.num, b.den), arena_.mul(b.num, a.den)), arena_.mul(a.den, b.den)};
    }

    RationalExpr rdiv(SymState& s, const RationalExpr& a, const RationalExpr& b) {
        if (PolyArena::is_constant(b.num)) {
            const Scalar& c = b.num->value;
            if (is_zero(c)) throw Dead{};
            return {arena_.scale(arena_.mul(a.num, b.den), Scalar(1L) / c), a.den};
        }
        if (!add_condition(s, b.num, Relation::Ne, true)) throw Dead{};
        return {arena_.mul(a.num, b.den), arena_.mul(a.den, b.num)};
    }

    RationalExpr eval(SymState& s, const Expr& e) {
        switch (e.op) {
        case Expr::Op::Const: return konst(e.value);
        case Expr::Op::Cell: return get(s, e.cell);
        case Expr::Op::Param: return konst(p_.param_value(e.name));
        case Expr::Op::Neg: {
            RationalExpr a = eval(s, *e.args[0]);
            return {arena_.neg(a.num), a.den};
        }
        case Expr::Op::Pow: {
            RationalExpr a = eval(s, *e.args[0]);
            return {arena_.pow(a.num, e.exponent), arena_.pow(a.den, e.exponent)};
        }
        default: break;
        }
        RationalExpr a = eval(s, *e.args[0]);
        RationalExpr b = eval(s, *e.args[1]);
        switch (e.op) {
        case Expr::Op::Add: return radd(a, b, false);
        case Expr::Op::Sub: return radd(a, b, true);
        case Expr::Op::Mul: return {arena_.mul(a.num, b.num), arena_.mul(a.den, b.den)};
        case Expr::Op::Div: return rdiv(s, a, b);
        default: break;
        }
        throw Error(ErrorKind::UnsupportedNode, "bad expression");
    }

    void emit(const SymState& s, bool truncated, std::vector<RationalExpr> output = {}) {
        Cell c;
        c.dim = dim_;
        c.path = s.path;
        c.conditions = s.conditions;
        c.output = std::move(output);
        c.truncated = truncated;
        c.field = field_;
        cells_.push_back(std::move(c));
    }

    void explore(SymState s) {
        const auto& nodes = p_.machine().nodes;
        for (;;) {
            const Node& n = nodes[s.node];
            if (s.steps >= depth_ ||
                (n.kind == NodeKind::Compute && n.assignments.empty() && p_.next(s.node, EdgeLabel::Next) == s.node)) {
                emit(s, true);
                return;
            }
            s.path.push_back(n.id);
            ++s.steps;
            try {
                switch (n.kind) {
                case NodeKind::Input:
                    if (n.cells) {
                        if (n.cells->size() != dim_)
                            throw Error(ErrorKind::DimensionMismatch, "input node places " + std::to_string(n.cells->size()) +
                                                                          " entries, dimension is " + std::to_string(dim_));
                        for (std::size_t k = 0; k < dim_; ++k) set(s, (*n.cells)[k], {arena_.var(k), one_});
                    } else {
                        set(s, 0, konst(Scalar(static_cast<long>(dim_))));
                        for (std::size_t k = 0; k < dim_; ++k) set(s, static_cast<long>(k) + 1, {arena_.var(k), one_});
                    }
                    s.node = p_.next(s.node, EdgeLabel::Next);
                    break;
                case NodeKind::Compute: {
                    std::vector<RationalExpr> values;
                    for (const auto& a : n.assignments) values.push_back(eval(s, *a.expr));
                    for (std::size_t k = 0; k < values.size(); ++k) set(s, n.assignments[k].cell, values[k]);
                    s.node = p_.next(s.node, EdgeLabel::Next);
                    break;
                }
                case NodeKind::Shift:
                    s.offset += n.left ? 1 : -1;
                    s.node = p_.next(s.node, EdgeLabel::Next);
                    break;
                case NodeKind::Output: {
                    std::vector<RationalExpr> out;
                    if (n.cells) {
                        for (long c : *n.cells) out.push_back(get(s, c));
                    } else {
                        RationalExpr len = get(s, 0);
                        if (!PolyArena::is_constant(len.num) || !PolyArena::is_constant(len.den))
                            throw Error(ErrorKind::UnsupportedNode, "output length in x0 depends on the input");
                        Scalar v = len.num->value / len.den->value;
                        if (!v.is_exact_rational() || v.to_rational().get_den() != 1 || sgn(v.to_rational()) < 0)
                            return;  // MalformedOutput on every input of this path
                        const long m = v.to_rational().get_num().get_si();
                        for (long i = 1; i <= m; ++i) out.push_back(get(s, i));
                    }
                    emit(s, false, std::move(out));
                    return;
                }
                case NodeKind::Oracle:
                    throw Error(ErrorKind::UnsupportedNode, "oracle node " + n.id + " has no symbolic semantics");
                case NodeKind::Branch: {
                    RationalExpr h = eval(s, *n.test);
                    Poly cond;
                    if (n.rel == BranchRel::Eq) {
                        cond = h.num;
                    } else if (PolyArena::is_constant(h.den)) {
                        cond = sign(h.den->value) == Sign::Negative ? arena_.neg(h.num) : h.num;
                    } else if (known_positive(h.den)) {
                        cond = h.num;
                    } else {
                        cond = arena_.mul(h.num, h.den);
                    }
                    const Relation yes = n.rel == BranchRel::Eq ? Relation::Eq : Relation::Geq;
                    const Relation no = n.rel == BranchRel::Eq ? Relation::Ne : Relation::Lt;
                    SymState other = s;
                    if (add_condition(other, cond, yes, false)) {
                        other.node = p_.next(s.node, EdgeLabel::One);
                        explore(std::move(other));
                    }
                    if (!add_condition(s, cond, no, false)) return;
                    s.node = p_.next(s.node, EdgeLabel::Zero);
                    break;
                }
                }
            } catch (const Dead&) {
                return;
            }
        }
    }
};

}  // namespace

std::vector<Cell> enumerate_paths(const Machine& m, std::size_t input_dim, std::size_t depth) {
    for (const auto& [name, value] : m.params)
        if (value.is_stream()) throw Error(ErrorKind::ParameterNotEncodable, "parameter '" + name + "' is a digit stream");
    Program p(m);
    return Enumerator(p, input_dim, depth).run();
}

PointEvaluator::PointEvaluator(Word point) : point_(std::move(point)) {}

const Scalar& PointEvaluator::value(const Poly& root) {
    if (auto it = memo_.find(root.get()); it != memo_.end()) return it->second;
    // iterative post-order, since DAG depth grows with the path length
    std::vector<std::pair<const PolyNode*, bool>> stack{{root.get(), false}};
    while (!stack.empty()) {
        auto [n, expanded_children] = stack.back();
        if (memo_.count(n)) {
            stack.pop_back();
            continue;
        }
        if (!expanded_children && n->op != PolyNode::Op::Const && n->op != PolyNode::Op::Var) {
            stack.back().second = true;
            if (n->a && !memo_.count(n->a.get())) stack.push_back({n->a.get(), false});
            if (n->b && !memo_.count(n->b.get())) stack.push_back({n->b.get(), false});
            continue;
        }
        stack.pop_back();
        Scalar v;
        switch (n->op) {
        case PolyNode::Op::Const: v = n->value; break;
        case PolyNode::Op::Var:
            if (n->var >= point_.size()) throw Error(ErrorKind::DimensionMismatch, "point has too few coordinates");
            v = point_[n->var];
            break;
        case PolyNode::Op::Add: v = memo_.at(n->a.get()) + memo_.at(n->b.get()); break;
        case PolyNode::Op::Sub: v = memo_.at(n->a.get()) - memo_.at(n->b.get()); break;
        case PolyNode::Op::Mul: v = memo_.at(n->a.get()) * memo_.at(n->b.get()); break;
        case PolyNode::Op::Neg: v = negate(memo_.at(n->a.get())); break;
        case PolyNode::Op::Pow: v = power(memo_.at(n->a.get()), n->exponent); break;
        }
        memo_.emplace(n, std::move(v));
    }
    keep_.push_back(root);
    return memo_.at(root.get());
}

Scalar PointEvaluator::value(const RationalExpr& r) { return value(r.num) / value(r.den); }

bool holds(PointEvaluator& at, const SignCondition& c) { return relation_holds(c.rel, sign(at.value(c.poly))); }

bool cell_contains(const Cell& c, PointEvaluator& at) {
    if (at.point().size() != c.dim)
        throw Error(ErrorKind::DimensionMismatch,
                    "point of length " + std::to_string(at.point().size()) + " for a cell over " + std::to_string(c.dim) + " variables");
    for (const auto& cond : c.conditions)
        if (!holds(at, cond)) return false;
    return true;
}

bool cell_contains(const Cell& c, const Word& point) {
    PointEvaluator at(point);
    return cell_contains(c, at);
}

bool check_equational(const Machine& m) {
    for (const auto& n : m.nodes)
        if (n.kind == NodeKind::Branch && n.rel != BranchRel::Eq) return false;
    return true;
}

std::string cells_to_json(const std::vector<Cell>& cells, const std::string& machine_name) {
    nlohmann::ordered_json doc;
    doc["format_version"] = 1;
    doc["machine"] = machine_name;
    doc["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
        nlohmann::ordered_json j;
        j["path"] = c.path;
        auto conds = nlohmann::ordered_json::array();
        bool all_constant = true;
        for (const auto& s : c.conditions) {
            conds.push_back({{"poly", render(s.poly)}, {"rel", std::string(to_string(s.rel))}, {"side", s.side}});
            if (!PolyArena::is_constant(s.poly)) all_constant = false;
        }
        j["conditions"] = conds;
        auto out = nlohmann::ordered_json::array();
        for (const auto& o : c.output) out.push_back(render(o));
        j["output"] = out;
        j["truncated"] = c.truncated;
        j["possibly_empty"] = !all_constant;
        j["field"] = c.field;
        doc["cells"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

}  // namespace bss
