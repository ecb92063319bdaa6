#include "bss/structures.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bss/dsl.hpp"
#include "bss/error.hpp"
#include "bss/stream.hpp"

namespace bss {

Natural pair(Natural a, Natural b) { return (a + b) * (a + b + 1) / 2 + b; }

std::pair<Natural, Natural> unpair(Natural z) {
    Natural w = 0;
    while ((w + 1) * (w + 2) / 2 <= z) ++w;
    const Natural b = z - w * (w + 1) / 2;
    return {w - b, b};
}

void check_signature(const Signature& sig) {
    std::set<std::string> seen;
    auto claim = [&](const std::string& name) {
        if (!seen.insert(name).second) throw Error(ErrorKind::SignatureMismatch, "symbol '" + name + "' declared twice");
    };
    for (const auto& [name, arity] : sig.relations) {
        if (arity < 0) throw Error(ErrorKind::SignatureMismatch, "negative arity for '" + name + "'");
        claim(name);
    }
    for (const auto& [name, arity] : sig.functions) {
        if (arity < 0) throw Error(ErrorKind::SignatureMismatch, "negative arity for '" + name + "'");
        claim(name);
    }
    for (const auto& name : sig.constants) claim(name);
}

namespace {

std::string cell(std::size_t i) { return "x" + std::to_string(i); }

Machine parse(const std::string& text, const StreamBindings& streams = {}) { return parse_machine_dsl(text, streams); }

// r = x2 holds the remainder of ell, t = x3 the current weight 10^-j, j = x4.
std::string digit_loop(bool complement) {
    std::ostringstream s;
    s << "node init: compute x2 := ell, x3 := 1, x4 := 0 -> test\n"
         "node test: branch x2 - x3 >= 0 ? one : zero\n"
         "node one: compute x2 := x2 - x3 -> last_one\n"
         "node last_one: branch x4 - x1 >= 0 ? "
      << (complement ? "spin" : "hit")
      << " : next\n"
         "node zero: branch x4 - x1 >= 0 ? "
      << (complement ? "hit" : "spin")
      << " : next\n"
         "node next: compute x3 := x3 / 10, x4 := x4 + 1 -> test\n"
         "node hit: compute x1 := "
      << (complement ? 0 : 1)
      << " -> done\n"
         "node spin: compute -> spin\n"
         "node done: output [x1]\n";
    return s.str();
}

}  // namespace

Machine build_digit_extractor(const Scalar& ell, bool complement) {
    std::string text = std::string("machine ") + (complement ? "digit_zero" : "digit_one") +
                       " over stream\nparam ell = stream(ell)\nnode in: input -> init\n" + digit_loop(complement);
    return parse(text, {{"ell", ell}});
}

Machine build_pair_extractor(const Scalar& ell, bool complement) {
    std::string text = std::string("machine ") + (complement ? "order_not_less" : "order_less") +
                       " over stream\nparam ell = stream(ell)\nnode in: input -> pairing\n"
                       "node pairing: compute x1 := (x1 + x2) * (x1 + x2 + 1) / 2 + x2 -> init\n" +
                       digit_loop(complement);
    return parse(text, {{"ell", ell}});
}

Scalar order_real(const PairSet& d) {
    auto digits = std::make_shared<FunctionDigits>([d](std::size_t i) {
        auto [a, b] = unpair(i);
        return d.count({a, b}) ? 1 : 0;
    });
    return make_stream(Integer(0), digits, kDefaultDigitBudget, "ell");
}

void check_strict_order(const PairSet& d) {
    std::set<Natural> field;
    for (auto [a, b] : d) {
        if (a == b) throw Error(ErrorKind::NotAStrictOrder, "(" + std::to_string(a) + "," + std::to_string(a) + ") makes it reflexive");
        if (d.count({b, a}))
            throw Error(ErrorKind::NotAStrictOrder, "both (" + std::to_string(a) + "," + std::to_string(b) + ") and its reverse");
        field.insert(a);
        field.insert(b);
    }
    for (auto [a, b] : d)
        for (Natural c : field)
            if (d.count({b, c}) && !d.count({a, c}))
                throw Error(ErrorKind::NotAStrictOrder,
                            "not transitive at " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c));
    for (Natural a : field)
        for (Natural b : field)
            if (a < b && !d.count({a, b}) && !d.count({b, a}))
                throw Error(ErrorKind::NotAStrictOrder, std::to_string(a) + " and " + std::to_string(b) + " are incomparable");
}

std::pair<OrderPresentation, RStructure> build_order_structure(const PairSet& d) {
    check_strict_order(d);
    OrderPresentation pres{d, order_real(d)};
    RStructure s;
    s.sig.relations["<"] = 2;
    std::set<Natural> field;
    for (auto [a, b] : d) {
        field.insert(a);
        field.insert(b);
    }
    std::vector<std::vector<Natural>> members;
    std::vector<Word> elements;
    for (Natural a : field) {
        members.push_back({a});
        elements.push_back({Scalar(static_cast<long>(a))});
    }
    s.universe = table_machine(1, members, true);
    s.universe.name = "order_field";
    s.relations["<"] = {build_pair_extractor(pres.ell), build_pair_extractor(pres.ell, true)};
    s.finite_universe = elements;
    auto& table = s.tables["<"];
    for (auto [a, b] : d) table.push_back({{Scalar(static_cast<long>(a))}, {Scalar(static_cast<long>(b))}});
    return {std::move(pres), std::move(s)};
}

// ---------------------------------------------------------------------------

std::vector<Word> vs_basis(std::size_t n) {
    std::vector<Word> basis;
    for (std::size_t i = 0; i < n; ++i) {
        Word w(n, Scalar(0L));
        w[i] = Scalar(1L);
        basis.push_back(std::move(w));
    }
    return basis;
}

RStructure vs_make(std::size_t n, Backend backend) {
    const std::string over = std::string(to_string(backend));
    RStructure s;
    s.sig.functions = {{"add", 2}, {"scale", 2}};
    s.element_length = n;

    std::ostringstream u;
    u << "machine vector_space_" << n << " over " << over << "\n"
      << "node in: input -> len\n"
      << "node len: branch -(x0 - " << n << ")^2 >= 0 ? ok : spin\n"
      << "node ok: output []\n"
      << "node spin: compute -> spin\n";
    s.universe = parse(u.str());

    std::ostringstream add;
    add << "machine add over " << over << "\nnode in: input -> sum\nnode sum: compute";
    for (std::size_t i = 1; i <= n; ++i) add << (i > 1 ? "," : "") << " " << cell(i) << " := " << cell(i) << " + " << cell(n + i);
    add << " -> out\nnode out: output [";
    for (std::size_t i = 1; i <= n; ++i) add << (i > 1 ? ", " : "") << cell(i);
    add << "]\n";
    s.functions["add"] = parse(add.str());

    std::ostringstream sc;
    sc << "machine scale over " << over << "\nnode in: input -> mul\nnode mul: compute";
    for (std::size_t i = 2; i <= n + 1; ++i) sc << (i > 2 ? "," : "") << " " << cell(i) << " := x1 * " << cell(i);
    sc << " -> out\nnode out: output [";
    for (std::size_t i = 2; i <= n + 1; ++i) sc << (i > 2 ? ", " : "") << cell(i);
    sc << "]\n";
    s.functions["scale"] = parse(sc.str());

    if (n == 0) s.finite_universe = std::vector<Word>{Word{}};
    return s;
}

namespace {

// Row-reduces in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(std::vector<Word>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && is_zero(rows[p][c])) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const Scalar inv = Scalar(1L) / rows[r][c];
        for (auto& x : rows[r]) x = x * inv;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r || is_zero(rows[k][c])) continue;
            const Scalar f = rows[k][c];
            for (std::size_t j = 0; j < rows[k].size(); ++j) rows[k][j] = rows[k][j] - f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank_of(const std::vector<Word>& vectors) {
    if (vectors.empty()) return 0;
    std::vector<Word> rows = vectors;
    return row_reduce(rows, rows.front().size()).size();
}

VsIso vs_iso(std::size_t n, const std::vector<Word>& target_basis) {
    if (target_basis.size() != n)
        throw Error(ErrorKind::DimensionMismatch, std::to_string(target_basis.size()) + " target vectors for dimension " + std::to_string(n));
    const std::size_t m = n ? target_basis.front().size() : 0;
    bool algebraic = false;
    for (const auto& a : target_basis) {
        if (a.size() != m) throw Error(ErrorKind::DimensionMismatch, "target vectors have different lengths");
        for (const auto& x : a) {
            if (x.is_stream()) throw Error(ErrorKind::BackendMismatch, "stream entries in a basis");
            algebraic = algebraic || x.is_algebraic();
        }
    }
    if (rank_of(target_basis) < n) throw Error(ErrorKind::DependentBasis, "target vectors are linearly dependent");

    Machine f;
    f.name = "vs_iso";
    f.backend = algebraic ? Backend::RealAlgebraicField : Backend::RationalField;
    std::vector<Assignment> assigns;
    std::vector<long> out;
    for (std::size_t k = 0; k < m; ++k) {
        ExprPtr sum;
        for (std::size_t i = 0; i < n; ++i) {
            const Scalar& a = target_basis[i][k];
            if (is_zero(a)) continue;
            ExprPtr term = exactly_equal(a, Scalar(1L)) ? Expr::cell_ref(static_cast<long>(i) + 1)
                                                        : Expr::constant(a) * Expr::cell_ref(static_cast<long>(i) + 1);
            sum = sum ? sum + term : term;
        }
        const long target = static_cast<long>(n + k + 1);
        assigns.push_back({target, sum ? sum : Expr::constant(Scalar(0L))});
        out.push_back(target);
    }
    f.add_node(input_node("in"));
    if (!assigns.empty()) {
        f.add_node(compute_node("combine", assigns)).add_edge("in", "combine").add_edge("combine", "out");
    } else {
        f.add_edge("in", "out");
    }
    f.add_node(output_node("out", out));
    require_valid(f);

    auto basis = target_basis;
    auto inverse = [basis, n, m](const Word& y) {
        if (y.size() != m) throw Error(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(y.size()));
        // rows of [A | y] with A[k][i] = a_i[k]
        std::vector<Word> rows(m, Word(n + 1));
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t i = 0; i < n; ++i) rows[k][i] = basis[i][k];
            rows[k][n] = y[k];
        }
        auto pivots = row_reduce(rows, n);
        Word lambda(n, Scalar(0L));
        for (std::size_t r = 0; r < pivots.size(); ++r) lambda[pivots[r]] = rows[r][n];
        return lambda;
    };
    return {std::move(f), inverse};
}

// ---------------------------------------------------------------------------

Natural cycle_length(const Oracle& s, Natural n) {
    return s(Word{Scalar(static_cast<long>(n))}) ? 2 * n : 2 * n + 1;
}

RStructure cycle_graph_structure(Oracle s, Natural n_min, std::optional<Natural> n_max) {
    RStructure g;
    g.sig.relations["E"] = 2;
    g.element_length = 2;
    g.oracle = s;

    std::ostringstream u;
    u << "machine cycle_vertices over integer\n"
      << "node in: input -> arity\n"
      << "node arity: branch -(x0 - 2)^2 >= 0 ? low : spin\n"
      << "node low: branch x1 - " << n_min << " >= 0 ? " << (n_max ? "high" : "query") << " : spin\n";
    if (n_max) u << "node high: branch " << *n_max << " - x1 >= 0 ? query : spin\n";
    u << "node query: oracle [x1] into x5 -> length\n"
      << "node length: compute x6 := 2 * x1 + 1 - x5 -> first\n"
      << "node first: branch x2 >= 0 ? last : spin\n"
      << "node last: branch x6 - 1 - x2 >= 0 ? ok : spin\n"
      << "node ok: output []\n"
      << "node spin: compute -> spin\n";
    g.universe = parse(u.str());

    // x7 = j' - j must be +-1 or +-(len - 1)
    g.relations["E"] = {parse("machine cycle_adjacent over integer\n"
                              "node in: input -> same\n"
                              "node same: branch -(x1 - x3)^2 >= 0 ? query : no\n"
                              "node query: oracle [x1] into x5 -> length\n"
                              "node length: compute x6 := 2 * x1 + 1 - x5, x7 := x4 - x2 -> test\n"
                              "node test: branch -((x7 - 1) * (x7 + 1) * (x7 - x6 + 1) * (x7 + x6 - 1))^2 >= 0 ? yes : no\n"
                              "node yes: compute x1 := 1 -> out\n"
                              "node no: compute x1 := 0 -> out\n"
                              "node out: output [x1]\n"),
                        std::nullopt};

    if (n_max) {
        std::vector<Word> vs;
        auto& table = g.tables["E"];
        for (Natural n = n_min; n <= *n_max; ++n) {
            const Natural len = cycle_length(s, n);
            auto v = [&](Natural j) { return Word{Scalar(static_cast<long>(n)), Scalar(static_cast<long>(j))}; };
            for (Natural j = 0; j < len; ++j) {
                vs.push_back(v(j));
                table.push_back({v(j), v((j + 1) % len)});
                table.push_back({v(j), v((j + len - 1) % len)});
            }
        }
        g.finite_universe = vs;
    }
    return g;
}

// ---------------------------------------------------------------------------

Machine table_machine(std::size_t arity, const std::vector<std::vector<Natural>>& tuples, bool semi) {
    std::ostringstream s;
    s << "machine table over rational\nnode in: input -> " << (tuples.empty() ? "no" : "test") << "\n";
    if (!tuples.empty()) {
        s << "node test: branch -(";
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            s << (t ? " * " : "") << "(";
            for (std::size_t k = 0; k < arity; ++k) s << (k ? " + " : "") << "(" << cell(k + 1) << " - " << tuples[t][k] << ")^2";
            if (arity == 0) s << "0";
            s << ")";
        }
        s << ") >= 0 ? yes : no\n";
    }
    if (semi) {
        s << (tuples.empty() ? "" : "node yes: output []\n") << "node no: compute -> no\n";
    } else {
        if (!tuples.empty()) s << "node yes: compute x1 := 1 -> out\n";
        s << "node no: compute x1 := 0 -> out\nnode out: output [x1]\n";
    }
    return parse(s.str());
}

RStructure finite_structure(std::size_t size, const std::map<std::string, FiniteRelation>& relations) {
    RStructure s;
    std::vector<std::vector<Natural>> all;
    std::vector<Word> elements;
    for (Natural k = 0; k < size; ++k) {
        all.push_back({k});
        elements.push_back({Scalar(static_cast<long>(k))});
    }
    s.universe = table_machine(1, all, true);
    s.finite_universe = elements;
    for (const auto& [name, rel] : relations) {
        s.sig.relations[name] = rel.arity;
        s.relations[name] = {table_machine(static_cast<std::size_t>(rel.arity), rel.tuples), std::nullopt};
        auto& table = s.tables[name];
        for (const auto& t : rel.tuples) {
            std::vector<Word> row;
            for (Natural x : t) row.push_back({Scalar(static_cast<long>(x))});
            table.push_back(std::move(row));
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Truth t) {
    switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Unknown: return "unknown";
    }
    return "?";
}

namespace {

struct AtomLexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= text.size();
    }
    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw Error(ErrorKind::InvalidLiteral, "at column " + std::to_string(pos + 1) + " of '" + std::string(text) + "': " + msg);
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
    static bool op_char(char c) { return std::string_view("<>=!~&|%$@").find(c) != std::string_view::npos; }

    std::string ident() {
        skip();
        const std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return std::string(text.substr(start, pos - start));
    }
    std::string op() {
        skip();
        const std::size_t start = pos;
        while (pos < text.size() && op_char(text[pos])) ++pos;
        return std::string(text.substr(start, pos - start));
    }
    bool at_number() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && pos + 1 < text.size());
    }
    Scalar number() {
        skip();
        const std::size_t start = pos;
        if (text.substr(pos, 4) == "alg(") {
            int depth = 0;
            for (; pos < text.size(); ++pos) {
                if (text[pos] == '(') ++depth;
                if (text[pos] == ')' && --depth == 0) {
                    ++pos;
                    break;
                }
            }
        } else {
            if (text[pos] == '-') ++pos;
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
        }
        return parse_scalar(text.substr(start, pos - start));
    }
};

struct AtomParser {
    AtomLexer lx;
    const Signature& sig;

    std::vector<Term> term_list() {
        std::vector<Term> ts;
        lx.expect('(');
        if (lx.eat(')')) return ts;
        do ts.push_back(term());
        while (lx.eat(','));
        lx.expect(')');
        return ts;
    }

    Term term() {
        Term t;
        if (lx.peek() == '(') {
            t.kind = Term::Kind::Literal;
            lx.expect('(');
            if (lx.eat(')')) return t;
            do t.literal.push_back(lx.number());
            while (lx.eat(','));
            lx.expect(')');
            return t;
        }
        if (lx.text.substr(lx.pos, 4) == "alg(" || lx.at_number()) {
            t.literal.push_back(lx.number());
            return t;
        }
        t.name = lx.ident();
        if (t.name.empty()) lx.fail("expected a term");
        if (lx.peek() == '(') {
            t.kind = Term::Kind::Apply;
            t.args = term_list();
            return t;
        }
        const bool is_const = std::find(sig.constants.begin(), sig.constants.end(), t.name) != sig.constants.end();
        t.kind = is_const ? Term::Kind::Constant : Term::Kind::Variable;
        return t;
    }

    Atom atom() {
        Atom a;
        // prefix relation R(t1, ..., tk)
        const std::size_t save = lx.pos;
        std::string name = lx.ident();
        if (!name.empty() && sig.relations.count(name) && lx.peek() == '(') {
            a.relation = name;
            a.args = term_list();
            return a;
        }
        lx.pos = save;
        Term lhs = term();
        std::string rel = lx.op();
        if (rel.empty()) rel = lx.ident();
        if (rel.empty()) lx.fail("expected a relation symbol");
        a.relation = rel;
        a.args = {std::move(lhs), term()};
        return a;
    }
};

Word concat(const std::vector<Word>& ws) {
    Word out;
    for (const auto& w : ws) out.insert(out.end(), w.begin(), w.end());
    return out;
}

}  // namespace

std::pair<Atom, bool> parse_atomic(std::string_view text, const Signature& sig) {
    AtomParser p{AtomLexer{text}, sig};
    bool negated = false;
    for (;;) {
        p.lx.skip();
        auto rest = text.substr(p.lx.pos);
        if (rest.substr(0, 4) == "not " || rest.substr(0, 4) == "not(") {
            p.lx.pos += 3;
        } else if (!rest.empty() && rest[0] == '!' && (rest.size() < 2 || rest[1] != '=')) {
            p.lx.pos += 1;
        } else {
            break;
        }
        negated = !negated;
    }
    Atom a = p.atom();
    if (!p.lx.done()) p.lx.fail("trailing text");
    return {std::move(a), negated};
}

std::optional<Word> eval_term(const RStructure& s, const Term& t, const Valuation& asg, std::size_t budget) {
    switch (t.kind) {
    case Term::Kind::Literal: return t.literal;
    case Term::Kind::Variable: {
        auto it = asg.find(t.name);
        if (it != asg.end()) return it->second;
        auto c = s.constants.find(t.name);
        if (c != s.constants.end()) return c->second;
        throw Error(ErrorKind::SignatureMismatch, "unbound variable '" + t.name + "'");
    }
    case Term::Kind::Constant: {
        auto c = s.constants.find(t.name);
        if (c == s.constants.end()) throw Error(ErrorKind::SignatureMismatch, "constant '" + t.name + "' has no value");
        return c->second;
    }
    case Term::Kind::Apply: {
        auto arity = s.sig.functions.find(t.name);
        if (arity == s.sig.functions.end()) throw Error(ErrorKind::SignatureMismatch, "unknown function '" + t.name + "'");
        if (static_cast<std::size_t>(arity->second) != t.args.size())
            throw Error(ErrorKind::SignatureMismatch, "'" + t.name + "' takes " + std::to_string(arity->second) + " arguments");
        std::vector<Word> args;
        for (const auto& a : t.args) {
            auto v = eval_term(s, a, asg, budget);
            if (!v) return std::nullopt;
            args.push_back(std::move(*v));
        }
        auto r = run(s.functions.at(t.name), concat(args), budget, s.oracle ? &s.oracle : nullptr);
        if (!r.halted()) return std::nullopt;
        return r.output;
    }
    }
    return std::nullopt;
}

Truth atomic_truth(const RStructure& s, const Atom& a, const Valuation& asg, std::size_t budget) {
    if (a.relation != "=") {
        auto arity = s.sig.relations.find(a.relation);
        if (arity == s.sig.relations.end()) throw Error(ErrorKind::SignatureMismatch, "unknown relation '" + a.relation + "'");
        if (static_cast<std::size_t>(arity->second) != a.args.size())
            throw Error(ErrorKind::SignatureMismatch, "'" + a.relation + "' takes " + std::to_string(arity->second) + " arguments");
    } else if (a.args.size() != 2) {
        throw Error(ErrorKind::SignatureMismatch, "equality takes 2 arguments");
    }
    std::vector<Word> args;
    for (const auto& t : a.args) {
        auto v = eval_term(s, t, asg, budget);
        if (!v) return Truth::Unknown;
        args.push_back(std::move(*v));
    }
    if (a.relation == "=") return truth(same_word(args[0], args[1]));

    const RelationDecider& d = s.relations.at(a.relation);
    const Oracle* oracle = s.oracle ? &s.oracle : nullptr;
    const Word input = concat(args);
    auto r = run(d.member, input, budget, oracle);
    if (d.complement) {
        if (r.halted()) return Truth::True;
        if (run(*d.complement, input, budget, oracle).halted()) return Truth::False;
        return Truth::Unknown;
    }
    if (!r.halted() || r.output.size() != 1) return Truth::Unknown;
    if (exactly_equal(r.output[0], Scalar(1L))) return Truth::True;
    if (is_zero(r.output[0])) return Truth::False;
    return Truth::Unknown;
}

Truth atomic_truth(const RStructure& s, std::string_view sentence, std::size_t budget) {
    auto [atom, negated] = parse_atomic(sentence, s.sig);
    Truth t = atomic_truth(s, atom, {}, budget);
    if (negated && t != Truth::Unknown) t = t == Truth::True ? Truth::False : Truth::True;
    return t;
}

}  // namespace bss
