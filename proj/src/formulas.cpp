#include "bss/formulas.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "bss/dsl.hpp"
#include "bss/error.hpp"

namespace bss {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr binder(Formula::Kind k, std::vector<std::string> vars, FormulaPtr body) {
    Formula f;
    f.kind = k;
    f.vars = std::move(vars);
    f.children = {std::move(body)};
    return make(std::move(f));
}

FormulaPtr enumerated(Formula::Kind k, std::string index, std::shared_ptr<const Machine> set, std::optional<Natural> bound,
                      FormulaPtr body) {
    Formula f;
    f.kind = k;
    f.vars = {std::move(index)};
    f.index_set = std::move(set);
    f.bound = bound;
    f.children = {std::move(body)};
    return make(std::move(f));
}

}  // namespace

FormulaPtr atom(bss::Atom a) {
    Formula f;
    f.atom = std::move(a);
    return make(std::move(f));
}

FormulaPtr negation(FormulaPtr g) {
    Formula f;
    f.kind = Formula::Kind::Not;
    f.children = {std::move(g)};
    return make(std::move(f));
}

FormulaPtr conjunction(std::vector<FormulaPtr> fs) {
    Formula f;
    f.kind = Formula::Kind::And;
    f.children = std::move(fs);
    return make(std::move(f));
}

FormulaPtr disjunction(std::vector<FormulaPtr> fs) {
    Formula f;
    f.kind = Formula::Kind::Or;
    f.children = std::move(fs);
    return make(std::move(f));
}

FormulaPtr exists(std::vector<std::string> vars, FormulaPtr body) { return binder(Formula::Kind::Exists, std::move(vars), std::move(body)); }
FormulaPtr forall(std::vector<std::string> vars, FormulaPtr body) { return binder(Formula::Kind::Forall, std::move(vars), std::move(body)); }

FormulaPtr or_enum(std::string index, std::shared_ptr<const Machine> set, std::optional<Natural> bound, FormulaPtr body) {
    return enumerated(Formula::Kind::OrEnum, std::move(index), std::move(set), bound, std::move(body));
}

FormulaPtr and_enum(std::string index, std::shared_ptr<const Machine> set, std::optional<Natural> bound, FormulaPtr body) {
    return enumerated(Formula::Kind::AndEnum, std::move(index), std::move(set), bound, std::move(body));
}

// ---------------------------------------------------------------------------
// S-expressions

namespace {

struct SExpr {
    bool list = false;
    bool quoted = false;
    std::string atom;
    std::vector<SExpr> items;
    std::size_t pos = 0;
};

class SReader {
public:
    explicit SReader(std::string_view t) : text_(t) {}

    SExpr read() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of formula");
        SExpr e;
        e.pos = pos_;
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            e.list = true;
            for (;;) {
                skip();
                if (pos_ >= text_.size()) fail("missing ')'");
                if (text_[pos_] == ')') {
                    ++pos_;
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (c == ')') fail("unexpected ')'");
        if (c == '"') {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
            if (pos_ >= text_.size()) fail("unterminated string");
            e.atom = std::string(text_.substr(start, pos_ - start));
            e.quoted = true;
            ++pos_;
            return e;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')')
            ++pos_;
        e.atom = std::string(text_.substr(start, pos_ - start));
        return e;
    }

    bool at_end() {
        skip();
        return pos_ >= text_.size();
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, msg);
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    const std::size_t i = s[0] == '-' ? 1 : 0;
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

class FormulaBuilder {
public:
    FormulaBuilder(const SReader& r, const Signature& sig, std::string base) : r_(r), sig_(sig), base_(std::move(base)) {}

    FormulaPtr formula(const SExpr& e) {
        if (!e.list || e.items.empty() || e.items[0].list) r_.fail_at(e.pos, "expected a formula (head symbol)");
        const std::string& head = e.items[0].atom;
        auto need = [&](std::size_t n) {
            if (e.items.size() != n) r_.fail_at(e.pos, "'" + head + "' takes " + std::to_string(n - 1) + " arguments");
        };
        if (head == "atom") {
            if (e.items.size() < 2 || e.items[1].list) r_.fail_at(e.pos, "expected a relation symbol");
            bss::Atom a;
            a.relation = e.items[1].atom;
            for (std::size_t i = 2; i < e.items.size(); ++i) a.args.push_back(term(e.items[i]));
            return atom(std::move(a));
        }
        if (head == "=") {
            need(3);
            return atom(bss::Atom{"=", {term(e.items[1]), term(e.items[2])}});
        }
        if (head == "not") {
            need(2);
            return negation(formula(e.items[1]));
        }
        if (head == "and" || head == "or") {
            std::vector<FormulaPtr> fs;
            for (std::size_t i = 1; i < e.items.size(); ++i) fs.push_back(formula(e.items[i]));
            return head == "and" ? conjunction(std::move(fs)) : disjunction(std::move(fs));
        }
        if (head == "implies") {
            need(3);
            return disjunction({negation(formula(e.items[1])), formula(e.items[2])});
        }
        if (head == "exists" || head == "forall") {
            need(3);
            auto vars = names(e.items[1]);
            auto body = formula(e.items[2]);
            return head == "exists" ? exists(std::move(vars), body) : forall(std::move(vars), body);
        }
        if (head == "or-enum" || head == "and-enum") {
            if (e.items.size() < 4) r_.fail_at(e.pos, "'" + head + "' needs a machine, an index and a body");
            const SExpr& m = e.items[1];
            if (!m.list || m.items.size() != 2 || m.items[0].atom != "machine" || !m.items[1].quoted)
                r_.fail_at(m.pos, "expected (machine \"FILE\")");
            namespace fs = std::filesystem;
            fs::path path = fs::path(m.items[1].atom);
            if (path.is_relative()) path = fs::path(base_) / path;
            auto set = std::make_shared<const Machine>(load_machine_file(path.string()));
            auto idx = names(e.items[2]);
            if (idx.size() != 1) r_.fail_at(e.items[2].pos, "expected one index variable");
            std::optional<Natural> bound;
            std::string field = "Q";
            std::size_t i = 3;
            for (; i + 1 < e.items.size(); ++i) {
                const SExpr& opt = e.items[i];
                if (!opt.list || opt.items.size() != 2) r_.fail_at(opt.pos, "expected (bound N) or (field \"F\")");
                if (opt.items[0].atom == "bound")
                    bound = static_cast<Natural>(std::stoull(opt.items[1].atom));
                else if (opt.items[0].atom == "field")
                    field = opt.items[1].atom;
                else
                    r_.fail_at(opt.pos, "unknown option '" + opt.items[0].atom + "'");
            }
            if (i + 1 != e.items.size()) r_.fail_at(e.pos, "missing body");
            auto body = formula(e.items[i]);
            Formula f = head == "or-enum" ? *or_enum(idx[0], set, bound, body) : *and_enum(idx[0], set, bound, body);
            f.field = field;
            return make(std::move(f));
        }
        if (head == "limit") {
            Formula f;
            f.kind = Formula::Kind::Limit;
            for (std::size_t i = 1; i < e.items.size(); ++i)
                if (e.items[i].list) f.children.push_back(formula(e.items[i]));
            return make(std::move(f));
        }
        if (sig_.relations.count(head)) {
            bss::Atom a;
            a.relation = head;
            for (std::size_t i = 1; i < e.items.size(); ++i) a.args.push_back(term(e.items[i]));
            return atom(std::move(a));
        }
        r_.fail_at(e.pos, "unknown formula head '" + head + "'");
    }

private:
    std::vector<std::string> names(const SExpr& e) {
        if (!e.list) r_.fail_at(e.pos, "expected a variable list");
        std::vector<std::string> out;
        for (const auto& v : e.items) {
            if (v.list || v.atom.empty()) r_.fail_at(v.pos, "expected a variable name");
            out.push_back(v.atom);
        }
        return out;
    }

    Scalar scalar(const SExpr& e) {
        try {
            return parse_scalar(e.atom);
        } catch (const Error& err) {
            r_.fail_at(e.pos, err.what());
        }
    }

    Term term(const SExpr& e) {
        Term t;
        if (!e.list) {
            if (e.quoted || looks_numeric(e.atom)) {
                t.literal = {scalar(e)};
                return t;
            }
            t.name = e.atom;
            const bool is_const = std::find(sig_.constants.begin(), sig_.constants.end(), e.atom) != sig_.constants.end();
            t.kind = is_const ? Term::Kind::Constant : Term::Kind::Variable;
            return t;
        }
        if (e.items.empty() || e.items[0].list) r_.fail_at(e.pos, "expected a term");
        if (e.items[0].atom == "word") {
            for (std::size_t i = 1; i < e.items.size(); ++i) {
                if (e.items[i].list) r_.fail_at(e.items[i].pos, "word entries must be scalar literals");
                t.literal.push_back(scalar(e.items[i]));
            }
            return t;
        }
        t.kind = Term::Kind::Apply;
        t.name = e.items[0].atom;
        for (std::size_t i = 1; i < e.items.size(); ++i) t.args.push_back(term(e.items[i]));
        return t;
    }

    const SReader& r_;
    const Signature& sig_;
    std::string base_;
};

std::string render_term(const Term& t) {
    switch (t.kind) {
    case Term::Kind::Literal: {
        if (t.literal.size() == 1) {
            std::string s = t.literal[0].to_string();
            return s.find_first_of(" (") == std::string::npos ? s : "\"" + s + "\"";
        }
        std::string s = "(word";
        for (const auto& x : t.literal) s += " " + x.to_string();
        return s + ")";
    }
    case Term::Kind::Variable:
    case Term::Kind::Constant: return t.name;
    case Term::Kind::Apply: {
        std::string s = "(" + t.name;
        for (const auto& a : t.args) s += " " + render_term(a);
        return s + ")";
    }
    }
    return "?";
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const Signature& sig, const std::string& base_dir) {
    SReader reader(text);
    SExpr e = reader.read();
    if (!reader.at_end()) reader.fail("trailing text after formula");
    return FormulaBuilder(reader, sig, base_dir).formula(e);
}

FormulaPtr load_formula_file(const std::string& path, const Signature& sig) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_formula(ss.str(), sig, std::filesystem::path(path).parent_path().string());
}

std::string render(const Formula& f) {
    auto list = [](const std::vector<std::string>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
        return s + ")";
    };
    switch (f.kind) {
    case Formula::Kind::Atom: {
        std::string s = f.atom.relation == "=" ? "(=" : "(atom " + f.atom.relation;
        for (const auto& a : f.atom.args) s += " " + render_term(a);
        return s + ")";
    }
    case Formula::Kind::Not: return "(not " + render(*f.children[0]) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::string s = f.kind == Formula::Kind::And ? "(and" : "(or";
        for (const auto& c : f.children) s += " " + render(*c);
        return s + ")";
    }
    case Formula::Kind::Exists: return "(exists " + list(f.vars) + " " + render(*f.children[0]) + ")";
    case Formula::Kind::Forall: return "(forall " + list(f.vars) + " " + render(*f.children[0]) + ")";
    case Formula::Kind::OrEnum:
    case Formula::Kind::AndEnum: {
        std::string s = f.kind == Formula::Kind::OrEnum ? "(or-enum" : "(and-enum";
        s += " (machine \"" + (f.index_set ? f.index_set->name : std::string()) + "\") " + list(f.vars);
        if (f.bound) s += " (bound " + std::to_string(*f.bound) + ")";
        return s + " " + render(*f.children[0]) + ")";
    }
    case Formula::Kind::Limit: return "(limit)";
    }
    return "?";
}

// ---------------------------------------------------------------------------

FormulaPtr nnf(const FormulaPtr& f) {
    auto map_children = [](const Formula& g, bool negate) {
        Formula h = g;
        for (auto& c : h.children) c = nnf(negate ? negation(c) : c);
        return h;
    };
    if (f->kind != Formula::Kind::Not) {
        if (f->kind == Formula::Kind::Atom) return f;
        return make(map_children(*f, false));
    }
    const FormulaPtr& g = f->children[0];
    Formula h;
    switch (g->kind) {
    case Formula::Kind::Atom: return f;
    case Formula::Kind::Not: return nnf(g->children[0]);
    case Formula::Kind::Limit: return f;
    case Formula::Kind::And: h = map_children(*g, true); h.kind = Formula::Kind::Or; break;
    case Formula::Kind::Or: h = map_children(*g, true); h.kind = Formula::Kind::And; break;
    case Formula::Kind::Exists: h = map_children(*g, true); h.kind = Formula::Kind::Forall; break;
    case Formula::Kind::Forall: h = map_children(*g, true); h.kind = Formula::Kind::Exists; break;
    case Formula::Kind::OrEnum: h = map_children(*g, true); h.kind = Formula::Kind::AndEnum; break;
    case Formula::Kind::AndEnum: h = map_children(*g, true); h.kind = Formula::Kind::OrEnum; break;
    }
    return make(std::move(h));
}

std::string to_string(const Level& l) {
    switch (l.kind) {
    case Level::Kind::Delta0: return "Delta0";
    case Level::Kind::Sigma: return "Sigma" + std::to_string(l.n);
    case Level::Kind::Pi: return "Pi" + std::to_string(l.n);
    }
    return "?";
}

namespace {

Level classify_nnf(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
    case K::Atom:
    case K::Not: return {};
    case K::Limit: throw Error(ErrorKind::TransfiniteNotSupported, "limit levels are not supported");
    case K::And:
    case K::Or: {
        unsigned top = 0;
        bool sigma = false, pi = false;
        std::vector<Level> ls;
        for (const auto& c : f.children) ls.push_back(classify_nnf(*c));
        for (const auto& l : ls) top = std::max(top, l.n);
        if (top == 0) return {};
        for (const auto& l : ls) {
            if (l.n != top) continue;
            sigma = sigma || l.kind == Level::Kind::Sigma;
            pi = pi || l.kind == Level::Kind::Pi;
        }
        if (sigma && pi) return {top + 1, Level::Kind::Sigma};
        return {top, sigma ? Level::Kind::Sigma : Level::Kind::Pi};
    }
    case K::Exists:
    case K::OrEnum: {
        Level b = classify_nnf(*f.children[0]);
        if (b.kind == Level::Kind::Delta0) return {1, Level::Kind::Sigma};
        if (b.kind == Level::Kind::Sigma) return b;
        return {b.n + 1, Level::Kind::Sigma};
    }
    case K::Forall:
    case K::AndEnum: {
        Level b = classify_nnf(*f.children[0]);
        if (b.kind == Level::Kind::Delta0) return {1, Level::Kind::Pi};
        if (b.kind == Level::Kind::Pi) return b;
        return {b.n + 1, Level::Kind::Pi};
    }
    }
    return {};
}

Truth flip(Truth t) {
    if (t == Truth::Unknown) return t;
    return t == Truth::True ? Truth::False : Truth::True;
}

bool in_table(const std::vector<std::vector<Word>>& table, const std::vector<Word>& args) {
    for (const auto& row : table) {
        if (row.size() != args.size()) continue;
        bool eq = true;
        for (std::size_t i = 0; i < row.size() && eq; ++i) eq = same_word(row[i], args[i]);
        if (eq) return true;
    }
    return false;
}

Word natural_word(Natural i) { return Word{Scalar(static_cast<long>(i))}; }

struct FiniteEval {
    const RStructure& s;
    std::size_t budget;

    bool atom_value(const bss::Atom& a, const Valuation& asg) {
        auto table = s.tables.find(a.relation);
        if (a.relation != "=" && table != s.tables.end()) {
            auto arity = s.sig.relations.find(a.relation);
            if (arity == s.sig.relations.end() || static_cast<std::size_t>(arity->second) != a.args.size())
                throw Error(ErrorKind::SignatureMismatch, "bad use of '" + a.relation + "'");
            std::vector<Word> args;
            for (const auto& t : a.args) {
                auto v = eval_term(s, t, asg, budget);
                if (!v) throw Error(ErrorKind::UnsupportedNode, "term evaluation did not halt");
                args.push_back(std::move(*v));
            }
            return in_table(table->second, args);
        }
        Truth t = atomic_truth(s, a, asg, budget);
        if (t == Truth::Unknown) throw Error(ErrorKind::UnsupportedNode, "atom '" + a.relation + "' undecided within the budget");
        return t == Truth::True;
    }

    bool member(const Machine& m, Natural i) { return run(m, natural_word(i), budget, s.oracle ? &s.oracle : nullptr).halted(); }

    bool eval(const Formula& f, Valuation& asg) {
        using K = Formula::Kind;
        switch (f.kind) {
        case K::Atom: return atom_value(f.atom, asg);
        case K::Not: return !eval(*f.children[0], asg);
        case K::And:
            for (const auto& c : f.children)
                if (!eval(*c, asg)) return false;
            return true;
        case K::Or:
            for (const auto& c : f.children)
                if (eval(*c, asg)) return true;
            return false;
        case K::Exists:
        case K::Forall: {
            if (!s.finite_universe) throw Error(ErrorKind::InfiniteUniverse, "structure has no explicit universe");
            const bool want = f.kind == K::Exists;
            return quantify(f, asg, 0, want);
        }
        case K::OrEnum:
        case K::AndEnum: {
            if (!f.bound) throw Error(ErrorKind::UnboundedEnumerator, "countable node over '" + f.vars[0] + "' has no bound");
            const bool want = f.kind == K::OrEnum;
            Valuation inner = asg;
            for (Natural i = 0; i < *f.bound; ++i) {
                if (!member(*f.index_set, i)) continue;
                inner[f.vars[0]] = natural_word(i);
                if (eval(*f.children[0], inner) == want) return want;
            }
            return !want;
        }
        case K::Limit: throw Error(ErrorKind::TransfiniteNotSupported, "limit levels are not supported");
        }
        return false;
    }

    bool quantify(const Formula& f, Valuation& asg, std::size_t k, bool want) {
        if (k == f.vars.size()) return eval(*f.children[0], asg);
        Valuation inner = asg;
        for (const auto& e : *s.finite_universe) {
            inner[f.vars[k]] = e;
            if (quantify(f, inner, k + 1, want) == want) return want;
        }
        return !want;
    }
};

// Decodes stage s into k naturals by iterated unpairing.
std::vector<Natural> decode_tuple(Natural s, std::size_t k) {
    std::vector<Natural> out;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        auto [a, b] = unpair(s);
        out.push_back(a);
        s = b;
    }
    if (k) out.push_back(s);
    return out;
}

struct BudgetEval {
    const RStructure& s;
    const Witnesses& w;
    std::size_t budget;
    std::optional<Natural> witness_count;

    Truth atom_value(const Formula& f, const Valuation& asg) {
        if (f.kind == Formula::Kind::Not) return flip(atom_value(*f.children[0], asg));
        return atomic_truth(s, f.atom, asg, budget);
    }

    // f in negation normal form, Sigma_1 or Delta_0
    Truth sigma(const Formula& f, const Valuation& asg) {
        using K = Formula::Kind;
        switch (f.kind) {
        case K::Atom:
        case K::Not: return atom_value(f, asg);
        case K::And: {
            Truth acc = Truth::True;
            for (const auto& c : f.children) {
                Truth t = sigma(*c, asg);
                if (t == Truth::False) return t;
                if (t == Truth::Unknown) acc = t;
            }
            return acc;
        }
        case K::Or: {
            Truth acc = Truth::False;
            for (const auto& c : f.children) {
                Truth t = sigma(*c, asg);
                if (t == Truth::True) return t;
                if (t == Truth::Unknown) acc = t;
            }
            return acc;
        }
        case K::Exists:
        case K::OrEnum: return search(f, asg);
        default: throw Error(ErrorKind::LevelTooHigh, "universal inside a Sigma1 formula");
        }
    }

    struct Binder {
        std::string var;
        const Machine* index_set = nullptr;  // null for witness variables
        std::optional<Natural> bound;
    };

    Truth search(const Formula& top, const Valuation& asg) {
        std::vector<Binder> binders;
        const Formula* f = &top;
        while (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::OrEnum) {
            if (f->kind == Formula::Kind::Exists)
                for (const auto& v : f->vars) binders.push_back({v, nullptr, std::nullopt});
            else
                binders.push_back({f->vars[0], f->index_set.get(), f->bound});
            f = f->children[0].get();
        }
        // finite box: every coordinate bounded and witnesses exhaustive
        std::optional<Natural> box = 1;
        for (const auto& b : binders) {
            std::optional<Natural> size = b.index_set ? b.bound : (w.exhaustive ? witness_count : std::nullopt);
            box = (box && size) ? std::optional<Natural>(*box * *size) : std::nullopt;
        }
        Natural settled = 0;
        const Oracle* oracle = s.oracle ? &s.oracle : nullptr;
        for (Natural stage = 0; stage < budget; ++stage) {
            auto code = decode_tuple(stage, binders.size());
            Valuation inner = asg;
            bool in_range = true, outside = false, index_member = true, index_known = true;
            for (std::size_t k = 0; k < binders.size() && in_range; ++k) {
                const Binder& b = binders[k];
                if (b.index_set) {
                    if (b.bound && code[k] >= *b.bound) {
                        in_range = false;
                        break;
                    }
                    inner[b.var] = natural_word(code[k]);
                    auto r = run(*b.index_set, natural_word(code[k]), budget, oracle);
                    if (!r.halted()) {
                        index_member = false;
                        if (r.kind == OutcomeKind::OutOfBudget) index_known = false;
                    }
                } else {
                    auto word = w.nth(code[k]);
                    if (!word) {
                        in_range = false;
                        break;
                    }
                    // candidates outside the universe are skipped, never settled
                    if (!run(s.universe, *word, budget, oracle).halted()) {
                        in_range = false;
                        outside = true;
                        break;
                    }
                    inner[b.var] = std::move(*word);
                }
            }
            if (!in_range) {
                if (outside) box.reset();
                continue;
            }
            if (!index_member) {
                // a stuck index run is a definite non-member; out of budget is not
                if (index_known) ++settled;
                continue;
            }
            Truth t = sigma(*f, inner);
            if (t == Truth::True) return t;
            if (t == Truth::False) ++settled;
            if (box && settled == *box) return Truth::False;
        }
        if (box && *box == 0) return Truth::False;
        return Truth::Unknown;
    }
};

}  // namespace

Level classify(const FormulaPtr& f) { return classify_nnf(*nnf(f)); }

bool eval_finite(const RStructure& s, const FormulaPtr& f, const Valuation& asg, std::size_t machine_budget) {
    Valuation a = asg;
    return FiniteEval{s, machine_budget}.eval(*f, a);
}

Witnesses Witnesses::list(std::vector<Word> words, bool exhaustive) {
    auto shared = std::make_shared<const std::vector<Word>>(std::move(words));
    Witnesses w;
    w.exhaustive = exhaustive;
    w.nth = [shared](Natural i) -> std::optional<Word> {
        if (i >= shared->size()) return std::nullopt;
        return (*shared)[i];
    };
    return w;
}

Witnesses Witnesses::rational_grid() {
    auto cache = std::make_shared<std::vector<Word>>();
    auto height = std::make_shared<long>(0);
    Witnesses w;
    w.nth = [cache, height](Natural i) -> std::optional<Word> {
        while (cache->size() <= i) {
            const long h = (*height)++;
            if (h == 0) {
                cache->push_back({Scalar(0L)});
                continue;
            }
            // all reduced p/q with max(|p|, q) = h
            for (long q = 1; q <= h; ++q)
                for (long p = -h; p <= h; ++p) {
                    if (std::max(std::labs(p), q) != h || p == 0 || std::gcd(std::labs(p), q) != 1) continue;
                    Rational r(p, q);
                    cache->push_back({Scalar(r)});
                }
        }
        return (*cache)[i];
    };
    return w;
}

Truth eval_budgeted(const RStructure& s, const FormulaPtr& f, const Valuation& asg, const Witnesses& w, std::size_t budget) {
    Level l = classify(f);
    if (l.n > 1) throw Error(ErrorKind::LevelTooHigh, "budgeted evaluation covers Sigma1 and Pi1, got " + to_string(l));
    BudgetEval e{s, w, budget, std::nullopt};
    if (w.exhaustive) {
        Natural n = 0;
        while (w.nth(n)) ++n;
        e.witness_count = n;
    }
    if (l.kind == Level::Kind::Pi) return flip(e.sigma(*nnf(negation(f)), asg));
    return e.sigma(*nnf(f), asg);
}

}  // namespace bss
