#include "bss/dsl.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "bss/error.hpp"

namespace bss {

namespace {

enum class Tok { Ident, Cell, Number, Alg, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t col = 0;
    long cell = 0;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& line, std::size_t lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto fail = [&](std::size_t at, const std::string& msg) { throw ParseError(lineno, at + 1, msg); };
    while (i < line.size()) {
        const char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') break;
        Token t;
        t.col = i + 1;
        if (c == 'x' && i + 1 < line.size() &&
            (std::isdigit(static_cast<unsigned char>(line[i + 1])) ||
             (line[i + 1] == '-' && i + 2 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 2]))))) {
            std::size_t j = i + 1;
            if (line[j] == '-') ++j;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            if (j < line.size() && ident_char(line[j])) {
                // something like x1a: an identifier, not a cell
            } else {
                t.kind = Tok::Cell;
                t.text = line.substr(i, j - i);
                try {
                    t.cell = std::stol(line.substr(i + 1, j - i - 1));
                } catch (const std::exception&) {
                    fail(i, "cell index out of range");
                }
                out.push_back(t);
                i = j;
                continue;
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j])) ++j;
            t.text = line.substr(i, j - i);
            if (t.text == "alg" && j < line.size() && line[j] == '(') {
                int depth = 0;
                std::size_t k = j;
                for (; k < line.size(); ++k) {
                    if (line[k] == '(') ++depth;
                    if (line[k] == ')' && --depth == 0) break;
                }
                if (k >= line.size()) fail(i, "unterminated alg( literal");
                t.kind = Tok::Alg;
                t.text = line.substr(i, k + 1 - i);
                out.push_back(t);
                i = k + 1;
                continue;
            }
            t.kind = Tok::Ident;
            out.push_back(t);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            if (j + 1 < line.size() && line[j] == '/' && std::isdigit(static_cast<unsigned char>(line[j + 1]))) {
                ++j;
                while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            }
            t.kind = Tok::Number;
            t.text = line.substr(i, j - i);
            out.push_back(t);
            i = j;
            continue;
        }
        for (const char* sym : {"->", ":=", ">=", ":", ",", "[", "]", "(", ")", "+", "-", "*", "/", "^", "=", "?"}) {
            std::string_view s(sym);
            if (line.compare(i, s.size(), s) == 0) {
                t.kind = Tok::Sym;
                t.text = std::string(s);
                break;
            }
        }
        if (t.kind != Tok::Sym) fail(i, std::string("unexpected character '") + c + "'");
        i += t.text.size();
        out.push_back(t);
    }
    Token end;
    end.kind = Tok::End;
    end.col = line.size() + 1;
    out.push_back(end);
    return out;
}

struct LineParser {
    std::vector<Token> toks;
    std::size_t lineno;
    std::size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(lineno, peek().col, msg); }
    bool at_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool eat_sym(const char* s) {
        if (!at_sym(s)) return false;
        ++pos;
        return true;
    }
    void expect_sym(const char* s) {
        if (!eat_sym(s)) fail(std::string("expected '") + s + "'");
    }
    bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
    std::string ident(const char* what) {
        if (peek().kind == Tok::Cell) fail(std::string(what) + " may not look like a cell name");
        if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
        return toks[pos++].text;
    }
    long cell() {
        if (peek().kind != Tok::Cell) fail("expected a cell such as x1");
        return toks[pos++].cell;
    }
    void expect_end() {
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    }

    Scalar literal(bool negative) {
        const Token& t = peek();
        try {
            Scalar s = parse_scalar(t.text);
            ++pos;
            return negative ? negate(s) : s;
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    ExprPtr primary() {
        const Token& t = peek();
        if (t.kind == Tok::Cell) return Expr::cell_ref(cell());
        if (t.kind == Tok::Number || t.kind == Tok::Alg) return Expr::constant(literal(false));
        if (t.kind == Tok::Ident) return Expr::param(toks[pos++].text);
        if (eat_sym("(")) {
            ExprPtr e = expr();
            expect_sym(")");
            return e;
        }
        fail("expected an expression");
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (eat_sym("^")) {
            if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos) fail("exponent must be a natural number");
            unsigned long e = std::stoul(toks[pos++].text);
            if (e > 1024) fail("exponent too large");
            return Expr::pow(base, static_cast<unsigned>(e));
        }
        return base;
    }

    ExprPtr unary() {
        if (eat_sym("-")) {
            if (peek().kind == Tok::Number && !(pos + 1 < toks.size() && toks[pos + 1].kind == Tok::Sym && toks[pos + 1].text == "^"))
                return Expr::constant(literal(true));
            return Expr::neg(unary());
        }
        return power();
    }

    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat_sym("*"))
                e = e * unary();
            else if (eat_sym("/"))
                e = e / unary();
            else
                return e;
        }
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat_sym("+"))
                e = e + term();
            else if (eat_sym("-"))
                e = e - term();
            else
                return e;
        }
    }

    std::optional<std::vector<long>> cell_list() {
        if (!eat_sym("[")) return std::nullopt;
        std::vector<long> cells;
        if (eat_sym("]")) return cells;
        do cells.push_back(cell());
        while (eat_sym(","));
        expect_sym("]");
        return cells;
    }
};

struct Position {
    std::size_t line = 0;
    std::size_t col = 0;
};

}  // namespace

Machine parse_machine_dsl(std::string_view text, const StreamBindings& streams) {
    Machine m;
    bool have_header = false;
    Position header_pos{1, 1};
    std::map<std::string, Position> node_pos;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        LineParser p{lex(line, lineno), lineno};
        if (p.peek().kind == Tok::End) continue;
        if (p.at_word("machine")) {
            if (have_header) p.fail("duplicate machine header");
            header_pos = {lineno, p.peek().col};
            ++p.pos;
            m.name = p.ident("machine name");
            if (!p.at_word("over")) p.fail("expected 'over'");
            ++p.pos;
            const std::string b = p.ident("backend");
            auto backend = backend_from_string(b);
            if (!backend) {
                --p.pos;
                p.fail("unknown backend '" + b + "' (integer, rational, algebraic, stream)");
            }
            m.backend = *backend;
            if (p.at_word("equational")) {
                ++p.pos;
                m.equational = true;
            }
            p.expect_end();
            have_header = true;
            continue;
        }
        if (!have_header) p.fail("expected 'machine NAME over BACKEND' first");
        if (p.at_word("param")) {
            ++p.pos;
            const std::string name = p.ident("parameter name");
            p.expect_sym("=");
            if (p.at_word("stream")) {
                ++p.pos;
                p.expect_sym("(");
                const std::size_t col = p.peek().col;
                const std::string source = p.ident("stream name");
                p.expect_sym(")");
                p.expect_end();
                auto it = streams.find(source);
                if (it == streams.end()) throw ParseError(lineno, col, "stream '" + source + "' is not bound");
                m.add_param(name, it->second);
                continue;
            }
            const bool neg = p.eat_sym("-");
            if (p.peek().kind != Tok::Number && p.peek().kind != Tok::Alg) p.fail("expected a scalar literal");
            Scalar v = p.literal(neg);
            p.expect_end();
            m.add_param(name, v);
            continue;
        }
        if (!p.at_word("node")) p.fail("expected 'machine', 'param' or 'node'");
        ++p.pos;
        const std::size_t id_col = p.peek().col;
        const std::string id = p.ident("node id");
        if (node_pos.count(id)) throw ParseError(lineno, id_col, "duplicate node id '" + id + "'");
        node_pos[id] = {lineno, id_col};
        p.expect_sym(":");
        const std::string kind = p.ident("node kind");
        auto arrow = [&] {
            p.expect_sym("->");
            std::string to = p.ident("target node id");
            p.expect_end();
            m.add_edge(id, to);
        };
        if (kind == "input") {
            m.add_node(input_node(id, p.cell_list()));
            arrow();
        } else if (kind == "compute") {
            std::vector<Assignment> as;
            if (!p.at_sym("->")) {
                do {
                    long c = p.cell();
                    p.expect_sym(":=");
                    as.push_back({c, p.expr()});
                } while (p.eat_sym(","));
            }
            m.add_node(compute_node(id, std::move(as)));
            arrow();
        } else if (kind == "branch") {
            ExprPtr h = p.expr();
            BranchRel rel;
            if (p.at_sym(">=")) {
                if (m.equational) p.fail("'>=' branch in an equational machine");
                rel = BranchRel::Geq;
            } else if (p.at_sym("=")) {
                if (!m.equational) p.fail("'= 0' branches are only allowed in equational machines");
                rel = BranchRel::Eq;
            } else {
                p.fail(m.equational ? "expected '= 0'" : "expected '>= 0'");
            }
            ++p.pos;
            if (p.peek().kind != Tok::Number || p.peek().text != "0") p.fail("expected 0");
            ++p.pos;
            p.expect_sym("?");
            std::string yes = p.ident("target node id");
            p.expect_sym(":");
            std::string no = p.ident("target node id");
            p.expect_end();
            m.add_node(branch_node(id, h, rel));
            m.add_edge(id, yes, EdgeLabel::One);
            m.add_edge(id, no, EdgeLabel::Zero);
        } else if (kind == "shift") {
            bool left;
            if (p.at_word("left"))
                left = true;
            else if (p.at_word("right"))
                left = false;
            else
                p.fail("expected 'left' or 'right'");
            ++p.pos;
            m.add_node(shift_node(id, left));
            arrow();
        } else if (kind == "output") {
            auto cells = p.cell_list();
            p.expect_end();
            m.add_node(output_node(id, cells));
        } else if (kind == "oracle") {
            auto cells = p.cell_list();
            if (!p.at_word("into")) p.fail("expected 'into'");
            ++p.pos;
            long target = p.cell();
            m.add_node(oracle_node(id, cells, target));
            arrow();
        } else {
            p.pos--;
            p.fail("unknown node kind '" + kind + "'");
        }
    }
    if (!have_header) throw ParseError(1, 1, "empty machine description");
    auto violations = validate(m);
    if (!violations.empty()) {
        std::string msg;
        for (const auto& v : violations) {
            Position at = header_pos;
            if (auto it = node_pos.find(v.node); it != node_pos.end()) at = it->second;
            msg += "\n  " + std::to_string(at.line) + ":" + std::to_string(at.col) + ": " +
                   (v.node.empty() ? "" : v.node + ": ") + v.clause;
        }
        throw Error(ErrorKind::ValidationError, m.name + msg);
    }
    return m;
}

Machine load_machine_file(const std::string& path, const StreamBindings& streams) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Io, "cannot read " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_machine_dsl(buf.str(), streams);
}

namespace {

std::string cells_text(const std::vector<long>& cells) {
    std::string s = "[";
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? ", x" : "x") + std::to_string(cells[i]);
    return s + "]";
}

std::string target(const Machine& m, const std::string& id, EdgeLabel label) {
    for (const auto& e : m.edges)
        if (e.from == id && e.label == label) return e.to;
    return "?";
}

}  // namespace

std::string print_machine_dsl(const Machine& m) {
    std::ostringstream out;
    out << "machine " << m.name << " over " << to_string(m.backend) << (m.equational ? " equational" : "") << "\n";
    for (const auto& [name, value] : m.params) out << "param " << name << " = " << value.to_string() << "\n";
    for (const auto& n : m.nodes) {
        out << "node " << n.id << ": ";
        switch (n.kind) {
        case NodeKind::Input:
            out << "input" << (n.cells ? " " + cells_text(*n.cells) : "") << " -> " << target(m, n.id, EdgeLabel::Next);
            break;
        case NodeKind::Compute:
            out << "compute";
            for (std::size_t i = 0; i < n.assignments.size(); ++i)
                out << (i ? ", x" : " x") << n.assignments[i].cell << " := " << render(*n.assignments[i].expr);
            out << " -> " << target(m, n.id, EdgeLabel::Next);
            break;
        case NodeKind::Branch:
            out << "branch " << render(*n.test) << (n.rel == BranchRel::Eq ? " = 0" : " >= 0") << " ? "
                << target(m, n.id, EdgeLabel::One) << " : " << target(m, n.id, EdgeLabel::Zero);
            break;
        case NodeKind::Shift: out << "shift " << (n.left ? "left" : "right") << " -> " << target(m, n.id, EdgeLabel::Next); break;
        case NodeKind::Output: out << "output" << (n.cells ? " " + cells_text(*n.cells) : ""); break;
        case NodeKind::Oracle:
            out << "oracle" << (n.cells ? " " + cells_text(*n.cells) : "") << " into x" << n.target << " -> "
                << target(m, n.id, EdgeLabel::Next);
            break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace bss
