#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bss/dsl.hpp"
#include "bss/error.hpp"
#include "bss/paths.hpp"
#include "corpus_util.hpp"

using namespace bss;
using testutil::corpus;

namespace {

std::vector<Cell> halting(const std::vector<Cell>& cells) {
    std::vector<Cell> out;
    for (const auto& c : cells)
        if (!c.truncated) out.push_back(c);
    return out;
}

std::string conds(const Cell& c) {
    std::string s;
    for (const auto& k : c.conditions) s += (s.empty() ? "" : " & ") + render(k.poly) + std::string(to_string(k.rel));
    return s;
}

bool opposite(Relation a, Relation b) {
    return (a == Relation::Geq && b == Relation::Lt) || (a == Relation::Lt && b == Relation::Geq) ||
           (a == Relation::Eq && b == Relation::Ne) || (a == Relation::Ne && b == Relation::Eq);
}

}  // namespace

TEST_CASE("sign branch has one halting cell") {
    auto cells = enumerate_paths(corpus("sign_branch"), 1, 10);
    auto h = halting(cells);
    REQUIRE(h.size() == 1);
    CHECK(conds(h[0]) == "x1>=0");
    REQUIRE(h[0].output.size() == 1);
    CHECK(render(h[0].output[0]) == "x1");
    CHECK(cells.size() == 2);  // plus the truncated spin path
}

TEST_CASE("equational zero test") {
    Machine m = corpus("zero_test");
    CHECK(check_equational(m));
    auto h = halting(enumerate_paths(m, 1, 10));
    REQUIRE(h.size() == 1);
    CHECK(conds(h[0]) == "x1=0");
    CHECK(!check_equational(corpus("sign_branch")));
}

TEST_CASE("newton after one iteration") {
    // sympy: numerator of ((x + 2/x)/2)^2 - 2)^2 - 1/10^6 over x^4, made monic
    const std::string first = "x1^4 - 4*x1^2 + 3999999/1000000";
    const std::string second = "x1^8 - 8*x1^6 + 1499999/62500*x1^4 - 32*x1^2 + 16";
    auto h = halting(enumerate_paths(corpus("newton"), 1, 6));
    REQUIRE(h.size() == 2);
    // 1-edge first: the path through one update comes before the immediate exit
    CHECK(conds(h[0]) == first + ">=0 & x1!=0 & " + second + "<0");
    CHECK(h[0].conditions[1].side);
    CHECK(!h[0].conditions[2].side);
    CHECK(conds(h[1]) == first + "<0");
    CHECK(render(h[0].output[0]) == "(1/2*x1^2 + 1) / (x1)");
    CHECK(h[0].field == "Q");
}

TEST_CASE("cell membership") {
    auto h = halting(enumerate_paths(corpus("sign_branch"), 1, 10));
    CHECK(!cell_contains(h[0], Word{Scalar(-1L)}));
    CHECK(cell_contains(h[0], Word{Scalar(0L)}));

    Machine m = parse_machine_dsl(R"(machine root over algebraic equational
node in: input -> b
node b: branch x1^2 - 2 = 0 ? yes : no
node yes: output [x1]
node no: output [x1]
)");
    auto rc = halting(enumerate_paths(m, 1, 10));
    REQUIRE(rc.size() == 2);
    CHECK(conds(rc[0]) == "x1^2 - 2=0");
    Scalar sqrt2 = parse_scalar("alg(x^2 - 2, 1, 2)");
    CHECK(cell_contains(rc[0], Word{sqrt2}));
    CHECK(!cell_contains(rc[1], Word{sqrt2}));
    CHECK_THROWS_AS(cell_contains(rc[0], Word{Scalar(1L), Scalar(2L)}), Error);
}

TEST_CASE("unsupported machines") {
    Machine o;
    o.add_node(input_node("in"))
        .add_node(oracle_node("q", std::vector<long>{1}, 2))
        .add_node(output_node("out", std::vector<long>{2}))
        .add_edge("in", "q")
        .add_edge("q", "out");
    try {
        enumerate_paths(o, 1, 10);
        FAIL("oracle accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedNode);
    }
}

TEST_CASE("division by a constant zero drops the path") {
    Machine m = parse_machine_dsl(R"(machine d over rational
node in: input -> b
node b: branch x1 >= 0 ? c : out
node c: compute x1 := x1 / (x2 - x2) -> out
node out: output [x1]
)");
    auto h = halting(enumerate_paths(m, 2, 10));
    REQUIRE(h.size() == 1);
    CHECK(conds(h[0]) == "x1<0");
}

TEST_CASE("large polynomials render as programs") {
    PolyArena a(2, 8);
    Poly p = a.add(a.var(0), a.var(1));
    Poly q = a.pow(p, 12);
    CHECK(!q->expanded);
    CHECK(render(q) == "let t1 = (x1 + x2)^12; in t1");
    CHECK(render(a.pow(p, 2)) == "x1^2 + 2*x1*x2 + x2^2");
    // interning: equal expansions share a node
    CHECK(a.sub(a.add(a.var(0), a.constant(Scalar(1L))), a.constant(Scalar(1L))) == a.var(0));
    CHECK(PolyArena::is_constant(a.sub(p, p)));
}

TEST_CASE("cell properties on the corpus") {
    for (const auto& entry : testutil::corpus_entries()) {
        CAPTURE(entry.name);
        Machine m = corpus(entry.name);
        auto cells = enumerate_paths(m, entry.dim, 60);
        // canonical order: byte-identical output from a second enumeration
        CHECK(cells_to_json(cells, m.name) == cells_to_json(enumerate_paths(m, entry.dim, 60), m.name));
        if (check_equational(m))
            for (const auto& c : cells)
                for (const auto& k : c.conditions) CHECK((k.rel == Relation::Eq || k.rel == Relation::Ne));
        auto h = halting(cells);
        for (std::size_t i = 0; i < h.size(); ++i)
            for (std::size_t j = i + 1; j < h.size(); ++j) {
                bool split = false;
                const std::size_t n = std::min(h[i].conditions.size(), h[j].conditions.size());
                for (std::size_t k = 0; k < n && !split; ++k)
                    split = h[i].conditions[k].poly == h[j].conditions[k].poly &&
                            opposite(h[i].conditions[k].rel, h[j].conditions[k].rel);
                CHECK(split);
            }
    }
}

TEST_CASE("run and cells agree") {
    std::mt19937_64 rng(2024);
    for (const auto& entry : testutil::corpus_entries()) {
        CAPTURE(entry.name);
        Machine m = corpus(entry.name);
        Program p(m);
        for (std::size_t depth : {1u, 5u, 17u, 120u}) {
            auto cells = halting(enumerate_paths(m, entry.dim, depth));
            for (int k = 0; k < 60; ++k) {
                Word w = testutil::sample_input(entry.name, entry.dim, rng);
                CAPTURE(render(w));
                auto r = run(p, w, depth);
                PointEvaluator at(w);
                int hits = 0;
                const Cell* hit = nullptr;
                for (const auto& c : cells)
                    if (cell_contains(c, at)) {
                        ++hits;
                        hit = &c;
                    }
                CHECK(hits == (r.halted() ? 1 : 0));
                if (r.halted() && hit) {
                    REQUIRE(hit->output.size() == r.output.size());
                    for (std::size_t i = 0; i < r.output.size(); ++i) CHECK(exactly_equal(at.value(hit->output[i]), r.output[i]));
                }
            }
        }
    }
}

TEST_CASE("cell json") {
    Machine m = corpus("sign_branch");
    std::string j = cells_to_json(enumerate_paths(m, 1, 10), m.name);
    CHECK(j.find("\"format_version\": 1") != std::string::npos);
    CHECK(j.find("\"rel\": \">=0\"") != std::string::npos);
}
