#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "bss/error.hpp"
#include "bss/stream.hpp"
#include "bss/structures.hpp"
#include "corpus_util.hpp"

using namespace bss;

namespace {

Word nat(long x) { return Word{Scalar(x)}; }

Scalar periodic(std::vector<int> prefix, std::vector<int> repeat) {
    return make_stream(Integer(0), std::make_shared<PeriodicDigits>(std::move(prefix), std::move(repeat)), kDefaultDigitBudget, "ell");
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Io;
}

// Leibniz expansion over permutations
Scalar det(const std::vector<Word>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar total(0L);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Scalar term(1L);
        for (std::size_t i = 0; i < n; ++i) term = term * rows[i][perm[i]];
        total = inversions % 2 ? total - term : total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Word combine(const std::vector<Word>& basis, const Word& lambda) {
    Word y(basis.empty() ? 0 : basis[0].size(), Scalar(0L));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = y[k] + lambda[i] * basis[i][k];
    return y;
}

Word random_vector(std::mt19937_64& rng, std::size_t n) {
    Word w;
    for (std::size_t i = 0; i < n; ++i) w.emplace_back(testutil::random_rational(rng, 10, 6));
    return w;
}

PairSet random_order(std::mt19937_64& rng) {
    std::vector<Natural> elems;
    for (Natural k = 0; k < 10; ++k)
        if (rng() % 3) elems.push_back(k);
    std::shuffle(elems.begin(), elems.end(), rng);
    PairSet d;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j) d.insert({elems[i], elems[j]});
    return d;
}

}  // namespace

TEST_CASE("pairing") {
    CHECK(pair(0, 0) == 0);
    CHECK(pair(1, 2) == 8);
    std::set<Natural> seen;
    for (Natural a = 0; a <= 50; ++a)
        for (Natural b = 0; b <= 50; ++b) {
            seen.insert(pair(a, b));
            CHECK(unpair(pair(a, b)) == std::make_pair(a, b));
        }
    CHECK(seen.size() == 2601);
}

TEST_CASE("digit extractor") {
    Scalar alternating = periodic({}, {1, 0});
    Machine one = build_digit_extractor(alternating);
    auto r = run(one, nat(0), 10000);
    REQUIRE(r.halted());
    CHECK(render(r.output) == "1");
    CHECK(run(one, nat(1), 10000).kind == OutcomeKind::OutOfBudget);
    CHECK(run(one, nat(2), 10000).halted());

    Machine ones = build_digit_extractor(periodic({}, {1}));
    auto five = run(ones, nat(5), 10000);
    REQUIRE(five.halted());
    CHECK(render(five.output) == "1");

    Machine zero = build_digit_extractor(alternating, true);
    CHECK(run(zero, nat(1), 10000).halted());
    CHECK(run(zero, nat(0), 10000).kind == OutcomeKind::OutOfBudget);
}

TEST_CASE("order structures") {
    auto [pres, s] = build_order_structure({{0, 1}});
    const auto& less = s.relations.at("<");
    CHECK(render(run(less.member, Word{Scalar(0L), Scalar(1L)}, 100000).output) == "1");
    CHECK(run(less.member, Word{Scalar(1L), Scalar(0L)}, 100000).kind == OutcomeKind::OutOfBudget);
    CHECK(run(*less.complement, Word{Scalar(1L), Scalar(0L)}, 100000).halted());
    CHECK(pres.ell.stream().leaf_digit(2) == 1);
    CHECK(pres.ell.stream().leaf_digit(1) == 0);

    auto [p0, empty] = build_order_structure({});
    for (long a = 0; a < 3; ++a)
        for (long b = 0; b < 3; ++b) {
            Word in{Scalar(a), Scalar(b)};
            CHECK(!run(empty.relations.at("<").member, in, 100000).halted());
            CHECK(run(*empty.relations.at("<").complement, in, 100000).halted());
        }

    PairSet chain{{0, 1}, {1, 2}, {0, 2}};
    auto [p3, three] = build_order_structure(chain);
    for (long a = 0; a <= 2; ++a)
        for (long b = 0; b <= 2; ++b) {
            const bool in_d = chain.count({a, b}) > 0;
            Word in{Scalar(a), Scalar(b)};
            CHECK(run(three.relations.at("<").member, in, 100000).halted() == in_d);
            CHECK(run(*three.relations.at("<").complement, in, 100000).halted() == !in_d);
        }
    CHECK(atomic_truth(three, "0 < 2", 100000) == Truth::True);
    CHECK(atomic_truth(three, "2 < 0", 100000) == Truth::False);
    CHECK(atomic_truth(three, "not 2 < 0", 100000) == Truth::True);

    CHECK(kind_of([] { build_order_structure({{0, 0}}); }) == ErrorKind::NotAStrictOrder);
    CHECK(kind_of([] { build_order_structure({{0, 1}, {1, 0}}); }) == ErrorKind::NotAStrictOrder);
    CHECK(kind_of([] { build_order_structure({{0, 1}, {1, 2}}); }) == ErrorKind::NotAStrictOrder);
    CHECK(kind_of([] { build_order_structure({{0, 1}, {2, 3}}); }) == ErrorKind::NotAStrictOrder);
}

TEST_CASE("digit extractor soundness on random orders") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        PairSet d = random_order(rng);
        auto [pres, s] = build_order_structure(d);
        const auto& less = s.relations.at("<");
        for (long a = 0; a <= 9; ++a)
            for (long b = 0; b <= 9; ++b) {
                Word in{Scalar(a), Scalar(b)};
                const bool member = d.count({a, b}) > 0;
                CHECK(run(less.member, in, 100000).halted() == member);
                CHECK(run(*less.complement, in, 100000).halted() == !member);
            }
    }
}

TEST_CASE("vector spaces") {
    RStructure v2 = vs_make(2);
    CHECK(atomic_truth(v2, "add((1,0),(0,1)) = (1,1)", 1000) == Truth::True);
    CHECK(atomic_truth(v2, "scale(3/2,(2,4)) = (3,6)", 1000) == Truth::True);
    CHECK(atomic_truth(v2, "add((1,0),(0,1)) = (1,2)", 1000) == Truth::False);
    CHECK(run(v2.universe, Word{Scalar(1L), Scalar(2L)}, 100).halted());
    CHECK(!run(v2.universe, Word{Scalar(1L)}, 100).halted());

    RStructure v0 = vs_make(0);
    REQUIRE(v0.finite_universe);
    CHECK(v0.finite_universe->size() == 1);
    CHECK(v0.finite_universe->front().empty());
    CHECK(run(v0.universe, Word{}, 100).halted());
    CHECK(same_word(vs_basis(2)[1], Word{Scalar(0L), Scalar(1L)}));
}

TEST_CASE("vector space isomorphisms") {
    VsIso f = vs_iso(2, {{Scalar(1L), Scalar(1L)}, {Scalar(0L), Scalar(1L)}});
    auto r = run(f.forward, Word{Scalar(2L), Scalar(3L)}, 100);
    REQUIRE(r.halted());
    CHECK(render(r.output) == "2,5");
    CHECK(same_word(f.inverse(r.output), Word{Scalar(2L), Scalar(3L)}));

    CHECK(kind_of([] { vs_iso(2, {{Scalar(1L), Scalar(1L)}, {Scalar(2L), Scalar(2L)}}); }) == ErrorKind::DependentBasis);

    Scalar sqrt2 = parse_scalar("alg(x^2 - 2, 1, 2)");
    VsIso g = vs_iso(1, {{sqrt2}});
    auto s = run(g.forward, Word{Scalar(3L)}, 100);
    REQUIRE(s.halted());
    CHECK(s.output[0].is_algebraic());
    CHECK(exactly_equal(s.output[0] * s.output[0], Scalar(18L)));
    CHECK(sign(s.output[0]) == Sign::Positive);
}

TEST_CASE("isomorphisms are linear and invertible") {
    std::mt19937_64 rng(77);
    int built = 0;
    while (built < 20) {
        const std::size_t n = 1 + rng() % 4;
        const std::size_t m = n + rng() % 2;
        std::vector<Word> basis;
        for (std::size_t i = 0; i < n; ++i) basis.push_back(random_vector(rng, m));
        if (m == n) {
            const bool singular = is_zero(det(basis));
            bool thrown = false;
            try {
                vs_iso(n, basis);
            } catch (const Error& e) {
                thrown = e.kind() == ErrorKind::DependentBasis;
            }
            CHECK(thrown == singular);
            if (singular) continue;
        } else if (rank_of(basis) < n) {
            continue;
        }
        ++built;
        VsIso f = vs_iso(n, basis);
        Program p(f.forward);
        for (int k = 0; k < 10; ++k) {
            Word l = random_vector(rng, n), u = random_vector(rng, n);
            Scalar c(testutil::random_rational(rng, 10, 6));
            Word lu(n), cl(n);
            for (std::size_t i = 0; i < n; ++i) {
                lu[i] = l[i] + u[i];
                cl[i] = c * l[i];
            }
            Word fl = run(p, l, 100).output, fu = run(p, u, 100).output;
            CHECK(same_word(fl, combine(basis, l)));
            Word sum(m), scaled(m);
            for (std::size_t i = 0; i < m; ++i) {
                sum[i] = fl[i] + fu[i];
                scaled[i] = c * fl[i];
            }
            CHECK(same_word(run(p, lu, 100).output, sum));
            CHECK(same_word(run(p, cl, 100).output, scaled));
            CHECK(same_word(f.inverse(fl), l));
        }
    }
}

TEST_CASE("cycle graphs") {
    Oracle s = [](const Word& w) { return w.size() == 1 && exactly_equal(w[0], Scalar(2L)); };
    RStructure g = cycle_graph_structure(s);
    CHECK(atomic_truth(g, "E((2,0),(2,1))", 1000) == Truth::True);
    CHECK(atomic_truth(g, "E((2,0),(2,2))", 1000) == Truth::False);
    CHECK(atomic_truth(g, "E((3,0),(3,6))", 1000) == Truth::True);
    CHECK(atomic_truth(g, "E((2,0),(3,1))", 1000) == Truth::False);
    CHECK(cycle_length(s, 2) == 4);
    CHECK(cycle_length(s, 3) == 7);
    CHECK(run(g.universe, Word{Scalar(3L), Scalar(6L)}, 100, &s).halted());
    CHECK(!run(g.universe, Word{Scalar(2L), Scalar(4L)}, 100, &s).halted());
    CHECK(!run(g.universe, Word{Scalar(1L), Scalar(0L)}, 100, &s).halted());

    RStructure small = cycle_graph_structure(s, 2, 6);
    REQUIRE(small.finite_universe);
    const auto& vs = *small.finite_universe;
    for (const auto& u : vs) {
        CHECK(run(small.universe, u, 100, &s).halted());
        int neighbours = 0;
        for (const auto& v : vs) {
            Atom uv{"E", {Term{Term::Kind::Literal, u, "", {}}, Term{Term::Kind::Literal, v, "", {}}}};
            Atom vu{"E", {uv.args[1], uv.args[0]}};
            Truth t = atomic_truth(small, uv, {}, 1000);
            CHECK(t == atomic_truth(small, vu, {}, 1000));
            if (t == Truth::True) ++neighbours;
        }
        CHECK(neighbours == 2);
    }
    CHECK(!run(small.universe, Word{Scalar(7L), Scalar(0L)}, 100, &s).halted());
}

TEST_CASE("atomic sentences") {
    RStructure v2 = vs_make(2);
    CHECK(kind_of([&] { atomic_truth(v2, "mul((1,0),(0,1)) = (1,1)", 10); }) == ErrorKind::SignatureMismatch);
    CHECK(kind_of([&] { atomic_truth(v2, "add((1,0)) = (1,1)", 10); }) == ErrorKind::SignatureMismatch);
    auto [atom, neg] = parse_atomic("!E(x, (1,2))", Signature{{{"E", 2}}, {}, {}});
    CHECK(neg);
    CHECK(atom.relation == "E");
    CHECK(atom.args[0].kind == Term::Kind::Variable);
    CHECK(atom.args[1].literal.size() == 2);
    CHECK(atomic_truth(v2, "add((1/2,0),(1/2,0)) = (1,0)", 1) == Truth::Unknown);  // budget too small
}
