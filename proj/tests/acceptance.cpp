// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "bss/dsl.hpp"
#include "bss/error.hpp"
#include "bss/formulas.hpp"
#include "bss/paths.hpp"
#include "bss/structures.hpp"
#include "cli_suite.hpp"
#include "corpus_util.hpp"
#include "field_props.hpp"
#include "formula_family.hpp"

using namespace bss;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

Verdict verdict(std::size_t failures, std::size_t total, const std::string& what) {
    std::ostringstream s;
    s << (total - failures) << "/" << total << " " << what;
    return {failures == 0 && total > 0, s.str()};
}

// 1. gcd over Z against std::gcd
Verdict turing_grounding() {
    Program p(testutil::corpus("euclid"));
    std::size_t bad = 0, total = 0;
    for (long a = 1; a <= 100; ++a)
        for (long b = 1; b <= 100; ++b) {
            ++total;
            auto r = run(p, Word{Scalar(a), Scalar(b)}, 1000000);
            if (!r.halted() || r.output.size() != 1 || !exactly_equal(r.output[0], Scalar(std::gcd(a, b)))) ++bad;
        }
    return verdict(bad, total, "gcd matches");
}

// 2. cells at depth 200 against runs at budget 200
Verdict run_cell_agreement() {
    const std::vector<testutil::CorpusEntry> machines = {
        {"sign_branch", 1}, {"newton", 1}, {"mandelbrot", 2}, {"zero_test", 1}, {"shift_loop", 3}};
    std::size_t bad = 0, total = 0;
    for (const auto& e : machines) {
        Machine m = testutil::corpus(e.name);
        Program p(m);
        std::vector<Cell> cells;
        for (auto& c : enumerate_paths(m, e.dim, 200))
            if (!c.truncated) cells.push_back(std::move(c));
        std::mt19937_64 rng(200);
        for (int k = 0; k < 1000; ++k) {
            ++total;
            Word w = testutil::sample_input(e.name, e.dim, rng);
            auto r = run(p, w, 200);
            PointEvaluator at(w);
            int hits = 0;
            const Cell* hit = nullptr;
            for (const auto& c : cells)
                if (cell_contains(c, at)) {
                    ++hits;
                    hit = &c;
                }
            bool ok = hits == (r.halted() ? 1 : 0);
            if (ok && hit) {
                ok = hit->output.size() == r.output.size();
                for (std::size_t i = 0; ok && i < r.output.size(); ++i) ok = exactly_equal(at.value(hit->output[i]), r.output[i]);
            }
            if (!ok) ++bad;
        }
    }
    return verdict(bad, total, "samples agree");
}

// 3. equational machines only produce =0 / !=0 conditions
Verdict equational_cells() {
    std::size_t bad = 0, total = 0, machines = 0;
    for (const auto& e : testutil::corpus_entries()) {
        Machine m = testutil::corpus(e.name);
        if (!check_equational(m)) continue;
        ++machines;
        for (const auto& c : enumerate_paths(m, e.dim, 200))
            for (const auto& k : c.conditions) {
                ++total;
                if (k.rel != Relation::Eq && k.rel != Relation::Ne) ++bad;
            }
    }
    auto v = verdict(bad, total, "conditions are =0 or !=0");
    v.detail += " over " + std::to_string(machines) + " equational machines";
    v.pass = v.pass && machines > 0;
    return v;
}

// 4. order machines on random total orders of {0..9}
Verdict well_ordering() {
    std::mt19937_64 rng(4);
    std::size_t bad = 0, total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Natural> perm(10);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        PairSet d;
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = i + 1; j < 10; ++j) d.insert({perm[i], perm[j]});
        auto [pres, s] = build_order_structure(d);
        Program less(s.relations.at("<").member), not_less(*s.relations.at("<").complement);
        for (long a = 0; a <= 9; ++a)
            for (long b = 0; b <= 9; ++b) {
                ++total;
                Word in{Scalar(a), Scalar(b)};
                const bool member = d.count({a, b}) > 0;
                if (run(less, in, 100000).halted() != member || run(not_less, in, 100000).halted() == member) ++bad;
            }
    }
    return verdict(bad, total, "pairs classified by both machines");
}

// 5. Newton from 1 against the iterated recurrence
Verdict newton_convergence() {
    auto iterate = [](const Rational& threshold, int& steps) {
        Rational x(1);
        steps = 0;
        for (;;) {
            Rational r = x * x - 2;
            if (abs(r) < threshold) return x;
            x = (x + 2 / x) / 2;
            ++steps;
        }
    };
    std::string text = testutil::read_text(testutil::corpus_path("newton"));
    const std::string eps_line = "param eps = 1/1000000";
    const auto pos = text.find(eps_line);
    if (pos == std::string::npos) return {false, "newton corpus file has no eps parameter"};

    std::ostringstream detail;
    bool pass = true;
    struct Case {
        Rational threshold;
        const char* eps;
        int iterations;
        const char* frozen;
    };
    // frozen values come from the recurrence above
    for (const Case& c : {Case{Rational(1, 1000), "1/1000000", 3, "577/408"},
                          Case{Rational(1, 1000000000000L), "1/1000000000000000000000000", 5, "886731088897/627013566048"}}) {
        int steps = 0;
        const Rational expect = iterate(c.threshold, steps);
        std::string src = text;
        src.replace(pos, eps_line.size(), std::string("param eps = ") + c.eps);
        auto r = run(parse_machine_dsl(src), Word{Scalar(1L)}, 1000);
        const bool ok = steps == c.iterations && Scalar(expect).to_string() == c.frozen && r.halted() && r.output.size() == 1 &&
                        r.output[0].to_string() == c.frozen;
        pass = pass && ok;
        detail << (r.halted() ? r.output[0].to_string() : std::string(to_string(r.kind))) << " after " << steps << " iterations" << (c.iterations == 3 ? "; " : "");
    }
    return {pass, detail.str()};
}

// 6. exact arithmetic properties on 10^4 algebraic operands
Verdict exact_arithmetic() {
    std::mt19937_64 rng(6);
    std::size_t bad = 0, operands = 0, irrational = 0;
    std::string first;
    while (operands < 10000) {
        Scalar a = testutil::random_algebraic(rng), b = testutil::random_algebraic(rng), c = testutil::random_algebraic(rng);
        operands += 3;
        irrational += a.is_algebraic() + b.is_algebraic() + c.is_algebraic();
        auto f = testutil::field_failures(a, b, c);
        if (!f.empty()) {
            ++bad;
            if (first.empty()) first = f.front() + " at " + a.to_string() + ", " + b.to_string() + ", " + c.to_string();
        }
    }
    auto v = verdict(bad, operands / 3, "operand triples");
    v.detail += " (" + std::to_string(operands) + " operands, " + std::to_string(irrational) + " irrational)";
    if (!first.empty()) v.detail += "; first failure: " + first;
    return v;
}

// 7. decode(encode(M)) runs like M
Verdict coding_round_trip() {
    std::mt19937_64 rng(7);
    std::size_t bad = 0, total = 0;
    auto entries = testutil::corpus_entries();
    entries.push_back({"euclid", 2});
    for (const auto& e : entries) {
        Machine m = testutil::corpus(e.name);
        Program p(m), q(decode_machine(encode_machine(m)));
        for (int k = 0; k < 20; ++k) {
            Word in = testutil::sample_input(e.name, e.dim, rng);
            if (e.name == "euclid")
                for (auto& x : in) x = Scalar(static_cast<long>(1 + rng() % 100));
            ++total;
            if (!same_outcome(run(p, in, 2000), run(q, in, 2000))) ++bad;
        }
    }
    return verdict(bad, total, "runs agree");
}

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

// 8. vector-space isomorphisms
Verdict vector_space_iso() {
    std::mt19937_64 rng(8);
    auto vec = [&rng](std::size_t n) {
        Word w;
        for (std::size_t i = 0; i < n; ++i) w.emplace_back(testutil::random_rational(rng, 10, 6));
        return w;
    };
    std::size_t bad = 0, checks = 0, built = 0, singular_seen = 0;
    while (built < 100) {
        const std::size_t n = 1 + rng() % 5;
        const std::size_t m = rng() % 3 ? n : n + 1;
        std::vector<Word> basis;
        for (std::size_t i = 0; i < n; ++i) basis.push_back(vec(m));
        if (rng() % 5 == 0) {  // force a dependency
            Word mix(m, Scalar(0L));
            const Scalar c(testutil::random_rational(rng, 5, 3));
            if (n > 1)
                for (std::size_t k = 0; k < m; ++k) mix[k] = basis[0][k] * c;
            basis[n - 1] = mix;
        }
        bool thrown = false;
        std::optional<VsIso> f;
        try {
            f = vs_iso(n, basis);
        } catch (const Error& e) {
            thrown = e.kind() == ErrorKind::DependentBasis;
            if (!thrown) throw;
        }
        if (m == n) {
            const bool singular = is_zero(det(basis));
            singular_seen += singular;
            ++checks;
            if (thrown != singular) ++bad;
        } else if (thrown != (rank_of(basis) < n)) {
            ++checks;
            ++bad;
        }
        if (thrown) continue;
        ++built;
        Program p(f->forward);
        for (int k = 0; k < 100; ++k) {
            Word l = vec(n), u = vec(n);
            const Scalar c(testutil::random_rational(rng, 10, 6));
            Word lu(n), cl(n);
            for (std::size_t i = 0; i < n; ++i) {
                lu[i] = l[i] + u[i];
                cl[i] = c * l[i];
            }
            Word fl = run(p, l, 100).output, fu = run(p, u, 100).output;
            Word sum(m), scaled(m);
            for (std::size_t i = 0; i < m; ++i) {
                sum[i] = fl[i] + fu[i];
                scaled[i] = c * fl[i];
            }
            ++checks;
            if (!same_word(run(p, lu, 100).output, sum) || !same_word(run(p, cl, 100).output, scaled) || !same_word(f->inverse(fl), l)) ++bad;
        }
    }
    auto v = verdict(bad, checks, "checks");
    v.detail += " over 100 bases (" + std::to_string(singular_seen) + " singular square bases rejected)";
    return v;
}

// 9. budgeted and finite evaluation agree on the generated family
Verdict formula_equivalence() {
    testutil::FamilyGenerator gen(9);
    std::size_t bad = 0, total = 0;
    for (int k = 0; k < 500; ++k) {
        auto c = gen.next();
        Witnesses w = Witnesses::list(c.universe, true);
        for (const auto& x : c.universe) {
            Valuation v{{"x", x}};
            ++total;
            const bool finite = eval_finite(c.s, c.f, v);
            const bool budgeted = eval_budgeted(c.s, c.f, v, w, 4096) == Truth::True;
            if (finite != budgeted) ++bad;
        }
    }
    return verdict(bad, total, "evaluations agree");
}

// 10. the CLI suite twice
Verdict determinism() {
    const auto base = std::filesystem::temp_directory_path() / "bss_acceptance_det";
    auto diff = testutil::determinism_diff(base);
    std::size_t files = testutil::snapshot(base / "work").size();
    std::size_t wrong_codes = 0;
    for (const auto& r : testutil::run_cli_suite(base / "codes"))
        if (r.code != r.expected) ++wrong_codes;
    std::ostringstream s;
    s << files << " artifacts, " << diff.size() << " differ, " << wrong_codes << " unexpected exit codes";
    if (!diff.empty()) s << " (first: " << diff.front() << ")";
    return {diff.empty() && wrong_codes == 0 && files > 0, s.str()};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0: none stated
        std::function<Verdict()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "Turing grounding", 10, turing_grounding},
        {2, "run/cell agreement", 60, run_cell_agreement},
        {3, "equational cells", 0, equational_cells},
        {4, "well-ordering construction", 120, well_ordering},
        {5, "Newton convergence", 0, newton_convergence},
        {6, "exact arithmetic", 60, exact_arithmetic},
        {7, "coding round trip", 0, coding_round_trip},
        {8, "vector-space isomorphism", 0, vector_space_iso},
        {9, "formula evaluation equivalence", 0, formula_equivalence},
        {10, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_s == 0 || s < c.limit_s;
        const bool pass = v.pass && in_time;
        failed += !pass;
        std::ostringstream time;
        time.precision(2);
        time << std::fixed << s << " s";
        if (c.limit_s > 0) time << " < " << c.limit_s << " s" << (in_time ? "" : " EXCEEDED");
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << "): " << v.detail << " [" << time.str() << "]"
                  << std::endl;
    }
    std::cout << (failed ? "FAILED: " + std::to_string(failed) + " criteria" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
