// Random real algebraic operands and the exact-arithmetic property checks.
#ifndef BSS_TESTS_FIELD_PROPS_HPP
#define BSS_TESTS_FIELD_PROPS_HPP

#include <random>
#include <string>
#include <vector>

#include "bss/scalar.hpp"

namespace testutil {

// A real root of a random integer polynomial of degree 1..4 with coefficients in
// [-5, 5]; degree-1 and rational roots come back as rationals.
inline bss::Scalar random_algebraic(std::mt19937_64& rng) {
    for (;;) {
        const std::size_t d = 1 + rng() % 4;
        std::vector<bss::Integer> c(d + 1);
        for (auto& x : c) x = static_cast<long>(rng() % 11) - 5;
        if (c[d] == 0) c[d] = 1 + static_cast<long>(rng() % 5);
        bss::UPoly p = bss::square_free_part(bss::UPoly(c));
        if (p.degree() < 1) continue;
        const bss::Rational b(bss::root_bound(p));
        auto roots = bss::isolate_roots(p, -b, b);
        if (roots.empty()) continue;
        const auto& r = roots[rng() % roots.size()];
        if (r.exact()) return bss::Scalar(r.lo);
        return bss::make_algebraic(p, r.lo, r.hi);
    }
}

inline bool eq(const bss::Scalar& a, const bss::Scalar& b) { return bss::exactly_equal(a, b); }

inline bool lt(const bss::Scalar& a, const bss::Scalar& b) { return bss::compare(a, b) == bss::Sign::Negative; }

// Names of the properties that fail on (a, b, c).
inline std::vector<std::string> field_failures(const bss::Scalar& a, const bss::Scalar& b, const bss::Scalar& c) {
    using bss::Scalar;
    std::vector<std::string> bad;
    auto expect = [&bad](bool ok, const char* name) {
        if (!ok) bad.emplace_back(name);
    };
    const Scalar zero(0L), one(1L);
    expect(eq(a + b, b + a), "add commutative");
    expect(eq(a * b, b * a), "mul commutative");
    expect(eq((a + b) + c, a + (b + c)), "add associative");
    expect(eq((a * b) * c, a * (b * c)), "mul associative");
    expect(eq(a * (b + c), a * b + a * c), "distributive");
    expect(eq(a + zero, a) && eq(a * one, a), "identities");
    expect(bss::is_zero(a + (-a)), "additive inverse");
    if (!bss::is_zero(b)) {
        expect(eq(b * (one / b), one), "multiplicative inverse");
        expect(eq((a / b) * b, a), "division");
    }

    const int trichotomy = int(lt(a, b)) + int(eq(a, b)) + int(lt(b, a));
    expect(trichotomy == 1, "order totality");
    const bool ab = !lt(b, a), bc = !lt(c, b);
    if (ab && bc) expect(!lt(c, a), "order transitivity");
    if (lt(a, b)) expect(lt(a + c, b + c), "order translation");
    if (lt(zero, a) && lt(zero, b)) expect(lt(zero, a * b), "positive products");

    // rationals embed into the algebraic backend: operations and order agree
    for (const Scalar* x : {&a, &b, &c}) {
        if (!x->is_exact_rational()) continue;
        const Scalar px = bss::promote(*x, bss::Backend::RealAlgebraicField);
        expect(bss::fits_backend(px, bss::Backend::RealAlgebraicField), "promotion fits");
        expect(eq(px, *x), "promotion value");
        expect(eq(px + a, *x + a) && eq(px * b, *x * b), "promotion arithmetic");
        expect(bss::compare(px, c) == bss::compare(*x, c), "promotion order");
    }
    if (a.is_exact_rational() && b.is_exact_rational()) {
        const bss::Rational q = a.to_rational() + b.to_rational();
        expect(eq(Scalar(q), a + b), "rational sum");
    }
    return bad;
}

}  // namespace testutil

#endif
