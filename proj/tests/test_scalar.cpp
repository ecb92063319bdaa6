#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bss/error.hpp"
#include "bss/scalar.hpp"
#include "field_props.hpp"

using namespace bss;

namespace {

Scalar sqrt2() { return make_algebraic(UPoly{-2, 0, 1}, 1, 2); }

Scalar q(long p, long d) { return Rational(p, d); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Io;
}

std::shared_ptr<const DigitSource> digits(std::vector<int> prefix, std::vector<int> repeat = {}) {
    return std::make_shared<PeriodicDigits>(std::move(prefix), std::move(repeat));
}

}  // namespace

TEST_CASE("rational arithmetic") {
    Scalar r = q(1, 2) + q(1, 3);
    CHECK(r.to_string() == "5/6");
    CHECK(r.is_rational());
    CHECK((Scalar(6L) / Scalar(4L)).to_string() == "3/2");
    CHECK((Scalar(3L) * Scalar(4L)).is_integer());
    CHECK(kind_of([] { (void)(Scalar(1L) / Scalar(0L)); }) == ErrorKind::DivisionByZero);
    CHECK(sign(q(-3, 7)) == Sign::Negative);
}

TEST_CASE("rationals are kept in lowest terms") {
    Scalar r = Rational(Integer(-6), Integer(-4));
    CHECK(r.to_string() == "3/2");
    CHECK((q(2, 3) - q(2, 3)).to_string() == "0");
}

TEST_CASE("square root of two") {
    Scalar s = sqrt2();
    REQUIRE(s.is_algebraic());
    Scalar two = s * s;
    CHECK(two.is_rational());
    CHECK(exactly_equal(two, Scalar(2L)));
    // 577^2 = 332929 > 2 * 408^2 = 332928
    CHECK(sign(s - q(577, 408)) == Sign::Negative);
    CHECK(compare(s, q(577, 408)) == Sign::Negative);
    CHECK(s.to_string() == "alg(x^2-2, 1, 2)");
}

TEST_CASE("make_algebraic") {
    Scalar s = make_algebraic(UPoly{-2, 0, 1}, 1, Rational(3, 2));
    REQUIRE(s.is_algebraic());
    CHECK(compare(s, sqrt2()) == Sign::Zero);
    CHECK(kind_of([] { make_algebraic(UPoly{1, 0, 1}, -10, 10); }) == ErrorKind::NoRootInInterval);
    CHECK(kind_of([] { make_algebraic(UPoly{-2, 0, 1}, -2, 2); }) == ErrorKind::MultipleRootsInInterval);
    // rational roots come back as rationals
    Scalar h = make_algebraic(UPoly{-1, 2}, 0, 1);
    CHECK(h.to_string() == "1/2");
    // a repeated factor is removed before counting
    Scalar r = make_algebraic(UPoly{-2, 0, 1} * UPoly{-2, 0, 1}, 0, 5);
    CHECK(compare(r, sqrt2()) == Sign::Zero);
}

TEST_CASE("algebraic field operations") {
    Scalar s = sqrt2();
    Scalar t = make_algebraic(UPoly{-3, 0, 1}, 1, 2);
    Scalar sum = s + t;
    REQUIRE(sum.is_algebraic());
    CHECK(sum.algebraic().poly() == UPoly({1, 0, -10, 0, 1}));
    // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6
    Scalar sq = sum * sum;
    Scalar six = make_algebraic(UPoly{-6, 0, 1}, 2, 3);
    CHECK(exactly_equal(sq, Scalar(5L) + Scalar(2L) * six));
    CHECK(exactly_equal(s - s, Scalar(0L)));
    CHECK(exactly_equal(s / s, Scalar(1L)));
    // 1/sqrt2 = sqrt2/2
    CHECK(exactly_equal(Scalar(1L) / s, s / Scalar(2L)));
    Scalar three_s = Scalar(3L) * s;
    CHECK(exactly_equal(three_s * three_s, Scalar(18L)));
    CHECK(exactly_equal(power(s, 5), Scalar(4L) * s));
}

TEST_CASE("parse and render literals") {
    CHECK(parse_scalar("-17").is_integer());
    CHECK(parse_scalar("-17").to_string() == "-17");
    CHECK(parse_scalar("10/4").to_string() == "5/2");
    Scalar a = parse_scalar("alg(x^2-2, 1, 2)");
    CHECK(compare(a, sqrt2()) == Sign::Zero);
    CHECK(parse_scalar(a.to_string()).to_string() == a.to_string());
    CHECK(parse_upoly("3*x^3 - x/2 + 1") == UPoly({2, -1, 0, 6}));
    CHECK(parse_upoly("(x-1)*(x+1)") == UPoly({-1, 0, 1}));
    CHECK(kind_of([] { parse_scalar("1/0"); }) == ErrorKind::InvalidLiteral);
    CHECK(kind_of([] { parse_scalar("abc"); }) == ErrorKind::InvalidLiteral);
    // a computed algebraic renders through a canonical interval and parses back
    Scalar c = sqrt2() + make_algebraic(UPoly{-3, 0, 1}, 1, 2);
    CHECK(compare(parse_scalar(c.to_string()), c) == Sign::Zero);
}

TEST_CASE("stream reals") {
    // digit 0 carries weight 1: 1 + 0/10 + 1/100
    Scalar s = make_stream(0, digits({1, 0, 1}), 50);
    Enclosure e = *s.stream().enclose(10);
    CHECK(e.lo == Rational(101, 100));
    CHECK(compare(s, q(101, 100)) == Sign::Indeterminate);
    CHECK(compare(s, Scalar(1L)) == Sign::Positive);
    CHECK(compare(s, q(102, 100)) == Sign::Negative);
    Scalar z = make_stream(0, digits({}), 20);
    CHECK(sign(z) == Sign::Indeterminate);
    CHECK(is_nonnegative(z) == std::optional<bool>(true));
    CHECK(kind_of([&] { (void)(Scalar(1L) / z); }) == ErrorKind::IndeterminateOperand);
    CHECK(kind_of([&] { (void)(s + sqrt2()); }) == ErrorKind::BackendMismatch);
    CHECK((s - s).to_string() == "0");
    CHECK(s.stream().leaf_digit(2) == 1);
    CHECK(s.stream().leaf_digit(2) == s.stream().leaf_digit(2));
}

TEST_CASE("stream comparisons are stable under larger budgets") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> prefix(8);
        for (auto& d : prefix) d = static_cast<int>(rng() % 10);
        const Rational target(static_cast<long>(rng() % 20000), 10000);
        std::optional<Sign> first;
        for (std::size_t budget : {2, 4, 8, 16, 64}) {
            Scalar s = make_stream(0, digits(prefix), budget);
            Sign c = compare(s, target);
            if (first && *first != Sign::Indeterminate) CHECK(c == *first);
            if (c != Sign::Indeterminate) first = c;
        }
    }
}

TEST_CASE("promotion") {
    CHECK(promote(Scalar(3L), Backend::RationalField).is_rational());
    CHECK(promote(q(4, 2), Backend::IntegerRing).is_integer());
    CHECK(kind_of([] { promote(q(1, 2), Backend::IntegerRing); }) == ErrorKind::BackendMismatch);
    CHECK(kind_of([] { promote(sqrt2(), Backend::RationalField); }) == ErrorKind::BackendMismatch);
    CHECK(fits_backend(sqrt2(), Backend::RealAlgebraicField));
}

TEST_CASE("isolating interval refinement keeps the root") {
    Scalar s = make_algebraic(UPoly{-5, 1, 0, 1}, -10, 10);
    const auto& a = s.algebraic();
    for (int i = 0; i < 40; ++i) {
        a.bisect();
        auto [lo, hi] = a.interval();
        CHECK(a.poly().sign_at(lo) * a.poly().sign_at(hi) < 0);
    }
}

TEST_CASE("field and order properties on random algebraic operands") {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 200; ++k) {
        Scalar a = testutil::random_algebraic(rng), b = testutil::random_algebraic(rng), c = testutil::random_algebraic(rng);
        CAPTURE(a.to_string());
        CAPTURE(b.to_string());
        CAPTURE(c.to_string());
        CHECK(testutil::field_failures(a, b, c).empty());
    }
}
