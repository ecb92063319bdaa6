#ifndef BSS_UPOLY_HPP
#define BSS_UPOLY_HPP

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace bss {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial with integer coefficients, stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Integer> coeffs);
    UPoly(std::initializer_list<long> coeffs);

    static UPoly constant(const Integer& c);
    /// The linear polynomial den*x - num, vanishing at num/den.
    static UPoly linear_root(const Rational& q);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Integer>& coeffs() const { return coeffs_; }
    const Integer& coeff(int k) const;
    const Integer& leading() const { return coeffs_.back(); }

    Integer content() const;
    /// Divides out the content and makes the leading coefficient positive.
    UPoly primitive() const;
    UPoly derivative() const;

    int sign_at(const Rational& q) const;
    Rational eval(const Rational& q) const;

    std::string to_string(const std::string& var = "x") const;

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    UPoly operator-() const;
    UPoly scaled(const Integer& c) const;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b.
UPoly pseudo_remainder(const UPoly& a, const UPoly& b);
/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
/// Quotient a / b, which must be exact over the integers up to a rational factor;
/// the result is made primitive.
UPoly divide_exact(const UPoly& a, const UPoly& b);
UPoly square_free_part(const UPoly& p);

/// Cheap sufficient tests using reductions modulo word-size primes.
bool certainly_square_free(const UPoly& p);
bool certainly_coprime(const UPoly& a, const UPoly& b);
/// False only if p provably has no rational root.
bool may_have_rational_root(const UPoly& p);

UPoly taylor_shift(const UPoly& p, const Integer& a);
/// A positive multiple of p(a + b x), made primitive.
UPoly compose_linear(const UPoly& p, const Rational& a, const Rational& b);
UPoly negate_variable(const UPoly& p);
/// x^deg p(1/x).
UPoly reverse(const UPoly& p);

/// Polynomial whose roots are all sums alpha_i + beta_j of roots of p and q.
UPoly composed_sum(const UPoly& p, const UPoly& q);
/// Polynomial whose roots are all products alpha_i * beta_j.
UPoly composed_product(const UPoly& p, const UPoly& q);

/// Sign variations of the Moebius transform of p onto (lo, hi); an upper bound on
/// the number of roots in the open interval with equal parity.  0 and 1 are exact.
int descartes_bound(const UPoly& p, const Rational& lo, const Rational& hi);

struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};

/// Isolates the real roots of a square-free p inside the closed interval [lo, hi].
/// Each result is either an exact rational root (lo == hi) or an open interval holding
/// exactly one root whose endpoints are not roots.  Results are in increasing order.
std::vector<RootInterval> isolate_roots(const UPoly& p, const Rational& lo, const Rational& hi);

/// A power of two strictly greater than the absolute value of every root.
Integer root_bound(const UPoly& p);

/// The rational of least denominator in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

Rational midpoint(const Rational& a, const Rational& b);

}  // namespace bss

#endif
