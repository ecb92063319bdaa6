#ifndef BSS_SCALAR_HPP
#define BSS_SCALAR_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "bss/algebraic.hpp"
#include "bss/stream.hpp"
#include "bss/upoly.hpp"

namespace bss {

enum class Backend { IntegerRing, RationalField, RealAlgebraicField, StreamExtension };

std::string_view to_string(Backend b);
std::optional<Backend> backend_from_string(std::string_view name);

enum class Sign { Negative, Zero, Positive, Indeterminate };

std::string_view to_string(Sign s);

/// An exact ring element: integer, normalized rational, irrational real algebraic
/// number, or a digit-stream real.  Scalars are immutable values.
class Scalar {
public:
    using Value = std::variant<Integer, Rational, Algebraic, StreamReal>;

    Scalar() : value_(Integer(0)) {}
    Scalar(long v) : value_(Integer(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(Integer v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rational v);  // NOLINT(google-explicit-constructor)
    Scalar(Algebraic v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(StreamReal v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(AlgebraicOrRational v);  // NOLINT(google-explicit-constructor)
    Scalar(StreamOrRational v);  // NOLINT(google-explicit-constructor)

    const Value& value() const { return value_; }
    Backend backend() const;

    bool is_integer() const { return std::holds_alternative<Integer>(value_); }
    bool is_rational() const { return std::holds_alternative<Rational>(value_); }
    bool is_algebraic() const { return std::holds_alternative<Algebraic>(value_); }
    bool is_stream() const { return std::holds_alternative<StreamReal>(value_); }
    /// Integer or rational.
    bool is_exact_rational() const { return is_integer() || is_rational(); }

    /// Value as a rational; requires is_exact_rational().
    Rational to_rational() const;
    const Algebraic& algebraic() const { return std::get<Algebraic>(value_); }
    const StreamReal& stream() const { return std::get<StreamReal>(value_); }

    /// Lossless literal rendering: -17, 5/6, alg(x^2-2, 1, 2); streams render
    /// as expressions over stream(NAME).
    std::string to_string() const;

private:
    Value value_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Exact result in the smallest closed backend.  Throws DivisionByZero,
/// IndeterminateOperand and BackendMismatch.
Scalar arith(ArithOp op, const Scalar& a, const Scalar& b);
Scalar negate(const Scalar& a);
Scalar power(const Scalar& a, unsigned exponent);

inline Scalar operator+(const Scalar& a, const Scalar& b) { return arith(ArithOp::Add, a, b); }
inline Scalar operator-(const Scalar& a, const Scalar& b) { return arith(ArithOp::Sub, a, b); }
inline Scalar operator*(const Scalar& a, const Scalar& b) { return arith(ArithOp::Mul, a, b); }
inline Scalar operator/(const Scalar& a, const Scalar& b) { return arith(ArithOp::Div, a, b); }
inline Scalar operator-(const Scalar& a) { return negate(a); }

Sign sign(const Scalar& a);
/// sign(a - b), computed without forming the difference for algebraic operands.
Sign compare(const Scalar& a, const Scalar& b);
/// Certifies a >= 0 (true) or a < 0 (false); nullopt only for undecided streams.
std::optional<bool> is_nonnegative(const Scalar& a);
/// True iff compare(a, b) is Zero.
bool exactly_equal(const Scalar& a, const Scalar& b);
/// True iff the scalar is exactly zero (never for streams).
bool is_zero(const Scalar& a);

Scalar make_algebraic(const UPoly& p, const Rational& lo, const Rational& hi);
Scalar make_stream(Integer integer_part, std::shared_ptr<const DigitSource> digits,
                   std::size_t budget = kDefaultDigitBudget, std::string name = "s");

/// Converts to the given backend when the value embeds there: integer -> rational ->
/// algebraic, and rationals into the stream extension.  Throws BackendMismatch.
Scalar promote(const Scalar& a, Backend target);
/// Whether the scalar is a legal value of a machine over the given backend.
bool fits_backend(const Scalar& a, Backend target);

/// Parses a literal: integers, p/q, alg(POLY, LO, HI) with POLY in the variable x.
/// Throws InvalidLiteral (and the errors of make_algebraic).
Scalar parse_scalar(std::string_view text);
/// Polynomial in x with integer (or rational, cleared) coefficients.
UPoly parse_upoly(std::string_view text);

}  // namespace bss

#endif
