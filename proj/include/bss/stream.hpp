#ifndef BSS_STREAM_HPP
#define BSS_STREAM_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bss/upoly.hpp"

namespace bss {

/// Deterministic base-10 digit function; digit(i) carries weight 10^-i.
class DigitSource {
public:
    virtual ~DigitSource() = default;
    virtual int digit(std::size_t index) const = 0;
};

class FunctionDigits final : public DigitSource {
public:
    explicit FunctionDigits(std::function<int(std::size_t)> fn) : fn_(std::move(fn)) {}
    int digit(std::size_t index) const override { return fn_(index); }

private:
    std::function<int(std::size_t)> fn_;
};

/// Finite digit prefix followed by an optional repeating block (zeros when empty).
class PeriodicDigits final : public DigitSource {
public:
    PeriodicDigits(std::vector<int> prefix, std::vector<int> repeat);
    int digit(std::size_t index) const override;

private:
    std::vector<int> prefix_;
    std::vector<int> repeat_;
};

constexpr std::size_t kDefaultDigitBudget = 1000;

struct Enclosure {
    Rational lo;
    Rational hi;
};

class StreamReal;
using StreamOrRational = std::variant<Rational, StreamReal>;

/// A real built from digit streams and rationals by field operations.  Values are
/// known only through enclosures computed from finite digit prefixes, so strict
/// comparisons terminate on unequal values while equality is never certified.
class StreamReal {
public:
    /// integer_part + sum_i digit(i) * 10^-i; comparisons consult at most `budget` digits.
    static StreamReal leaf(Integer integer_part, std::shared_ptr<const DigitSource> digits,
                           std::size_t budget, std::string name);

    /// Enclosure from digits 0..k of every stream (nullopt if a divisor straddles zero).
    std::optional<Enclosure> enclose(std::size_t k) const;
    std::size_t budget() const;

    /// -1, 0 never, +1; nullopt when undecided within the digit budget.
    std::optional<int> strict_sign() const;
    /// Certifies value >= 0 or value < 0.
    std::optional<bool> nonnegative() const;

    /// For a single stream leaf: the digit at `index`.
    std::optional<int> leaf_digit(std::size_t index) const;

    std::string to_string() const;
    bool same_node(const StreamReal& other) const { return node_ == other.node_; }

    friend StreamOrRational add(const StreamReal& a, const StreamReal& b);
    friend StreamOrRational add(const StreamReal& a, const Rational& q);
    friend StreamOrRational mul(const StreamReal& a, const StreamReal& b);
    friend StreamOrRational mul(const StreamReal& a, const Rational& q);
    /// Throws IndeterminateOperand when b cannot be certified nonzero.
    friend StreamOrRational div(const StreamReal& a, const StreamReal& b);
    friend StreamOrRational div(const Rational& q, const StreamReal& b);
    StreamReal negate() const;

    struct Leaf;
    struct Node;

private:
    explicit StreamReal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace bss

#endif
