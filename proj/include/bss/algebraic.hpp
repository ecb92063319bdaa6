#ifndef BSS_ALGEBRAIC_HPP
#define BSS_ALGEBRAIC_HPP

#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "bss/upoly.hpp"

namespace bss {

class Algebraic;

/// Outcome of an operation on algebraic numbers: rational results are demoted.
using AlgebraicOrRational = std::variant<Rational, Algebraic>;

/// An irrational real algebraic number: the unique root of a square-free primitive
/// integer polynomial inside an open rational interval whose endpoints are not roots.
///
/// Handles share the polynomial and a refinement cache, so copies are cheap and the
/// isolating interval only ever shrinks.  The represented root never changes.
class Algebraic {
public:
    /// Throws NoRootInInterval / MultipleRootsInInterval.  p must be nonzero.
    static AlgebraicOrRational make(const UPoly& p, const Rational& lo, const Rational& hi);

    const UPoly& poly() const;
    int degree() const { return poly().degree(); }

    /// Current isolating interval (lo, hi).
    std::pair<Rational, Rational> interval() const;
    /// Bisects until the isolating interval is no wider than `width`.
    void refine_to(const Rational& width) const;
    void bisect() const;

    /// Interval used for rendering and encoding; a function of the value only for
    /// computed numbers, and the user interval for numbers built by make().
    std::pair<Rational, Rational> display_interval() const;
    std::string to_string() const;

    int sign() const;
    int compare(const Rational& q) const;
    friend int compare(const Algebraic& a, const Algebraic& b);

    bool same_node(const Algebraic& other) const { return node_ == other.node_; }

    Algebraic negate() const;
    /// Multiplicative inverse; never zero since the value is irrational.
    Algebraic inverse() const;
    Algebraic add(const Rational& q) const;
    AlgebraicOrRational mul(const Rational& q) const;

    friend AlgebraicOrRational add(const Algebraic& a, const Algebraic& b);
    friend AlgebraicOrRational mul(const Algebraic& a, const Algebraic& b);

private:
    struct Node;
    explicit Algebraic(std::shared_ptr<Node> node) : node_(std::move(node)) {}
    static Algebraic from_isolated(UPoly p, Rational lo, Rational hi, bool keep_display);
    friend AlgebraicOrRational finish_binary(UPoly r, const Algebraic& a, const Algebraic& b, bool is_sum);

    std::shared_ptr<Node> node_;
};

AlgebraicOrRational add(const Algebraic& a, const Algebraic& b);
AlgebraicOrRational mul(const Algebraic& a, const Algebraic& b);
int compare(const Algebraic& a, const Algebraic& b);

}  // namespace bss

#endif
