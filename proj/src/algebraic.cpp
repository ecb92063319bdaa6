#include "bss/algebraic.hpp"

#include <mutex>
#include <optional>
#include <stdexcept>

#include "bss/error.hpp"

namespace bss {

struct Algebraic::Node {
    UPoly poly;
    mutable std::mutex mu;
    mutable Rational lo;
    mutable Rational hi;
    int sign_lo = 0;  // sign of poly at lo; poly(hi) has the opposite sign
    mutable std::optional<std::pair<Rational, Rational>> display;
};

namespace {

// Decides whether the root of a square-free p isolated in (lo, hi) is rational.
// Narrows [lo, hi] as a side effect.
std::optional<Rational> rational_root(const UPoly& p, Rational& lo, Rational& hi) {
    const Integer lead = abs(p.leading());
    auto small_enough = [&](const Rational& q) { return q.get_den() <= lead; };
    Rational q = simplest_between(lo, hi);
    if (!small_enough(q)) return std::nullopt;
    if (!may_have_rational_root(p)) return std::nullopt;
    const int slo = p.sign_at(lo);
    for (;;) {
        q = simplest_between(lo, hi);
        if (!small_enough(q)) return std::nullopt;
        if (p.sign_at(q) == 0) return q;
        Rational m = midpoint(lo, hi);
        const int sm = p.sign_at(m);
        if (sm == 0) return m;
        if (sm == slo)
            lo = m;
        else
            hi = m;
    }
}

}  // namespace

Algebraic Algebraic::from_isolated(UPoly p, Rational lo, Rational hi, bool keep_display) {
    auto node = std::make_shared<Node>();
    node->sign_lo = p.sign_at(lo);
    node->poly = std::move(p);
    if (keep_display) node->display = std::make_pair(lo, hi);
    node->lo = std::move(lo);
    node->hi = std::move(hi);
    return Algebraic(std::move(node));
}

AlgebraicOrRational Algebraic::make(const UPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidLiteral, "zero polynomial has no isolated root");
    if (lo > hi) throw Error(ErrorKind::NoRootInInterval, "empty interval");
    const UPoly sf = square_free_part(p);
    auto roots = isolate_roots(sf, lo, hi);
    if (roots.empty())
        throw Error(ErrorKind::NoRootInInterval, sf.to_string() + " has no root in [" + lo.get_str() + ", " + hi.get_str() + "]");
    if (roots.size() > 1)
        throw Error(ErrorKind::MultipleRootsInInterval,
                    sf.to_string() + " has " + std::to_string(roots.size()) + " roots in [" + lo.get_str() + ", " + hi.get_str() + "]");
    RootInterval r = roots.front();
    if (r.exact()) return r.lo;
    if (auto q = rational_root(sf, r.lo, r.hi)) return *q;
    // The user's interval is kept for display only if its endpoints are not roots,
    // which holds here because the single root is interior and irrational.
    Algebraic a = from_isolated(sf, r.lo, r.hi, false);
    a.node_->display = std::make_pair(lo, hi);
    return a;
}

const UPoly& Algebraic::poly() const { return node_->poly; }

std::pair<Rational, Rational> Algebraic::interval() const {
    std::lock_guard<std::mutex> lock(node_->mu);
    return {node_->lo, node_->hi};
}

void Algebraic::bisect() const {
    std::lock_guard<std::mutex> lock(node_->mu);
    Rational m = midpoint(node_->lo, node_->hi);
    const int s = node_->poly.sign_at(m);
    if (s == 0) throw std::logic_error("algebraic number turned out rational during refinement");
    if (s == node_->sign_lo)
        node_->lo = m;
    else
        node_->hi = m;
}

void Algebraic::refine_to(const Rational& width) const {
    for (;;) {
        {
            std::lock_guard<std::mutex> lock(node_->mu);
            if (node_->hi - node_->lo <= width) return;
        }
        bisect();
    }
}

int Algebraic::sign() const {
    for (;;) {
        auto [lo, hi] = interval();
        if (sgn(lo) >= 0) return 1;
        if (sgn(hi) <= 0) return -1;
        bisect();
    }
}

int Algebraic::compare(const Rational& q) const {
    for (;;) {
        auto [lo, hi] = interval();
        if (q <= lo) return 1;
        if (q >= hi) return -1;
        bisect();
    }
}

int compare(const Algebraic& a, const Algebraic& b) {
    if (a.same_node(b)) return 0;
    auto [alo, ahi] = a.interval();
    auto [blo, bhi] = b.interval();
    if (ahi <= blo) return -1;
    if (bhi <= alo) return 1;
    const UPoly g = gcd(a.poly(), b.poly());
    if (g.degree() >= 1) {
        const Rational ilo = alo > blo ? alo : blo;
        const Rational ihi = ahi < bhi ? ahi : bhi;
        if (g.sign_at(ilo) * g.sign_at(ihi) < 0) return 0;
    }
    for (;;) {
        a.bisect();
        b.bisect();
        std::tie(alo, ahi) = a.interval();
        std::tie(blo, bhi) = b.interval();
        if (ahi <= blo) return -1;
        if (bhi <= alo) return 1;
    }
}

Algebraic Algebraic::negate() const {
    auto [lo, hi] = interval();
    return from_isolated(negate_variable(poly()).primitive(), -hi, -lo, false);
}

Algebraic Algebraic::inverse() const {
    for (;;) {
        auto [lo, hi] = interval();
        if (sgn(lo) > 0 || sgn(hi) < 0) break;
        bisect();
    }
    auto [lo, hi] = interval();
    return from_isolated(reverse(poly()).primitive(), 1 / hi, 1 / lo, false);
}

Algebraic Algebraic::add(const Rational& q) const {
    auto [lo, hi] = interval();
    return from_isolated(compose_linear(poly(), -q, 1), lo + q, hi + q, false);
}

AlgebraicOrRational Algebraic::mul(const Rational& q) const {
    if (sgn(q) == 0) return Rational(0);
    auto [lo, hi] = interval();
    UPoly p = compose_linear(poly(), 0, 1 / q);
    if (sgn(q) > 0) return from_isolated(std::move(p), lo * q, hi * q, false);
    return from_isolated(std::move(p), hi * q, lo * q, false);
}

AlgebraicOrRational finish_binary(UPoly r, const Algebraic& a, const Algebraic& b, bool is_sum) {
    r = square_free_part(r);
    for (;;) {
        auto [alo, ahi] = a.interval();
        auto [blo, bhi] = b.interval();
        Rational lo, hi;
        if (is_sum) {
            lo = alo + blo;
            hi = ahi + bhi;
        } else {
            Rational c[4] = {alo * blo, alo * bhi, ahi * blo, ahi * bhi};
            lo = c[0];
            hi = c[0];
            for (const auto& x : c) {
                if (x < lo) lo = x;
                if (x > hi) hi = x;
            }
        }
        if (r.sign_at(lo) != 0 && r.sign_at(hi) != 0 && descartes_bound(r, lo, hi) == 1) {
            if (auto q = rational_root(r, lo, hi)) return *q;
            return Algebraic::from_isolated(std::move(r), std::move(lo), std::move(hi), false);
        }
        a.bisect();
        b.bisect();
    }
}

AlgebraicOrRational add(const Algebraic& a, const Algebraic& b) {
    if (a.same_node(b)) return a.mul(Rational(2));
    return finish_binary(composed_sum(a.poly(), b.poly()), a, b, true);
}

AlgebraicOrRational mul(const Algebraic& a, const Algebraic& b) {
    // products are formed on intervals that exclude zero
    a.sign();
    b.sign();
    return finish_binary(composed_product(a.poly(), b.poly()), a, b, false);
}

std::pair<Rational, Rational> Algebraic::display_interval() const {
    {
        std::lock_guard<std::mutex> lock(node_->mu);
        if (node_->display) return *node_->display;
    }
    const UPoly& p = poly();
    const Rational bound(root_bound(p));
    Rational lo = -bound;
    Rational hi = bound;
    for (;;) {
        if (p.sign_at(lo) != 0 && p.sign_at(hi) != 0 && descartes_bound(p, lo, hi) == 1) break;
        Rational m = midpoint(lo, hi);
        if (compare(m) > 0)
            lo = m;
        else
            hi = m;
    }
    std::lock_guard<std::mutex> lock(node_->mu);
    node_->display = std::make_pair(lo, hi);
    return *node_->display;
}

std::string Algebraic::to_string() const {
    auto [lo, hi] = display_interval();
    return "alg(" + poly().to_string() + ", " + lo.get_str() + ", " + hi.get_str() + ")";
}

}  // namespace bss
