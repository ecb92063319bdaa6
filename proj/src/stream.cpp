#include "bss/stream.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <sstream>

#include "bss/error.hpp"

namespace bss {

PeriodicDigits::PeriodicDigits(std::vector<int> prefix, std::vector<int> repeat)
    : prefix_(std::move(prefix)), repeat_(std::move(repeat)) {}

int PeriodicDigits::digit(std::size_t index) const {
    if (index < prefix_.size()) return prefix_[index];
    if (repeat_.empty()) return 0;
    return repeat_[(index - prefix_.size()) % repeat_.size()];
}

struct StreamReal::Leaf {
    Integer integer_part;
    std::shared_ptr<const DigitSource> digits;
    std::size_t budget = kDefaultDigitBudget;
    std::string name;
    mutable std::mutex mu;
    mutable std::vector<Integer> partial;  // partial[k] = sum_{i<=k} d_i 10^(k-i)

    Integer numerator(std::size_t k) const {
        std::lock_guard<std::mutex> lock(mu);
        while (partial.size() <= k) {
            const std::size_t i = partial.size();
            const int d = digits->digit(i);
            if (d < 0 || d > 9) throw Error(ErrorKind::InvalidLiteral, "digit source produced " + std::to_string(d));
            Integer next = partial.empty() ? Integer(0) : Integer(partial.back() * 10);
            next += d;
            partial.push_back(std::move(next));
        }
        return partial[k];
    }

    Enclosure enclose(std::size_t k) const {
        const std::size_t kk = std::min(k, budget - 1);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, kk);
        const Integer n = numerator(kk);
        Rational lo(n, scale);
        lo.canonicalize();
        Rational hi(n + 1, scale);
        hi.canonicalize();
        return {lo + integer_part, hi + integer_part};
    }
};

struct StreamReal::Node {
    enum class Kind { Affine, Sum, Product, Quotient } kind = Kind::Affine;
    Rational constant;
    std::vector<std::pair<std::shared_ptr<const Leaf>, Rational>> terms;  // sorted by leaf address
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const StreamReal::Node>;
using Kind = StreamReal::Node::Kind;

NodePtr affine_constant(const Rational& q) {
    auto n = std::make_shared<StreamReal::Node>();
    n->constant = q;
    return n;
}

NodePtr binary(Kind kind, NodePtr a, NodePtr b) {
    auto n = std::make_shared<StreamReal::Node>();
    n->kind = kind;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

std::size_t node_budget(const StreamReal::Node& n) {
    if (n.kind == Kind::Affine) {
        std::size_t b = std::numeric_limits<std::size_t>::max();
        for (const auto& [leaf, c] : n.terms) b = std::min(b, leaf->budget);
        return b;
    }
    return std::min(node_budget(*n.lhs), node_budget(*n.rhs));
}

std::optional<Enclosure> node_enclose(const StreamReal::Node& n, std::size_t k) {
    switch (n.kind) {
    case Kind::Affine: {
        Enclosure e{n.constant, n.constant};
        for (const auto& [leaf, c] : n.terms) {
            Enclosure l = leaf->enclose(k);
            if (sgn(c) > 0) {
                e.lo += c * l.lo;
                e.hi += c * l.hi;
            } else {
                e.lo += c * l.hi;
                e.hi += c * l.lo;
            }
        }
        return e;
    }
    case Kind::Sum: {
        auto a = node_enclose(*n.lhs, k);
        auto b = node_enclose(*n.rhs, k);
        if (!a || !b) return std::nullopt;
        return Enclosure{a->lo + b->lo, a->hi + b->hi};
    }
    case Kind::Product:
    case Kind::Quotient: {
        auto a = node_enclose(*n.lhs, k);
        auto b = node_enclose(*n.rhs, k);
        if (!a || !b) return std::nullopt;
        if (n.kind == Kind::Quotient) {
            if (sgn(b->lo) <= 0 && sgn(b->hi) >= 0) return std::nullopt;
            b = Enclosure{1 / b->hi, 1 / b->lo};
        }
        Rational c[4] = {a->lo * b->lo, a->lo * b->hi, a->hi * b->lo, a->hi * b->hi};
        Enclosure e{c[0], c[0]};
        for (const auto& x : c) {
            if (x < e.lo) e.lo = x;
            if (x > e.hi) e.hi = x;
        }
        return e;
    }
    }
    return std::nullopt;
}

std::string render(const StreamReal::Node& n) {
    std::ostringstream out;
    switch (n.kind) {
    case Kind::Affine: {
        bool first = true;
        const bool wrap = n.terms.size() > 1 || sgn(n.constant) != 0;
        if (wrap) out << "(";
        for (const auto& [leaf, c] : n.terms) {
            if (!first) out << " + ";
            first = false;
            if (c != 1) out << c.get_str() << "*";
            out << "stream(" << leaf->name << ")";
        }
        if (sgn(n.constant) != 0 || first) {
            if (!first) out << " + ";
            out << n.constant.get_str();
        }
        if (wrap) out << ")";
        return out.str();
    }
    case Kind::Sum: return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
    case Kind::Product: return "(" + render(*n.lhs) + " * " + render(*n.rhs) + ")";
    case Kind::Quotient: return "(" + render(*n.lhs) + " / " + render(*n.rhs) + ")";
    }
    return "?";
}

}  // namespace

StreamReal StreamReal::leaf(Integer integer_part, std::shared_ptr<const DigitSource> digits, std::size_t budget,
                            std::string name) {
    auto leaf = std::make_shared<Leaf>();
    leaf->integer_part = std::move(integer_part);
    leaf->digits = std::move(digits);
    leaf->budget = std::max<std::size_t>(budget, 1);
    leaf->name = std::move(name);
    auto n = std::make_shared<Node>();
    n->terms.emplace_back(std::move(leaf), Rational(1));
    return StreamReal(std::move(n));
}

std::optional<Enclosure> StreamReal::enclose(std::size_t k) const { return node_enclose(*node_, k); }

std::size_t StreamReal::budget() const { return node_budget(*node_); }

namespace {

template <typename Decide>
auto search_precision(const StreamReal& x, Decide decide) -> decltype(decide(Enclosure{})) {
    const std::size_t last = x.budget() - 1;
    std::size_t k = 0;
    for (;;) {
        if (auto e = x.enclose(k)) {
            if (auto r = decide(*e)) return r;
        }
        if (k >= last) return std::nullopt;
        k = std::min(last, 2 * k + 1);
    }
}

}  // namespace

std::optional<int> StreamReal::strict_sign() const {
    return search_precision(*this, [](const Enclosure& e) -> std::optional<int> {
        if (sgn(e.lo) > 0) return 1;
        if (sgn(e.hi) < 0) return -1;
        return std::nullopt;
    });
}

std::optional<bool> StreamReal::nonnegative() const {
    return search_precision(*this, [](const Enclosure& e) -> std::optional<bool> {
        if (sgn(e.lo) >= 0) return true;
        if (sgn(e.hi) < 0) return false;
        return std::nullopt;
    });
}

std::optional<int> StreamReal::leaf_digit(std::size_t index) const {
    if (node_->kind != Kind::Affine || node_->terms.size() != 1 || sgn(node_->constant) != 0 ||
        node_->terms.front().second != 1)
        return std::nullopt;
    return node_->terms.front().first->digits->digit(index);
}

std::string StreamReal::to_string() const { return render(*node_); }

StreamOrRational add(const StreamReal& a, const StreamReal& b) {
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind == Kind::Affine && y.kind == Kind::Affine) {
        auto n = std::make_shared<StreamReal::Node>();
        n->constant = x.constant + y.constant;
        auto i = x.terms.begin();
        auto j = y.terms.begin();
        auto push = [&](const std::shared_ptr<const StreamReal::Leaf>& l, const Rational& c) {
            if (sgn(c) != 0) n->terms.emplace_back(l, c);
        };
        while (i != x.terms.end() || j != y.terms.end()) {
            if (j == y.terms.end() || (i != x.terms.end() && i->first.get() < j->first.get())) {
                push(i->first, i->second);
                ++i;
            } else if (i == x.terms.end() || j->first.get() < i->first.get()) {
                push(j->first, j->second);
                ++j;
            } else {
                push(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        if (n->terms.empty()) return n->constant;
        return StreamReal(std::move(n));
    }
    return StreamReal(binary(Kind::Sum, a.node_, b.node_));
}

StreamOrRational add(const StreamReal& a, const Rational& q) {
    if (a.node_->kind == Kind::Affine) {
        auto n = std::make_shared<StreamReal::Node>(*a.node_);
        n->constant += q;
        return StreamReal(std::move(n));
    }
    return StreamReal(binary(Kind::Sum, a.node_, affine_constant(q)));
}

StreamOrRational mul(const StreamReal& a, const Rational& q) {
    if (sgn(q) == 0) return Rational(0);
    if (a.node_->kind == Kind::Affine) {
        auto n = std::make_shared<StreamReal::Node>(*a.node_);
        n->constant *= q;
        for (auto& t : n->terms) t.second *= q;
        return StreamReal(std::move(n));
    }
    return StreamReal(binary(Kind::Product, a.node_, affine_constant(q)));
}

StreamOrRational mul(const StreamReal& a, const StreamReal& b) {
    return StreamReal(binary(Kind::Product, a.node_, b.node_));
}

StreamOrRational div(const StreamReal& a, const StreamReal& b) {
    if (!b.strict_sign()) throw Error(ErrorKind::IndeterminateOperand, "divisor " + b.to_string() + " not certified nonzero");
    return StreamReal(binary(Kind::Quotient, a.node_, b.node_));
}

StreamOrRational div(const Rational& q, const StreamReal& b) {
    if (!b.strict_sign()) throw Error(ErrorKind::IndeterminateOperand, "divisor " + b.to_string() + " not certified nonzero");
    if (sgn(q) == 0) return Rational(0);
    return StreamReal(binary(Kind::Quotient, affine_constant(q), b.node_));
}

StreamReal StreamReal::negate() const { return std::get<StreamReal>(mul(*this, Rational(-1))); }

}  // namespace bss
