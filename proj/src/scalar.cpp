#include "bss/scalar.hpp"

#include <cctype>
#include <vector>

#include "bss/error.hpp"

namespace bss {

std::string_view to_string(Backend b) {
    switch (b) {
    case Backend::IntegerRing: return "integer";
    case Backend::RationalField: return "rational";
    case Backend::RealAlgebraicField: return "algebraic";
    case Backend::StreamExtension: return "stream";
    }
    return "?";
}

std::optional<Backend> backend_from_string(std::string_view name) {
    if (name == "integer") return Backend::IntegerRing;
    if (name == "rational") return Backend::RationalField;
    if (name == "algebraic") return Backend::RealAlgebraicField;
    if (name == "stream") return Backend::StreamExtension;
    return std::nullopt;
}

std::string_view to_string(Sign s) {
    switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Positive: return "Positive";
    case Sign::Indeterminate: return "Indeterminate";
    }
    return "?";
}

Scalar::Scalar(Rational v) {
    v.canonicalize();
    value_ = std::move(v);
}

Scalar::Scalar(AlgebraicOrRational v) {
    if (auto* q = std::get_if<Rational>(&v))
        value_ = std::move(*q);
    else
        value_ = std::get<Algebraic>(std::move(v));
}

Scalar::Scalar(StreamOrRational v) {
    if (auto* q = std::get_if<Rational>(&v))
        value_ = std::move(*q);
    else
        value_ = std::get<StreamReal>(std::move(v));
}

Backend Scalar::backend() const {
    switch (value_.index()) {
    case 0: return Backend::IntegerRing;
    case 1: return Backend::RationalField;
    case 2: return Backend::RealAlgebraicField;
    default: return Backend::StreamExtension;
    }
}

Rational Scalar::to_rational() const {
    if (auto* z = std::get_if<Integer>(&value_)) return Rational(*z);
    return std::get<Rational>(value_);
}

std::string Scalar::to_string() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>)
                return v.get_str();
            else
                return v.to_string();
        },
        value_);
}

namespace {

Rational checked_quotient(const Rational& a, const Rational& b) {
    if (sgn(b) == 0) throw Error(ErrorKind::DivisionByZero, a.get_str() + " / 0");
    return a / b;
}

Scalar stream_arith(ArithOp op, const Scalar& a, const Scalar& b) {
    if (a.is_algebraic() || b.is_algebraic())
        throw Error(ErrorKind::BackendMismatch, "digit-stream reals do not combine with algebraic numbers");
    if (a.is_stream() && b.is_stream()) {
        const auto& x = a.stream();
        const auto& y = b.stream();
        switch (op) {
        case ArithOp::Add: return add(x, y);
        case ArithOp::Sub: return add(x, y.negate());
        case ArithOp::Mul: return mul(x, y);
        case ArithOp::Div: return div(x, y);
        }
    }
    if (a.is_stream()) {
        const auto& x = a.stream();
        const Rational q = b.to_rational();
        switch (op) {
        case ArithOp::Add: return add(x, q);
        case ArithOp::Sub: return add(x, Rational(-q));
        case ArithOp::Mul: return mul(x, q);
        case ArithOp::Div: return mul(x, checked_quotient(1, q));
        }
    }
    const Rational q = a.to_rational();
    const auto& y = b.stream();
    switch (op) {
    case ArithOp::Add: return add(y, q);
    case ArithOp::Sub: return add(y.negate(), q);
    case ArithOp::Mul: return mul(y, q);
    case ArithOp::Div: return div(q, y);
    }
    return {};
}

Scalar algebraic_arith(ArithOp op, const Scalar& a, const Scalar& b) {
    if (a.is_algebraic() && b.is_algebraic()) {
        const auto& x = a.algebraic();
        const auto& y = b.algebraic();
        switch (op) {
        case ArithOp::Add: return add(x, y);
        case ArithOp::Sub:
            if (x.same_node(y)) return Rational(0);
            return add(x, y.negate());
        case ArithOp::Mul: return mul(x, y);
        case ArithOp::Div:
            if (x.same_node(y)) return Rational(1);
            return mul(x, y.inverse());
        }
    }
    if (a.is_algebraic()) {
        const auto& x = a.algebraic();
        const Rational q = b.to_rational();
        switch (op) {
        case ArithOp::Add: return x.add(q);
        case ArithOp::Sub: return x.add(-q);
        case ArithOp::Mul: return x.mul(q);
        case ArithOp::Div: return x.mul(checked_quotient(1, q));
        }
    }
    const Rational q = a.to_rational();
    const auto& y = b.algebraic();
    switch (op) {
    case ArithOp::Add: return y.add(q);
    case ArithOp::Sub: return y.negate().add(q);
    case ArithOp::Mul: return y.mul(q);
    case ArithOp::Div: return y.inverse().mul(q);
    }
    return {};
}

}  // namespace

Scalar arith(ArithOp op, const Scalar& a, const Scalar& b) {
    if (a.is_stream() || b.is_stream()) return stream_arith(op, a, b);
    if (a.is_algebraic() || b.is_algebraic()) return algebraic_arith(op, a, b);
    if (a.is_integer() && b.is_integer() && op != ArithOp::Div) {
        const auto& x = std::get<Integer>(a.value());
        const auto& y = std::get<Integer>(b.value());
        switch (op) {
        case ArithOp::Add: return Integer(x + y);
        case ArithOp::Sub: return Integer(x - y);
        case ArithOp::Mul: return Integer(x * y);
        case ArithOp::Div: break;
        }
    }
    const Rational x = a.to_rational();
    const Rational y = b.to_rational();
    switch (op) {
    case ArithOp::Add: return Rational(x + y);
    case ArithOp::Sub: return Rational(x - y);
    case ArithOp::Mul: return Rational(x * y);
    case ArithOp::Div: return checked_quotient(x, y);
    }
    return {};
}

Scalar negate(const Scalar& a) {
    return std::visit(
        [](const auto& v) -> Scalar {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Integer>)
                return Integer(-v);
            else if constexpr (std::is_same_v<T, Rational>)
                return Rational(-v);
            else
                return v.negate();
        },
        a.value());
}

Scalar power(const Scalar& a, unsigned exponent) {
    Scalar result = a.is_integer() ? Scalar(1L) : Scalar(Rational(1));
    Scalar base = a;
    while (exponent) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent) base = base * base;
    }
    return result;
}

namespace {

Sign from_int(int s) {
    if (s < 0) return Sign::Negative;
    if (s > 0) return Sign::Positive;
    return Sign::Zero;
}

}  // namespace

Sign sign(const Scalar& a) {
    return std::visit(
        [](const auto& v) -> Sign {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>)
                return from_int(sgn(v));
            else if constexpr (std::is_same_v<T, Algebraic>)
                return from_int(v.sign());
            else {
                auto s = v.strict_sign();
                return s ? from_int(*s) : Sign::Indeterminate;
            }
        },
        a.value());
}

Sign compare(const Scalar& a, const Scalar& b) {
    if (a.is_exact_rational() && b.is_exact_rational()) return from_int(cmp(a.to_rational(), b.to_rational()));
    if (a.is_algebraic() && b.is_algebraic()) return from_int(compare(a.algebraic(), b.algebraic()));
    if (a.is_algebraic() && b.is_exact_rational()) return from_int(a.algebraic().compare(b.to_rational()));
    if (b.is_algebraic() && a.is_exact_rational()) return from_int(-b.algebraic().compare(a.to_rational()));
    return sign(a - b);
}

std::optional<bool> is_nonnegative(const Scalar& a) {
    if (a.is_stream()) return a.stream().nonnegative();
    return sign(a) != Sign::Negative;
}

bool exactly_equal(const Scalar& a, const Scalar& b) {
    if (a.is_stream() || b.is_stream()) return false;
    return compare(a, b) == Sign::Zero;
}

bool is_zero(const Scalar& a) {
    if (a.is_stream() || a.is_algebraic()) return false;
    return sgn(a.to_rational()) == 0;
}

Scalar make_algebraic(const UPoly& p, const Rational& lo, const Rational& hi) { return Algebraic::make(p, lo, hi); }

Scalar make_stream(Integer integer_part, std::shared_ptr<const DigitSource> digits, std::size_t budget,
                   std::string name) {
    return StreamReal::leaf(std::move(integer_part), std::move(digits), budget, std::move(name));
}

bool fits_backend(const Scalar& a, Backend target) {
    switch (a.backend()) {
    case Backend::IntegerRing: return true;
    case Backend::RationalField:
        return target != Backend::IntegerRing || std::get<Rational>(a.value()).get_den() == 1;
    case Backend::RealAlgebraicField: return target == Backend::RealAlgebraicField;
    case Backend::StreamExtension: return target == Backend::StreamExtension;
    }
    return false;
}

Scalar promote(const Scalar& a, Backend target) {
    if (!fits_backend(a, target))
        throw Error(ErrorKind::BackendMismatch,
                    a.to_string() + " is not an element of the " + std::string(to_string(target)) + " backend");
    if (target == Backend::IntegerRing) {
        if (a.is_rational()) return Integer(std::get<Rational>(a.value()).get_num());
        return a;
    }
    if (a.is_integer()) return Rational(std::get<Integer>(a.value()));
    return a;
}

// ---------------------------------------------------------------------------
// Literal parsing.

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool done() {
        skip();
        return pos >= text.size();
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::InvalidLiteral, "'" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + what);
    }
    Integer natural() {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return Integer(std::string(text.substr(start, pos - start)));
    }
};

using QPoly = std::vector<Rational>;

void qtrim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

QPoly qadd(const QPoly& a, const QPoly& b, int sb) {
    QPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] += a[i];
        if (i < b.size()) out[i] += sb * b[i];
    }
    qtrim(out);
    return out;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    qtrim(out);
    return out;
}

QPoly parse_qexpr(Cursor& c);

QPoly parse_qprimary(Cursor& c) {
    c.skip();
    if (c.eat('(')) {
        QPoly e = parse_qexpr(c);
        if (!c.eat(')')) c.fail("expected ')'");
        return e;
    }
    if (c.pos < c.text.size() && c.text[c.pos] == 'x') {
        ++c.pos;
        return QPoly{Rational(0), Rational(1)};
    }
    if (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
        QPoly k{Rational(c.natural())};
        qtrim(k);
        return k;
    }
    c.fail("expected x, a number or '('");
}

QPoly parse_qfactor(Cursor& c) {
    if (c.eat('-')) {
        QPoly f = parse_qfactor(c);
        for (auto& x : f) x = -x;
        return f;
    }
    QPoly base = parse_qprimary(c);
    if (c.eat('^')) {
        Integer e = c.natural();
        if (e > 4096) c.fail("exponent too large");
        QPoly out{Rational(1)};
        for (unsigned long i = 0; i < e.get_ui(); ++i) out = qmul(out, base);
        return out;
    }
    return base;
}

QPoly parse_qterm(Cursor& c) {
    QPoly t = parse_qfactor(c);
    for (;;) {
        c.skip();
        if (c.eat('*')) {
            t = qmul(t, parse_qfactor(c));
        } else if (c.eat('/')) {
            QPoly d = parse_qfactor(c);
            if (d.size() != 1) c.fail("division only by nonzero constants");
            for (auto& x : t) x /= d[0];
        } else if (c.pos < c.text.size() && c.text[c.pos] == 'x') {
            t = qmul(t, parse_qfactor(c));  // implicit product such as 2x
        } else {
            return t;
        }
    }
}

QPoly parse_qexpr(Cursor& c) {
    QPoly e = parse_qterm(c);
    for (;;) {
        if (c.eat('+'))
            e = qadd(e, parse_qterm(c), 1);
        else if (c.eat('-'))
            e = qadd(e, parse_qterm(c), -1);
        else
            return e;
    }
}

Rational parse_rational(Cursor& c) {
    const bool neg = c.eat('-');
    if (!neg) c.eat('+');
    Integer num = c.natural();
    Integer den = 1;
    if (c.eat('/')) den = c.natural();
    if (sgn(den) == 0) c.fail("zero denominator");
    Rational q(neg ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
}

}  // namespace

UPoly parse_upoly(std::string_view text) {
    Cursor c{text};
    QPoly q = parse_qexpr(c);
    if (!c.done()) c.fail("trailing input");
    Integer den = 1;
    for (const auto& x : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> coeffs;
    coeffs.reserve(q.size());
    for (const auto& x : q) {
        Rational s = x * den;
        coeffs.push_back(s.get_num());
    }
    return UPoly(std::move(coeffs));
}

Scalar parse_scalar(std::string_view text) {
    Cursor c{text};
    c.skip();
    if (text.substr(c.pos).rfind("alg", 0) == 0) {
        c.pos += 3;
        if (!c.eat('(')) c.fail("expected '(' after alg");
        // polynomial text runs to the first top-level comma
        int depth = 0;
        std::size_t start = c.pos;
        while (c.pos < text.size()) {
            char ch = text[c.pos];
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (ch == ',' && depth == 0) break;
            ++c.pos;
        }
        if (c.pos >= text.size()) c.fail("expected ',' after polynomial");
        UPoly p = parse_upoly(text.substr(start, c.pos - start));
        ++c.pos;
        Rational lo = parse_rational(c);
        if (!c.eat(',')) c.fail("expected ','");
        Rational hi = parse_rational(c);
        if (!c.eat(')')) c.fail("expected ')'");
        if (!c.done()) c.fail("trailing input");
        return make_algebraic(p, lo, hi);
    }
    Rational q = parse_rational(c);
    if (!c.done()) c.fail("trailing input");
    if (q.get_den() == 1 && text.find('/') == std::string_view::npos) return Integer(q.get_num());
    return q;
}

}  // namespace bss
