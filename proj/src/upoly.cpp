#include "bss/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace bss {

namespace {

const Integer& zero_integer() {
    static const Integer z = 0;
    return z;
}

}  // namespace

UPoly::UPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly::UPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

UPoly UPoly::constant(const Integer& c) { return UPoly(std::vector<Integer>{c}); }

UPoly UPoly::linear_root(const Rational& q) {
    return UPoly(std::vector<Integer>{-q.get_num(), q.get_den()});
}

void UPoly::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const Integer& UPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero_integer();
    return coeffs_[static_cast<std::size_t>(k)];
}

Integer UPoly::content() const {
    Integer g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

UPoly UPoly::primitive() const {
    if (is_zero()) return {};
    Integer g = content();
    if (sgn(leading()) < 0) g = -g;
    if (g == 1) return *this;
    std::vector<Integer> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return UPoly(std::move(out));
}

UPoly UPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Integer> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(out));
}

int UPoly::sign_at(const Rational& q) const {
    // den^d * p(num/den), evaluated by Horner over the integers.
    if (is_zero()) return 0;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    Integer acc = coeffs_.back();
    Integer den_pow = 1;
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        den_pow *= den;
        acc = acc * num + coeffs_[i] * den_pow;
    }
    return sgn(acc);
}

Rational UPoly::eval(const Rational& q) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + coeffs_[i];
    return acc;
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Integer& c = coeffs_[i];
        if (sgn(c) == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
        } else {
            out << (sgn(c) < 0 ? "-" : "+");
        }
        first = false;
        if (i == 0 || mag != 1) {
            out << mag.get_str();
            if (i > 0) out << "*";
        }
        if (i > 0) out << var;
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.coeffs_.size()) out[i] += a.coeffs_[i];
        if (i < b.coeffs_.size()) out[i] += b.coeffs_[i];
    }
    return UPoly(std::move(out));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
    std::vector<Integer> out(coeffs_);
    for (auto& c : out) c = -c;
    return UPoly(std::move(out));
}

UPoly UPoly::scaled(const Integer& c) const {
    std::vector<Integer> out(coeffs_);
    for (auto& x : out) x *= c;
    return UPoly(std::move(out));
}

UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_remainder by zero polynomial");
    std::vector<Integer> r = a.coeffs();
    const auto& bc = b.coeffs();
    const int db = b.degree();
    const Integer& lb = b.leading();
    int dr = static_cast<int>(r.size()) - 1;
    while (dr >= db) {
        Integer lr = r[static_cast<std::size_t>(dr)];
        const int shift = dr - db;
        for (int i = 0; i < dr; ++i) r[static_cast<std::size_t>(i)] *= lb;
        for (int j = 0; j < db; ++j)
            mpz_submul(r[static_cast<std::size_t>(j + shift)].get_mpz_t(), lr.get_mpz_t(),
                       bc[static_cast<std::size_t>(j)].get_mpz_t());
        r.pop_back();
        while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
        if (dr >= db && r.size() > 64) {
            // keep coefficient growth in check on long divisions
            Integer g = 0;
            for (const auto& c : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g > 1)
                for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
    return UPoly(std::move(r));
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.degree() == 0 || b.degree() == 0) return UPoly{1};
    if (certainly_coprime(a, b)) return UPoly{1};
    UPoly x = a.primitive();
    UPoly y = b.primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        UPoly r = pseudo_remainder(x, y).primitive();
        x = std::move(y);
        y = std::move(r);
        if (!y.is_zero() && y.degree() == 0) return UPoly{1};
    }
    return x.primitive();
}

UPoly divide_exact(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("divide_exact by zero polynomial");
    const int da = a.degree();
    const int db = b.degree();
    if (da < db) return {};
    std::vector<Rational> rem(a.coeffs().begin(), a.coeffs().end());
    std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1));
    const Rational lb(b.leading());
    for (int k = da - db; k >= 0; --k) {
        Rational q = rem[static_cast<std::size_t>(k + db)] / lb;
        quo[static_cast<std::size_t>(k)] = q;
        if (sgn(q) == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * Rational(b.coeff(j));
    }
    Integer den = 1;
    for (const auto& q : quo) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out(quo.size());
    for (std::size_t i = 0; i < quo.size(); ++i) {
        Rational scaled = quo[i] * den;
        out[i] = scaled.get_num();
    }
    return UPoly(std::move(out)).primitive();
}

UPoly square_free_part(const UPoly& p) {
    if (p.degree() <= 1) return p.primitive();
    if (certainly_square_free(p)) return p.primitive();
    UPoly g = gcd(p, p.derivative());
    if (g.degree() <= 0) return p.primitive();
    return divide_exact(p, g);
}

// ---------------------------------------------------------------------------
// Arithmetic modulo word-size primes.

namespace {

using ModPoly = std::vector<std::uint64_t>;

constexpr std::uint64_t kPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL};

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m) { return mod_pow(a, m - 2, m); }

void mod_trim(ModPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

ModPoly reduce(const UPoly& p, std::uint64_t m) {
    ModPoly out(p.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mpz_fdiv_ui(p.coeffs()[i].get_mpz_t(), m);
    mod_trim(out);
    return out;
}

ModPoly mod_derivative(const ModPoly& p, std::uint64_t m) {
    if (p.size() <= 1) return {};
    ModPoly out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * (i % m) % m;
    mod_trim(out);
    return out;
}

// In-place remainder of a by monic-izable b.
void mod_rem(ModPoly& a, const ModPoly& b, std::uint64_t m) {
    const std::size_t db = b.size() - 1;
    const std::uint64_t inv = mod_inv(b.back(), m);
    while (!a.empty() && a.size() - 1 >= db) {
        const std::uint64_t f = a.back() * inv % m;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t j = 0; j <= db; ++j) a[j + shift] = (a[j + shift] + (m - f) * b[j]) % m;
        mod_trim(a);
    }
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t m) {
    while (!b.empty()) {
        mod_rem(a, b, m);
        std::swap(a, b);
    }
    return a;
}

ModPoly mod_mulrem(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::uint64_t m) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % m;
    }
    mod_trim(out);
    mod_rem(out, f, m);
    return out;
}

}  // namespace

bool certainly_square_free(const UPoly& p) {
    if (p.degree() <= 1) return true;
    for (std::uint64_t m : kPrimes) {
        if (mpz_fdiv_ui(p.leading().get_mpz_t(), m) == 0) continue;
        ModPoly f = reduce(p, m);
        ModPoly g = mod_gcd(f, mod_derivative(f, m), m);
        if (g.size() == 1) return true;
    }
    return false;
}

bool certainly_coprime(const UPoly& a, const UPoly& b) {
    for (std::uint64_t m : kPrimes) {
        if (mpz_fdiv_ui(a.leading().get_mpz_t(), m) == 0 || mpz_fdiv_ui(b.leading().get_mpz_t(), m) == 0) continue;
        ModPoly g = mod_gcd(reduce(a, m), reduce(b, m), m);
        if (g.size() == 1) return true;
    }
    return false;
}

bool may_have_rational_root(const UPoly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    if (sgn(p.coeff(0)) == 0) return true;
    for (std::uint64_t m : kPrimes) {
        if (mpz_fdiv_ui(p.leading().get_mpz_t(), m) == 0) continue;
        ModPoly f = reduce(p, m);
        // x^m mod f by square and multiply
        ModPoly result{1};
        ModPoly base{0, 1};
        mod_rem(base, f, m);
        std::uint64_t e = m;
        while (e) {
            if (e & 1) result = mod_mulrem(result, base, f, m);
            base = mod_mulrem(base, base, f, m);
            e >>= 1;
        }
        // result - x
        if (result.size() < 2) result.resize(2, 0);
        result[1] = (result[1] + m - 1) % m;
        mod_trim(result);
        ModPoly g = mod_gcd(f, result, m);
        if (g.size() == 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

UPoly taylor_shift(const UPoly& p, const Integer& a) {
    std::vector<Integer> c = p.coeffs();
    const std::size_t n = c.size();
    if (n <= 1 || sgn(a) == 0) return p;
    const bool unit = (a == 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j-- > i;) {
            if (unit)
                c[j] += c[j + 1];
            else
                mpz_addmul(c[j].get_mpz_t(), c[j + 1].get_mpz_t(), a.get_mpz_t());
        }
    }
    return UPoly(std::move(c));
}

UPoly compose_linear(const UPoly& p, const Rational& a, const Rational& b) {
    if (p.degree() <= 0) return p.primitive();
    if (sgn(b) == 0) return UPoly::constant(sgn(p.eval(a)));
    const int d = p.degree();
    const Integer w = a.get_den() * b.get_den();
    const Integer u = a.get_num() * b.get_den();
    const Integer v = b.get_num() * a.get_den();
    std::vector<Integer> h(static_cast<std::size_t>(d) + 1);
    Integer wp = 1;
    for (int k = d; k >= 0; --k) {
        h[static_cast<std::size_t>(k)] = p.coeff(k) * wp;
        wp *= w;
    }
    UPoly shifted = taylor_shift(UPoly(std::move(h)), u);
    std::vector<Integer> out = shifted.coeffs();
    Integer vp = 1;
    for (auto& c : out) {
        c *= vp;
        vp *= v;
    }
    return UPoly(std::move(out)).primitive();
}

UPoly negate_variable(const UPoly& p) {
    std::vector<Integer> c = p.coeffs();
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return UPoly(std::move(c));
}

UPoly reverse(const UPoly& p) {
    std::vector<Integer> c = p.coeffs();
    std::reverse(c.begin(), c.end());
    return UPoly(std::move(c));
}

namespace {

// Monic integer polynomial whose roots are lc(p) * roots(p), further scaled by `scale`.
std::vector<Integer> monic_scaled(const UPoly& p, const Integer& scale) {
    const int m = p.degree();
    const Integer& a = p.leading();
    std::vector<Integer> c(static_cast<std::size_t>(m) + 1);
    c[static_cast<std::size_t>(m)] = 1;
    // coefficient k of the monic poly with roots a*alpha is p_k * a^(m-1-k);
    // scaling roots by s multiplies coefficient k by s^(m-k).
    Integer apow = 1;
    Integer spow = scale;
    for (int k = m - 1; k >= 0; --k) {
        c[static_cast<std::size_t>(k)] = p.coeff(k) * apow * spow;
        apow *= a;
        spow *= scale;
    }
    return c;
}

std::vector<Integer> power_sums(const std::vector<Integer>& monic, std::size_t n) {
    const std::size_t m = monic.size() - 1;
    std::vector<Integer> s(n + 1);
    s[0] = static_cast<unsigned long>(m);
    for (std::size_t k = 1; k <= n; ++k) {
        Integer acc = 0;
        const std::size_t top = std::min(k - 1, m);
        for (std::size_t i = 1; i <= top; ++i)
            mpz_addmul(acc.get_mpz_t(), monic[m - i].get_mpz_t(), s[k - i].get_mpz_t());
        if (k <= m) acc += monic[m - k] * static_cast<unsigned long>(k);
        s[k] = -acc;
    }
    return s;
}

// Monic polynomial of degree n with the given power sums (Newton identities).
std::vector<Integer> from_power_sums(const std::vector<Integer>& s, std::size_t n) {
    std::vector<Integer> e(n + 1);
    e[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer acc = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            if (i % 2 == 1)
                mpz_addmul(acc.get_mpz_t(), e[k - i].get_mpz_t(), s[i].get_mpz_t());
            else
                mpz_submul(acc.get_mpz_t(), e[k - i].get_mpz_t(), s[i].get_mpz_t());
        }
        mpz_divexact_ui(e[k].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(k));
    }
    std::vector<Integer> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[n - k] = (k % 2 == 0) ? e[k] : Integer(-e[k]);
    return c;
}

// Coefficients of T(scale * x).
UPoly rescale(std::vector<Integer> t, const Integer& scale) {
    Integer pw = 1;
    for (auto& c : t) {
        c *= pw;
        pw *= scale;
    }
    return UPoly(std::move(t)).primitive();
}

}  // namespace

UPoly composed_sum(const UPoly& p, const UPoly& q) {
    const UPoly pp = p.primitive();
    const UPoly qp = q.primitive();
    const std::size_t m = static_cast<std::size_t>(pp.degree());
    const std::size_t n = static_cast<std::size_t>(qp.degree());
    const Integer a = pp.leading();
    const Integer b = qp.leading();
    // roots b*a*alpha and a*b*beta
    const auto sp = power_sums(monic_scaled(pp, b), m * n);
    const auto sq = power_sums(monic_scaled(qp, a), m * n);
    const std::size_t d = m * n;
    std::vector<Integer> s(d + 1);
    std::vector<Integer> binom{1};
    for (std::size_t k = 0; k <= d; ++k) {
        if (k > 0) {
            std::vector<Integer> next(k + 1);
            next[0] = 1;
            next[k] = 1;
            for (std::size_t i = 1; i < k; ++i) next[i] = binom[i - 1] + binom[i];
            binom = std::move(next);
        }
        Integer acc = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            Integer t = sp[i] * sq[k - i];
            mpz_addmul(acc.get_mpz_t(), binom[i].get_mpz_t(), t.get_mpz_t());
        }
        s[k] = std::move(acc);
    }
    return rescale(from_power_sums(s, d), a * b);
}

UPoly composed_product(const UPoly& p, const UPoly& q) {
    const UPoly pp = p.primitive();
    const UPoly qp = q.primitive();
    const std::size_t m = static_cast<std::size_t>(pp.degree());
    const std::size_t n = static_cast<std::size_t>(qp.degree());
    const std::size_t d = m * n;
    const auto sp = power_sums(monic_scaled(pp, 1), d);
    const auto sq = power_sums(monic_scaled(qp, 1), d);
    std::vector<Integer> s(d + 1);
    for (std::size_t k = 0; k <= d; ++k) s[k] = sp[k] * sq[k];
    return rescale(from_power_sums(s, d), pp.leading() * qp.leading());
}

int descartes_bound(const UPoly& p, const Rational& lo, const Rational& hi) {
    if (p.degree() <= 0) return 0;
    UPoly t = taylor_shift(reverse(compose_linear(p, lo, hi - lo)), 1);
    int variations = 0;
    int last = 0;
    for (const auto& c : t.coeffs()) {
        const int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

Rational midpoint(const Rational& a, const Rational& b) {
    Rational m = (a + b) / 2;
    return m;
}

std::vector<RootInterval> isolate_roots(const UPoly& p, const Rational& lo, const Rational& hi) {
    std::vector<RootInterval> out;
    if (p.degree() <= 0 || lo > hi) return out;
    if (lo == hi) {
        if (p.sign_at(lo) == 0) out.push_back({lo, lo});
        return out;
    }
    if (p.sign_at(lo) == 0) out.push_back({lo, lo});

    // Moves endpoints off roots for an interval known to hold exactly one root.
    auto settle = [&](Rational a, Rational b) {
        while (p.sign_at(a) == 0 || p.sign_at(b) == 0) {
            Rational m = midpoint(a, b);
            if (p.sign_at(m) == 0) {
                out.push_back({m, m});
                return;
            }
            if (descartes_bound(p, a, m) >= 1)
                b = m;
            else
                a = m;
        }
        out.push_back({a, b});
    };

    struct Frame {
        Rational a, b;
    };
    std::vector<Frame> stack{{lo, hi}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.a == f.b) {
            out.push_back({f.a, f.a});
            continue;
        }
        const int v = descartes_bound(p, f.a, f.b);
        if (v == 0) continue;
        if (v == 1) {
            settle(f.a, f.b);
            continue;
        }
        Rational m = midpoint(f.a, f.b);
        // push right first so the left half is processed first
        stack.push_back({m, f.b});
        if (p.sign_at(m) == 0) stack.push_back({m, m});
        stack.push_back({f.a, m});
    }
    if (p.sign_at(hi) == 0) out.push_back({hi, hi});
    return out;
}

Integer root_bound(const UPoly& p) {
    Integer m = 0;
    const Integer lead = abs(p.leading());
    for (int k = 0; k < p.degree(); ++k) {
        Integer c = abs(p.coeff(k));
        Integer q;
        mpz_cdiv_q(q.get_mpz_t(), c.get_mpz_t(), lead.get_mpz_t());
        if (q > m) m = q;
    }
    Integer bound = m + 1;
    Integer pw = 1;
    while (pw <= bound) pw *= 2;
    return pw;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
    if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(c) <= hi) return Rational(c);
    Integer f = c - 1;
    Rational inner = simplest_between(1 / (hi - f), 1 / (lo - f));
    Rational r = Rational(f) + 1 / inner;
    r.canonicalize();
    return r;
}

}  // namespace bss
