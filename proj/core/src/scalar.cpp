#include "twistlab/scalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace twistlab {

namespace {

int euler_phi(int n) {
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Ascending-coefficient integer polynomial division, exact (used only where
// the remainder is known to vanish).
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
    std::vector<mpz_class> quot(num.size() - den.size() + 1, 0);
    for (int i = (int)quot.size() - 1; i >= 0; --i) {
        mpz_class c = num[i + den.size() - 1] / den.back();
        quot[i] = c;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    return quot;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(int n) {
    static std::map<int, std::vector<mpz_class>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, filled for all divisors in
    // increasing order so every division has its factors cached already.
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<mpz_class> nd(d + 1, 0);
        nd[0] = -1;
        nd[d] = 1;
        for (int e = 1; e < d; ++e)
            if (d % e == 0) nd = poly_div_exact(std::move(nd), cache.at(e));
        cache.emplace(d, std::move(nd));
    }
    return cache.at(n);
}

FieldSpec FieldSpec::cyclotomic(int n) {
    if (n < 2) throw std::invalid_argument("cyclotomic order must be >= 2");
    return FieldSpec{FieldKind::Cyclotomic, n};
}

int FieldSpec::degree() const {
    return kind == FieldKind::Rational ? 1 : euler_phi(order);
}

std::string FieldSpec::describe() const {
    if (kind == FieldKind::Rational) return "Q";
    return "Q(zeta_" + std::to_string(order) + ")";
}

Scalar::Scalar(const FieldSpec& f, std::vector<mpq_class> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
    coeffs_.resize(f.degree(), mpq_class(0));
    for (auto& c : coeffs_) c.canonicalize();
}

Scalar Scalar::one(const FieldSpec& f) {
    std::vector<mpq_class> c(f.degree(), 0);
    c[0] = 1;
    return Scalar(f, std::move(c));
}

Scalar Scalar::from_rational(const FieldSpec& f, const mpq_class& q) {
    std::vector<mpq_class> c(f.degree(), 0);
    c[0] = q;
    return Scalar(f, std::move(c));
}

Scalar Scalar::root_power(const FieldSpec& f, long k) {
    if (f.kind != FieldKind::Cyclotomic)
        throw FieldMismatch("z is not an element of the rational field");
    int n = f.order;
    long e = ((k % n) + n) % n;
    // x^e reduced mod Phi_n by repeated leading-term elimination.
    const auto& phi = cyclotomic_polynomial(n);
    int d = f.degree();
    std::vector<mpq_class> c(e + 1, 0);
    c[e] = 1;
    for (int i = (int)c.size() - 1; i >= d; --i) {
        mpq_class lead = c[i];
        if (lead == 0) continue;
        c[i] = 0;
        for (int j = 0; j < d; ++j) c[i - d + j] -= lead * mpq_class(phi[j]);
    }
    c.resize(d);
    return Scalar(f, std::move(c));
}

bool Scalar::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool Scalar::is_one() const {
    if (coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool Scalar::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

mpq_class Scalar::rational_value() const {
    if (!is_rational()) throw std::logic_error("scalar is not rational");
    return coeffs_[0];
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_)
        throw FieldMismatch("scalar fields differ: " + field_.describe() + " vs " + o.field_.describe());
}

Scalar Scalar::operator-() const {
    std::vector<mpq_class> c(coeffs_);
    for (auto& x : c) x = -x;
    return Scalar(field_, std::move(c));
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    std::vector<mpq_class> c(coeffs_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
    return Scalar(field_, std::move(c));
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    std::vector<mpq_class> c(coeffs_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
    return Scalar(field_, std::move(c));
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    int d = field_.degree();
    if (d == 1) return Scalar(field_, {coeffs_[0] * o.coeffs_[0]});
    std::vector<mpq_class> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; j < d; ++j)
            if (o.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    const auto& phi = cyclotomic_polynomial(field_.order);
    for (int i = (int)prod.size() - 1; i >= d; --i) {
        mpq_class lead = prod[i];
        if (lead == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < d; ++j) prod[i - d + j] -= lead * mpq_class(phi[j]);
    }
    prod.resize(d);
    return Scalar(field_, std::move(prod));
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero("division by zero scalar");
    int d = field_.degree();
    if (d == 1) return Scalar(field_, {mpq_class(1) / coeffs_[0]});
    // Extended Euclid in Q[x] between this (as poly a) and Phi_n: a*s + Phi*t = gcd.
    using Poly = std::vector<mpq_class>;
    auto deg = [](const Poly& p) {
        for (int i = (int)p.size() - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    auto trim = [&](Poly& p) { p.resize(std::max(deg(p) + 1, 1)); };
    Poly r0(cyclotomic_polynomial(field_.order).size());
    const auto& phi = cyclotomic_polynomial(field_.order);
    for (size_t i = 0; i < phi.size(); ++i) r0[i] = mpq_class(phi[i]);
    Poly r1 = coeffs_;
    trim(r1);
    Poly s0{0}, s1{1};  // coefficients of the second argument (a) in each remainder
    while (deg(r1) > 0) {
        // divide r0 by r1
        Poly q(std::max(deg(r0) - deg(r1) + 1, 1), 0);
        Poly rem = r0;
        int d1 = deg(r1);
        for (int i = deg(rem); i >= d1; --i) {
            if (rem[i] == 0) continue;
            mpq_class c = rem[i] / r1[d1];
            q[i - d1] = c;
            for (int j = 0; j <= d1; ++j) rem[i - d1 + j] -= c * r1[j];
        }
        trim(rem);
        // s_{k+1} = s_{k-1} - q * s_k
        Poly s2(std::max(s0.size(), q.size() + s1.size()), 0);
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        trim(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (deg(r1) != 0 || r1[0] == 0)
        throw DivisionByZero("element not invertible mod Phi_n (should not happen in a field)");
    mpq_class unit = r1[0];
    std::vector<mpq_class> res(d, 0);
    for (size_t i = 0; i < s1.size() && i < (size_t)d; ++i) res[i] = s1[i] / unit;
    return Scalar(field_, std::move(res));
}

bool Scalar::operator==(const Scalar& o) const {
    return field_ == o.field_ && coeffs_ == o.coeffs_;
}

bool Scalar::operator<(const Scalar& o) const {
    if (field_.kind != o.field_.kind) return field_.kind < o.field_.kind;
    if (field_.order != o.field_.order) return field_.order < o.field_.order;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        int c = cmp(coeffs_[i], o.coeffs_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string Scalar::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        const mpq_class& c = coeffs_[k];
        if (c == 0) continue;
        mpq_class a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        std::string mag = a.get_str();
        if (k == 0) {
            out << mag;
        } else if (a == 1) {
            out << "z^" << k;
        } else {
            out << mag << "*z^" << k;
        }
    }
    if (first) return "0";
    return out.str();
}

Scalar scalar_parse(const std::string& text, const FieldSpec& field) {
    size_t i = 0;
    const size_t n = text.size();
    auto skip_ws = [&] {
        while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    // Accepts '-' and the UTF-8 encoding of U+2212; returns +1/-1/0 (0 = no sign).
    auto read_sign = [&]() -> int {
        skip_ws();
        if (i < n && text[i] == '+') {
            ++i;
            return 1;
        }
        if (i < n && text[i] == '-') {
            ++i;
            return -1;
        }
        if (i + 2 < n && (unsigned char)text[i] == 0xE2 && (unsigned char)text[i + 1] == 0x88 &&
            (unsigned char)text[i + 2] == 0x92) {
            i += 3;
            return -1;
        }
        return 0;
    };
    auto read_uint = [&]() -> mpz_class {
        skip_ws();
        size_t start = i;
        while (i < n && isdigit((unsigned char)text[i])) ++i;
        if (i == start) throw ParseError("expected integer", start);
        return mpz_class(text.substr(start, i - start));
    };

    Scalar acc = Scalar::zero(field);
    bool any_term = false;
    while (true) {
        skip_ws();
        if (i >= n) break;
        int sign = read_sign();
        skip_ws();
        if (i >= n) throw ParseError("dangling sign", i);
        if (any_term && sign == 0) throw ParseError("expected '+' or '-' between terms", i);
        mpq_class coeff(1);
        bool have_coeff = false;
        if (isdigit((unsigned char)text[i])) {
            mpz_class num = read_uint();
            mpz_class den(1);
            skip_ws();
            if (i < n && text[i] == '/') {
                ++i;
                den = read_uint();
                if (den == 0) throw ParseError("zero denominator", i);
            }
            coeff = mpq_class(num, den);
            coeff.canonicalize();
            have_coeff = true;
        }
        bool have_z = false;
        long power = 0;
        skip_ws();
        if (have_coeff && i < n && text[i] == '*') {
            ++i;
            skip_ws();
            if (i >= n || text[i] != 'z') throw ParseError("expected z after '*'", i);
        }
        if (i < n && text[i] == 'z') {
            ++i;
            have_z = true;
            power = 1;
            skip_ws();
            if (i < n && text[i] == '^') {
                ++i;
                power = (long)read_uint().get_si();
            }
        }
        if (!have_coeff && !have_z) throw ParseError("expected term", i);
        if (have_z && field.kind != FieldKind::Cyclotomic)
            throw ParseError("root of unity 'z' is not valid over the rational field", i);
        if (sign < 0) coeff = -coeff;
        Scalar term = have_z ? Scalar::root_power(field, power) * Scalar::from_rational(field, coeff)
                             : Scalar::from_rational(field, coeff);
        acc = acc + term;
        any_term = true;
    }
    if (!any_term) throw ParseError("empty scalar", 0);
    return acc;
}

}  // namespace twistlab
