#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace twistlab {

// Errors shared across the library.
struct FieldMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

enum class FieldKind { Rational, Cyclotomic };

// The base field: either Q or the cyclotomic field Q(zeta_n) = Q[x]/(Phi_n),
// n >= 2. Phi_n (not x^n - 1) so that every nonzero element is invertible.
struct FieldSpec {
    FieldKind kind = FieldKind::Rational;
    int order = 1;  // n for cyclotomic; 1 for rational

    static FieldSpec rational() { return FieldSpec{FieldKind::Rational, 1}; }
    static FieldSpec cyclotomic(int n);

    int degree() const;  // phi(n) for cyclotomic, 1 for rational
    bool operator==(const FieldSpec& o) const { return kind == o.kind && order == o.order; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }
    std::string describe() const;
};

// Monic integer coefficients of Phi_n, ascending, length phi(n)+1. Cached.
const std::vector<mpz_class>& cyclotomic_polynomial(int n);

// An element of the base field: coefficients in the power basis 1, z, z^2, ...
// of Q[x]/(Phi_n). Length always equals field.degree(); rationals are length 1.
class Scalar {
public:
    Scalar() : field_(FieldSpec::rational()), coeffs_(1, 0) {}
    Scalar(const FieldSpec& f, std::vector<mpq_class> coeffs);

    static Scalar zero(const FieldSpec& f) { return Scalar(f, {}); }
    static Scalar one(const FieldSpec& f);
    static Scalar from_rational(const FieldSpec& f, const mpq_class& q);
    static Scalar from_int(const FieldSpec& f, long v) { return from_rational(f, mpq_class(v)); }
    // z^k reduced mod Phi_n; rejects rational fields.
    static Scalar root_power(const FieldSpec& f, long k);

    const FieldSpec& field() const { return field_; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    // True when the element lies in Q; rational_value() then returns it.
    bool is_rational() const;
    mpq_class rational_value() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar inv() const;  // throws DivisionByZero on 0
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;  // arbitrary total order for map keys

    std::string str() const;  // canonical grammar text

private:
    void check_same_field(const Scalar& o) const;
    FieldSpec field_;
    std::vector<mpq_class> coeffs_;
};

// Parses the canonical grammar: signed sums of INT, INT/INT, z^K, INT*z^K,
// INT/INT*z^K; whitespace-insensitive. Accepts ASCII '-' and U+2212.
Scalar scalar_parse(const std::string& text, const FieldSpec& field);

}  // namespace twistlab
