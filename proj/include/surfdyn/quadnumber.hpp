#pragma once

#include "surfdyn/rational.hpp"

#include <optional>
#include <string>

namespace surfdyn {

struct FieldMismatch : Error {
    using Error::Error;
};

// Exact element p + q*sqrt(d) of a real quadratic field.  d is square-free
// and nonnegative; d == 0 encodes a plain rational (then q == 0).  Arithmetic
// is closed within one fixed d; mixing two genuinely irrational fields throws
// FieldMismatch.
class QuadNumber {
  public:
    QuadNumber() = default;
    QuadNumber(Rational p) : p_(std::move(p)) {}
    QuadNumber(long long p) : p_(p) {}
    QuadNumber(Rational p, Rational q, BigInt d);

    // sqrt(n) for n >= 0, reduced to square-free form.
    static QuadNumber sqrt_of(const BigInt& n);
    static QuadNumber sqrt_of(const Rational& r);

    const Rational& p() const { return p_; }
    const Rational& q() const { return q_; }
    const BigInt& d() const { return d_; }

    bool is_rational() const { return d_ == 0; }
    Rational as_rational() const;
    bool is_integer() const;

    QuadNumber conjugate() const { return QuadNumber(p_, -q_, d_, nullptr); }

    int sign() const;
    bool is_zero() const { return p_ == 0 && q_ == 0; }

    QuadNumber operator-() const { return QuadNumber(-p_, -q_, d_, nullptr); }
    QuadNumber operator+(const QuadNumber& o) const;
    QuadNumber operator-(const QuadNumber& o) const;
    QuadNumber operator*(const QuadNumber& o) const;
    QuadNumber operator/(const QuadNumber& o) const;
    QuadNumber abs() const { return sign() >= 0 ? *this : -*this; }

    bool operator==(const QuadNumber& o) const;
    bool operator!=(const QuadNumber& o) const { return !(*this == o); }
    bool operator<(const QuadNumber& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QuadNumber& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const QuadNumber& o) const { return o < *this; }
    bool operator>=(const QuadNumber& o) const { return o <= *this; }

    double to_double() const;
    std::string str() const;

  private:
    // Unchecked constructor for internal use; tag disambiguates.
    QuadNumber(Rational p, Rational q, BigInt d, void*)
        : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {}

    // Common field of two operands, or throw.
    static BigInt merge_field(const QuadNumber& a, const QuadNumber& b);

    Rational p_{};
    Rational q_{};
    BigInt d_{};
};

inline std::string to_string(const QuadNumber& x) { return x.str(); }

// Square-free factorization n = s^2 * f; returns {s, f}.  n >= 0.
std::pair<BigInt, BigInt> square_free_part(BigInt n);

}  // namespace surfdyn
