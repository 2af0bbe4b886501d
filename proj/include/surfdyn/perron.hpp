#pragma once

#include "surfdyn/intmat2.hpp"
#include "surfdyn/quadnumber.hpp"

#include <optional>
#include <string>

namespace surfdyn {

// A real algebraic integer of degree <= 2, >= 1: either a rational integer
// n >= 1, or the largest real root of a monic quadratic T^2 - a T + b
// (covers sqrt(m) as T^2 - m).
class QuadraticInteger {
  public:
    static QuadraticInteger integer(BigInt n);
    static QuadraticInteger sqrt(BigInt m);
    // Largest real root of T^2 - a T + b; requires a real root >= 1.
    static QuadraticInteger quadratic(BigInt a, BigInt b);
    // From an explicit quadratic-field value; must be an algebraic integer.
    static QuadraticInteger from_value(const QuadNumber& x);

    const QuadNumber& value() const { return value_; }
    QuadNumber conjugate() const;
    // Minimal-polynomial coefficients: value satisfies T^2 - a T + b
    // (for rational integers n: (a, b) = (n + 0, ...) degenerate, degree 1).
    int degree() const { return degree_; }
    const BigInt& trace_coeff() const { return a_; }
    const BigInt& norm_coeff() const { return b_; }

    std::string str() const { return value_.str(); }

  private:
    QuadraticInteger(QuadNumber v, int deg, BigInt a, BigInt b)
        : value_(std::move(v)), degree_(deg), a_(std::move(a)), b_(std::move(b)) {}

    QuadNumber value_;
    int degree_;
    BigInt a_, b_;  // minimal polynomial T^2 - a T + b when degree 2
};

struct PerronVerdict {
    bool weak_perron;    // |conjugate| <= value
    bool strict_perron;  // |conjugate| < value (classical Perron)
    std::optional<QuadNumber> violating_conjugate;
};

PerronVerdict is_weak_perron(const QuadraticInteger& q);

// Alias documenting the dynamical-spectrum membership Lambda(A^2) =
// Lambda(G_m^2) = weak Perron numbers of degree <= 2.
inline bool spectrum_membership(const QuadraticInteger& q) {
    return is_weak_perron(q).weak_perron;
}

// Nonnegative integer matrix whose spectral radius is exactly q.
IntMat2 realize_as_matrix(const QuadraticInteger& q);

}  // namespace surfdyn
