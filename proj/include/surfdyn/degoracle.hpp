#pragma once

#include "surfdyn/intmat2.hpp"
#include "surfdyn/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace surfdyn {

// Sparse bivariate polynomial over Q: exponent pair -> nonzero coefficient.
struct Poly {
    std::map<std::pair<long long, long long>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    // Total degree; -1 for the zero polynomial.
    long long degree() const;
    std::string str() const;  // human form in variables x, y
};

struct TermCapExceeded : Error {
    using Error::Error;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b, size_t term_cap);
Poly poly_pow(const Poly& a, long long e, size_t term_cap);
// p(X, Y): substitute polynomials for the two variables.
Poly poly_subst(const Poly& p, const Poly& X, const Poly& Y, size_t term_cap);

// Polynomial endomorphism of the affine plane.  Dominance is assumed, not
// verified; the components must not be identically zero.
struct PolyMap {
    Poly first, second;

    std::string str() const;
};

// f after g.
PolyMap compose(const PolyMap& f, const PolyMap& g, size_t term_cap);

// Literal syntax: two comma-separated polynomial expressions, e.g.
// "x^2, y^3" or "u*v, 2*v^2-1".  Variables x/u name the first coordinate and
// y/v the second; coefficients may be rational ("3/2").
PolyMap parse_poly_map(const std::string& literal);

inline constexpr size_t kDefaultTermCap = 1000000;

struct DegreeSequence {
    std::vector<long long> degrees;  // deg(f^1), ..., deg(f^k)
    bool truncated = false;          // term cap hit; `degrees` is a prefix
};

// Exact total degrees of the symbolic iterates f, f^2, ..., f^n (n <= 12).
// On term-cap overflow returns the degrees computed so far with the
// truncated flag set.
DegreeSequence iterate_degrees(const PolyMap& f, int n,
                               size_t term_cap = kDefaultTermCap);

// Heuristic lambda_1 estimators from a degree sequence; no exactness claim.
struct Lambda1Estimate {
    Rational last_ratio;          // deg(f^{k+1}) / deg(f^k), final pair
    double root_estimate = 0.0;   // deg(f^k)^{1/k}, final term
    std::vector<Rational> ratios;
    bool ratios_nonincreasing = false;
    bool ratios_nondecreasing = false;
    std::string trend;  // "geometric" | "increasing" | "decreasing" | "mixed"
};

Lambda1Estimate lambda1_estimate(const std::vector<long long>& degrees);

// deg(f^k) for the monomial map with exponent matrix A is the maximum row
// sum of A^k; returns k = 1..n.
std::vector<BigInt> monomial_degree_oracle(const IntMat2& A, int n);

// CSV rendering: header "n,degree", one row per iterate, and a final
// "# truncated" comment row when the cap was hit.
std::string degrees_csv(const DegreeSequence& seq);

}  // namespace surfdyn
