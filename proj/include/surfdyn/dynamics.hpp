#pragma once

#include "surfdyn/intmat2.hpp"
#include "surfdyn/mobius.hpp"
#include "surfdyn/quadnumber.hpp"

#include <string>

namespace surfdyn {

// Monomial endomorphism f(x,y) = (x^a y^b phi, x^c y^d psi) in a chart at a
// satellite point.  The unit factors phi, psi are carried as an opaque
// pseudomonomial tag only: values of monomial valuations depend on the
// exponent matrix alone.
struct MonomialEndo {
    IntMat2 A;
    bool pseudomonomial = false;
    bool tame = true;

    // Validates: entries nonnegative, det != 0.
    static MonomialEndo from_matrix(const IntMat2& A, bool tame = true,
                                    bool pseudomonomial = false);

    BigInt lambda2() const;      // |det A|
    QuadNumber lambda1() const;  // spectral radius of A
    MonomialEndo iterate(int n) const;
};

// Weight pair of the monomial valuation v_{s,t} (v(x) = s, v(y) = t).
struct Weights {
    QuadNumber s, t;
    bool operator==(const Weights& o) const { return s == o.s && t == o.t; }
};

// f_* v_{s,t} = v_{a s + b t, c s + t d}.
Weights pushforward(const MonomialEndo& f, const Weights& v);

enum class EigenType { Divisorial, Irrational };

std::string to_string(EigenType t);

struct EigenData {
    QuadNumber lambda1;
    BigInt lambda2;
    Weights eigen;     // Perron weights, normalized t = 1 (s = 1 when t = 0)
    bool gap = false;  // lambda1^2 > lambda2, exact
    EigenType type = EigenType::Divisorial;
};

// Perron eigen-data of a monomial endomorphism; asserts the eigen equation
// f_* v_* = lambda1 v_* symbolically.
EigenData eigenvaluation(const MonomialEndo& f);

// Alternative normalization for segment embedding: scale so that
// s b(E) + t b(F) = 1.
Weights normalize_for_segment(const Weights& w, const BigInt& bE,
                              const BigInt& bF);

struct SkewnessAnalysis {
    IntMat2 M;  // matrix of M_f composed with M_pi^{-1}
    MobiusClassification cls;        // must be loxodromic
    bool fixed_at_infinity = false;  // attracting fixed point at infinity
    QuadNumber fixed_attracting;     // skewness coordinate t_* of v_*
    QuadNumber multiplier;           // attracting multiplier, |.| < 1
    QuadNumber bound_squared;        // lambda2 / lambda1^2
};

// Moebius analysis of f on the skewness coordinate: M = M_f o M_pi^{-1} with
// M_f = [[d, c], [b, a]].  Requires the gap lambda1^2 > lambda2; asserts
// multiplier^2 <= lambda2 / lambda1^2 exactly.
SkewnessAnalysis skewness_mobius(const MonomialEndo& f, const IntMat2& pi);

// The skewness chart matrix of the blow-up sequence in the divisorial case
// (n0 blow-ups before the eigen-divisor appears).
IntMat2 divisorial_pi(const BigInt& n0);

enum class NormalForm {
    Monomial,
    Pseudomonomial,
    InfinitelySingularType,
    DivisorialType,
    Elliptic
};

std::string to_string(NormalForm n);

// Normal-form classification: irrational + tame -> monomial, irrational +
// wild -> pseudomonomial, divisorial -> divisorial-type (asserts
// lambda1 <= lambda2); elliptic boundary is a pass-through tag.
NormalForm classify_normal_form(const EigenData& e, bool tame,
                                bool elliptic_boundary = false);

// Recorded non-monomial endomorphisms whose eigen-data is known:
//   "S2-f": (u,v) -> (uv, 2v^2-1) on S(2); lambda1 = lambda2 = 2,
//           eigenvaluation divisorial (ord of the first exceptional divisor).
//   "S2-g": (u,v) -> (uv, u^2v^2+2v^2-1) on S(2); lambda1 = 3, lambda2 = 2,
//           eigenvaluation infinitely singular.
struct FixtureEndo {
    std::string name;
    QuadNumber lambda1;
    BigInt lambda2;
    std::string eigen_kind;  // "divisorial" | "inf-singular"
};

FixtureEndo fixture_endo(const std::string& name);

// Classification of a fixture: inf-singular eigenvaluations require
// lambda1 an integer >= 2; divisorial ones require lambda1 <= lambda2.
NormalForm classify_fixture(const FixtureEndo& f);

// Endomorphism JSON: {"kind":"monomial","matrix":[[a,b],[c,d]],"tame":true}
// or {"kind":"fixture","name":"S2-g"}.
struct EndoSpec {
    bool is_fixture = false;
    MonomialEndo mono;
    FixtureEndo fix;
};

EndoSpec endo_from_json(const std::string& text);
std::string endo_to_json(const EndoSpec& e);

}  // namespace surfdyn
