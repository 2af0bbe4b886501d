#pragma once

#include "surfdyn/boundary.hpp"
#include "surfdyn/infnear.hpp"
#include "surfdyn/quadnumber.hpp"

#include <map>
#include <string>
#include <vector>

namespace surfdyn {

// Divisor with quadratic-number coefficients (local dual divisors of
// irrational valuations are not rational).
class QDivisor {
  public:
    QDivisor() = default;

    const std::map<std::string, QuadNumber>& coeffs() const { return coeff_; }
    QuadNumber coeff(const std::string& name) const;
    void set(const std::string& name, QuadNumber v);

    bool rational() const;

    QDivisor operator+(const QDivisor& o) const;
    QDivisor operator*(const QuadNumber& s) const;
    bool operator==(const QDivisor& o) const { return coeff_ == o.coeff_; }

    static QDivisor from_rational(const DivisorAtInfinity& d);
    std::string str() const;

  private:
    std::map<std::string, QuadNumber> coeff_;
};

// Valuation centered above a fixed boundary point, anchored in a BlowupTree.
struct Valuation {
    enum class Kind { Divisorial, Monomial, CurveEnd, InfSingular };

    Kind kind = Kind::Divisorial;
    int node = -1;          // Divisorial / CurveEnd anchor node
    Rational scale{1};      // Divisorial: v = scale * ord_E
    int e = -1, f = -1;     // Monomial: adjacent pair, e < f in tree order
    QuadNumber s, t;        // Monomial weights (weight s on e)
    std::string follows;    // CurveEnd: divisor germ the end follows, if any
    std::vector<int> approx;  // InfSingular: approximating divisorial nodes

    // v = ord_E / b(E), the maximal-ideal normalization.
    static Valuation divisorial(const BlowupTree& tree, int node);
    static Valuation ord(int node);  // scale 1
    // Monomial at the satellite point of adjacent e, f; requires
    // s b(E) + t b(F) = 1 with s, t >= 0 not both zero.
    static Valuation monomial(const BlowupTree& tree, int e, int f, QuadNumber s,
                              QuadNumber t);
    static Valuation curve_end(int node, std::string follows = "");
    static Valuation inf_singular(std::vector<int> approx);

    // True for divisorial valuations and monomial ones with rational slope.
    bool divisorial_type() const;
    // Skewness (maximal-ideal normalized valuations only).
    QuadNumber alpha(const BlowupTree& tree) const;
    // Position in the tree (node or monomial segment point).
    BlowupTree::Point point(const BlowupTree& tree) const;
};

// Value of the monomial valuation v(x) = s, v(y) = t on a finite Laurent
// support: min { s i + t j : (i, j) in support }.  Negative weights encode
// the signed convention ord_{L_inf}(P) = -deg(P).
QuadNumber eval_monomial(const QuadNumber& s, const QuadNumber& t,
                         const std::vector<std::pair<long long, long long>>& support);

struct LValue {
    bool infinite = false;  // +infinity sentinel (curve ends)
    QuadNumber value;
    bool operator==(const LValue& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

// The linear form L_v on divisors at infinity: divisorial valuations read off
// the coefficient, monomial valuations take s.coeff(E) + t.coeff(F).
LValue L_v(const BlowupTree& tree, const Valuation& v, const DivisorAtInfinity& d);

// The exceptional configuration of a maximal-ideal-mode blow-up tree as a
// completion fragment (divisor names = tree node names).
Completion local_completion(const BlowupTree& tree);

// Local dual divisor Z_{v,X,p}: the incarnation over the tree's completion.
// Computed by the blow-up recursion (base case Z_{ord_E0} = -E0).
QDivisor local_dual(const BlowupTree& tree, const Valuation& v);
// Independent route: exact linear solve of Z . F = delta_EF.
QDivisor local_dual_by_solve(const BlowupTree& tree, const Valuation& v);

// Intersection pairing of QDivisors over the exceptional configuration.
QuadNumber qintersect(const Completion& x, const QDivisor& a, const QDivisor& b);

// Z_v . Z_v' = -alpha(v /\ v'), computed along two independent routes (tree
// wedge vs divisor intersection in a sufficiently deep completion) and
// cross-checked.  Curve ends are rejected (alpha infinite).
QuadNumber pair_local_duals(const BlowupTree& tree, const Valuation& v1,
                            const Valuation& v2);

// Deepen `tree` by satellite blow-ups until the monomial valuation's rational
// slope is realized by a divisorial node; returns that node.
int realize_divisorial(BlowupTree& tree, const Valuation& v);

// JSON serialization per the external interface.
std::string valuation_to_json(const BlowupTree& tree, const Valuation& v);
Valuation valuation_from_json(const BlowupTree& tree, const std::string& text);

// QuadNumber as {"p": "...", "q": "...", "d": "..."}.
std::string quad_to_json(const QuadNumber& x);
QuadNumber quad_from_json(const std::string& text);

}  // namespace surfdyn
