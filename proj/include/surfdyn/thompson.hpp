#pragma once

#include "surfdyn/mobius.hpp"
#include "surfdyn/rational.hpp"

#include <string>
#include <vector>

namespace surfdyn {

// The circle at infinity, S^1 = [-inf, +inf] / (-inf = +inf), with a cyclic
// list of marked points.  Consecutive marks p/q, r/s (reading counterclockwise,
// i.e. in increasing order with inf glued at both ends) satisfy the Farey
// interval condition q r - p s = 1, where inf counts as -1/0 as a left
// endpoint and +1/0 as a right endpoint.
struct FareyCircle {
    std::vector<ExtRat> marks;  // cyclic, strictly increasing with inf last

    void validate() const;
};

// True iff [a, b] is a Farey interval (the two endpoints, reduced, have
// determinant 1 with the +-1/0 convention for inf).
bool farey_interval(const ExtRat& a, const ExtRat& b);

// Cyclic order predicate on the circle: b lies strictly between a and c when
// walking counterclockwise (increasing t) from a to c.
bool circle_between(const ExtRat& a, const ExtRat& b, const ExtRat& c);

// One piece of a Thompson element: the source interval [lo, hi] (walking
// counterclockwise from lo to hi) mapped by the integral Moebius map m.
struct ThompsonPiece {
    ExtRat lo, hi;
    MobiusMap map;
};

// Piecewise-PGL_2(Z) circle homeomorphism on a Farey subdivision.  Pieces are
// kept in cyclic order, with piece i+1 starting where piece i ends; every
// source (and target) interval is a Farey interval, and the pieces agree at
// shared endpoints, so the global map is a homeomorphism.
class ThompsonElement {
  public:
    // Builds and validates.  Throws Error on any invariant violation:
    // non-matching endpoints, non-Farey source or target intervals,
    // discontinuity at a breakpoint, mixed orientations, or a non-injective
    // breakpoint image.
    static ThompsonElement from_pieces(std::vector<ThompsonPiece> pieces);
    // The identity subdivided along the marks of the circle.
    static ThompsonElement identity(const FareyCircle& circle);

    const std::vector<ThompsonPiece>& pieces() const { return pieces_; }
    bool orientation_reversing() const { return reversing_; }

    ExtRat apply(const ExtRat& t) const;
    // Applies the piece containing t; t must not be a breakpoint unless it is
    // rational (quadratic irrationals lie in the interior of some piece).
    QuadNumber apply(const QuadNumber& t) const;
    ExtRat preimage(const ExtRat& t) const;

    ThompsonElement inverse() const;
    bool is_identity() const;  // every piece is +-Id
    bool operator==(const ThompsonElement& o) const;

    // Target interval of piece i, as [lo, hi] counterclockwise.
    ThompsonPiece target(int i) const;

    std::string str() const;
    std::string to_json() const;

  private:
    std::vector<ThompsonPiece> pieces_;
    bool reversing_ = false;

    int piece_at(const ExtRat& t) const;
    int piece_containing(const QuadNumber& t) const;
};

// g after h.  Common refinement of h's sources with the h-preimages of g's
// breakpoints; matrices multiplied piecewise; adjacent pieces with equal
// projective matrices are merged back.
ThompsonElement compose(const ThompsonElement& g, const ThompsonElement& h);

// The Markov-surface circle: marks {0, -1, inf} and the three involutions.
struct MarkovCircle {
    FareyCircle circle;
    ThompsonElement sx, sy, sz;
};

MarkovCircle markov_circle();

// Word over {x, y, z}, e.g. "xyz" = sx o sy o sz (leftmost applied last).
ThompsonElement markov_word(const std::string& word);

// Loxodromic fixed-point data of a Thompson element: the circle positions of
// the eigenvaluations v_+ (attracting, omega(g)) and v_- (repelling,
// alpha(g)), with the exact derivative of g at each.
struct LoxodromicFixedPoints {
    bool attracting_at_infinity = false;
    bool repelling_at_infinity = false;
    QuadNumber attracting;  // omega(g), unused when at infinity
    QuadNumber repelling;   // alpha(g)
    QuadNumber attracting_multiplier;  // |.| < 1
    QuadNumber repelling_multiplier;   // |.| > 1
};

// Scans the pieces of g, g^2, ..., g^depth for a loxodromic matrix whose
// fixed points lie in the piece's source interval; fixed points found on an
// iterate are checked against g itself and the multipliers are taken from
// g's own piece.  Throws Error when none is found.
LoxodromicFixedPoints loxodromic_analysis(const ThompsonElement& g,
                                          int depth = 3);

// True iff no reduced word (no adjacent equal letters) over {x, y, z} of
// length 1..L equals the identity.  L <= 10.
bool free_product_check(int L);

}  // namespace surfdyn
