#pragma once

#include "surfdyn/intmat2.hpp"
#include "surfdyn/rational.hpp"

#include <string>

namespace surfdyn {

enum class MobiusType { Elliptic, Parabolic, Loxodromic };

std::string to_string(MobiusType t);

struct MobiusClassification {
    MobiusType type;
    // Present for parabolic (one) and loxodromic (two) maps.  For loxodromic
    // maps fixed[0] is attracting and fixed[1] repelling; infinite_fixed[i]
    // marks a fixed point at infinity (then fixed[i] is unused).
    int num_fixed = 0;
    bool infinite_fixed[2] = {false, false};
    QuadNumber fixed[2];
    // Derivative of the map at each fixed point (multiplier); at an infinite
    // fixed point this is the derivative in the 1/t chart.
    QuadNumber multiplier[2];
};

// Integer Moebius map t -> (a t + b)/(c t + d), acting on Q u {oo},
// considered up to sign of the matrix (PGL_2 semantics).
class MobiusMap {
  public:
    MobiusMap() = default;
    explicit MobiusMap(IntMat2 m);

    const IntMat2& matrix() const { return m_; }

    ExtRat apply(const ExtRat& t) const;
    QuadNumber apply(const QuadNumber& t) const;

    MobiusMap compose(const MobiusMap& o) const { return MobiusMap(m_ * o.m_); }
    MobiusMap inverse() const { return MobiusMap(m_.adjugate()); }

    MobiusClassification classify() const;

    std::string str() const { return m_.str(); }

  private:
    IntMat2 m_;
};

}  // namespace surfdyn
