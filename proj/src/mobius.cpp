#include "surfdyn/mobius.hpp"

namespace surfdyn {

QuadNumber spectral_radius(const IntMat2& A) {
    if (A.det() == 0) throw Error("spectral_radius: singular matrix " + A.str());
    BigInt tr = A.trace();
    BigInt disc = tr * tr - 4 * A.det();
    if (disc < 0) {
        // Complex pair of modulus sqrt(det); cannot occur for nonnegative A.
        return QuadNumber::sqrt_of(A.det());
    }
    QuadNumber root = QuadNumber(Rational(tr, 2)) +
                      QuadNumber(Rational(0), Rational(1, 2), disc);
    QuadNumber other = QuadNumber(Rational(tr, 2)) -
                       QuadNumber(Rational(0), Rational(1, 2), disc);
    return root.abs() >= other.abs() ? root : other;
}

std::string to_string(MobiusType t) {
    switch (t) {
        case MobiusType::Elliptic: return "elliptic";
        case MobiusType::Parabolic: return "parabolic";
        case MobiusType::Loxodromic: return "loxodromic";
    }
    return "?";
}

MobiusMap::MobiusMap(IntMat2 m) : m_(std::move(m)) {
    if (m_.det() == 0) throw Error("MobiusMap: singular matrix " + m_.str());
}

ExtRat MobiusMap::apply(const ExtRat& t) const {
    const auto& [a, b, c, d] = m_;
    if (t.infinite) {
        if (c == 0) return ExtRat::inf();
        return ExtRat(make_rational(a, c));
    }
    Rational num = Rational(a) * t.value + Rational(b);
    Rational den = Rational(c) * t.value + Rational(d);
    if (den == 0) return ExtRat::inf();
    return ExtRat(num / den);
}

QuadNumber MobiusMap::apply(const QuadNumber& t) const {
    const auto& [a, b, c, d] = m_;
    QuadNumber num = QuadNumber(Rational(a)) * t + QuadNumber(Rational(b));
    QuadNumber den = QuadNumber(Rational(c)) * t + QuadNumber(Rational(d));
    if (den.is_zero()) throw Error("MobiusMap: pole at irrational point");
    return num / den;
}

MobiusClassification MobiusMap::classify() const {
    const auto& [a, b, c, d] = m_;
    BigInt det = m_.det();
    BigInt tr = m_.trace();
    BigInt disc = tr * tr - 4 * det;

    MobiusClassification out;
    if (disc < 0) {
        out.type = MobiusType::Elliptic;
        return out;
    }
    out.type = (disc == 0) ? MobiusType::Parabolic : MobiusType::Loxodromic;

    QuadNumber one(Rational(1));
    auto multiplier_at = [&](const QuadNumber& t) {
        QuadNumber den = QuadNumber(Rational(c)) * t + QuadNumber(Rational(d));
        return QuadNumber(Rational(det)) / (den * den);
    };

    if (c == 0) {
        // infinity is always fixed; multiplier d/a in the 1/t chart.
        QuadNumber mult_inf = QuadNumber(Rational(d)) / QuadNumber(Rational(a));
        if (a == d) {
            out.num_fixed = 1;
            out.infinite_fixed[0] = true;
            out.multiplier[0] = mult_inf;
            return out;
        }
        QuadNumber finite(make_rational(b, d - a));
        QuadNumber mult_fin = QuadNumber(Rational(a)) / QuadNumber(Rational(d));
        out.num_fixed = 2;
        if (mult_inf.abs() <= one) {
            out.infinite_fixed[0] = true;
            out.multiplier[0] = mult_inf;
            out.fixed[1] = finite;
            out.multiplier[1] = mult_fin;
        } else {
            out.fixed[0] = finite;
            out.multiplier[0] = mult_fin;
            out.infinite_fixed[1] = true;
            out.multiplier[1] = mult_inf;
        }
        return out;
    }

    // Fixed points solve c t^2 + (d - a) t - b = 0.
    QuadNumber half_sum(make_rational(a - d, 2 * c));
    QuadNumber half_diff = QuadNumber(Rational(0), make_rational(1, 2 * c), disc);
    QuadNumber t1 = half_sum + half_diff;
    QuadNumber t2 = half_sum - half_diff;
    if (disc == 0) {
        out.num_fixed = 1;
        out.fixed[0] = t1;
        out.multiplier[0] = multiplier_at(t1);
        return out;
    }
    QuadNumber m1 = multiplier_at(t1);
    QuadNumber m2 = multiplier_at(t2);
    out.num_fixed = 2;
    if (m1.abs() <= one) {
        out.fixed[0] = t1;
        out.multiplier[0] = m1;
        out.fixed[1] = t2;
        out.multiplier[1] = m2;
    } else {
        out.fixed[0] = t2;
        out.multiplier[0] = m2;
        out.fixed[1] = t1;
        out.multiplier[1] = m1;
    }
    return out;
}

}  // namespace surfdyn
