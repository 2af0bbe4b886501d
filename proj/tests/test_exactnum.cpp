#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfdyn/intmat2.hpp"
#include "surfdyn/mobius.hpp"
#include "surfdyn/quadnumber.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <random>

using namespace surfdyn;
using Dec100 = boost::multiprecision::cpp_dec_float_100;

namespace {

Dec100 dec(const Rational& r) {
    return Dec100(numerator(r)) / Dec100(denominator(r));
}

Dec100 dec(const QuadNumber& x) {
    Dec100 v = dec(x.p());
    if (x.d() != 0) v += dec(x.q()) * sqrt(Dec100(x.d()));
    return v;
}

std::mt19937_64 rng(20240817);

Rational rand_rational(int mag = 50) {
    std::uniform_int_distribution<int> num(-mag, mag);
    std::uniform_int_distribution<int> den(1, mag);
    return Rational(num(rng), den(rng));
}

QuadNumber rand_quad(const BigInt& d, int mag = 50) {
    return QuadNumber(rand_rational(mag), rand_rational(mag), d);
}

IntMat2 rand_gl2z() {
    // Random product of elementary shears and the swap: lands in GL2(Z).
    IntMat2 m;
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> shear(-3, 3);
    for (int i = 0; i < 6; ++i) {
        switch (coin(rng)) {
            case 0: m = m * IntMat2(1, shear(rng), 0, 1); break;
            case 1: m = m * IntMat2(1, 0, shear(rng), 1); break;
            default: m = m * IntMat2(0, 1, 1, 0); break;
        }
    }
    return m;
}

IntMat2 rand_invertible(int mag = 9) {
    std::uniform_int_distribution<int> e(-mag, mag);
    while (true) {
        IntMat2 m(e(rng), e(rng), e(rng), e(rng));
        if (m.det() != 0) return m;
    }
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(parse_ext_rat("inf") == ExtRat::inf());
    CHECK(parse_ext_rat("5/3") == ExtRat(Rational(5, 3)));
}

TEST_CASE("square-free reduction") {
    auto [s, f] = square_free_part(BigInt(72));  // 72 = 6^2 * 2
    CHECK(s == 6);
    CHECK(f == 2);
    CHECK(QuadNumber::sqrt_of(BigInt(8)) == QuadNumber(Rational(0), Rational(2), 2));
    CHECK(QuadNumber::sqrt_of(BigInt(9)) == QuadNumber(Rational(3)));
    CHECK(QuadNumber::sqrt_of(BigInt(0)).is_zero());
    CHECK(QuadNumber::sqrt_of(Rational(1, 2)) ==
          QuadNumber(Rational(0), Rational(1, 2), 2));
}

TEST_CASE("quadratic arithmetic basics") {
    QuadNumber phi(Rational(1, 2), Rational(1, 2), 5);  // golden ratio
    CHECK(phi * phi == phi + QuadNumber(Rational(1)));  // phi^2 = phi + 1
    CHECK(phi.conjugate() * phi == QuadNumber(Rational(-1)));
    CHECK((phi / phi) == QuadNumber(Rational(1)));
    CHECK(phi > QuadNumber(Rational(1)));
    CHECK(phi < QuadNumber(Rational(2)));
    QuadNumber r2 = QuadNumber::sqrt_of(BigInt(2));
    CHECK(r2 * r2 == QuadNumber(Rational(2)));
    CHECK_THROWS_AS(phi + r2, FieldMismatch);
    // Product collapsing to the rational subfield resets d.
    CHECK((r2 * r2).is_rational());
}

TEST_CASE("exact comparison agrees with 100-digit evaluation") {
    const BigInt fields[] = {2, 3, 5, 7, 13};
    for (int i = 0; i < 500; ++i) {
        BigInt d = fields[i % 5];
        QuadNumber x = rand_quad(d), y = rand_quad(d);
        Dec100 dx = dec(x), dy = dec(y);
        if (x == y) {
            CHECK(abs(dx - dy) < Dec100("1e-80"));
        } else if (x < y) {
            CHECK(dx < dy + Dec100("1e-80"));
        } else {
            CHECK(dx + Dec100("1e-80") > dy);
        }
        // Arithmetic cross-check at 100 digits.
        CHECK(abs(dec(x * y) - dx * dy) < Dec100("1e-60"));
        CHECK(abs(dec(x + y) - (dx + dy)) < Dec100("1e-60"));
    }
}

TEST_CASE("spectral radius examples") {
    CHECK(spectral_radius(IntMat2(2, 0, 0, 3)) == QuadNumber(Rational(3)));
    CHECK(spectral_radius(IntMat2(1, 1, 1, 0)) ==
          QuadNumber(Rational(1, 2), Rational(1, 2), 5));
    CHECK(spectral_radius(IntMat2(0, 1, 2, 0)) == QuadNumber::sqrt_of(BigInt(2)));
    CHECK_THROWS_AS(spectral_radius(IntMat2(1, 1, 1, 1)), Error);
}

TEST_CASE("spectral radius satisfies the characteristic polynomial") {
    std::uniform_int_distribution<int> e(0, 30);
    for (int i = 0; i < 400; ++i) {
        IntMat2 A(e(rng), e(rng), e(rng), e(rng));
        if (A.det() == 0) continue;
        QuadNumber l = spectral_radius(A);
        QuadNumber chi = l * l - QuadNumber(Rational(A.trace())) * l +
                         QuadNumber(Rational(A.det()));
        CHECK(chi.is_zero());
        // It is the largest root: the other root of the quadratic is
        // trace - l, whose modulus must not exceed |l|.
        QuadNumber other = QuadNumber(Rational(A.trace())) - l;
        CHECK(other.abs() <= l.abs());
    }
}

TEST_CASE("mobius apply examples") {
    MobiusMap id{IntMat2::identity()};
    CHECK(id.apply(ExtRat(Rational(5, 3))) == ExtRat(Rational(5, 3)));
    MobiusMap mx{IntMat2(-1, -2, 0, 1)};
    CHECK(mx.apply(ExtRat(Rational(0))) == ExtRat(Rational(-2)));
    MobiusMap m{IntMat2(3, 2, -2, -1)};
    CHECK(m.apply(ExtRat(Rational(1))) == ExtRat(Rational(-5, 3)));
    // Poles and infinity.
    CHECK(m.apply(ExtRat(Rational(-1, 2))) == ExtRat::inf());
    CHECK(m.apply(ExtRat::inf()) == ExtRat(Rational(-3, 2)));
    MobiusMap upper{IntMat2(2, 1, 0, 1)};
    CHECK(upper.apply(ExtRat::inf()) == ExtRat::inf());
}

TEST_CASE("mobius composition covariance") {
    for (int i = 0; i < 1000; ++i) {
        MobiusMap m1{rand_invertible()}, m2{rand_invertible()};
        ExtRat t(rand_rational());
        CHECK(m1.compose(m2).apply(t) == m1.apply(m2.apply(t)));
    }
}

TEST_CASE("mobius inverse") {
    for (int i = 0; i < 200; ++i) {
        MobiusMap m{rand_invertible()};
        ExtRat t(rand_rational());
        CHECK(m.inverse().apply(m.apply(t)) == t);
    }
}

TEST_CASE("mobius classification examples") {
    CHECK(MobiusMap{IntMat2(1, 1, 0, 1)}.classify().type == MobiusType::Parabolic);

    auto lox = MobiusMap{IntMat2(-5, -2, 2, 1)}.classify();
    CHECK(lox.type == MobiusType::Loxodromic);
    REQUIRE(lox.num_fixed == 2);
    // Fixed points (-3 +- sqrt 5)/2, from 2t^2 + 6t + 2 = 0.
    QuadNumber fp_plus(Rational(-3, 2), Rational(1, 2), 5);
    QuadNumber fp_minus(Rational(-3, 2), Rational(-1, 2), 5);
    CHECK(((lox.fixed[0] == fp_plus && lox.fixed[1] == fp_minus) ||
           (lox.fixed[0] == fp_minus && lox.fixed[1] == fp_plus)));
    // Attracting multiplier strictly inside the unit interval.
    CHECK(lox.multiplier[0].abs() < QuadNumber(Rational(1)));
    CHECK(lox.multiplier[1].abs() > QuadNumber(Rational(1)));
    // Multipliers are inverse to each other.
    CHECK(lox.multiplier[0] * lox.multiplier[1] == QuadNumber(Rational(1)));

    // Upper-triangular [[d,0],[b,l1]] with d < l1: attracting fixed point 0
    // with multiplier d/l1.
    auto div = MobiusMap{IntMat2(2, 0, 7, 5)}.classify();
    CHECK(div.type == MobiusType::Loxodromic);
    CHECK(div.fixed[0] == QuadNumber(Rational(0)));
    CHECK(div.multiplier[0] == QuadNumber(Rational(2, 5)));

    // Rotation-like matrix is elliptic.
    CHECK(MobiusMap{IntMat2(0, -1, 1, 0)}.classify().type == MobiusType::Elliptic);
}

TEST_CASE("classification is invariant under GL2(Z) conjugation") {
    for (int i = 0; i < 300; ++i) {
        IntMat2 m = rand_invertible(5);
        if (m.det() == 0) continue;
        IntMat2 g = rand_gl2z();
        IntMat2 conj = g * m * g.adjugate();  // g^-1 up to det(g) = +-1 scaling
        auto c1 = MobiusMap{m}.classify();
        auto c2 = MobiusMap{conj}.classify();
        CHECK(c1.type == c2.type);
        if (c1.type == MobiusType::Loxodromic) {
            // The attracting multiplier is a conjugation invariant.
            CHECK(c1.multiplier[0] == c2.multiplier[0]);
        }
    }
}

TEST_CASE("parabolic shear with c=0 reports the infinite fixed point") {
    auto c = MobiusMap{IntMat2(1, 3, 0, 1)}.classify();
    CHECK(c.type == MobiusType::Parabolic);
    REQUIRE(c.num_fixed == 1);
    CHECK(c.infinite_fixed[0]);
    CHECK(c.multiplier[0] == QuadNumber(Rational(1)));
}
