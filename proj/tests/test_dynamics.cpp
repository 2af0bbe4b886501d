#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfdyn/dynamics.hpp"

#include <cmath>
#include <random>

using namespace surfdyn;

namespace {

QuadNumber Q(long long n) { return QuadNumber(Rational(n)); }
QuadNumber Q(long long n, long long d) { return QuadNumber(make_rational(n, d)); }

MonomialEndo endo(long long a, long long b, long long c, long long d,
                  bool tame = true) {
    return MonomialEndo::from_matrix(
        IntMat2(BigInt(a), BigInt(b), BigInt(c), BigInt(d)), tame);
}

QuadNumber qpow(QuadNumber x, int n) {
    QuadNumber r{Rational(1)};
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

// Random nonnegative matrix with nonzero determinant.
MonomialEndo rand_endo(std::mt19937& rng, int max_entry) {
    std::uniform_int_distribution<long long> e(0, max_entry);
    for (;;) {
        IntMat2 A(BigInt(e(rng)), BigInt(e(rng)), BigInt(e(rng)),
                  BigInt(e(rng)));
        if (A.det() != 0) return MonomialEndo::from_matrix(A);
    }
}

}  // namespace

TEST_CASE("MonomialEndo validation and dynamical degrees") {
    CHECK_THROWS_AS(endo(1, -1, 0, 1), Error);
    CHECK_THROWS_AS(endo(1, 2, 2, 4), Error);  // singular
    MonomialEndo f = endo(2, 1, 0, 3);
    CHECK(f.lambda1() == Q(3));
    CHECK(f.lambda2() == 6);
    CHECK(f.iterate(2).A == IntMat2(4, 5, 0, 9));
    CHECK_THROWS_AS(f.iterate(-1), Error);

    // lambda1(f^n) = lambda1(f)^n and lambda2(f^n) = lambda2(f)^n, n <= 5.
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        MonomialEndo g = rand_endo(rng, 4);
        for (int n = 1; n <= 5; ++n) {
            MonomialEndo gn = g.iterate(n);
            CHECK(gn.lambda1() == qpow(g.lambda1(), n));
            BigInt l2 = 1;
            for (int i = 0; i < n; ++i) l2 *= g.lambda2();
            CHECK(gn.lambda2() == l2);
        }
    }
}

TEST_CASE("Pushforward on monomial valuations") {
    // Chart form of (x,y) -> (x^2, y^3): v_{1,1} -> v_{3,3}.
    MonomialEndo f = endo(2, 1, 0, 3);
    CHECK(pushforward(f, Weights{Q(1), Q(1)}) == Weights{Q(3), Q(3)});

    // Identity matrix fixes every valuation.
    MonomialEndo id = endo(1, 0, 0, 1);
    CHECK(pushforward(id, Weights{Q(2, 7), Q(5)}) == Weights{Q(2, 7), Q(5)});

    // (x,y) -> (xy, y) model: v_{1,t} -> v_{1,1+t}.
    MonomialEndo g = endo(1, 0, 1, 1);
    for (long long t = 0; t <= 5; ++t)
        CHECK(pushforward(g, Weights{Q(1), Q(t)}) == Weights{Q(1), Q(1 + t)});

    // f^n_* v_{s,t} = v_{A^n (s,t)} on random data, n <= 10.
    std::mt19937 rng(5);
    std::uniform_int_distribution<long long> num(0, 9);
    for (int trial = 0; trial < 30; ++trial) {
        MonomialEndo h = rand_endo(rng, 3);
        Weights v{Q(num(rng), 1 + num(rng)), Q(num(rng), 1 + num(rng))};
        Weights step = v;
        for (int n = 1; n <= 10; ++n) {
            step = pushforward(h, step);
            CHECK(step == pushforward(h.iterate(n), v));
        }
    }
}

TEST_CASE("Eigenvaluation: worked examples") {
    // [[2,1],[0,3]]: lambda1 = 3, lambda2 = 6, v_* = v_{1,1}, divisorial,
    // gap since 9 > 6.
    EigenData e = eigenvaluation(endo(2, 1, 0, 3));
    CHECK(e.lambda1 == Q(3));
    CHECK(e.lambda2 == 6);
    CHECK(e.eigen == Weights{Q(1), Q(1)});
    CHECK(e.type == EigenType::Divisorial);
    CHECK(e.gap);
    CHECK(pushforward(endo(2, 1, 0, 3), e.eigen) ==
          Weights{e.lambda1 * e.eigen.s, e.lambda1 * e.eigen.t});

    // Fibonacci: lambda1 = (1+sqrt 5)/2, irrational eigenvaluation.
    EigenData fib = eigenvaluation(endo(1, 1, 1, 0));
    QuadNumber phi =
        (Q(1) + QuadNumber::sqrt_of(BigInt(5))) * Q(1, 2);
    CHECK(fib.lambda1 == phi);
    CHECK(fib.lambda2 == 1);
    CHECK(fib.eigen.t == Q(1));
    CHECK(fib.eigen.s == phi);
    CHECK(fib.type == EigenType::Irrational);
    CHECK(fib.gap);

    // Homothety: lambda1 = 2 = sqrt(lambda2), no gap.
    EigenData hom = eigenvaluation(endo(2, 0, 0, 2));
    CHECK(hom.lambda1 == Q(2));
    CHECK(hom.lambda2 == 4);
    CHECK(!hom.gap);
    CHECK(hom.eigen == Weights{Q(1), Q(1)});

    // Diagonal, non-homothety: eigenvaluation on a coordinate axis.
    EigenData diag = eigenvaluation(endo(5, 0, 0, 2));
    CHECK(diag.eigen == Weights{Q(1), Q(0)});
    CHECK(diag.type == EigenType::Divisorial);
    EigenData diag2 = eigenvaluation(endo(2, 0, 0, 5));
    CHECK(diag2.eigen == Weights{Q(0), Q(1)});
}

TEST_CASE("Eigen equation exact on random endomorphisms") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        MonomialEndo f = rand_endo(rng, 6);
        EigenData e = eigenvaluation(f);  // throws if the equation fails
        CHECK(e.gap == (e.lambda1 * e.lambda1 > QuadNumber(Rational(e.lambda2))));
        CHECK(e.eigen.s.sign() >= 0);
        CHECK(e.eigen.t.sign() >= 0);
    }
}

TEST_CASE("normalize_for_segment") {
    Weights w = normalize_for_segment(Weights{Q(1), Q(1)}, BigInt(1), BigInt(2));
    CHECK(w == Weights{Q(1, 3), Q(1, 3)});
    Weights irr = normalize_for_segment(
        Weights{QuadNumber::sqrt_of(BigInt(2)), Q(1)}, BigInt(1), BigInt(1));
    CHECK(irr.s * Q(1) + irr.t * Q(1) == Q(1));
    CHECK_THROWS_AS(normalize_for_segment(Weights{Q(0), Q(0)}, BigInt(1),
                                          BigInt(1)),
                    Error);
}

TEST_CASE("Skewness Moebius analysis: divisorial chart example") {
    // A = [[3,1],[0,2]] with one preliminary blow-up (n0 = 1):
    // M = [[d,0],[b - lambda1 n0, lambda1]] up to the chart convention.
    MonomialEndo f = endo(3, 1, 0, 2);
    SkewnessAnalysis an = skewness_mobius(f, divisorial_pi(BigInt(1)));
    CHECK(an.M == IntMat2(2, 0, -2, 3));
    CHECK(an.cls.type == MobiusType::Loxodromic);
    CHECK(!an.fixed_at_infinity);
    CHECK(an.fixed_attracting == Q(0));
    CHECK(an.multiplier == Q(2, 3));  // d / lambda1
    CHECK(an.bound_squared == Q(2, 3));

    // Homothety: gap violated.
    CHECK_THROWS_AS(skewness_mobius(endo(2, 0, 0, 2), IntMat2::identity()),
                    Error);
}

TEST_CASE("Skewness Moebius analysis: Fibonacci chart") {
    MonomialEndo f = endo(1, 1, 1, 0);
    SkewnessAnalysis an = skewness_mobius(f, IntMat2::identity());
    CHECK(an.cls.type == MobiusType::Loxodromic);
    // Attracting fixed point is the golden-ratio slope t_* = phi - 1,
    // the t/s coordinate of the eigenvaluation.
    QuadNumber phi = (Q(1) + QuadNumber::sqrt_of(BigInt(5))) * Q(1, 2);
    CHECK(an.fixed_attracting == phi - Q(1));
    EigenData e = eigenvaluation(f);
    CHECK(an.fixed_attracting == e.eigen.t / e.eigen.s);
    // det = -1, so the multiplier has absolute value 1/lambda1^2.
    CHECK(an.multiplier.abs() == Q(1) / (phi * phi));
    CHECK(an.bound_squared == Q(1) / (phi * phi));
    CHECK(an.multiplier * an.multiplier <= an.bound_squared);
}

TEST_CASE("Loxodromic Moebius lemma on random gap endomorphisms") {
    std::mt19937 rng(17);
    int done = 0;
    while (done < 60) {
        MonomialEndo f = rand_endo(rng, 5);
        QuadNumber l1 = f.lambda1();
        if (!(l1 * l1 > QuadNumber(Rational(f.lambda2())))) continue;
        ++done;
        SkewnessAnalysis an = skewness_mobius(f, IntMat2::identity());
        CHECK(an.cls.type == MobiusType::Loxodromic);
        CHECK(an.multiplier * an.multiplier <= an.bound_squared);
        // The attracting fixed point is the eigen slope t_*/s_*.
        EigenData e = eigenvaluation(f);
        if (e.eigen.s.is_zero()) {
            CHECK(an.fixed_at_infinity);
        } else {
            CHECK(an.fixed_attracting == e.eigen.t / e.eigen.s);
        }
    }
}

TEST_CASE("Slope convergence rate matches the multiplier") {
    // Iterated slopes approach the eigen slope; the error contraction per
    // step approaches the attracting multiplier.
    for (MonomialEndo f : {endo(1, 1, 1, 0), endo(3, 1, 1, 2),
                           endo(2, 1, 1, 3)}) {
        if (!(f.lambda1() * f.lambda1() > QuadNumber(Rational(f.lambda2()))))
            continue;
        SkewnessAnalysis an = skewness_mobius(f, IntMat2::identity());
        EigenData e = eigenvaluation(f);
        if (e.eigen.s.is_zero()) continue;
        QuadNumber target = e.eigen.t / e.eigen.s;
        double mult = std::abs(an.multiplier.to_double());
        Weights v{Q(2), Q(1)};
        double prev_err = -1;
        for (int n = 1; n <= 16; ++n) {
            v = pushforward(f, v);
            double err = std::abs((v.t / v.s - target).to_double());
            if (n > 4 && prev_err > 1e-30) {
                double ratio = err / prev_err;
                CHECK(ratio <= mult + 0.05);
            }
            prev_err = err;
        }
    }
}

TEST_CASE("Normal-form classification") {
    EigenData fib = eigenvaluation(endo(1, 1, 1, 0));
    CHECK(classify_normal_form(fib, true) == NormalForm::Monomial);
    CHECK(classify_normal_form(fib, false) == NormalForm::Pseudomonomial);
    CHECK(to_string(NormalForm::Monomial) == "monomial");

    EigenData div = eigenvaluation(endo(2, 1, 0, 3));
    CHECK(classify_normal_form(div, true) == NormalForm::DivisorialType);

    // Divisorial eigen-data with lambda1 > lambda2 is inconsistent.
    EigenData bad = div;
    bad.lambda1 = Q(7);
    CHECK_THROWS_AS(classify_normal_form(bad, true), Error);

    CHECK(classify_normal_form(fib, true, true) == NormalForm::Elliptic);
}

TEST_CASE("Recorded fixtures") {
    FixtureEndo f = fixture_endo("S2-f");
    CHECK(f.lambda1 == Q(2));
    CHECK(f.lambda2 == 2);
    CHECK(classify_fixture(f) == NormalForm::DivisorialType);

    FixtureEndo g = fixture_endo("S2-g");
    CHECK(g.lambda1 == Q(3));
    CHECK(g.lambda2 == 2);
    CHECK(g.eigen_kind == "inf-singular");
    CHECK(classify_fixture(g) == NormalForm::InfinitelySingularType);

    CHECK_THROWS_AS(fixture_endo("S2-h"), Error);
    FixtureEndo broken{"x", Q(1), BigInt(2), "inf-singular"};
    CHECK_THROWS_AS(classify_fixture(broken), Error);
    FixtureEndo broken2{"x", Q(5), BigInt(2), "divisorial"};
    CHECK_THROWS_AS(classify_fixture(broken2), Error);
}

TEST_CASE("Endomorphism JSON") {
    EndoSpec spec = endo_from_json(
        "{\"kind\":\"monomial\",\"matrix\":[[2,1],[0,3]],\"tame\":true}");
    CHECK(!spec.is_fixture);
    CHECK(spec.mono.A == IntMat2(2, 1, 0, 3));
    CHECK(spec.mono.tame);
    EndoSpec back = endo_from_json(endo_to_json(spec));
    CHECK(back.mono.A == spec.mono.A);

    EndoSpec fix = endo_from_json("{\"kind\":\"fixture\",\"name\":\"S2-g\"}");
    CHECK(fix.is_fixture);
    CHECK(fix.fix.lambda1 == Q(3));
    CHECK(endo_from_json(endo_to_json(fix)).fix.name == "S2-g");

    CHECK_THROWS_AS(endo_from_json("{\"kind\":\"weird\"}"), Error);
    CHECK_THROWS_AS(endo_from_json("nope"), Error);
    CHECK_THROWS_AS(
        endo_from_json("{\"kind\":\"monomial\",\"matrix\":[[1,1],[2,2]]}"),
        Error);
}
