#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfdyn/degoracle.hpp"
#include "surfdyn/quadnumber.hpp"

#include <cmath>
#include <random>

using namespace surfdyn;

namespace {

Poly parse_poly(const std::string& s) {
    return parse_poly_map(s + ", 1").first;
}

std::vector<long long> degs(const char* lit, int n,
                            size_t cap = kDefaultTermCap) {
    DegreeSequence seq = iterate_degrees(parse_poly_map(lit), n, cap);
    REQUIRE_FALSE(seq.truncated);
    return seq.degrees;
}

}  // namespace

TEST_CASE("polynomial parsing") {
    CHECK(parse_poly("x^2").degree() == 2);
    CHECK(parse_poly("2*v^2-1").degree() == 2);
    CHECK(parse_poly("u^2*v^2+2*v^2-1").degree() == 4);
    CHECK(parse_poly("3/2*x*y - y^3 + 7").degree() == 3);
    CHECK(parse_poly("x*x*y").degree() == 3);  // repeated factors accumulate
    CHECK(parse_poly("-5").degree() == 0);
    CHECK(parse_poly("x - x + 1").degree() == 0);  // exact cancellation

    Poly p = parse_poly("1/3*x^2*y");
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms.at({2, 1}) == make_rational(BigInt(1), BigInt(3)));

    CHECK_THROWS_AS(parse_poly_map("x^2"), Error);        // one component
    CHECK_THROWS_AS(parse_poly_map("x, y, x"), Error);    // three components
    CHECK_THROWS_AS(parse_poly_map("x + , y"), Error);    // dangling sign
    CHECK_THROWS_AS(parse_poly_map("x^2, z"), Error);     // unknown variable
    CHECK_THROWS_AS(parse_poly_map("x - x, y"), Error);   // zero component
    CHECK_THROWS_AS(parse_poly_map(" , y"), Error);       // empty component
}

TEST_CASE("polynomial arithmetic and degree") {
    Poly zero;
    CHECK(zero.degree() == -1);
    CHECK(zero.str() == "0");

    Poly a = parse_poly("x + y");
    Poly sq = poly_mul(a, a, kDefaultTermCap);
    CHECK(sq.terms.size() == 3);
    CHECK(sq.terms.at({1, 1}) == Rational(2));
    CHECK(poly_pow(a, 4, kDefaultTermCap).terms.at({2, 2}) == Rational(6));
    CHECK(poly_pow(a, 0, kDefaultTermCap).degree() == 0);

    // (x - y)(x + y) = x^2 - y^2, the cross terms cancel.
    Poly d = poly_mul(parse_poly("x - y"), a, kDefaultTermCap);
    CHECK(d.terms.size() == 2);

    // Substitution: (x^2 + y)(y, x) = y^2 + x.
    Poly s = poly_subst(parse_poly("x^2 + y"), parse_poly("y"),
                        parse_poly("x"), kDefaultTermCap);
    CHECK(s.terms.size() == 2);
    CHECK(s.terms.count({0, 2}) == 1);
    CHECK(s.terms.count({1, 0}) == 1);

    CHECK_THROWS_AS(poly_mul(poly_pow(a, 5, kDefaultTermCap),
                             poly_pow(a, 5, kDefaultTermCap), 8),
                    TermCapExceeded);
}

TEST_CASE("degree sequences of the fixture maps") {
    CHECK(degs("x^2, y^3", 5) ==
          std::vector<long long>{3, 9, 27, 81, 243});
    CHECK(degs("x*y, y", 6) == std::vector<long long>{2, 3, 4, 5, 6, 7});
    CHECK(degs("u*v, 2*v^2-1", 6) ==
          std::vector<long long>{2, 4, 8, 16, 32, 64});
    CHECK(degs("u*v, u^2*v^2+2*v^2-1", 5) ==
          std::vector<long long>{4, 12, 36, 108, 324});
    CHECK(degs("x*y, x", 6) == std::vector<long long>{2, 3, 5, 8, 13, 21});

    CHECK_THROWS_AS(iterate_degrees(parse_poly_map("x, y"), 0), Error);
    CHECK_THROWS_AS(iterate_degrees(parse_poly_map("x, y"), 13), Error);
}

TEST_CASE("term cap yields a flagged partial sequence") {
    DegreeSequence seq =
        iterate_degrees(parse_poly_map("x+y, x*y"), 8, /*term_cap=*/4);
    CHECK(seq.truncated);
    CHECK(seq.degrees.size() < 8);
    CHECK_FALSE(seq.degrees.empty());

    // The same sequence with a roomy cap is complete.
    DegreeSequence full = iterate_degrees(parse_poly_map("x+y, x*y"), 6);
    CHECK_FALSE(full.truncated);
    CHECK(full.degrees.size() == 6);
    for (size_t i = 0; i < seq.degrees.size(); ++i)
        CHECK(seq.degrees[i] == full.degrees[i]);
}

TEST_CASE("lambda1 estimators") {
    Lambda1Estimate g = lambda1_estimate({3, 9, 27});
    CHECK(g.last_ratio == Rational(3));
    CHECK(g.root_estimate == doctest::Approx(3.0));
    CHECK(g.trend == "geometric");

    Lambda1Estimate lin = lambda1_estimate({2, 3, 4, 5});
    CHECK(lin.last_ratio == make_rational(BigInt(5), BigInt(4)));
    CHECK(lin.ratios_nonincreasing);
    CHECK_FALSE(lin.ratios_nondecreasing);
    CHECK(lin.trend == "decreasing");

    Lambda1Estimate fib = lambda1_estimate({2, 3, 5, 8, 13});
    CHECK(fib.trend == "mixed");
    CHECK(fib.ratios.size() == 4);

    CHECK_THROWS_AS(lambda1_estimate({3, 9}), Error);
    CHECK_THROWS_AS(lambda1_estimate({3, 0, 9}), Error);
}

TEST_CASE("paper lambda1 targets within 10 percent by n = 6") {
    struct Target {
        const char* lit;
        double lambda1;
    };
    for (const Target& t : {Target{"x^2, y^3", 3.0},
                            Target{"u*v, 2*v^2-1", 2.0},
                            Target{"u*v, u^2*v^2+2*v^2-1", 3.0},
                            Target{"x*y, x", (1 + std::sqrt(5.0)) / 2}}) {
        // n = 5 keeps the heavy fixture fast; the ratio estimator has
        // already locked on by then (the n = 6 run lives in the acceptance
        // suite's timed criterion).
        Lambda1Estimate est = lambda1_estimate(degs(t.lit, 5));
        double ratio = double(numerator(est.last_ratio)) /
                       double(denominator(est.last_ratio));
        CHECK(std::abs(ratio - t.lambda1) / t.lambda1 < 0.10);
    }
}

TEST_CASE("monomial degree oracle") {
    CHECK(monomial_degree_oracle(IntMat2(1, 1, 1, 0), 6) ==
          std::vector<BigInt>{2, 3, 5, 8, 13, 21});
    CHECK(monomial_degree_oracle(IntMat2(3, 0, 0, 2), 4) ==
          std::vector<BigInt>{3, 9, 27, 81});
    CHECK_THROWS_AS(monomial_degree_oracle(IntMat2(1, -1, 0, 1), 3), Error);
    CHECK_THROWS_AS(monomial_degree_oracle(IntMat2(1, 1, 1, 0), 0), Error);

    // Termwise agreement with symbolic iteration of the monomial map.
    std::vector<long long> symb = degs("x*y, x", 8);
    std::vector<BigInt> oracle = monomial_degree_oracle(IntMat2(1, 1, 1, 0), 8);
    REQUIRE(symb.size() == oracle.size());
    for (size_t i = 0; i < symb.size(); ++i)
        CHECK(BigInt(symb[i]) == oracle[i]);

    std::mt19937 rng(42);
    std::uniform_int_distribution<int> entry(0, 3);
    for (int trial = 0; trial < 25; ++trial) {
        IntMat2 A(entry(rng), entry(rng), entry(rng), entry(rng));
        if (A.det() == 0 || A.a + A.b == 0 || A.c + A.d == 0) continue;
        std::string lit;
        auto mono = [&](BigInt i, BigInt j) {
            std::string s;
            for (BigInt k = 0; k < i; ++k) s += s.empty() ? "x" : "*x";
            for (BigInt k = 0; k < j; ++k) s += s.empty() ? "y" : "*y";
            return s;
        };
        lit = mono(A.a, A.b) + ", " + mono(A.c, A.d);
        std::vector<long long> sdeg = degs(lit.c_str(), 5);
        std::vector<BigInt> odeg = monomial_degree_oracle(A, 5);
        for (size_t i = 0; i < 5; ++i) CHECK(BigInt(sdeg[i]) == odeg[i]);
    }
}

TEST_CASE("submultiplicativity of degree under composition") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> ecount(1, 4), expo(0, 3), coef(-3, 3);
    auto rand_poly = [&]() {
        Poly p;
        int k = ecount(rng);
        for (int i = 0; i < k; ++i) {
            int c = coef(rng);
            if (c == 0) c = 1;
            p.terms[{expo(rng), expo(rng)}] += Rational(c);
        }
        for (auto it = p.terms.begin(); it != p.terms.end();)
            it = it->second == 0 ? p.terms.erase(it) : std::next(it);
        return p;
    };
    int done = 0;
    while (done < 60) {
        PolyMap f{rand_poly(), rand_poly()}, g{rand_poly(), rand_poly()};
        if (f.first.is_zero() || f.second.is_zero() || g.first.is_zero() ||
            g.second.is_zero())
            continue;
        long long df = std::max(f.first.degree(), f.second.degree());
        long long dg = std::max(g.first.degree(), g.second.degree());
        if (df < 1 || dg < 1) continue;
        PolyMap fg;
        try {
            fg = compose(f, g, kDefaultTermCap);
        } catch (const Error&) {
            continue;  // a component collapsed to zero by cancellation
        }
        CHECK(std::max(fg.first.degree(), fg.second.degree()) <= df * dg);
        ++done;
    }
}

TEST_CASE("monomial root estimate approaches the spectral radius") {
    // Perron regime: strictly positive entries.  (With zero entries the
    // bound genuinely fails, e.g. triangular [[2,1],[0,1]] gives a 7% error
    // at n = 10.)
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> entry(1, 4);
    int done = 0;
    while (done < 40) {
        IntMat2 A(entry(rng), entry(rng), entry(rng), entry(rng));
        if (A.det() == 0) continue;
        std::vector<BigInt> d = monomial_degree_oracle(A, 10);
        double root = std::pow(d.back().convert_to<double>(), 0.1);
        double rho = spectral_radius(A).to_double();
        CHECK(std::abs(root - rho) / rho < 0.05);
        ++done;
    }
}

TEST_CASE("csv rendering") {
    DegreeSequence seq = iterate_degrees(parse_poly_map("x^2, y^3"), 3);
    CHECK(degrees_csv(seq) == "n,degree\n1,3\n2,9\n3,27\n");
    DegreeSequence cut =
        iterate_degrees(parse_poly_map("x+y, x*y"), 8, /*term_cap=*/4);
    std::string csv = degrees_csv(cut);
    CHECK(csv.find("# truncated") != std::string::npos);
}
