#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfdyn/boundary.hpp"
#include "surfdyn/fixtures.hpp"

#include <random>

using namespace surfdyn;

namespace {

std::mt19937_64 rng(4242);

DivisorAtInfinity rand_divisor(const Completion& x, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> coeff(lo, hi);
    DivisorAtInfinity d;
    for (const auto& name : x.names()) d.set(name, Rational(coeff(rng)));
    return d;
}

Completion random_chain_completion(int n) {
    Completion x;
    std::uniform_int_distribution<int> self(-4, 1);
    for (int i = 0; i < n; ++i)
        x.add_divisor("C" + std::to_string(i), self(rng));
    for (int i = 0; i + 1 < n; ++i)
        x.add_crossing("C" + std::to_string(i), "C" + std::to_string(i + 1));
    return x;
}

BlowupRecord random_blow_up(Completion& x) {
    auto names = x.names();
    std::uniform_int_distribution<size_t> pick(0, names.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int tries = 0; tries < 50; ++tries) {
        const std::string& host = names[pick(rng)];
        if (coin(rng) == 0) return x.blow_up_free(host);
        auto nb = x.neighbors(host);
        if (nb.empty()) continue;
        std::uniform_int_distribution<size_t> pn(0, nb.size() - 1);
        return x.blow_up_satellite(host, nb[pn(rng)]);
    }
    return x.blow_up_free(names[0]);
}

}  // namespace

TEST_CASE("blow-up rules") {
    // P^2 model: a single line at infinity of self-intersection 1.
    Completion p2;
    p2.add_divisor("Linf", 1);
    auto rec = p2.blow_up_free("Linf", "E1");
    CHECK(p2.divisor("Linf").self_int == 0);
    CHECK(p2.divisor("E1").self_int == -1);
    CHECK(p2.crossing("Linf", "E1"));

    // Satellite blow-up in the Markov triangle.
    Completion mk = markov_completion();
    mk.blow_up_satellite("Ex", "Ey", "T");
    CHECK(mk.divisor("Ex").self_int == -2);
    CHECK(mk.divisor("Ey").self_int == -2);
    CHECK(mk.divisor("T").self_int == -1);
    CHECK_FALSE(mk.crossing("Ex", "Ey"));
    CHECK(mk.crossing("Ex", "T"));
    CHECK(mk.crossing("Ey", "T"));
    // Satellite centers must be crossings.
    CHECK_THROWS_AS(mk.blow_up_satellite("Ex", "Ey"), Error);
}

TEST_CASE("contraction rules") {
    // Contract right after a free blow-up restores the completion.
    Completion x = s2_completion();
    Completion before = x;
    x.blow_up_free("L", "E");
    x.contract("E");
    CHECK(completion_to_json(x) == completion_to_json(before));

    // Chain (-2, -1, -2): contracting the middle yields (-1, -1) crossing.
    Completion c;
    c.add_divisor("A", -2);
    c.add_divisor("B", -1);
    c.add_divisor("C", -2);
    c.add_crossing("A", "B");
    c.add_crossing("B", "C");
    c.contract("B");
    CHECK(c.divisor("A").self_int == -1);
    CHECK(c.divisor("C").self_int == -1);
    CHECK(c.crossing("A", "C"));

    // Refusals: wrong self-intersection, three neighbors, double crossing.
    Completion t;
    t.add_divisor("A", -2);
    CHECK_THROWS_AS(t.contract("A"), Error);
    Completion tri;
    tri.add_divisor("M", -1);
    tri.add_divisor("N1", -1);
    tri.add_divisor("N2", -1);
    tri.add_divisor("N3", -1);
    tri.add_crossing("M", "N1");
    tri.add_crossing("M", "N2");
    tri.add_crossing("M", "N3");
    CHECK_THROWS_AS(tri.contract("M"), Error);
    Completion mk = markov_completion();  // triangle: neighbors cross
    CHECK_THROWS_AS(mk.contract("Ex"), Error);
}

TEST_CASE("pullback and pushforward") {
    Completion x = s2_completion();
    DivisorAtInfinity e = DivisorAtInfinity::prime("L");

    auto rec_free = x.blow_up_free("L", "E");
    CHECK(pullback(rec_free, e) ==
          DivisorAtInfinity({{"L", Rational(1)}, {"E", Rational(1)}}));

    auto rec_sat = x.blow_up_satellite("L", "F0", "S");
    DivisorAtInfinity lf =
        DivisorAtInfinity::prime("L") + DivisorAtInfinity::prime("F0");
    CHECK(pullback(rec_sat, lf) ==
          DivisorAtInfinity({{"L", Rational(1)},
                             {"F0", Rational(1)},
                             {"S", Rational(2)}}));

    for (int i = 0; i < 100; ++i) {
        DivisorAtInfinity d = rand_divisor(s2_completion());
        CHECK(pushforward(rec_free, pullback(rec_free, d)) == d);
    }
}

TEST_CASE("projection formula and pullback isometry") {
    for (int trial = 0; trial < 50; ++trial) {
        Completion base = random_chain_completion(4);
        Completion top = base;
        std::vector<BlowupRecord> chain;
        for (int i = 0; i < 4; ++i) chain.push_back(random_blow_up(top));

        for (int pair = 0; pair < 10; ++pair) {
            DivisorAtInfinity a = rand_divisor(base);
            DivisorAtInfinity b = rand_divisor(base);
            DivisorAtInfinity pa = a, pb = b;
            for (const auto& rec : chain) {
                pa = pullback(rec, pa);
                pb = pullback(rec, pb);
            }
            // Pullback preserves intersection numbers.
            CHECK(top.intersect(pa, pb) == base.intersect(a, b));
            // Projection formula pi^* a . c = a . pi_* c for random c upstairs.
            DivisorAtInfinity c = rand_divisor(top);
            DivisorAtInfinity pc = c;
            for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                pc = pushforward(*it, pc);
            CHECK(top.intersect(pa, c) == base.intersect(a, pc));
        }
    }
}

TEST_CASE("S(2) intersection data") {
    Completion x = s2_completion();
    REQUIRE(x.connected());
    auto m = x.intersection_matrix();
    // Order: F_inf, L, F0, F1, Fm1.
    std::vector<std::vector<long>> expected = {{0, 1, 0, 0, 0},
                                               {1, 0, 1, 0, 0},
                                               {0, 1, -2, 1, 1},
                                               {0, 0, 1, -2, 0},
                                               {0, 0, 1, 0, -2}};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(m[i][j] == expected[i][j]);

    CHECK(x.nondegenerate());
    CHECK(x.dual_divisor("L") == DivisorAtInfinity::prime("F_inf"));
    DivisorAtInfinity zf({{"F_inf", Rational(-1)},
                          {"L", Rational(1)},
                          {"F0", Rational(1)},
                          {"F1", Rational(1, 2)},
                          {"Fm1", Rational(1, 2)}});
    CHECK(x.dual_divisor("F_inf") == zf);
    // Dual property Z . F = delta.
    for (const auto& e : x.names()) {
        DivisorAtInfinity z = x.dual_divisor(e);
        for (const auto& f : x.names())
            CHECK(x.intersect(z, DivisorAtInfinity::prime(f)) ==
                  (e == f ? Rational(1) : Rational(0)));
    }
}

TEST_CASE("Markov triangle duals and degeneracy reporting") {
    Completion mk = markov_completion();
    auto m = mk.intersection_matrix();
    std::vector<std::vector<long>> expected = {{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(m[i][j] == expected[i][j]);
    CHECK(mk.nondegenerate());
    CHECK(mk.dual_divisor("Ex") ==
          DivisorAtInfinity({{"Ey", Rational(1, 2)}, {"Ez", Rational(1, 2)}}));

    // A degenerate form is reported with a kernel vector.
    Completion deg;
    deg.add_divisor("A", 0);
    deg.add_divisor("B", 0);
    CHECK_FALSE(deg.nondegenerate());
    CHECK_THROWS_WITH_AS(deg.dual_divisor("A"),
                         doctest::Contains("kernel vector"), Error);
}

TEST_CASE("meet: basic examples") {
    Completion x = s2_completion();

    // meet(D, D) = D with no blow-ups.
    DivisorAtInfinity d({{"L", Rational(2)}, {"F0", Rational(1)}});
    auto same = divisor_meet(x, d, d);
    CHECK(same.records.empty());
    CHECK(same.meet == d);

    // Crossing primes: meet(E, E') is the exceptional divisor of one blow-up.
    auto cross = divisor_meet(x, DivisorAtInfinity::prime("L"),
                              DivisorAtInfinity::prime("F0"));
    REQUIRE(cross.records.size() == 1);
    CHECK(cross.meet == DivisorAtInfinity::prime(cross.records[0].name));

    // 2E + F vs E + 3F on a crossing pair.
    DivisorAtInfinity d1({{"L", Rational(2)}, {"F0", Rational(1)}});
    DivisorAtInfinity d2({{"L", Rational(1)}, {"F0", Rational(3)}});
    auto r = divisor_meet(x, d1, d2);
    // The result dominates both lower bounds and is itself a lower bound:
    // componentwise min of the transported divisors on the final completion.
    for (const auto& name : r.completion.names()) {
        CHECK(r.meet.coeff(name) ==
              std::min(r.d1.coeff(name), r.d2.coeff(name)));
        CHECK(r.join.coeff(name) ==
              std::max(r.d1.coeff(name), r.d2.coeff(name)));
    }
}

TEST_CASE("meet agrees with the per-prime minimum under further pullback") {
    // The defining property of D1 /\ D2 as a divisor: in any deeper
    // completion, its order along every prime is the minimum of the orders of
    // D1 and D2.  Transport meet and inputs through extra random blow-ups and
    // compare componentwise.
    for (int trial = 0; trial < 100; ++trial) {
        Completion base = random_chain_completion(3 + int(rng() % 5));
        DivisorAtInfinity d1 = rand_divisor(base, 0, 10);
        DivisorAtInfinity d2 = rand_divisor(base, 0, 10);
        auto r = divisor_meet(base, d1, d2);

        Completion deep = r.completion;
        DivisorAtInfinity m = r.meet, a = r.d1, b = r.d2, j = r.join;
        for (int k = 0; k < 5; ++k) {
            auto rec = random_blow_up(deep);
            m = pullback(rec, m);
            j = pullback(rec, j);
            a = pullback(rec, a);
            b = pullback(rec, b);
        }
        for (const auto& name : deep.names()) {
            CHECK(m.coeff(name) == std::min(a.coeff(name), b.coeff(name)));
            CHECK(j.coeff(name) == std::max(a.coeff(name), b.coeff(name)));
        }
    }
}

TEST_CASE("meet handles non-effective and rational input by shifting/scaling") {
    Completion x = s2_completion();
    DivisorAtInfinity d1({{"L", Rational(-3, 2)}, {"F0", Rational(1)}});
    DivisorAtInfinity d2({{"L", Rational(1, 2)}, {"F0", Rational(-2)}});
    auto r = divisor_meet(x, d1, d2);
    for (const auto& name : r.completion.names()) {
        CHECK(r.meet.coeff(name) == std::min(r.d1.coeff(name), r.d2.coeff(name)));
    }
    CHECK(r.meet.coeff("L") == Rational(-3, 2));
    CHECK(r.meet.coeff("F0") == Rational(-2));
}

TEST_CASE("boundary JSON round trip") {
    Completion x = s2_completion();
    std::string j = completion_to_json(x);
    Completion back = completion_from_json(j);
    CHECK(completion_to_json(back) == j);
    CHECK_THROWS_AS(completion_from_json("not json"), Error);
    CHECK_THROWS_AS(completion_from_json("{\"divisors\":[]}"), Error);
    std::string dot = x.dot();
    CHECK(dot.find("\"F0\" [label=\"F0 (-2)\"]") != std::string::npos);
}
