// Command-line front end: exact dynamics at infinity for endomorphisms of
// affine surfaces.  Exit codes: 0 success, 1 computation error, 2 parse
// error; errors are one-line JSON on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include "surfdyn/boundary.hpp"
#include "surfdyn/degoracle.hpp"
#include "surfdyn/dynamics.hpp"
#include "surfdyn/fixtures.hpp"
#include "surfdyn/infnear.hpp"
#include "surfdyn/mobius.hpp"
#include "surfdyn/perron.hpp"
#include "surfdyn/thompson.hpp"
#include "surfdyn/valuation.hpp"
#include "surfdyn/zigzag.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace surfdyn;

namespace {

// Input (rather than domain) problems: reported with exit code 2.
struct ParseFailure : Error {
    using Error::Error;
};

IntMat2 parse_matrix_csv(const std::string& s) {
    std::vector<BigInt> v;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        try {
            v.emplace_back(tok);
        } catch (const std::exception&) {
            throw ParseFailure("bad matrix entry: " + tok);
        }
    }
    if (v.size() != 4)
        throw ParseFailure("matrix needs four comma-separated entries a,b,c,d");
    return IntMat2(v[0], v[1], v[2], v[3]);
}

BigInt parse_bigint(const std::string& s) {
    try {
        return BigInt(s);
    } catch (const std::exception&) {
        throw ParseFailure("bad integer: " + s);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseFailure("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Divisor literal: signed sum of terms "name" or "coef*name" with rational
// coefficients, e.g. "F0 + 1/2*F1 - 2*L".
DivisorAtInfinity parse_divisor(const Completion& x, const std::string& lit) {
    DivisorAtInfinity out;
    size_t pos = 0;
    auto skip = [&] {
        while (pos < lit.size() && std::isspace(unsigned(lit[pos]))) ++pos;
    };
    skip();
    if (pos >= lit.size()) throw ParseFailure("empty divisor literal");
    bool first = true;
    while (pos < lit.size()) {
        int sign = 1;
        if (lit[pos] == '+' || lit[pos] == '-') {
            if (lit[pos] == '-') sign = -1;
            ++pos;
        } else if (!first) {
            throw ParseFailure("expected '+' or '-' in divisor literal: " + lit);
        }
        skip();
        Rational coef(sign);
        if (pos < lit.size() && std::isdigit(unsigned(lit[pos]))) {
            size_t start = pos;
            while (pos < lit.size() &&
                   (std::isdigit(unsigned(lit[pos])) || lit[pos] == '/'))
                ++pos;
            try {
                coef *= parse_rational(lit.substr(start, pos - start));
            } catch (const Error& e) {
                throw ParseFailure(e.what());
            }
            skip();
            if (pos >= lit.size() || lit[pos] != '*')
                throw ParseFailure("expected '*name' after coefficient in: " +
                                   lit);
            ++pos;
            skip();
        }
        size_t start = pos;
        while (pos < lit.size() &&
               (std::isalnum(unsigned(lit[pos])) || lit[pos] == '_'))
            ++pos;
        if (pos == start)
            throw ParseFailure("expected a divisor name in: " + lit);
        std::string name = lit.substr(start, pos - start);
        if (!x.has(name))
            throw ParseFailure("unknown boundary divisor: " + name);
        out.set(name, out.coeff(name) + coef);
        skip();
        first = false;
    }
    return out;
}

nlohmann::json quad_json(const QuadNumber& q) {
    nlohmann::json j = nlohmann::json::parse(quad_to_json(q));
    j["str"] = q.str();
    return j;
}

nlohmann::json divisor_json(const DivisorAtInfinity& d) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, c] : d.coeffs()) j[name] = to_string(c);
    return j;
}

std::string charpoly_str(const BigInt& tr, const BigInt& det) {
    std::string s = "T^2";
    auto term = [&](const BigInt& c, const char* sym) {
        if (c == 0) return;
        s += c > 0 ? "+" : "-";
        BigInt a = abs(c);
        if (*sym == '\0' || a != 1) s += a.str();
        s += sym;
    };
    term(-tr, "T");
    term(det, "");
    return s;
}

void cmd_lambda1(const std::string& mat) {
    MonomialEndo f = MonomialEndo::from_matrix(parse_matrix_csv(mat));
    QuadNumber l1 = f.lambda1();
    nlohmann::json j;
    j["lambda1"] = quad_json(l1);
    j["charpoly"] = charpoly_str(f.A.trace(), f.A.det());
    if (l1.is_rational()) {
        BigInt r = numerator(l1.as_rational());
        j["factor"] =
            "T" + std::string(r >= 0 ? "-" : "+") + BigInt(abs(r)).str();
    } else {
        j["factor"] = j["charpoly"];
    }
    std::cout << j.dump() << "\n";
}

void cmd_eigenval(const std::string& mat) {
    MonomialEndo f = MonomialEndo::from_matrix(parse_matrix_csv(mat));
    EigenData e = eigenvaluation(f);
    nlohmann::json j;
    j["lambda1"] = quad_json(e.lambda1);
    j["lambda2"] = e.lambda2.str();
    j["gap"] = e.gap;
    j["type"] = to_string(e.type);
    j["eigen"]["s"] = quad_json(e.eigen.s);
    j["eigen"]["t"] = quad_json(e.eigen.t);
    std::cout << j.dump() << "\n";
}

void cmd_perron(const std::string& mode, const std::string& a,
                const std::string& b) {
    QuadraticInteger q =
        QuadraticInteger::quadratic(parse_bigint(a), parse_bigint(b));
    if (mode == "check") {
        PerronVerdict v = is_weak_perron(q);
        nlohmann::json j;
        j["value"] = quad_json(q.value());
        j["weak_perron"] = v.weak_perron;
        j["strict_perron"] = v.strict_perron;
        if (v.violating_conjugate)
            j["violating_conjugate"] = quad_json(*v.violating_conjugate);
        std::cout << j.dump() << "\n";
        return;
    }
    IntMat2 m = realize_as_matrix(q);
    if (!(spectral_radius(m) == q.value()))
        throw Error("realized matrix fails the spectral-radius round trip");
    std::cout << m.str() << "\n";
}

void cmd_zigzag_standardize(const std::string& literal) {
    Zigzag z;
    try {
        z = parse_zigzag(literal);
    } catch (const Error& e) {
        throw ParseFailure(e.what());
    }
    StandardizeResult r = standardize(z);
    nlohmann::json j;
    j["success"] = r.success;
    j["inertia"] = {r.inertia.pos, r.inertia.zero, r.inertia.neg};
    if (r.success) {
        j["standard"] = r.standard.str();
        j["log"] = nlohmann::json::array();
        for (const Move& m : r.log) j["log"].push_back(to_string(m));
    } else {
        j["obstruction"] = r.obstruction;
    }
    std::cout << j.dump() << "\n";
}

Completion completion_from_file(const std::string& path) {
    try {
        return completion_from_json(read_file(path));
    } catch (const ParseFailure&) {
        throw;
    } catch (const Error& e) {
        throw ParseFailure(e.what());
    }
}

void cmd_boundary_duals(const std::string& path) {
    Completion x = completion_from_file(path);
    nlohmann::json j;
    j["nondegenerate"] = x.nondegenerate();
    j["duals"] = nlohmann::json::object();
    for (const std::string& name : x.names())
        j["duals"][name] = divisor_json(x.dual_divisor(name));
    std::cout << j.dump() << "\n";
}

void cmd_boundary_dot(const std::string& path) {
    std::cout << completion_from_file(path).dot();
}

void cmd_meet(const std::string& path, const std::string& d1,
              const std::string& d2) {
    Completion x = completion_from_file(path);
    MeetResult r = divisor_meet(x, parse_divisor(x, d1), parse_divisor(x, d2));
    nlohmann::json j;
    j["meet"] = divisor_json(r.meet);
    j["join"] = divisor_json(r.join);
    j["d1"] = divisor_json(r.d1);
    j["d2"] = divisor_json(r.d2);
    j["blowups"] = nlohmann::json::array();
    for (const BlowupRecord& rec : r.records) j["blowups"].push_back(rec.name);
    std::cout << j.dump() << "\n";
}

ThompsonElement parse_word(const std::string& word) {
    try {
        return markov_word(word);
    } catch (const Error& e) {
        throw ParseFailure(e.what());
    }
}

void cmd_markov_act(const std::string& word, const std::string& t) {
    ThompsonElement g = parse_word(word);
    ExtRat point;
    try {
        point = parse_ext_rat(t);
    } catch (const Error& e) {
        throw ParseFailure(e.what());
    }
    std::cout << to_string(g.apply(point)) << "\n";
}

void cmd_markov_fixed(const std::string& word) {
    LoxodromicFixedPoints fp = loxodromic_analysis(parse_word(word));
    nlohmann::json j;
    auto side = [&](bool at_inf, const QuadNumber& v, const QuadNumber& m) {
        nlohmann::json s;
        s["at_infinity"] = at_inf;
        if (at_inf)
            s["value"] = "inf";
        else
            s["value"] = quad_json(v);
        s["multiplier"] = quad_json(m);
        return s;
    };
    j["attracting"] = side(fp.attracting_at_infinity, fp.attracting,
                           fp.attracting_multiplier);
    j["repelling"] = side(fp.repelling_at_infinity, fp.repelling,
                          fp.repelling_multiplier);
    std::cout << j.dump() << "\n";
}

void cmd_degree_growth(const std::string& map, int n, size_t cap) {
    PolyMap f;
    try {
        f = parse_poly_map(map);
    } catch (const Error& e) {
        throw ParseFailure(e.what());
    }
    std::cout << degrees_csv(iterate_degrees(f, n, cap));
}

void req(bool cond, const std::string& what) {
    if (!cond) throw Error(what);
}

int run_fixtures() {
    using Check = std::pair<const char*, std::function<void()>>;
    std::vector<Check> checks;

    checks.emplace_back("lambda1-square-cube", [] {
        MonomialEndo f = MonomialEndo::from_matrix(IntMat2(2, 1, 0, 3));
        req(f.lambda1() == QuadNumber(Rational(3)), "lambda1 != 3");
        req(f.lambda2() == 6, "lambda2 != 6");
        EigenData e = eigenvaluation(f);
        req(e.eigen == Weights{QuadNumber(Rational(1)), QuadNumber(Rational(1))},
            "eigenvaluation is not v_{1,1}");
        Weights img = pushforward(f, e.eigen);
        req(img.s == e.lambda1 * e.eigen.s && img.t == e.lambda1 * e.eigen.t,
            "eigen equation failed");
    });

    checks.emplace_back("lambda1-fibonacci", [] {
        MonomialEndo f = MonomialEndo::from_matrix(IntMat2(1, 1, 1, 0));
        QuadNumber phi = (QuadNumber(Rational(1)) +
                          QuadNumber::sqrt_of(BigInt(5))) *
                         QuadNumber(make_rational(BigInt(1), BigInt(2)));
        req(f.lambda1() == phi, "lambda1 != (1+sqrt5)/2");
    });

    checks.emplace_back("perron-realize-odd", [] {
        QuadraticInteger q = QuadraticInteger::quadratic(BigInt(3), BigInt(1));
        IntMat2 m = realize_as_matrix(q);
        req(m.str() == "[[1,1],[1,2]]", "unexpected realization " + m.str());
        req(spectral_radius(m) == q.value(), "round trip failed");
    });

    checks.emplace_back("s2-boundary-form", [] {
        Completion x = s2_completion();
        req(x.nondegenerate(), "S(2) form degenerate");
        req(x.dual_divisor("L") == DivisorAtInfinity::prime("F_inf"),
            "Z_ordL != F_inf");
        DivisorAtInfinity z = x.dual_divisor("F_inf");
        DivisorAtInfinity expect({{"F_inf", Rational(-1)},
                                  {"L", Rational(1)},
                                  {"F0", Rational(1)},
                                  {"F1", make_rational(BigInt(1), BigInt(2))},
                                  {"Fm1", make_rational(BigInt(1), BigInt(2))}});
        req(z == expect, "Z_ordF_inf mismatch: " + z.str());
        for (const std::string& e : x.names())
            for (const std::string& f : x.names())
                req(x.intersect(x.dual_divisor(e),
                                DivisorAtInfinity::prime(f)) ==
                        Rational(e == f ? 1 : 0),
                    "dual basis delta property failed");
    });

    checks.emplace_back("markov-boundary-form", [] {
        Completion x = markov_completion();
        req(x.nondegenerate(), "Markov form degenerate");
        auto m = x.intersection_matrix();
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                req(m[i][k] == (i == k ? -1 : 1), "triangle matrix mismatch");
        DivisorAtInfinity z = x.dual_divisor("Ex");
        DivisorAtInfinity expect({{"Ey", make_rational(BigInt(1), BigInt(2))},
                                  {"Ez", make_rational(BigInt(1), BigInt(2))}});
        req(z == expect, "Z_ordEx mismatch: " + z.str());
    });

    checks.emplace_back("markov-satellite-blowup", [] {
        Completion x = markov_completion();
        BlowupRecord rec = x.blow_up_satellite("Ex", "Ey", "Et");
        req(x.divisor("Ex").self_int == -2 && x.divisor("Ey").self_int == -2,
            "hosts not decremented");
        req(x.divisor("Et").self_int == -1, "exceptional self-int != -1");
        req(x.crossing("Ex", "Et") && x.crossing("Et", "Ey") &&
                !x.crossing("Ex", "Ey"),
            "crossings not rewired");
        (void)rec;
    });

    checks.emplace_back("farey-labels", [] {
        BlowupTree t(TreeMode::Relative, "E");
        req(t.node(0).far_a == 0 && t.node(0).far_b == 1, "root label");
        int c = t.blow_up_free(t.root());
        req(t.node(c).far_a == 1 && t.node(c).far_b == 1, "free child label");
        int s = t.blow_up_satellite(t.root(), c);
        req(t.node(s).far_a == 1 && t.node(s).far_b == 2,
            "satellite label is not the Farey sum");
        req(t.node(s).b == 2, "b(satellite) != b(E) + b(F)");
        req(t.node(s).far_a * t.node(0).far_b -
                    t.node(0).far_a * t.node(s).far_b ==
                1,
            "Farey determinant != 1");
    });

    checks.emplace_back("markov-circle-involutions", [] {
        MarkovCircle mc = markov_circle();
        req(mc.circle.marks.size() == 3 && mc.circle.marks[0] == ExtRat(-1) &&
                mc.circle.marks[1] == ExtRat(0) &&
                mc.circle.marks[2] == ExtRat::inf(),
            "marks are not {0,-1,inf}");
        req(compose(mc.sx, mc.sx).is_identity() &&
                compose(mc.sy, mc.sy).is_identity() &&
                compose(mc.sz, mc.sz).is_identity(),
            "generators are not involutions");
    });

    checks.emplace_back("markov-sigma-x", [] {
        MarkovCircle mc = markov_circle();
        for (long long t : {0, 1, 5})
            req(mc.sx.apply(ExtRat(t)) == ExtRat(-t - 2),
                "sigma_x is not t -> -t-2 on [0,inf]");
        req(mc.sx.apply(ExtRat(0)) == ExtRat(-2), "sigma_x(0) != -2");
    });

    checks.emplace_back("markov-word-xyz", [] {
        ThompsonElement g = markov_word("xyz");
        req(g.apply(ExtRat::inf()) ==
                ExtRat(make_rational(BigInt(-5), BigInt(2))),
            "xyz at inf != -5/2");
        LoxodromicFixedPoints fp = loxodromic_analysis(g);
        QuadNumber sqrt5 = QuadNumber::sqrt_of(BigInt(5));
        QuadNumber half{make_rational(BigInt(1), BigInt(2))};
        req(fp.attracting == (QuadNumber(Rational(-3)) - sqrt5) * half &&
                fp.repelling == (QuadNumber(Rational(-3)) + sqrt5) * half,
            "fixed points are not (-3 +- sqrt5)/2");
    });

    checks.emplace_back("free-product-length-6", [] {
        req(free_product_check(6), "a reduced word of length <= 6 is trivial");
    });

    checks.emplace_back("skewness-loxodromic", [] {
        MonomialEndo f = MonomialEndo::from_matrix(IntMat2(2, 1, 0, 3));
        SkewnessAnalysis a = skewness_mobius(f, IntMat2::identity());
        req(a.cls.type == MobiusType::Loxodromic, "not loxodromic");
        req(!a.fixed_at_infinity && a.fixed_attracting == QuadNumber(Rational(1)),
            "attracting fixed point is not the eigen slope");
        req(a.multiplier * a.multiplier <= a.bound_squared,
            "multiplier bound violated");
    });

    checks.emplace_back("s2-endomorphisms", [] {
        FixtureEndo f = fixture_endo("S2-f");
        req(f.lambda1 == QuadNumber(Rational(2)) && f.lambda2 == 2,
            "S2-f invariants");
        req(classify_fixture(f) == NormalForm::DivisorialType,
            "S2-f normal form");
        FixtureEndo g = fixture_endo("S2-g");
        req(g.lambda1 == QuadNumber(Rational(3)) && g.lambda2 == 2,
            "S2-g invariants");
        req(classify_fixture(g) == NormalForm::InfinitelySingularType,
            "S2-g normal form");
    });

    checks.emplace_back("degree-growth-oracle", [] {
        DegreeSequence a = iterate_degrees(parse_poly_map("x^2, y^3"), 4);
        req(a.degrees == std::vector<long long>{3, 9, 27, 81},
            "(x^2,y^3) degrees");
        DegreeSequence b = iterate_degrees(parse_poly_map("u*v, 2*v^2-1"), 5);
        req(b.degrees == std::vector<long long>{2, 4, 8, 16, 32},
            "S2-f degrees");
    });

    checks.emplace_back("zigzag-moves", [] {
        req(is_standard(parse_zigzag("0,-1,-2,-2")), "standard test");
        Zigzag z = contract(parse_zigzag("-2,-1,-2"), 1);
        req(z.str() == "-1,-1", "contraction of (-2,-1,-2)");
        req(classify_boundary(markov_completion()).shape ==
                BoundaryShape::Cycle,
            "Markov boundary is a cycle");
        req(classify_boundary(s2_completion()).shape == BoundaryShape::Other,
            "S(2) boundary is a fork");
        req(classify_boundary(parse_zigzag("0,-1,-2").completion()).shape ==
                BoundaryShape::Zigzag,
            "chain boundary is a zigzag");
    });

    int failed = 0;
    for (const auto& [name, fn] : checks) {
        try {
            fn();
            std::cout << "PASS " << name << "\n";
        } catch (const std::exception& e) {
            std::cout << "FAIL " << name << ": " << e.what() << "\n";
            ++failed;
        }
    }
    std::cout << (failed == 0 ? "OK " : "FAILED ")
              << (checks.size() - size_t(failed)) << "/" << checks.size()
              << "\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dynamics at infinity of affine-surface endomorphisms"};
    app.require_subcommand(1);

    std::string matrix, perron_mode, perron_a, perron_b, zz_literal;
    std::string file, d1, d2, word, point, map_expr;
    int dg_n = 6;
    size_t dg_cap = kDefaultTermCap;

    CLI::App* c_l1 = app.add_subcommand("lambda1",
                                        "dynamical degree of a monomial map");
    c_l1->add_option("--matrix", matrix, "exponent matrix a,b,c,d")->required();

    CLI::App* c_ev = app.add_subcommand("eigenval",
                                        "Perron eigenvaluation data");
    c_ev->add_option("--matrix", matrix, "exponent matrix a,b,c,d")->required();

    CLI::App* c_pr = app.add_subcommand(
        "perron", "weak Perron check / realization for T^2 - aT + b");
    c_pr->add_option("mode", perron_mode, "check | realize")
        ->required()
        ->check(CLI::IsMember({"check", "realize"}));
    c_pr->add_option("a", perron_a, "trace coefficient")->required();
    c_pr->add_option("b", perron_b, "norm coefficient")->required();

    CLI::App* c_zz = app.add_subcommand("zigzag", "zigzag operations");
    c_zz->require_subcommand(1);
    CLI::App* c_zzs =
        c_zz->add_subcommand("standardize", "standardize a zigzag");
    c_zzs->add_option("literal", zz_literal, "e.g. \"0,-1,-2\"")->required();

    CLI::App* c_bd = app.add_subcommand("boundary", "boundary computations");
    c_bd->require_subcommand(1);
    CLI::App* c_bdd =
        c_bd->add_subcommand("duals", "dual divisors Z_ordE of a boundary");
    c_bdd->add_option("file", file, "boundary JSON file")->required();
    CLI::App* c_bdg = c_bd->add_subcommand("dot", "Graphviz dual graph");
    c_bdg->add_option("file", file, "boundary JSON file")->required();

    CLI::App* c_mt =
        app.add_subcommand("meet", "infimum/supremum of divisors at infinity");
    c_mt->add_option("file", file, "boundary JSON file")->required();
    c_mt->add_option("d1", d1, "first divisor literal")->required();
    c_mt->add_option("d2", d2, "second divisor literal")->required();

    CLI::App* c_mk = app.add_subcommand("markov", "Markov circle action");
    c_mk->require_subcommand(1);
    CLI::App* c_mka = c_mk->add_subcommand("act", "apply a word to a point");
    c_mka->add_option("word", word, "word over x,y,z")->required();
    c_mka->add_option("t", point, "rational or inf")->required();
    CLI::App* c_mkf =
        c_mk->add_subcommand("fixed", "loxodromic fixed points of a word");
    c_mkf->add_option("word", word, "word over x,y,z")->required();

    CLI::App* c_dg = app.add_subcommand("degree-growth",
                                        "symbolic degree sequence");
    c_dg->add_option("--map", map_expr, "e.g. \"u*v, 2*v^2-1\"")->required();
    c_dg->add_option("-n,--iterations", dg_n, "iterate count (<= 12)");
    c_dg->add_option("--term-cap", dg_cap, "intermediate term cap");

    CLI::App* c_fx = app.add_subcommand("fixtures", "recorded worked examples");
    c_fx->require_subcommand(1);
    CLI::App* c_fxv =
        c_fx->add_subcommand("verify", "replay all recorded examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        nlohmann::json j{{"error", "parse"}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        return 2;
    }

    try {
        if (c_l1->parsed()) cmd_lambda1(matrix);
        else if (c_ev->parsed()) cmd_eigenval(matrix);
        else if (c_pr->parsed()) cmd_perron(perron_mode, perron_a, perron_b);
        else if (c_zzs->parsed()) cmd_zigzag_standardize(zz_literal);
        else if (c_bdd->parsed()) cmd_boundary_duals(file);
        else if (c_bdg->parsed()) cmd_boundary_dot(file);
        else if (c_mt->parsed()) cmd_meet(file, d1, d2);
        else if (c_mka->parsed()) cmd_markov_act(word, point);
        else if (c_mkf->parsed()) cmd_markov_fixed(word);
        else if (c_dg->parsed()) cmd_degree_growth(map_expr, dg_n, dg_cap);
        else if (c_fxv->parsed()) return run_fixtures();
        return 0;
    } catch (const ParseFailure& e) {
        nlohmann::json j{{"error", "parse"}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        nlohmann::json j{{"error", "computation"}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json j{{"error", "computation"}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        return 1;
    }
}
