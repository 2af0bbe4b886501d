#include "surfdyn/dynamics.hpp"

#include <json.hpp>

namespace surfdyn {

MonomialEndo MonomialEndo::from_matrix(const IntMat2& A, bool tame,
                                       bool pseudomonomial) {
    if (!A.nonnegative())
        throw Error("MonomialEndo: exponent matrix must be nonnegative");
    if (A.det() == 0) throw Error("MonomialEndo: exponent matrix is singular");
    MonomialEndo f;
    f.A = A;
    f.tame = tame;
    f.pseudomonomial = pseudomonomial;
    return f;
}

BigInt MonomialEndo::lambda2() const { return abs(A.det()); }

QuadNumber MonomialEndo::lambda1() const { return spectral_radius(A); }

MonomialEndo MonomialEndo::iterate(int n) const {
    if (n < 0) throw Error("MonomialEndo: negative iterate");
    MonomialEndo f = *this;
    f.A = A.pow(unsigned(n));
    return f;
}

Weights pushforward(const MonomialEndo& f, const Weights& v) {
    return Weights{v.s * QuadNumber(Rational(f.A.a)) +
                       v.t * QuadNumber(Rational(f.A.b)),
                   v.s * QuadNumber(Rational(f.A.c)) +
                       v.t * QuadNumber(Rational(f.A.d))};
}

std::string to_string(EigenType t) {
    return t == EigenType::Divisorial ? "divisorial" : "irrational";
}

EigenData eigenvaluation(const MonomialEndo& f) {
    EigenData e;
    e.lambda1 = f.lambda1();
    e.lambda2 = f.lambda2();
    e.gap = e.lambda1 * e.lambda1 > QuadNumber(Rational(e.lambda2));

    // Perron eigenvector of A = [[a,b],[c,d]] for the eigenvalue lambda1:
    // (b, lambda1 - a), or (lambda1 - d, c), or a coordinate axis when A is
    // diagonal.
    QuadNumber s, t;
    if (f.A.b != 0) {
        s = QuadNumber(Rational(f.A.b));
        t = e.lambda1 - QuadNumber(Rational(f.A.a));
    } else if (f.A.c != 0) {
        s = e.lambda1 - QuadNumber(Rational(f.A.d));
        t = QuadNumber(Rational(f.A.c));
    } else if (f.A.a == f.A.d) {
        s = t = QuadNumber(Rational(1));
    } else if (f.A.a > f.A.d) {
        s = QuadNumber(Rational(1));
        t = QuadNumber();
    } else {
        s = QuadNumber();
        t = QuadNumber(Rational(1));
    }
    if (s.sign() < 0 || t.sign() < 0)
        throw Error("eigenvaluation: Perron eigenvector is not nonnegative");
    // Normalize: t = 1 when t != 0 (the v_{1,t} chart), else s = 1.
    if (!t.is_zero()) {
        s = s / t;
        t = QuadNumber(Rational(1));
    } else {
        s = QuadNumber(Rational(1));
    }
    e.eigen = Weights{s, t};

    if (s.is_zero() || t.is_zero())
        e.type = EigenType::Divisorial;
    else
        e.type = (s / t).is_rational() ? EigenType::Divisorial
                                       : EigenType::Irrational;

    // Eigen equation, exact: f_* v_* = lambda1 v_*.
    Weights img = pushforward(f, e.eigen);
    if (img.s != e.lambda1 * e.eigen.s || img.t != e.lambda1 * e.eigen.t)
        throw Error("eigenvaluation: eigen equation f_* v = lambda1 v failed");
    return e;
}

Weights normalize_for_segment(const Weights& w, const BigInt& bE,
                              const BigInt& bF) {
    QuadNumber norm = w.s * QuadNumber(Rational(bE)) +
                      w.t * QuadNumber(Rational(bF));
    if (norm.sign() <= 0)
        throw Error("normalize_for_segment: weights do not embed in the "
                    "segment");
    return Weights{w.s / norm, w.t / norm};
}

SkewnessAnalysis skewness_mobius(const MonomialEndo& f, const IntMat2& pi) {
    QuadNumber l1 = f.lambda1();
    QuadNumber bound = QuadNumber(Rational(f.lambda2())) / (l1 * l1);
    if (!(bound < QuadNumber(Rational(1))))
        throw Error("skewness_mobius: requires the gap lambda1^2 > lambda2");

    SkewnessAnalysis out;
    // M_f on the skewness coordinate, from A = [[a,b],[c,d]].
    IntMat2 mf(f.A.d, f.A.c, f.A.b, f.A.a);
    out.M = (MobiusMap(mf).compose(MobiusMap(pi).inverse())).matrix();
    out.cls = MobiusMap(out.M).classify();
    if (out.cls.type != MobiusType::Loxodromic)
        throw Error("skewness_mobius: map on the skewness coordinate is not "
                    "loxodromic");
    out.fixed_at_infinity = out.cls.infinite_fixed[0];
    if (!out.fixed_at_infinity) out.fixed_attracting = out.cls.fixed[0];
    out.multiplier = out.cls.multiplier[0];
    out.bound_squared = bound;
    if (!(out.multiplier * out.multiplier <= bound))
        throw Error("skewness_mobius: multiplier bound sqrt(lambda2/lambda1^2) "
                    "violated");
    return out;
}

IntMat2 divisorial_pi(const BigInt& n0) {
    return IntMat2(1, 0, n0, 1);
}

std::string to_string(NormalForm n) {
    switch (n) {
        case NormalForm::Monomial: return "monomial";
        case NormalForm::Pseudomonomial: return "pseudomonomial";
        case NormalForm::InfinitelySingularType: return "infinitely-singular-type";
        case NormalForm::DivisorialType: return "divisorial-type";
        case NormalForm::Elliptic: return "elliptic";
    }
    throw Error("classify_normal_form: unreachable");
}

NormalForm classify_normal_form(const EigenData& e, bool tame,
                                bool elliptic_boundary) {
    if (elliptic_boundary) return NormalForm::Elliptic;
    if (e.type == EigenType::Irrational)
        return tame ? NormalForm::Monomial : NormalForm::Pseudomonomial;
    if (e.lambda1 > QuadNumber(Rational(e.lambda2)))
        throw Error("classify_normal_form: divisorial eigenvaluation with "
                    "lambda1 > lambda2 is inconsistent");
    return NormalForm::DivisorialType;
}

FixtureEndo fixture_endo(const std::string& name) {
    if (name == "S2-f")
        return FixtureEndo{"S2-f", QuadNumber(Rational(2)), BigInt(2),
                           "divisorial"};
    if (name == "S2-g")
        return FixtureEndo{"S2-g", QuadNumber(Rational(3)), BigInt(2),
                           "inf-singular"};
    throw Error("fixture_endo: unknown fixture " + name);
}

NormalForm classify_fixture(const FixtureEndo& f) {
    if (f.eigen_kind == "inf-singular") {
        if (!f.lambda1.is_integer() || f.lambda1 < QuadNumber(Rational(2)))
            throw Error("classify_fixture: infinitely singular eigenvaluation "
                        "requires an integer lambda1 >= 2");
        return NormalForm::InfinitelySingularType;
    }
    if (f.eigen_kind == "divisorial") {
        if (f.lambda1 > QuadNumber(Rational(f.lambda2)))
            throw Error("classify_fixture: divisorial eigenvaluation with "
                        "lambda1 > lambda2 is inconsistent");
        return NormalForm::DivisorialType;
    }
    throw Error("classify_fixture: unknown eigen kind " + f.eigen_kind);
}

EndoSpec endo_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("endomorphism JSON parse error: ") + e.what());
    }
    try {
        EndoSpec spec;
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "monomial") {
            const auto& m = j.at("matrix");
            IntMat2 A(BigInt(m.at(0).at(0).get<long long>()),
                      BigInt(m.at(0).at(1).get<long long>()),
                      BigInt(m.at(1).at(0).get<long long>()),
                      BigInt(m.at(1).at(1).get<long long>()));
            spec.mono = MonomialEndo::from_matrix(A, j.value("tame", true),
                                                  j.value("pseudomonomial", false));
            return spec;
        }
        if (kind == "fixture") {
            spec.is_fixture = true;
            spec.fix = fixture_endo(j.at("name").get<std::string>());
            return spec;
        }
        throw Error("endomorphism JSON: unknown kind " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("endomorphism JSON schema error: ") + e.what());
    }
}

std::string endo_to_json(const EndoSpec& e) {
    nlohmann::json j;
    if (e.is_fixture) {
        j["kind"] = "fixture";
        j["name"] = e.fix.name;
    } else {
        j["kind"] = "monomial";
        j["matrix"] = {{e.mono.A.a.convert_to<long long>(),
                        e.mono.A.b.convert_to<long long>()},
                       {e.mono.A.c.convert_to<long long>(),
                        e.mono.A.d.convert_to<long long>()}};
        j["tame"] = e.mono.tame;
        if (e.mono.pseudomonomial) j["pseudomonomial"] = true;
    }
    return j.dump();
}

}  // namespace surfdyn
