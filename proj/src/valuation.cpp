#include "surfdyn/valuation.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace surfdyn {

QuadNumber QDivisor::coeff(const std::string& name) const {
    auto it = coeff_.find(name);
    return it == coeff_.end() ? QuadNumber() : it->second;
}

void QDivisor::set(const std::string& name, QuadNumber v) {
    if (v.is_zero())
        coeff_.erase(name);
    else
        coeff_[name] = std::move(v);
}

bool QDivisor::rational() const {
    return std::all_of(coeff_.begin(), coeff_.end(),
                       [](const auto& kv) { return kv.second.is_rational(); });
}

QDivisor QDivisor::operator+(const QDivisor& o) const {
    QDivisor r = *this;
    for (const auto& [k, v] : o.coeff_) r.set(k, r.coeff(k) + v);
    return r;
}

QDivisor QDivisor::operator*(const QuadNumber& s) const {
    QDivisor r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : coeff_) r.set(k, v * s);
    return r;
}

QDivisor QDivisor::from_rational(const DivisorAtInfinity& d) {
    QDivisor r;
    for (const auto& [k, v] : d.coeffs()) r.set(k, QuadNumber(v));
    return r;
}

std::string QDivisor::str() const {
    if (coeff_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : coeff_) {
        if (!first) out << " + ";
        out << "(" << v.str() << ")*" << k;
        first = false;
    }
    return out.str();
}

Valuation Valuation::divisorial(const BlowupTree& tree, int node) {
    Valuation v;
    v.kind = Kind::Divisorial;
    v.node = node;
    v.scale = make_rational(1, tree.node(node).b);
    return v;
}

Valuation Valuation::ord(int node) {
    Valuation v;
    v.kind = Kind::Divisorial;
    v.node = node;
    v.scale = Rational(1);
    return v;
}

Valuation Valuation::monomial(const BlowupTree& tree, int e, int f, QuadNumber s,
                              QuadNumber t) {
    if (!tree.adjacent(e, f))
        throw Error("Valuation: monomial point requires adjacent divisors");
    int lo = e, hi = f;
    if (!tree.leq(lo, hi)) {
        std::swap(lo, hi);
        std::swap(s, t);
    }
    if (!tree.leq(lo, hi))
        throw Error("Valuation: adjacent pair is not comparable");
    if (s.sign() < 0 || t.sign() < 0 || (s.is_zero() && t.is_zero()))
        throw Error("Valuation: monomial weights must be nonnegative, not both 0");
    QuadNumber norm = s * QuadNumber(Rational(tree.node(lo).b)) +
                      t * QuadNumber(Rational(tree.node(hi).b));
    if (norm != QuadNumber(Rational(1)))
        throw Error("Valuation: monomial weights are not normalized: s b(E) + t "
                    "b(F) = " + norm.str());
    Valuation v;
    v.kind = Kind::Monomial;
    v.e = lo;
    v.f = hi;
    v.s = std::move(s);
    v.t = std::move(t);
    return v;
}

Valuation Valuation::curve_end(int node, std::string follows) {
    Valuation v;
    v.kind = Kind::CurveEnd;
    v.node = node;
    v.follows = std::move(follows);
    return v;
}

Valuation Valuation::inf_singular(std::vector<int> approx) {
    if (approx.empty())
        throw Error("Valuation: infinitely singular valuation needs a nonempty "
                    "approximating sequence");
    Valuation v;
    v.kind = Kind::InfSingular;
    v.approx = std::move(approx);
    v.node = v.approx.back();
    return v;
}

bool Valuation::divisorial_type() const {
    if (kind == Kind::Divisorial) return true;
    if (kind != Kind::Monomial) return false;
    if (s.is_zero() || t.is_zero()) return true;
    return (s / t).is_rational();
}

QuadNumber Valuation::alpha(const BlowupTree& tree) const {
    switch (kind) {
        case Kind::Divisorial: {
            const auto& n = tree.node(node);
            if (scale * Rational(n.b) != 1)
                throw Error("Valuation: skewness requires the maximal-ideal "
                            "normalization v = ord_E / b(E)");
            return QuadNumber(n.alpha);
        }
        case Kind::Monomial: {
            // alpha(v_{s,t}) = alpha(v_E) + t / b(E) on the segment [v_E, v_F].
            const auto& ne = tree.node(e);
            return QuadNumber(ne.alpha) + t / QuadNumber(Rational(ne.b));
        }
        default:
            throw Error("Valuation: skewness is infinite for this valuation");
    }
}

BlowupTree::Point Valuation::point(const BlowupTree& tree) const {
    switch (kind) {
        case Kind::Divisorial:
            return BlowupTree::node_point(node);
        case Kind::Monomial: {
            if (t.is_zero()) return BlowupTree::node_point(e);
            if (s.is_zero()) return BlowupTree::node_point(f);
            if (!divisorial_type())
                throw Error("Valuation: irrational monomial point is not a "
                            "rational tree point");
            BlowupTree::Point p;
            p.is_node = false;
            p.e = e;
            p.f = f;
            p.alpha = alpha(tree).as_rational();
            return p;
        }
        default:
            throw Error("Valuation: no finite tree point for this valuation");
    }
}

QuadNumber eval_monomial(
    const QuadNumber& s, const QuadNumber& t,
    const std::vector<std::pair<long long, long long>>& support) {
    if (support.empty()) throw Error("eval_monomial: empty support");
    bool first = true;
    QuadNumber best;
    for (const auto& [i, j] : support) {
        QuadNumber val = s * QuadNumber(Rational(i)) + t * QuadNumber(Rational(j));
        if (first || val < best) best = std::move(val);
        first = false;
    }
    return best;
}

LValue L_v(const BlowupTree& tree, const Valuation& v, const DivisorAtInfinity& d) {
    LValue out;
    switch (v.kind) {
        case Valuation::Kind::Divisorial:
            out.value = QuadNumber(v.scale * d.coeff(tree.node(v.node).name));
            return out;
        case Valuation::Kind::Monomial:
            out.value = v.s * QuadNumber(d.coeff(tree.node(v.e).name)) +
                        v.t * QuadNumber(d.coeff(tree.node(v.f).name));
            return out;
        case Valuation::Kind::CurveEnd:
            if (!v.follows.empty() && d.coeff(v.follows) != 0) {
                out.infinite = true;
                return out;
            }
            // The value stabilizes along the end; read it at the anchor.
            out.value = QuadNumber(
                make_rational(1, tree.node(v.node).b) *
                d.coeff(tree.node(v.node).name));
            return out;
        case Valuation::Kind::InfSingular:
            out.value = QuadNumber(
                make_rational(1, tree.node(v.node).b) *
                d.coeff(tree.node(v.node).name));
            return out;
    }
    throw Error("L_v: unreachable");
}

Completion local_completion(const BlowupTree& tree) {
    if (tree.mode() != TreeMode::MaximalIdeal)
        throw Error("local_completion: expects a maximal-ideal-mode tree (the "
                    "root must be an exceptional divisor)");
    Completion x;
    x.add_divisor(tree.node(0).name, -1);
    for (int i = 1; i < tree.size(); ++i) {
        const auto& n = tree.node(i);
        if (n.kind == BlowupTree::Kind::Free)
            x.blow_up_free(tree.node(n.host1).name, n.name);
        else
            x.blow_up_satellite(tree.node(n.host1).name, tree.node(n.host2).name,
                                n.name);
    }
    return x;
}

namespace {

// Z_{v_E} (maximal-ideal normalized) for every node, via the blow-up
// recursion, replaying the tree's construction.
std::vector<QDivisor> all_duals_recursive(const BlowupTree& tree) {
    std::vector<QDivisor> z;
    QDivisor z0;
    z0.set(tree.node(0).name, QuadNumber(Rational(-1)));
    z.push_back(std::move(z0));
    for (int i = 1; i < tree.size(); ++i) {
        const auto& n = tree.node(i);
        // tau^* : transport every maintained divisor across this blow-up.
        BlowupRecord rec;
        rec.satellite = n.kind == BlowupTree::Kind::Satellite;
        rec.host1 = tree.node(n.host1).name;
        if (rec.satellite) rec.host2 = tree.node(n.host2).name;
        rec.name = n.name;
        for (auto& zz : z) {
            QuadNumber mult = zz.coeff(rec.host1);
            if (rec.satellite) mult = mult + zz.coeff(rec.host2);
            zz.set(rec.name, mult);
        }
        QDivisor cur;
        if (n.kind == BlowupTree::Kind::Free) {
            cur = z[n.host1];
        } else {
            const BigInt& be = tree.node(n.host1).b;
            const BigInt& bf = tree.node(n.host2).b;
            cur = z[n.host1] * QuadNumber(make_rational(be, be + bf)) +
                  z[n.host2] * QuadNumber(make_rational(bf, be + bf));
        }
        cur.set(n.name,
                cur.coeff(n.name) - QuadNumber(make_rational(1, n.b)));
        z.push_back(std::move(cur));
    }
    return z;
}

QDivisor combine(const BlowupTree& tree, const Valuation& v,
                 const std::vector<QDivisor>& node_duals) {
    switch (v.kind) {
        case Valuation::Kind::Divisorial:
            return node_duals[v.node] *
                   QuadNumber(v.scale * Rational(tree.node(v.node).b));
        case Valuation::Kind::Monomial:
            return node_duals[v.e] *
                       (v.s * QuadNumber(Rational(tree.node(v.e).b))) +
                   node_duals[v.f] *
                       (v.t * QuadNumber(Rational(tree.node(v.f).b)));
        default:
            throw Error("local_dual: curve ends and infinitely singular "
                        "valuations have no finite local dual");
    }
}

}  // namespace

QDivisor local_dual(const BlowupTree& tree, const Valuation& v) {
    return combine(tree, v, all_duals_recursive(tree));
}

QDivisor local_dual_by_solve(const BlowupTree& tree, const Valuation& v) {
    Completion x = local_completion(tree);
    std::vector<QDivisor> duals;
    for (int i = 0; i < tree.size(); ++i) {
        DivisorAtInfinity z = x.dual_divisor(tree.node(i).name);
        duals.push_back(QDivisor::from_rational(z) *
                        QuadNumber(make_rational(1, tree.node(i).b)));
    }
    return combine(tree, v, duals);
}

QuadNumber qintersect(const Completion& x, const QDivisor& a, const QDivisor& b) {
    QuadNumber total;
    for (const auto& [e, ae] : a.coeffs()) {
        for (const auto& [f, bf] : b.coeffs()) {
            if (e == f)
                total = total + ae * bf * QuadNumber(Rational(x.divisor(e).self_int));
            else if (x.crossing(e, f))
                total = total + ae * bf;
        }
    }
    return total;
}

int realize_divisorial(BlowupTree& tree, const Valuation& v) {
    if (v.kind == Valuation::Kind::Divisorial) return v.node;
    if (v.kind != Valuation::Kind::Monomial || !v.divisorial_type())
        throw Error("realize_divisorial: valuation has no divisorial model");
    if (v.t.is_zero()) return v.e;
    if (v.s.is_zero()) return v.f;
    Rational target = v.alpha(tree).as_rational();
    int e = v.e, f = v.f;
    if (tree.node(e).alpha == target) return e;
    if (tree.node(f).alpha == target) return f;
    for (int guard = 0; guard < 100000; ++guard) {
        int m = tree.blow_up_satellite(e, f);
        const Rational& am = tree.node(m).alpha;
        if (am == target) return m;
        if (target < am)
            f = m;
        else
            e = m;
    }
    throw Error("realize_divisorial: mediant search did not terminate");
}

namespace {

// Exact position of a finite-skewness valuation: a node or a point strictly
// inside a segment, ordered by (possibly irrational) skewness.
struct Position {
    bool is_node;
    int node;
    int e, f;
    QuadNumber alpha;
};

Position position_of(const BlowupTree& tree, const Valuation& v) {
    Position p;
    if (v.kind == Valuation::Kind::Divisorial) {
        if (v.scale * Rational(tree.node(v.node).b) != 1)
            throw Error("pair_local_duals: divisorial input must be "
                        "maximal-ideal normalized (v = ord_E / b(E))");
        p.is_node = true;
        p.node = v.node;
        p.alpha = QuadNumber(tree.node(v.node).alpha);
        return p;
    }
    if (v.kind != Valuation::Kind::Monomial)
        throw Error("pair_local_duals: curve ends / infinitely singular "
                    "valuations have infinite skewness");
    if (v.t.is_zero()) {
        p.is_node = true;
        p.node = v.e;
        p.alpha = QuadNumber(tree.node(v.e).alpha);
        return p;
    }
    if (v.s.is_zero()) {
        p.is_node = true;
        p.node = v.f;
        p.alpha = QuadNumber(tree.node(v.f).alpha);
        return p;
    }
    p.is_node = false;
    p.e = v.e;
    p.f = v.f;
    p.alpha = v.alpha(tree);
    return p;
}

QuadNumber wedge_alpha(const BlowupTree& tree, const Position& p1,
                       const Position& p2) {
    if (p1.is_node && p2.is_node)
        return QuadNumber(tree.node(tree.wedge(p1.node, p2.node)).alpha);
    if (p1.is_node) return wedge_alpha(tree, p2, p1);
    if (p2.is_node) {
        if (tree.leq(p1.f, p2.node)) return p1.alpha;
        return QuadNumber(tree.node(tree.wedge(p1.e, p2.node)).alpha);
    }
    if (p1.e == p2.e && p1.f == p2.f)
        return p1.alpha <= p2.alpha ? p1.alpha : p2.alpha;
    if (tree.leq(p1.f, p2.e)) return p1.alpha;
    if (tree.leq(p2.f, p1.e)) return p2.alpha;
    return QuadNumber(tree.node(tree.wedge(p1.e, p2.e)).alpha);
}

// Refine the valuation's segment after a satellite blow-up of (e, f) that
// produced node m.
void refine(const BlowupTree& tree, Valuation& v, int m) {
    const QuadNumber am{tree.node(m).alpha};
    QuadNumber a = v.alpha(tree);
    if (a == am) {
        v = Valuation::divisorial(tree, m);
        return;
    }
    int e = v.e, f = v.f;
    QuadNumber be{Rational(tree.node(e).b)};
    QuadNumber bm{Rational(tree.node(m).b)};
    if (a < am) {
        // New segment (e, m): alpha = alpha_e + t' / b_e.
        QuadNumber t = (a - QuadNumber(tree.node(e).alpha)) * be;
        QuadNumber s = (QuadNumber(Rational(1)) - t * bm) / be;
        v = Valuation::monomial(tree, e, m, std::move(s), std::move(t));
    } else {
        QuadNumber t = (a - am) * bm;
        QuadNumber s =
            (QuadNumber(Rational(1)) - t * QuadNumber(Rational(tree.node(f).b))) /
            bm;
        v = Valuation::monomial(tree, m, f, std::move(s), std::move(t));
    }
}

}  // namespace

QuadNumber pair_local_duals(const BlowupTree& tree, const Valuation& v1,
                            const Valuation& v2) {
    // Route 1: tree wedge + skewness.
    Position p1 = position_of(tree, v1);
    Position p2 = position_of(tree, v2);
    QuadNumber expected = -wedge_alpha(tree, p1, p2);

    // Route 2: explicit divisor intersection in a sufficiently deep
    // completion.
    BlowupTree deep = tree;
    Valuation a = v1, b = v2;
    auto realize_if_rational = [&](Valuation& v) {
        if (v.kind == Valuation::Kind::Monomial && v.divisorial_type())
            v = Valuation::divisorial(deep, realize_divisorial(deep, v));
    };
    // Re-anchor a monomial valuation whose segment was subdivided by
    // intermediate blow-ups: nodes between e and f form a chain ordered by
    // skewness, so the containing segment brackets the valuation's skewness.
    auto resegment = [&](Valuation& v) {
        if (v.kind != Valuation::Kind::Monomial) return;
        if (v.t.is_zero()) {
            v = Valuation::divisorial(deep, v.e);
            return;
        }
        if (v.s.is_zero()) {
            v = Valuation::divisorial(deep, v.f);
            return;
        }
        if (deep.adjacent(v.e, v.f)) return;
        QuadNumber target = v.alpha(deep);
        int e = v.e, f = v.f;
        for (int m = 0; m < deep.size(); ++m) {
            if (m == e || m == f) continue;
            if (!deep.leq(v.e, m) || !deep.leq(m, v.f)) continue;
            QuadNumber am{deep.node(m).alpha};
            if (am == target) {
                v = Valuation::divisorial(deep, m);
                return;
            }
            if (am < target) {
                if (QuadNumber(deep.node(e).alpha) < am) e = m;
            } else {
                if (am < QuadNumber(deep.node(f).alpha)) f = m;
            }
        }
        QuadNumber be{Rational(deep.node(e).b)};
        QuadNumber tw = (target - QuadNumber(deep.node(e).alpha)) * be;
        QuadNumber sw =
            (QuadNumber(Rational(1)) - tw * QuadNumber(Rational(deep.node(f).b))) /
            be;
        v = Valuation::monomial(deep, e, f, std::move(sw), std::move(tw));
    };
    resegment(a);
    resegment(b);

    auto same_segment = [&] {
        return a.kind == Valuation::Kind::Monomial &&
               b.kind == Valuation::Kind::Monomial && a.e == b.e && a.f == b.f;
    };

    if (same_segment() && a.alpha(deep) == b.alpha(deep) &&
        a.divisorial_type()) {
        // Identical rational monomial point: both realize to one node.
        realize_if_rational(a);
        b = a;
    }
    if (same_segment() && a.alpha(deep) == b.alpha(deep)) {
        // Identical irrational point: the incarnations only converge to
        // -alpha from above; check two depths bracket the limit monotonically.
        Completion x0 = local_completion(deep);
        QuadNumber inc0 = qintersect(x0, local_dual_by_solve(deep, a),
                                     local_dual_by_solve(deep, b));
        int m = deep.blow_up_satellite(a.e, a.f);
        refine(deep, a, m);
        refine(deep, b, m);
        Completion x1 = local_completion(deep);
        QuadNumber inc1 = qintersect(x1, local_dual_by_solve(deep, a),
                                     local_dual_by_solve(deep, b));
        if (!(inc1 <= inc0 && expected <= inc1))
            throw Error("pair_local_duals: incarnation sequence failed to "
                        "converge towards -alpha");
        return expected;
    }

    for (int guard = 0; same_segment(); ++guard) {
        if (guard > 100000)
            throw Error("pair_local_duals: segment separation did not terminate");
        int m = deep.blow_up_satellite(a.e, a.f);
        refine(deep, a, m);
        refine(deep, b, m);
    }
    realize_if_rational(a);
    resegment(b);
    realize_if_rational(b);
    resegment(a);

    Completion x = local_completion(deep);
    QuadNumber computed = qintersect(x, local_dual_by_solve(deep, a),
                                     local_dual_by_solve(deep, b));
    if (computed != expected)
        throw Error("pair_local_duals: tree route " + expected.str() +
                    " disagrees with divisor route " + computed.str());
    return computed;
}

std::string quad_to_json(const QuadNumber& x) {
    nlohmann::json j{{"p", to_string(x.p())},
                     {"q", to_string(x.q())},
                     {"d", x.d().str()}};
    return j.dump();
}

QuadNumber quad_from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        return QuadNumber(parse_rational(j.at("p").get<std::string>()),
                          parse_rational(j.value("q", std::string("0"))),
                          BigInt(j.value("d", std::string("0"))));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("QuadNumber JSON error: ") + e.what());
    }
}

std::string valuation_to_json(const BlowupTree& tree, const Valuation& v) {
    nlohmann::json j;
    switch (v.kind) {
        case Valuation::Kind::Divisorial:
            j["kind"] = "divisorial";
            j["node"] = tree.node(v.node).name;
            j["scale"] = to_string(v.scale);
            break;
        case Valuation::Kind::Monomial:
            j["kind"] = "monomial";
            j["at"] = {tree.node(v.e).name, tree.node(v.f).name};
            j["s"] = nlohmann::json::parse(quad_to_json(v.s));
            j["t"] = nlohmann::json::parse(quad_to_json(v.t));
            break;
        case Valuation::Kind::CurveEnd:
            j["kind"] = "curve-end";
            j["node"] = tree.node(v.node).name;
            if (!v.follows.empty()) j["follows"] = v.follows;
            break;
        case Valuation::Kind::InfSingular: {
            j["kind"] = "inf-singular";
            auto arr = nlohmann::json::array();
            for (int n : v.approx) arr.push_back(tree.node(n).name);
            j["approx"] = arr;
            break;
        }
    }
    return j.dump();
}

Valuation valuation_from_json(const BlowupTree& tree, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("valuation JSON parse error: ") + e.what());
    }
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "divisorial") {
            Valuation v = Valuation::ord(tree.find(j.at("node").get<std::string>()));
            if (j.contains("scale"))
                v.scale = parse_rational(j.at("scale").get<std::string>());
            else
                v = Valuation::divisorial(tree, v.node);
            return v;
        }
        if (kind == "monomial") {
            int e = tree.find(j.at("at").at(0).get<std::string>());
            int f = tree.find(j.at("at").at(1).get<std::string>());
            return Valuation::monomial(tree, e, f, quad_from_json(j.at("s").dump()),
                                       quad_from_json(j.at("t").dump()));
        }
        if (kind == "curve-end")
            return Valuation::curve_end(tree.find(j.at("node").get<std::string>()),
                                        j.value("follows", std::string()));
        if (kind == "inf-singular") {
            std::vector<int> approx;
            for (const auto& n : j.at("approx"))
                approx.push_back(tree.find(n.get<std::string>()));
            return Valuation::inf_singular(std::move(approx));
        }
        throw Error("valuation JSON: unknown kind " + kind);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("valuation JSON schema error: ") + e.what());
    }
}

}  // namespace surfdyn
