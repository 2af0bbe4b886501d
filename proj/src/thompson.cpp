#include "surfdyn/thompson.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <utility>

namespace surfdyn {

namespace {

// Linear order on the circle cut at the glue point: inf is the maximum.
bool circle_less(const ExtRat& a, const ExtRat& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
}

// Reduced integer lift (p, q) of a circle point, q >= 0.  inf lifts to
// -1/0 as a left (counterclockwise-start) endpoint and +1/0 as a right one.
std::pair<BigInt, BigInt> lift(const ExtRat& t, bool left) {
    if (t.infinite) return {left ? BigInt(-1) : BigInt(1), BigInt(0)};
    return {numerator(t.value), denominator(t.value)};
}

bool proj_equal(const IntMat2& m, const IntMat2& o) {
    if (m == o) return true;
    return m.a == -o.a && m.b == -o.b && m.c == -o.c && m.d == -o.d;
}

IntMat2 canonical_sign(IntMat2 m) {
    const BigInt* first = nullptr;
    for (const BigInt* e : {&m.a, &m.b, &m.c, &m.d})
        if (*e != 0) {
            first = e;
            break;
        }
    if (first != nullptr && *first < 0)
        return IntMat2(-m.a, -m.b, -m.c, -m.d);
    return m;
}

QuadNumber mobius_derivative(const IntMat2& m, const QuadNumber& t) {
    QuadNumber den =
        QuadNumber(Rational(m.c)) * t + QuadNumber(Rational(m.d));
    return QuadNumber(Rational(m.det())) / (den * den);
}

// Derivative in the 1/t chart; only meaningful when the map fixes inf
// (then c = 0 and a != 0).
QuadNumber mobius_derivative_at_inf(const IntMat2& m) {
    return QuadNumber(make_rational(m.det(), m.a * m.a));
}

// A rational point strictly inside the interval [lo, hi] (counterclockwise).
// Farey intervals with two finite endpoints never wrap, so lo < hi there.
ExtRat interior_sample(const ExtRat& lo, const ExtRat& hi) {
    if (lo.infinite) return ExtRat(hi.value - 1);
    if (hi.infinite) return ExtRat(lo.value + 1);
    return ExtRat((lo.value + hi.value) / 2);
}

BigInt floor_rat(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
    return q;
}

// The fraction of smallest denominator in the open interval (lo, hi) — the
// Stern-Brocot pivot of the interval.
Rational simplest_in(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw Error("simplest_in: empty interval");
    if (lo < 0 && 0 < hi) return Rational(0);
    if (hi <= 0) return -simplest_in(-hi, -lo);
    // 0 <= lo < hi.
    BigInt i = floor_rat(lo);
    if (Rational(i + 1) < hi) return Rational(i + 1);
    // No integer strictly inside; x = i + 1/y with y > 1/(hi - i).
    Rational ylo = 1 / (hi - Rational(i));
    Rational y;
    if (lo == Rational(i))
        y = Rational(floor_rat(ylo) + 1);
    else
        y = simplest_in(ylo, 1 / (lo - Rational(i)));
    return Rational(i) + 1 / y;
}

}  // namespace

// Appends to `out` the interior vertices of the Farey-tessellation path from
// a to b, so that consecutive points (including the endpoints) are Farey
// pairs.  Declared below farey_interval.
static void farey_path(const ExtRat& a, const ExtRat& b,
                       std::vector<ExtRat>& out, int depth = 0);

bool farey_interval(const ExtRat& a, const ExtRat& b) {
    if (a == b) return false;
    auto [p, q] = lift(a, /*left=*/true);
    auto [r, s] = lift(b, /*left=*/false);
    return q * r - p * s == 1;
}

static void farey_path(const ExtRat& a, const ExtRat& b,
                       std::vector<ExtRat>& out, int depth) {
    if (depth > 512) throw Error("farey_path: subdivision too deep");
    if (farey_interval(a, b)) return;
    ExtRat m;
    if (b.infinite)
        m = ExtRat(Rational(floor_rat(a.value) + 1));
    else if (a.infinite)
        m = ExtRat(Rational(-floor_rat(-b.value) - 1));
    else
        m = ExtRat(simplest_in(a.value, b.value));
    farey_path(a, m, out, depth + 1);
    out.push_back(m);
    farey_path(m, b, out, depth + 1);
}

bool circle_between(const ExtRat& a, const ExtRat& b, const ExtRat& c) {
    if (a == b || b == c || a == c) return false;
    if (circle_less(a, c)) return circle_less(a, b) && circle_less(b, c);
    return circle_less(a, b) || circle_less(b, c);
}

void FareyCircle::validate() const {
    if (marks.size() < 2)
        throw Error("FareyCircle: need at least two marked points");
    for (size_t i = 0; i < marks.size(); ++i) {
        const ExtRat& a = marks[i];
        const ExtRat& b = marks[(i + 1) % marks.size()];
        if (i + 1 < marks.size() && !circle_less(a, b))
            throw Error("FareyCircle: marks not in cyclic order (inf last)");
        if (!farey_interval(a, b))
            throw Error("FareyCircle: consecutive marks " + to_string(a) +
                        ", " + to_string(b) + " are not a Farey pair");
    }
}

ThompsonElement ThompsonElement::from_pieces(
    std::vector<ThompsonPiece> pieces) {
    const int n = int(pieces.size());
    if (n < 2) throw Error("ThompsonElement: need at least two pieces");

    int det_sign = 0;
    for (auto& p : pieces) {
        if (p.lo == p.hi)
            throw Error("ThompsonElement: degenerate piece interval");
        BigInt det = p.map.matrix().det();
        if (det != 1 && det != -1)
            throw Error("ThompsonElement: piece matrix not in GL_2(Z)");
        int s = det > 0 ? 1 : -1;
        if (det_sign == 0)
            det_sign = s;
        else if (det_sign != s)
            throw Error("ThompsonElement: mixed orientations across pieces");
        if (!farey_interval(p.lo, p.hi))
            throw Error("ThompsonElement: source [" + to_string(p.lo) + ", " +
                        to_string(p.hi) + "] is not a Farey interval");
        p.map = MobiusMap(canonical_sign(p.map.matrix()));
    }
    const bool reversing = det_sign < 0;

    // Sources chain around the circle exactly once.
    int descents = 0;
    for (int i = 0; i < n; ++i) {
        const ThompsonPiece& p = pieces[i];
        const ThompsonPiece& next = pieces[(i + 1) % n];
        if (!(p.hi == next.lo))
            throw Error("ThompsonElement: source intervals do not chain");
        if (!circle_less(p.lo, next.lo)) ++descents;
    }
    if (descents != 1)
        throw Error("ThompsonElement: sources do not wind the circle once");

    // Targets: endpoint images, continuity at breakpoints, Farey condition,
    // single winding.
    std::vector<ExtRat> tlo(n), thi(n);
    for (int i = 0; i < n; ++i) {
        ExtRat a = pieces[i].map.apply(pieces[i].lo);
        ExtRat b = pieces[i].map.apply(pieces[i].hi);
        tlo[i] = reversing ? b : a;
        thi[i] = reversing ? a : b;
        if (!farey_interval(tlo[i], thi[i]))
            throw Error("ThompsonElement: target [" + to_string(tlo[i]) +
                        ", " + to_string(thi[i]) +
                        "] is not a Farey interval");
    }
    descents = 0;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        const ExtRat& end_i = reversing ? tlo[i] : thi[i];
        const ExtRat& start_j = reversing ? thi[j] : tlo[j];
        if (!(end_i == start_j))
            throw Error("ThompsonElement: discontinuity at breakpoint " +
                        to_string(pieces[j].lo));
        const ExtRat& a = reversing ? thi[i] : tlo[i];
        const ExtRat& b = reversing ? thi[j] : tlo[j];
        if (!circle_less(reversing ? b : a, reversing ? a : b)) ++descents;
    }
    if (descents != 1)
        throw Error("ThompsonElement: targets do not wind the circle once");

    ThompsonElement e;
    e.pieces_ = std::move(pieces);
    e.reversing_ = reversing;
    // Canonical rotation: start at the circle-minimal breakpoint.
    int best = 0;
    for (int i = 1; i < int(e.pieces_.size()); ++i)
        if (circle_less(e.pieces_[i].lo, e.pieces_[best].lo)) best = i;
    std::rotate(e.pieces_.begin(), e.pieces_.begin() + best, e.pieces_.end());
    return e;
}

ThompsonElement ThompsonElement::identity(const FareyCircle& circle) {
    circle.validate();
    std::vector<ThompsonPiece> pieces;
    for (size_t i = 0; i < circle.marks.size(); ++i)
        pieces.push_back({circle.marks[i],
                          circle.marks[(i + 1) % circle.marks.size()],
                          MobiusMap(IntMat2::identity())});
    return from_pieces(std::move(pieces));
}

int ThompsonElement::piece_at(const ExtRat& t) const {
    for (int i = 0; i < int(pieces_.size()); ++i) {
        const ThompsonPiece& p = pieces_[i];
        if (t == p.lo || circle_between(p.lo, t, p.hi)) return i;
    }
    throw Error("ThompsonElement: point not covered by any piece");
}

int ThompsonElement::piece_containing(const QuadNumber& t) const {
    if (t.is_rational()) return piece_at(ExtRat(t.as_rational()));
    for (int i = 0; i < int(pieces_.size()); ++i) {
        const ThompsonPiece& p = pieces_[i];
        bool in;
        if (p.lo.infinite)
            in = t < QuadNumber(p.hi.value);
        else if (p.hi.infinite)
            in = QuadNumber(p.lo.value) < t;
        else
            in = QuadNumber(p.lo.value) < t && t < QuadNumber(p.hi.value);
        if (in) return i;
    }
    throw Error("ThompsonElement: point not covered by any piece");
}

ExtRat ThompsonElement::apply(const ExtRat& t) const {
    return pieces_[piece_at(t)].map.apply(t);
}

QuadNumber ThompsonElement::apply(const QuadNumber& t) const {
    return pieces_[piece_containing(t)].map.apply(t);
}

ExtRat ThompsonElement::preimage(const ExtRat& t) const {
    for (const ThompsonPiece& p : pieces_) {
        ExtRat cand = p.map.inverse().apply(t);
        if (cand == p.lo || cand == p.hi ||
            circle_between(p.lo, cand, p.hi))
            return cand;
    }
    throw Error("ThompsonElement: preimage not found");
}

ThompsonPiece ThompsonElement::target(int i) const {
    const ThompsonPiece& p = pieces_.at(size_t(i));
    ExtRat a = p.map.apply(p.lo);
    ExtRat b = p.map.apply(p.hi);
    if (reversing_) std::swap(a, b);
    return ThompsonPiece{a, b, p.map};
}

ThompsonElement ThompsonElement::inverse() const {
    std::vector<ThompsonPiece> pieces;
    for (int i = 0; i < int(pieces_.size()); ++i) {
        ThompsonPiece t = target(i);
        pieces.push_back({t.lo, t.hi, t.map.inverse()});
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const ThompsonPiece& a, const ThompsonPiece& b) {
                  return circle_less(a.lo, b.lo);
              });
    return from_pieces(std::move(pieces));
}

bool ThompsonElement::is_identity() const {
    for (const ThompsonPiece& p : pieces_)
        if (!proj_equal(p.map.matrix(), IntMat2::identity())) return false;
    return true;
}

bool ThompsonElement::operator==(const ThompsonElement& o) const {
    // Equality of the underlying circle maps; the two presentations may be
    // subdivided differently.
    std::vector<ExtRat> cuts;
    for (const ThompsonPiece& p : pieces_) cuts.push_back(p.lo);
    for (const ThompsonPiece& p : o.pieces_) cuts.push_back(p.lo);
    std::sort(cuts.begin(), cuts.end(), circle_less);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (size_t i = 0; i < cuts.size(); ++i) {
        ExtRat sample =
            interior_sample(cuts[i], cuts[(i + 1) % cuts.size()]);
        if (!proj_equal(pieces_[size_t(piece_at(sample))].map.matrix(),
                        o.pieces_[size_t(o.piece_at(sample))].map.matrix()))
            return false;
    }
    return true;
}

std::string ThompsonElement::str() const {
    std::string out;
    for (int i = 0; i < int(pieces_.size()); ++i) {
        ThompsonPiece t = target(i);
        if (!out.empty()) out += "; ";
        out += "[" + to_string(pieces_[i].lo) + "," +
               to_string(pieces_[i].hi) + "] -" + pieces_[i].map.str() +
               "-> [" + to_string(t.lo) + "," + to_string(t.hi) + "]";
    }
    return out;
}

std::string ThompsonElement::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < int(pieces_.size()); ++i) {
        const ThompsonPiece& p = pieces_[i];
        ThompsonPiece t = target(i);
        const IntMat2& m = p.map.matrix();
        j.push_back({{"source", {to_string(p.lo), to_string(p.hi)}},
                     {"matrix",
                      {{to_string(m.a), to_string(m.b)},
                       {to_string(m.c), to_string(m.d)}}},
                     {"target", {to_string(t.lo), to_string(t.hi)}}});
    }
    return j.dump();
}

ThompsonElement compose(const ThompsonElement& g, const ThompsonElement& h) {
    // Breakpoints of the result: h's own plus the h-preimages of g's.
    std::vector<ExtRat> cuts;
    for (const ThompsonPiece& p : h.pieces()) cuts.push_back(p.lo);
    for (const ThompsonPiece& p : g.pieces())
        cuts.push_back(h.preimage(p.lo));
    std::sort(cuts.begin(), cuts.end(), circle_less);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto matrix_at = [](const ThompsonElement& e, const ExtRat& t) {
        for (const ThompsonPiece& q : e.pieces())
            if (t == q.lo || circle_between(q.lo, t, q.hi))
                return q.map.matrix();
        throw Error("compose: point not covered by any piece");
    };

    std::vector<ThompsonPiece> pieces;
    for (size_t i = 0; i < cuts.size(); ++i) {
        ExtRat lo = cuts[i];
        ExtRat hi = cuts[(i + 1) % cuts.size()];
        ExtRat sample = interior_sample(lo, hi);
        IntMat2 Mh = matrix_at(h, sample);
        IntMat2 Mg = matrix_at(g, MobiusMap(Mh).apply(sample));
        MobiusMap m(Mg * Mh);
        // A refinement cell need not be a Farey interval; subdivide it along
        // the Farey-tessellation path between its endpoints.
        std::vector<ExtRat> path = {lo};
        farey_path(lo, hi, path);
        path.push_back(hi);
        for (size_t k = 0; k + 1 < path.size(); ++k)
            pieces.push_back({path[k], path[k + 1], m});
    }

    // Merge adjacent pieces with the same projective matrix whenever the
    // merged source stays a Farey interval; iterate to a fixed point.
    bool changed = true;
    while (changed && pieces.size() > 2) {
        changed = false;
        for (size_t i = 0; i < pieces.size() && pieces.size() > 2; ++i) {
            size_t j = (i + 1) % pieces.size();
            if (!proj_equal(pieces[i].map.matrix(), pieces[j].map.matrix()))
                continue;
            if (!farey_interval(pieces[i].lo, pieces[j].hi)) continue;
            // Never merge across the matrix's pole: the merged target would
            // wrap through inf.
            const IntMat2& m = pieces[i].map.matrix();
            if (m.c != 0 && pieces[j].lo == ExtRat(make_rational(-m.d, m.c)))
                continue;
            pieces[i].hi = pieces[j].hi;
            pieces.erase(pieces.begin() + long(j));
            changed = true;
            if (j == 0) break;  // merged across the rotation point
        }
    }
    return ThompsonElement::from_pieces(std::move(pieces));
}

MarkovCircle markov_circle() {
    MarkovCircle mc;
    mc.circle.marks = {ExtRat(-1), ExtRat(0), ExtRat::inf()};
    mc.circle.validate();
    auto gen = [&](IntMat2 m) {
        // Breakpoints: the marks plus the pole of the matrix (the preimage of
        // inf must be a breakpoint so that no target interval wraps).
        std::vector<ExtRat> cuts = mc.circle.marks;
        if (m.c != 0) {
            ExtRat pole{make_rational(-m.d, m.c)};
            if (std::find(cuts.begin(), cuts.end(), pole) == cuts.end())
                cuts.push_back(pole);
        }
        std::sort(cuts.begin(), cuts.end(), circle_less);
        std::vector<ThompsonPiece> pieces;
        for (size_t i = 0; i < cuts.size(); ++i)
            pieces.push_back(
                {cuts[i], cuts[(i + 1) % cuts.size()], MobiusMap(m)});
        return ThompsonElement::from_pieces(std::move(pieces));
    };
    mc.sx = gen(IntMat2(-1, -2, 0, 1));
    mc.sy = gen(IntMat2(1, 0, 0, -1));
    mc.sz = gen(IntMat2(1, 0, -2, -1));
    return mc;
}

ThompsonElement markov_word(const std::string& word) {
    static const MarkovCircle mc = markov_circle();
    ThompsonElement acc = ThompsonElement::identity(mc.circle);
    for (char c : word) {
        switch (c) {
            case 'x': acc = compose(acc, mc.sx); break;
            case 'y': acc = compose(acc, mc.sy); break;
            case 'z': acc = compose(acc, mc.sz); break;
            default:
                throw Error(std::string("markov_word: bad generator '") + c +
                            "' (expected x, y, or z)");
        }
    }
    return acc;
}

namespace {

// Closed containment of a fixed point (possibly at infinity) in [lo, hi].
bool fixed_in_piece(const ThompsonPiece& p, bool at_inf,
                    const QuadNumber& fp) {
    if (at_inf) return p.lo.infinite || p.hi.infinite;
    if (p.lo.infinite) return !(QuadNumber(p.hi.value) < fp);
    if (p.hi.infinite) return !(fp < QuadNumber(p.lo.value));
    return !(fp < QuadNumber(p.lo.value)) && !(QuadNumber(p.hi.value) < fp);
}

}  // namespace

LoxodromicFixedPoints loxodromic_analysis(const ThompsonElement& g,
                                          int depth) {
    if (depth < 1) throw Error("loxodromic_analysis: depth must be >= 1");
    const QuadNumber one{Rational(1)};
    LoxodromicFixedPoints out;
    bool have_attracting = false, have_repelling = false;

    auto record = [&](bool at_inf, const QuadNumber& fp) {
        // Confirm fp is fixed by g itself and read off g's own derivative.
        QuadNumber mult;
        if (at_inf) {
            if (!(g.apply(ExtRat::inf()) == ExtRat::inf())) return;
            // The piece starting at inf carries the right germ at the fixed
            // point; its matrix fixes inf, so c = 0.
            const IntMat2* m = nullptr;
            for (const ThompsonPiece& q : g.pieces())
                if (q.lo.infinite && q.map.matrix().c == 0)
                    m = &q.map.matrix();
            if (m == nullptr) return;
            mult = mobius_derivative_at_inf(*m);
        } else {
            if (!(g.apply(fp) == fp)) return;
            // Locate a piece of g containing fp whose matrix fixes fp (a
            // rational fp may sit on a breakpoint shared by two pieces).
            const IntMat2* m = nullptr;
            for (const ThompsonPiece& q : g.pieces()) {
                if (!fixed_in_piece(q, false, fp)) continue;
                const IntMat2& mm = q.map.matrix();
                QuadNumber num = QuadNumber(Rational(mm.a)) * fp +
                                 QuadNumber(Rational(mm.b));
                QuadNumber den = QuadNumber(Rational(mm.c)) * fp +
                                 QuadNumber(Rational(mm.d));
                if (!den.is_zero() && num == fp * den) {
                    m = &mm;
                    break;
                }
            }
            if (m == nullptr) return;
            mult = mobius_derivative(*m, fp);
        }
        QuadNumber m2 = mult * mult;
        if (m2 < one && !have_attracting) {
            out.attracting_at_infinity = at_inf;
            out.attracting = fp;
            out.attracting_multiplier = mult;
            have_attracting = true;
        } else if (one < m2 && !have_repelling) {
            out.repelling_at_infinity = at_inf;
            out.repelling = fp;
            out.repelling_multiplier = mult;
            have_repelling = true;
        }
    };

    ThompsonElement gk = g;
    for (int k = 1; k <= depth; ++k) {
        if (k > 1) gk = compose(gk, g);
        for (const ThompsonPiece& p : gk.pieces()) {
            MobiusClassification cls = MobiusMap(p.map.matrix()).classify();
            if (cls.type != MobiusType::Loxodromic) continue;
            for (int i = 0; i < 2; ++i) {
                bool at_inf = cls.infinite_fixed[i];
                QuadNumber fp = at_inf ? QuadNumber() : cls.fixed[i];
                if (!fixed_in_piece(p, at_inf, fp)) continue;
                record(at_inf, fp);
            }
        }
        if (have_attracting && have_repelling) return out;
    }
    throw Error("loxodromic_analysis: no loxodromic piece with interior "
                "fixed points within depth " + std::to_string(depth));
}

bool free_product_check(int L) {
    if (L < 1 || L > 10)
        throw Error("free_product_check: L must be in [1, 10]");
    const MarkovCircle mc = markov_circle();
    const ThompsonElement* gens[3] = {&mc.sx, &mc.sy, &mc.sz};

    struct Frame {
        ThompsonElement elem;
        int last;
        int len;
    };
    std::vector<Frame> stack;
    for (int i = 0; i < 3; ++i)
        stack.push_back({*gens[i], i, 1});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.elem.is_identity()) return false;
        if (f.len == L) continue;
        for (int i = 0; i < 3; ++i) {
            if (i == f.last) continue;  // reduced words only
            stack.push_back({compose(f.elem, *gens[i]), i, f.len + 1});
        }
    }
    return true;
}

}  // namespace surfdyn
