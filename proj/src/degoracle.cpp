#include "surfdyn/degoracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace surfdyn {

long long Poly::degree() const {
    long long d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, e.first + e.second);
    return d;
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms) {
        std::string t;
        Rational a = c;
        if (!out.empty()) {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        bool bare = e.first == 0 && e.second == 0;
        if (a != 1 || bare) t += to_string(a);
        if (e.first > 0) {
            if (!t.empty()) t += "*";
            t += "x";
            if (e.first > 1) t += "^" + std::to_string(e.first);
        }
        if (e.second > 0) {
            if (!t.empty()) t += "*";
            t += "y";
            if (e.second > 1) t += "^" + std::to_string(e.second);
        }
        out += t;
    }
    return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b.terms) {
        Rational& slot = out.terms[e];
        slot += c;
        if (slot == 0) out.terms.erase(e);
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b, size_t term_cap) {
    Poly out;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::pair<long long, long long> e{ea.first + eb.first,
                                              ea.second + eb.second};
            Rational& slot = out.terms[e];
            slot += ca * cb;
            if (slot == 0) out.terms.erase(e);
            if (out.terms.size() > term_cap)
                throw TermCapExceeded("polynomial term cap exceeded");
        }
    return out;
}

Poly poly_pow(const Poly& a, long long e, size_t term_cap) {
    if (e < 0) throw Error("poly_pow: negative exponent");
    Poly out;
    out.terms[{0, 0}] = Rational(1);
    Poly base = a;
    while (e > 0) {
        if (e & 1) out = poly_mul(out, base, term_cap);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base, term_cap);
    }
    return out;
}

Poly poly_subst(const Poly& p, const Poly& X, const Poly& Y,
                size_t term_cap) {
    if (p.terms.empty()) return Poly{};
    // Double Horner scheme: p = sum_j (sum_i c_ij x^i) y^j evaluated at
    // (X, Y), so each step multiplies the accumulator by a (typically small)
    // component instead of raising large intermediates to powers.
    std::map<long long, std::map<long long, Rational>> rows;  // j -> i -> c
    long long max_j = 0;
    for (const auto& [e, c] : p.terms) {
        rows[e.second][e.first] = c;
        max_j = std::max(max_j, e.second);
    }
    auto horner_x = [&](const std::map<long long, Rational>& row) {
        long long max_i = row.rbegin()->first;
        Poly h;
        for (long long i = max_i; i >= 0; --i) {
            if (i != max_i) h = poly_mul(h, X, term_cap);
            auto it = row.find(i);
            if (it != row.end()) {
                Poly c;
                c.terms[{0, 0}] = it->second;
                h = poly_add(h, c);
            }
        }
        return h;
    };
    Poly out;
    for (long long j = max_j; j >= 0; --j) {
        if (j != max_j) out = poly_mul(out, Y, term_cap);
        auto it = rows.find(j);
        if (it != rows.end()) out = poly_add(out, horner_x(it->second));
        if (out.terms.size() > term_cap)
            throw TermCapExceeded("polynomial term cap exceeded");
    }
    return out;
}

std::string PolyMap::str() const {
    return first.str() + ", " + second.str();
}

PolyMap compose(const PolyMap& f, const PolyMap& g, size_t term_cap) {
    PolyMap out;
    out.first = poly_subst(f.first, g.first, g.second, term_cap);
    out.second = poly_subst(f.second, g.first, g.second, term_cap);
    if (out.first.is_zero() || out.second.is_zero())
        throw Error("compose: a component collapsed to zero");
    return out;
}

namespace {

// Recursive-descent parser for one polynomial expression: a signed sum of
// terms, each a '*'-separated product of rational constants and powers of
// the two variables.
class PolyParser {
  public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    Poly parse() {
        Poly out;
        skip_ws();
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                if (s_[pos_] == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            out = poly_add(out, term(sign));
            skip_ws();
            first = false;
        }
        if (first) fail("empty polynomial");
        return out;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw Error("polynomial parse error at position " +
                    std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(unsigned(s_[pos_]))) ++pos_;
    }

    long long integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(unsigned(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        return std::stoll(s_.substr(start, pos_ - start));
    }

    Poly term(int sign) {
        Rational coef(sign);
        long long ex = 0, ey = 0;
        bool any = false;
        for (;;) {
            skip_ws();
            if (pos_ >= s_.size()) break;
            char c = s_[pos_];
            if (std::isdigit(unsigned(c))) {
                BigInt num(integer());
                BigInt den(1);
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == '/') {
                    ++pos_;
                    den = BigInt(integer());
                }
                coef *= make_rational(num, den);
                any = true;
            } else if (c == 'x' || c == 'u' || c == 'y' || c == 'v') {
                bool second = c == 'y' || c == 'v';
                ++pos_;
                long long e = 1;
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == '^') {
                    ++pos_;
                    e = integer();
                }
                (second ? ey : ex) += e;
                any = true;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        Poly out;
        if (coef != 0) out.terms[{ex, ey}] = coef;
        return out;
    }
};

}  // namespace

PolyMap parse_poly_map(const std::string& literal) {
    auto comma = literal.find(',');
    if (comma == std::string::npos)
        throw Error("polynomial map literal needs two comma-separated "
                    "components: " + literal);
    if (literal.find(',', comma + 1) != std::string::npos)
        throw Error("polynomial map literal has more than two components: " +
                    literal);
    PolyMap f;
    f.first = PolyParser(literal.substr(0, comma)).parse();
    f.second = PolyParser(literal.substr(comma + 1)).parse();
    if (f.first.is_zero() || f.second.is_zero())
        throw Error("polynomial map component is identically zero");
    return f;
}

DegreeSequence iterate_degrees(const PolyMap& f, int n, size_t term_cap) {
    if (n < 1) throw Error("iterate_degrees: need n >= 1");
    if (n > 12) throw Error("iterate_degrees: n capped at 12 (desk scale)");
    DegreeSequence out;
    try {
        PolyMap g = f;
        out.degrees.push_back(
            std::max(g.first.degree(), g.second.degree()));
        for (int k = 2; k <= n; ++k) {
            // g o f rather than f o g: substituting the small map into the
            // large iterate keeps intermediates near the final size.
            g = compose(g, f, term_cap);
            out.degrees.push_back(
                std::max(g.first.degree(), g.second.degree()));
        }
    } catch (const TermCapExceeded&) {
        out.truncated = true;
    }
    return out;
}

Lambda1Estimate lambda1_estimate(const std::vector<long long>& degrees) {
    if (degrees.size() < 3)
        throw Error("lambda1_estimate: need at least 3 degrees");
    Lambda1Estimate out;
    for (size_t i = 0; i + 1 < degrees.size(); ++i) {
        if (degrees[i] <= 0)
            throw Error("lambda1_estimate: nonpositive degree in sequence");
        out.ratios.push_back(
            make_rational(BigInt(degrees[i + 1]), BigInt(degrees[i])));
    }
    out.last_ratio = out.ratios.back();
    out.root_estimate = std::pow(double(degrees.back()),
                                 1.0 / double(degrees.size()));
    out.ratios_nonincreasing = std::is_sorted(
        out.ratios.rbegin(), out.ratios.rend());
    out.ratios_nondecreasing =
        std::is_sorted(out.ratios.begin(), out.ratios.end());
    bool constant = out.ratios_nonincreasing && out.ratios_nondecreasing;
    if (constant)
        out.trend = "geometric";
    else if (out.ratios_nondecreasing)
        out.trend = "increasing";
    else if (out.ratios_nonincreasing)
        out.trend = "decreasing";
    else
        out.trend = "mixed";
    return out;
}

std::vector<BigInt> monomial_degree_oracle(const IntMat2& A, int n) {
    if (!A.nonnegative())
        throw Error("monomial_degree_oracle: matrix must be nonnegative");
    if (n < 1) throw Error("monomial_degree_oracle: need n >= 1");
    std::vector<BigInt> out;
    IntMat2 p = A;
    for (int k = 1; k <= n; ++k) {
        out.push_back(std::max(p.a + p.b, p.c + p.d));
        if (k < n) p = p * A;
    }
    return out;
}

std::string degrees_csv(const DegreeSequence& seq) {
    std::ostringstream os;
    os << "n,degree\n";
    for (size_t i = 0; i < seq.degrees.size(); ++i)
        os << (i + 1) << "," << seq.degrees[i] << "\n";
    if (seq.truncated) os << "# truncated\n";
    return os.str();
}

}  // namespace surfdyn
