#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace surfdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const BigInt& n) { return n.str(); }

// cpp_rational's two-argument constructor rejects negative denominators;
// normalize the sign first.
inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw Error("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in rational literal: " + s);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw Error("malformed rational literal: " + s);
    }
}

// A point of the projective line Q u {oo}.
struct ExtRat {
    bool infinite = false;
    Rational value{};

    ExtRat() = default;
    ExtRat(Rational v) : value(std::move(v)) {}
    ExtRat(long long v) : value(v) {}
    static ExtRat inf() { return ExtRat{true, Rational{}}; }
    ExtRat(bool i, Rational v) : infinite(i), value(std::move(v)) {}

    bool operator==(const ExtRat& o) const {
        if (infinite != o.infinite) return false;
        return infinite || value == o.value;
    }
};

inline std::string to_string(const ExtRat& t) {
    return t.infinite ? "inf" : to_string(t.value);
}

inline ExtRat parse_ext_rat(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "-inf" || s == "oo") return ExtRat::inf();
    return ExtRat(parse_rational(s));
}

}  // namespace surfdyn
