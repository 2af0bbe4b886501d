#include "surfdyn/quadnumber.hpp"

#include <cmath>
#include <utility>

namespace surfdyn {

std::pair<BigInt, BigInt> square_free_part(BigInt n) {
    if (n < 0) throw Error("square_free_part: negative input");
    BigInt s = 1, f = 1;
    if (n == 0) return {0, 0};
    for (BigInt p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) f *= p;
    }
    f *= n;
    return {s, f};
}

QuadNumber::QuadNumber(Rational p, Rational q, BigInt d)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
    if (d_ < 0) throw Error("QuadNumber: negative radicand");
    auto [s, f] = square_free_part(d_);
    if (f != d_) {
        // Reduce s^2 * f under the radical.
        q_ *= Rational(s);
        d_ = f;
    }
    if (d_ == 0 || d_ == 1) {
        // sqrt(0) = 0, sqrt(1) = 1: fold into the rational part.
        if (d_ == 1) p_ += q_;
        q_ = 0;
        d_ = 0;
    }
    if (q_ == 0) d_ = 0;
}

QuadNumber QuadNumber::sqrt_of(const BigInt& n) {
    return QuadNumber(Rational(0), Rational(1), n);
}

QuadNumber QuadNumber::sqrt_of(const Rational& r) {
    if (r < 0) throw Error("sqrt_of: negative radicand");
    // sqrt(a/b) = sqrt(a*b)/b.
    BigInt a = numerator(r), b = denominator(r);
    return QuadNumber(Rational(0), Rational(1, b), a * b);
}

Rational QuadNumber::as_rational() const {
    if (!is_rational()) throw Error("QuadNumber is irrational: " + str());
    return p_;
}

bool QuadNumber::is_integer() const {
    return is_rational() && denominator(p_) == 1;
}

int QuadNumber::sign() const {
    int sp = p_.sign();
    if (d_ == 0 || q_ == 0) return sp;
    int sq = q_.sign();
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // p and q*sqrt(d) have opposite signs: compare p^2 vs q^2*d.
    Rational lhs = p_ * p_;
    Rational rhs = q_ * q_ * Rational(d_);
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sp : sq;
}

BigInt QuadNumber::merge_field(const QuadNumber& a, const QuadNumber& b) {
    if (a.d_ == 0) return b.d_;
    if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
    throw FieldMismatch("mixed quadratic fields: sqrt(" + a.d_.str() + ") vs sqrt(" +
                        b.d_.str() + ")");
}

QuadNumber QuadNumber::operator+(const QuadNumber& o) const {
    BigInt d = merge_field(*this, o);
    return QuadNumber(p_ + o.p_, q_ + o.q_, d, nullptr);
}

QuadNumber QuadNumber::operator-(const QuadNumber& o) const {
    BigInt d = merge_field(*this, o);
    return QuadNumber(p_ - o.p_, q_ - o.q_, d, nullptr);
}

QuadNumber QuadNumber::operator*(const QuadNumber& o) const {
    BigInt d = merge_field(*this, o);
    Rational p = p_ * o.p_ + q_ * o.q_ * Rational(d);
    Rational q = p_ * o.q_ + q_ * o.p_;
    if (q == 0) d = 0;
    return QuadNumber(std::move(p), std::move(q), std::move(d), nullptr);
}

QuadNumber QuadNumber::operator/(const QuadNumber& o) const {
    if (o.is_zero()) throw Error("QuadNumber division by zero");
    BigInt d = merge_field(*this, o);
    // 1/(p + q sqrt d) = (p - q sqrt d) / (p^2 - q^2 d).
    Rational norm = o.p_ * o.p_ - o.q_ * o.q_ * Rational(d);
    if (norm == 0) throw Error("QuadNumber division by zero");
    QuadNumber conj(o.p_ / norm, -o.q_ / norm, d, nullptr);
    return *this * conj;
}

bool QuadNumber::operator==(const QuadNumber& o) const {
    if (p_ != o.p_) return false;
    if (q_ == 0 && o.q_ == 0) return true;
    return q_ == o.q_ && d_ == o.d_;
}

double QuadNumber::to_double() const {
    double v = numerator(p_).convert_to<double>() / denominator(p_).convert_to<double>();
    if (d_ != 0) {
        double qq =
            numerator(q_).convert_to<double>() / denominator(q_).convert_to<double>();
        v += qq * std::sqrt(d_.convert_to<double>());
    }
    return v;
}

std::string QuadNumber::str() const {
    if (is_rational()) return to_string(p_);
    std::string radical;
    if (q_ == 1) {
        radical = "sqrt(" + d_.str() + ")";
    } else if (q_ == -1) {
        radical = "-sqrt(" + d_.str() + ")";
    } else {
        radical = to_string(q_) + "*sqrt(" + d_.str() + ")";
    }
    if (p_ == 0) return radical;
    if (q_ > 0) return to_string(p_) + "+" + radical;
    return to_string(p_) + radical;
}

}  // namespace surfdyn
