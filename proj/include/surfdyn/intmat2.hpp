#pragma once

#include "surfdyn/quadnumber.hpp"

namespace surfdyn {

// 2x2 integer matrix [[a,b],[c,d]], row-major.
struct IntMat2 {
    BigInt a{1}, b{0}, c{0}, d{1};

    IntMat2() = default;
    IntMat2(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static IntMat2 identity() { return IntMat2(); }

    BigInt det() const { return a * d - b * c; }
    BigInt trace() const { return a + d; }

    IntMat2 operator*(const IntMat2& o) const {
        return IntMat2(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                       c * o.b + d * o.d);
    }

    IntMat2 operator-() const { return IntMat2(-a, -b, -c, -d); }

    bool operator==(const IntMat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }

    // Adjugate: M * adjugate(M) = det(M) * Id.
    IntMat2 adjugate() const { return IntMat2(d, -b, -c, a); }

    IntMat2 pow(unsigned n) const {
        IntMat2 r, base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    bool nonnegative() const { return a >= 0 && b >= 0 && c >= 0 && d >= 0; }

    std::string str() const {
        return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
    }
};

// Largest-modulus root of T^2 - Tr(A) T + det(A), for A nonnegative with
// nonzero determinant (so the spectral radius is the largest real eigenvalue).
QuadNumber spectral_radius(const IntMat2& A);

}  // namespace surfdyn
