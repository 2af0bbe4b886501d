#include "surfdyn/perron.hpp"

#include "surfdyn/mobius.hpp"

namespace surfdyn {

namespace {

bool is_perfect_square(const BigInt& n, BigInt& root) {
    if (n < 0) return false;
    root = sqrt(n);
    return root * root == n;
}

}  // namespace

QuadraticInteger QuadraticInteger::integer(BigInt n) {
    if (n < 1) throw Error("QuadraticInteger: values below 1 rejected: " + n.str());
    return QuadraticInteger(QuadNumber(Rational(n)), 1, n, 0);
}

QuadraticInteger QuadraticInteger::sqrt(BigInt m) {
    return quadratic(0, -m);
}

QuadraticInteger QuadraticInteger::quadratic(BigInt a, BigInt b) {
    BigInt disc = a * a - 4 * b;
    if (disc < 0)
        throw Error("QuadraticInteger: T^2-" + a.str() + "T+" + b.str() +
                    " has no real root");
    BigInt s;
    if (is_perfect_square(disc, s)) {
        // Roots are rational, hence rational integers (monic).
        return integer((a + s) / 2);
    }
    QuadNumber value = QuadNumber(Rational(a, 2)) +
                       QuadNumber(Rational(0), Rational(1, 2), disc);
    if (value < QuadNumber(Rational(1)))
        throw Error("QuadraticInteger: largest root of T^2-" + a.str() + "T+" +
                    b.str() + " is below 1");
    return QuadraticInteger(std::move(value), 2, std::move(a), std::move(b));
}

QuadraticInteger QuadraticInteger::from_value(const QuadNumber& x) {
    if (x.is_rational()) {
        if (!x.is_integer())
            throw Error("QuadraticInteger: " + x.str() + " is not an algebraic integer");
        return integer(x.as_rational().convert_to<BigInt>());
    }
    Rational tr = 2 * x.p();
    Rational nm = x.p() * x.p() - x.q() * x.q() * Rational(x.d());
    if (denominator(tr) != 1 || denominator(nm) != 1)
        throw Error("QuadraticInteger: " + x.str() + " is not an algebraic integer");
    if (x < QuadNumber(Rational(1)))
        throw Error("QuadraticInteger: values below 1 rejected: " + x.str());
    return QuadraticInteger(x, 2, numerator(tr), numerator(nm));
}

QuadNumber QuadraticInteger::conjugate() const {
    if (degree_ == 1) return value_;
    return QuadNumber(Rational(a_)) - value_;
}

PerronVerdict is_weak_perron(const QuadraticInteger& q) {
    PerronVerdict v;
    if (q.degree() == 1) {
        v.weak_perron = true;
        v.strict_perron = true;
        return v;
    }
    QuadNumber conj = q.conjugate();
    v.weak_perron = conj.abs() <= q.value();
    v.strict_perron = conj.abs() < q.value();
    if (!v.weak_perron) v.violating_conjugate = conj;
    return v;
}

IntMat2 realize_as_matrix(const QuadraticInteger& q) {
    auto verdict = is_weak_perron(q);
    if (!verdict.weak_perron)
        throw Error("realize_as_matrix: " + q.str() +
                    " is not weak Perron; violating conjugate " +
                    verdict.violating_conjugate->str());
    if (q.degree() == 1) {
        BigInt n = q.value().as_rational().convert_to<BigInt>();
        return IntMat2(n, 0, 0, 1);
    }
    const BigInt& a = q.trace_coeff();
    const BigInt& b = q.norm_coeff();
    IntMat2 m;
    if (b < 0) {
        m = IntMat2(a, 1, -b, 0);
    } else if (a % 2 == 0) {
        BigInt k = a / 2;
        m = IntMat2(k, 1, k * k - b, k);
    } else {
        BigInt k = (a - 1) / 2;
        m = IntMat2(k, 1, k * (k + 1) - b, k + 1);
    }
    if (!m.nonnegative())
        throw Error("realize_as_matrix: internal case table failure for " + q.str());
    return m;
}

}  // namespace surfdyn
