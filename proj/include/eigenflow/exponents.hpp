#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "eigenflow/errors.hpp"
#include "eigenflow/grid.hpp"

namespace eigenflow {

using Rational = boost::rational<long long>;

// Exact rational value of a double (every finite double is dyadic). Inputs
// here are exponents of order one, so numerators and denominators fit easily.
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw OutOfRangeError("expected a finite value");
    if (v == 0.0) return Rational(0);
    int e = 0;
    const double m = std::frexp(v, &e);
    long long num = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    while (num != 0 && num % 2 == 0 && e < 0) {
        num /= 2;
        ++e;
    }
    if (e >= 0) {
        if (e > 10) throw OutOfRangeError("value out of expected range");
        return Rational(num << e, 1);
    }
    if (e < -62) throw OutOfRangeError("value out of expected range");
    return Rational(num, 1LL << (-e));
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// The exponent bookkeeping of the growth criteria. All relations are derived
// and verified in exact rational arithmetic, then converted to double:
//   2/p + 3/q = 3,            alpha = 1/2 + 2/p,     beta = alpha - 2,
//   s = 3/2 - 3/q,            1/a = 5/18 - 1/(3q),   1/b = 13/18 - 2/(3q),
//   1/a + 1/b + 1/q = 1,      1/p + 1/r = 1,         2/r = 3/q - 1.
// At q = 3 the time exponent is p = 1 and the Hoelder pair degenerates to the
// endpoint chain L^3 * L^6 * L^2; a and b then carry the boundary values
// a = 6, b = 2 with ab_interior = false.
struct CriterionParams {
    double q = 0.0;
    double p = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double s = 0.0;
    double a = 0.0;
    double b = 0.0;
    double r = 0.0;  // conjugate of p; +inf at q = 3
    bool ab_interior = true;
};

namespace detail {

inline CriterionParams params_from_rational_q(const Rational& q) {
    if (!(q > Rational(6, 5)) || !(q <= Rational(3)))
        throw OutOfRangeError("q must lie in (6/5, 3]");

    const Rational one(1), two(2), three(3);
    const Rational inv_q = one / q;
    const Rational inv_p = (three - three * inv_q) / two;  // 2/p + 3/q = 3
    const Rational p = one / inv_p;
    const Rational alpha = Rational(1, 2) + two / p;
    const Rational beta = alpha - two;
    const Rational s = Rational(3, 2) - three * inv_q;
    const Rational inv_a = Rational(5, 18) - inv_q / three;
    const Rational inv_b = Rational(13, 18) - two * inv_q / three;
    const Rational inv_r = one - inv_p;

    // Consistency of the whole exponent web, checked exactly.
    if (two * inv_p + three * inv_q != three) throw Error("exponent identity 2/p+3/q=3 failed");
    if (inv_a + inv_b + inv_q != one) throw Error("exponent identity 1/a+1/b+1/q=1 failed");
    if (two * inv_r != three * inv_q - one) throw Error("exponent identity 2/r=3/q-1 failed");
    if (alpha != Rational(7, 2) - three * inv_q) throw Error("exponent identity alpha=7/2-3/q failed");

    CriterionParams out;
    out.q = to_double(q);
    out.p = to_double(p);
    out.alpha = to_double(alpha);
    out.beta = to_double(beta);
    out.s = to_double(s);
    out.a = to_double(one / inv_a);
    out.b = to_double(one / inv_b);
    out.r = inv_r == Rational(0) ? std::numeric_limits<double>::infinity()
                                 : to_double(one / inv_r);
    out.ab_interior = q != three;
    return out;
}

}  // namespace detail

inline CriterionParams criterion_params_from_q(double q) {
    return detail::params_from_rational_q(rational_from_double(q));
}

// alpha in [2, 5/2]; q follows from 3/q = 7/2 - alpha.
inline CriterionParams criterion_params_from_alpha(double alpha) {
    const Rational al = rational_from_double(alpha);
    if (!(al >= Rational(2)) || !(al <= Rational(5, 2)))
        throw OutOfRangeError("alpha must lie in [2, 5/2]");
    const Rational q = Rational(3) / (Rational(7, 2) - al);
    CriterionParams out = detail::params_from_rational_q(q);
    if (rational_from_double(out.alpha) != al) throw Error("alpha round trip failed");
    return out;
}

// Sharp constant of the fractional Sobolev embedding H^s -> L^q on
// 1/q = 1/2 - s/3:
//   C_s = 2^(-s/3) * pi^(-4s/3) * sqrt(Gamma(3/2-s)/Gamma(3/2+s)).
// Evaluated on the whole-space formula; on the torus it is reported only,
// never asserted as an embedding constant.
inline double sharp_sobolev_constant(double s) {
    if (!(s > 0.0) || !(s < 1.5))
        throw OutOfRangeError("sharp_sobolev_constant: s must lie in (0, 3/2)");
    const double g = std::tgamma(1.5 - s) / std::tgamma(1.5 + s);
    return std::pow(2.0, -s / 3.0) * std::pow(kPi, -4.0 * s / 3.0) * std::sqrt(g);
}

}  // namespace eigenflow
