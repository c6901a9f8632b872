#include "sff/bessel.hpp"

#include <cmath>
#include <numbers>

namespace sff {

namespace {

// Minimal double-double arithmetic: value = hi + lo with |lo| <= ulp(hi)/2.
struct DD {
    double hi;
    double lo;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const DD r = two_sum(s.hi, s.lo);
    return r;
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, double b) {
    const double q1 = a.hi / b;
    const DD p = two_prod(q1, b);
    const double r = ((a.hi - p.hi) - p.lo) + a.lo;
    return two_sum(q1, r / b);
}

// J0 power series sum_k (-1)^k (x^2/4)^k / (k!)^2, terms kept in
// double-double so the alternating cancellation (up to ~1e6 at x=16)
// does not eat the 1e-12 budget.
double j0_series(double x) {
    DD q = two_prod(x, x);
    q = dd_div(q, 4.0);
    DD term{1.0, 0.0};
    DD sum{1.0, 0.0};
    for (int k = 1; k <= 80; ++k) {
        term = dd_mul(term, q);
        term = dd_div(term, -static_cast<double>(k) * k);
        sum = dd_add(sum, term);
        if (std::fabs(term.hi) < 1e-18 * (1.0 + std::fabs(sum.hi))) {
            break;
        }
    }
    return sum.hi + sum.lo;
}

// Hankel expansion: J0(x) = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)],
// coefficients a_m = a_{m-1} * (-(2m-1)^2) / (8m), truncated at the smallest
// term. Below x ~ 15.5 the smallest term exceeds 1e-12; only used for x > 16.
double j0_asymptotic(double x) {
    double p = 1.0;
    double q = 0.0;
    double a = 1.0;
    double x_pow = 1.0;
    double prev = 1.0;
    for (int m = 1; m <= 40; ++m) {
        const double odd = 2.0 * m - 1.0;
        a *= -(odd * odd) / (8.0 * m);
        x_pow /= x;
        const double term = a * x_pow;
        if (std::fabs(term) > prev) {
            break; // divergent tail reached
        }
        prev = std::fabs(term);
        if (m % 2 == 1) {
            q += (m % 4 == 1) ? term : -term;
        } else {
            p += (m % 4 == 2) ? -term : term;
        }
        if (prev < 1e-17) {
            break;
        }
    }
    const double omega = x - std::numbers::pi / 4.0;
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           (p * std::cos(omega) - q * std::sin(omega));
}

} // namespace

double bessel_j0(double x) {
    x = std::fabs(x); // J0 is even
    if (x <= 16.0) {
        return j0_series(x);
    }
    return j0_asymptotic(x);
}

} // namespace sff
