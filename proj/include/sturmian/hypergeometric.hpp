#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sturmian/continued_fraction.hpp"
#include "sturmian/errors.hpp"

namespace sturmian {

// True when v is within tol of a nonpositive integer (0, -1, -2, ...).
inline bool near_nonpositive_integer(Complex v, double tol) {
    const double nearest = std::round(v.real());
    if (nearest > 0.5) return false;
    return std::abs(v - Complex(nearest, 0.0)) < tol;
}

// Parameters of 2F1(a, b; c; y). c must not be a nonpositive integer, where
// the function is undefined; that is rejected here so every downstream
// evaluation can assume a valid c.
struct Hyp2F1Params {
    Complex a, b, c, y;

    Hyp2F1Params(Complex a_, Complex b_, Complex c_, Complex y_)
        : a(a_), b(b_), c(c_), y(y_) {
        if (near_nonpositive_integer(c, 1e-12))
            throw std::invalid_argument("Hyp2F1Params: c is a nonpositive integer");
    }
};

inline constexpr int kSeriesMaxTerms = 100000;

namespace detail {

// Series core; also reports the number of terms consumed (for scan output).
inline Complex hyp2f1_series_counted(const Hyp2F1Params& p, double tol, int& terms) {
    if (!(tol > 0.0)) throw std::invalid_argument("hyp2f1_series: tol must be > 0");
    if (std::abs(p.y) >= 1.0)
        throw std::domain_error("hyp2f1_series: |y| >= 1 is outside the series domain");
    Complex sum = 1.0;
    Complex term = 1.0;
    terms = 0;
    for (int n = 0; n < kSeriesMaxTerms; ++n) {
        term *= (p.a + Complex(n)) * (p.b + Complex(n)) * p.y /
                ((p.c + Complex(n)) * Complex(n + 1));
        terms = n + 1;
        if (term == Complex(0.0)) return sum;  // polynomial case: (a)_n or (b)_n hit zero
        sum += term;
        if (std::abs(term) <= tol * std::abs(sum)) return sum;
    }
    throw NonConvergence("hyp2f1_series: no convergence within the term cap",
                         kSeriesMaxTerms, std::abs(term) / std::abs(sum));
}

}  // namespace detail

// Power series sum_{n>=0} (a)_n (b)_n / ((c)_n n!) y^n, |y| < 1.
//
// The Pochhammer symbols are never formed explicitly: each term comes from
// the previous one by a single multiplicative update, which avoids overflow
// and branch trouble for complex parameters. When a or b is a nonpositive
// integer the running term hits exact zero and the (polynomial) sum
// terminates there.
inline Complex hyp2f1_series(const Hyp2F1Params& p, double tol = kDefaultTol) {
    int terms = 0;
    return detail::hyp2f1_series_counted(p, tol, terms);
}

// T-fraction
//
//   T(a,b;c;y) = (c+(b-a+1)y) + K_{p>=1}( -(c-a+p)(b+p)y / (c+p+(b-a+1+p)y) )
//              = c * 2F1(a,b;c;y) / 2F1(a,b+1;c+1;y),     |y| < 1,
//
// with numerators quadratic and denominators linear in p; it converges on
// the whole y-plane cut along [1,inf).
inline CFTerms tfraction_terms(const Hyp2F1Params& p) {
    const Complex a = p.a, b = p.b, c = p.c, y = p.y;
    return CFTerms{
        c + (b - a + 1.0) * y,
        [=](int q) { return -(c - a + Complex(q)) * (b + Complex(q)) * y; },
        [=](int q) { return c + Complex(q) + (b - a + 1.0 + Complex(q)) * y; },
    };
}

namespace detail {

// Unthrowing core of hyp2f1_ratio: the CF state is reported in the result.
inline CFResult hyp2f1_ratio_result(const Hyp2F1Params& p, double tol, int max_iter) {
    if (p.y.imag() == 0.0 && p.y.real() >= 1.0)
        throw CutProximity("hyp2f1_ratio: y on the [1,inf) branch cut");
    CFResult cf = eval_continued_fraction(tfraction_terms(p), tol, max_iter);
    cf.value /= p.c;
    return cf;
}

}  // namespace detail

// 2F1(a,b;c;y) / 2F1(a,b+1;c+1;y) by the T-fraction divided by c.
inline Complex hyp2f1_ratio(const Hyp2F1Params& p,
                            double tol = kDefaultTol,
                            int max_iter = kDefaultMaxIter) {
    const CFResult cf = detail::hyp2f1_ratio_result(p, tol, max_iter);
    if (!cf.converged)
        throw NonConvergence("hyp2f1_ratio: T-fraction did not converge",
                             cf.iterations, cf.residual);
    return cf.value;
}

}  // namespace sturmian
