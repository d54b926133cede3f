#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "sturmian/errors.hpp"

namespace sturmian {

using Complex = std::complex<double>;

// Library-wide defaults for iterative evaluations.
inline constexpr double kDefaultTol = 1e-13;
inline constexpr int kDefaultMaxIter = 10000;

// Floor applied to intermediate Lentz denominators so the forward evaluation
// never divides by exact zero.
inline constexpr double kLentzFloor = 1e-30;

// Terms of the continued fraction b0 + K_{p>=1}( a(p) / b(p) ),
//
//                        a(1)
//     b0 + ---------------------------------
//                           a(2)
//           b(1) + -------------------------
//                    b(2) + a(3)/(b(3) + ...
//
// a and b are index-to-value rules; they must be defined for every p >= 1
// the evaluator requests.
struct CFTerms {
    Complex b0;
    std::function<Complex(int)> a;
    std::function<Complex(int)> b;
};

struct CFResult {
    Complex value{0.0, 0.0};
    int iterations = 0;
    double residual = 0.0;  // |delta - 1| at the last step
    bool converged = false;
};

// Forward evaluation by the modified Lentz algorithm. Terminates when the
// per-step multiplier delta satisfies |delta - 1| <= tol; if max_iter is
// reached first the result carries converged = false rather than throwing.
inline CFResult eval_continued_fraction(const CFTerms& terms,
                                        double tol = kDefaultTol,
                                        int max_iter = kDefaultMaxIter) {
    if (!(tol > 0.0)) throw std::invalid_argument("eval_continued_fraction: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("eval_continued_fraction: max_iter must be >= 1");

    auto floored = [](Complex v) {
        return std::abs(v) < kLentzFloor ? Complex(kLentzFloor, 0.0) : v;
    };

    Complex f = floored(terms.b0);
    Complex c = f;
    Complex d = 0.0;

    CFResult result;
    for (int p = 1; p <= max_iter; ++p) {
        const Complex ap = terms.a(p);
        const Complex bp = terms.b(p);
        d = floored(bp + ap * d);
        c = floored(bp + ap / c);
        d = 1.0 / d;
        const Complex delta = c * d;
        f *= delta;
        result.iterations = p;
        result.residual = std::abs(delta - 1.0);
        if (result.residual <= tol) {
            result.converged = true;
            break;
        }
    }
    result.value = f;
    return result;
}

}  // namespace sturmian
