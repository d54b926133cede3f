#pragma once

#include <cmath>
#include <stdexcept>

#include "sturmian/laguerre.hpp"
#include "sturmian/physical.hpp"

namespace sturmian {

namespace detail {

// Gamma(n+1)/Gamma(n+2L+2) without forming the two (huge) gammas: a running
// product over the 2L+1 integer offsets when that count is a small integer,
// a log-gamma difference otherwise.
inline double basis_norm_ratio(int n, double L) {
    const double span = 2.0 * L + 1.0;  // number of factors between the gammas
    const double upper = n + 2.0 * L + 2.0;
    const double nearest = std::round(span);
    const bool integer_span = std::abs(span - nearest) < 1e-12 && nearest >= 0.0;
    if (integer_span && upper <= 20.0) {
        double ratio = 1.0;
        for (int j = 1; j <= static_cast<int>(nearest); ++j) ratio /= (n + j);
        return ratio;
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(upper));
}

}  // namespace detail

// Coulomb-Sturmian radial basis function
//
//   psi_n(r) = [Gamma(n+1)/Gamma(n+2L+2)]^{1/2} e^{-b_S r} (2 b_S r)^{L+1}
//              * L_n^{2L+1}(2 b_S r),         n = 0, 1, ...
inline double cs_basis_function(int n, const PhysicalParams& p, double r) {
    if (n < 0) throw std::invalid_argument("cs_basis_function: n must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("cs_basis_function: r must be > 0");
    if (!(n + 2.0 * p.L + 2.0 > 0.0))
        throw std::invalid_argument("cs_basis_function: n + 2L + 2 must be > 0");
    const double x = 2.0 * p.b_s * r;
    return std::sqrt(detail::basis_norm_ratio(n, p.L)) * std::exp(-p.b_s * r) *
           std::pow(x, p.L + 1.0) * assoc_laguerre(n, 2.0 * p.L + 1.0, x);
}

}  // namespace sturmian
