#pragma once

#include <cmath>
#include <cstdlib>

#include "sturmian/physical.hpp"
#include "sturmian/tridiagonal.hpp"

namespace sturmian {

namespace detail {

// Shared prefactors of the J matrix. With k^2 = 2z:
//   diag_coeff = (k^2 - b_S^2) / (2 b_S),  off_coeff = (k^2 + b_S^2) / (4 b_S).
inline Complex jmatrix_diag_coeff(const ComplexEnergy& e, const PhysicalParams& p) {
    return (e.k * e.k - p.b_s * p.b_s) / (2.0 * p.b_s);
}
inline Complex jmatrix_off_coeff(const ComplexEnergy& e, const PhysicalParams& p) {
    return (e.k * e.k + p.b_s * p.b_s) / (4.0 * p.b_s);
}

}  // namespace detail

// Element (n, m) of J = z - H in the Coulomb-Sturmian basis:
//
//   J_{n,n}   = (k^2-b_S^2)/(2 b_S) (n+L+1) - Z
//   J_{n,n+1} = -(k^2+b_S^2)/(4 b_S) sqrt((n+1)(n+2L+2))   (== J_{n+1,n})
//
// and exactly zero for |n - m| > 1. The m = n-1 case is routed through the
// m = n+1 formula so the two orders are bit-identical.
inline Complex jmatrix_element(int n, int m, const ComplexEnergy& e, const PhysicalParams& p) {
    if (n < 0 || m < 0) throw std::invalid_argument("jmatrix_element: indices must be >= 0");
    if (m == n - 1) return jmatrix_element(m, n, e, p);
    if (m == n)
        return detail::jmatrix_diag_coeff(e, p) * (n + p.L + 1.0) - p.Z;
    if (m == n + 1)
        return -detail::jmatrix_off_coeff(e, p) *
               std::sqrt((n + 1.0) * (n + 2.0 * p.L + 2.0));
    return Complex(0.0);
}

// Upper-left N x N corner J^(N), indices 0..N-1.
inline TridiagonalMatrix truncated_jmatrix(std::size_t N, const ComplexEnergy& e,
                                           const PhysicalParams& p) {
    if (N < 1) throw std::invalid_argument("truncated_jmatrix: N must be >= 1");
    TridiagonalMatrix J;
    J.diag.resize(N);
    J.offdiag.resize(N - 1);
    for (std::size_t i = 0; i < N; ++i) {
        const int n = static_cast<int>(i);
        J.diag[i] = jmatrix_element(n, n, e, p);
        if (i + 1 < N) J.offdiag[i] = jmatrix_element(n, n + 1, e, p);
    }
    return J;
}

}  // namespace sturmian
