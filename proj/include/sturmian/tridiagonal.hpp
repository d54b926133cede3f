#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sturmian/continued_fraction.hpp"
#include "sturmian/errors.hpp"

namespace sturmian {

// Complex symmetric tridiagonal matrix: element (i,i+1) equals (i+1,i) and is
// stored once in offdiag[i].
struct TridiagonalMatrix {
    std::vector<Complex> diag;     // n entries
    std::vector<Complex> offdiag;  // n-1 entries

    std::size_t size() const { return diag.size(); }

    Complex operator()(std::size_t i, std::size_t j) const {
        if (i == j) return diag[i];
        if (i + 1 == j) return offdiag[i];
        if (j + 1 == i) return offdiag[j];
        return Complex(0.0);
    }
};

// Solve m * x = rhs by the complex Thomas sweep. No pivoting across the band:
// a pivot whose magnitude falls below 1e-12 times its row scale raises
// NearSingular with the pivot index instead, which for the corrected J matrix
// signals z at or near an eigenvalue.
inline std::vector<Complex> solve_tridiagonal(const TridiagonalMatrix& m,
                                              std::span<const Complex> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: rhs length must equal matrix size");
    if (n == 0) return {};

    auto row_scale = [&](std::size_t i) {
        double s = std::abs(m.diag[i]);
        if (i > 0) s += std::abs(m.offdiag[i - 1]);
        if (i + 1 < n) s += std::abs(m.offdiag[i]);
        return s;
    };
    auto check_pivot = [&](Complex piv, std::size_t i) {
        if (std::abs(piv) <= 1e-12 * row_scale(i))
            throw NearSingular("solve_tridiagonal: pivot collapsed at row " + std::to_string(i), i);
    };

    std::vector<Complex> upper(n);  // eliminated superdiagonal multipliers
    std::vector<Complex> x(n);

    Complex piv = m.diag[0];
    check_pivot(piv, 0);
    upper[0] = (n > 1) ? m.offdiag[0] / piv : Complex(0.0);
    x[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = m.diag[i] - m.offdiag[i - 1] * upper[i - 1];
        check_pivot(piv, i);
        if (i + 1 < n) upper[i] = m.offdiag[i] / piv;
        x[i] = (rhs[i] - m.offdiag[i - 1] * x[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper[i] * x[i + 1];
    return x;
}

}  // namespace sturmian
