#pragma once

#include <stdexcept>

namespace sturmian {

// Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence
//
//   (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1},
//
// upward in n, which is the stable direction here.
inline double assoc_laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::invalid_argument("assoc_laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lkm1 = 1.0;
    double lk = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double lkp1 = ((2.0 * k + 1.0 + alpha - x) * lk - (k + alpha) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

}  // namespace sturmian
