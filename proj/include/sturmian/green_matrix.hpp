#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "sturmian/jmatrix.hpp"
#include "sturmian/tail_fraction.hpp"
#include "sturmian/tridiagonal.hpp"

namespace sturmian {

enum class GreenRoute { ClosedFormRecursion, TailCorrectedInversion };

inline const char* to_string(GreenRoute r) {
    return r == GreenRoute::ClosedFormRecursion ? "closed-form-recursion"
                                                : "tail-corrected-inversion";
}

// Dense complex symmetric N x N Green's matrix G^(N). Each element is stored
// once (packed upper triangle), so G(i,j) == G(j,i) holds exactly. The
// provenance tag records which route produced it.
class GreensMatrix {
public:
    GreensMatrix(std::size_t n, GreenRoute route, const ComplexEnergy& e,
                 const PhysicalParams& p)
        : n_(n), route_(route), energy_(e), params_(p), store_(n * (n + 1) / 2) {}

    std::size_t size() const { return n_; }
    GreenRoute route() const { return route_; }
    const ComplexEnergy& energy() const { return energy_; }
    const PhysicalParams& params() const { return params_; }

    Complex operator()(std::size_t i, std::size_t j) const { return store_[pack(i, j)]; }
    void set(std::size_t i, std::size_t j, Complex v) { store_[pack(i, j)] = v; }

private:
    static std::size_t pack(std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        return j * (j + 1) / 2 + i;
    }

    std::size_t n_;
    GreenRoute route_;
    ComplexEnergy energy_;
    PhysicalParams params_;
    std::vector<Complex> store_;
};

// G^(N) = (J^(N) - e_{N-1} e_{N-1}^T J_{N-1,N}^2 C_tail)^{-1}: correct the
// last diagonal element of the truncated J by the tail, then invert column
// by column with the tridiagonal solver. c_tail is C_N, the tail value for
// the first omitted index.
inline GreensMatrix greens_matrix_by_inversion(std::size_t N, const ComplexEnergy& e,
                                               const PhysicalParams& p, Complex c_tail) {
    if (N < 1) throw std::invalid_argument("greens_matrix_by_inversion: N must be >= 1");
    TridiagonalMatrix J = truncated_jmatrix(N, e, p);
    const Complex j_last = jmatrix_element(static_cast<int>(N) - 1, static_cast<int>(N), e, p);
    J.diag[N - 1] -= j_last * j_last * c_tail;

    GreensMatrix G(N, GreenRoute::TailCorrectedInversion, e, p);
    std::vector<Complex> rhs(N, Complex(0.0));
    for (std::size_t m = 0; m < N; ++m) {
        rhs[m] = 1.0;
        const std::vector<Complex> col = solve_tridiagonal(J, rhs);
        rhs[m] = 0.0;
        for (std::size_t i = m; i < N; ++i) G.set(i, m, col[i]);
    }
    return G;
}

namespace detail {

// C_1 .. C_Nsize, each from the closed form. (Chaining the forward recursion
// from C_0 amplifies error by ~1/|y| per step, so the per-index evaluation
// is the stable choice; cn_forward_recursion stays a one-step operation.)
inline std::vector<Complex> tail_values(std::size_t Nsize, const ComplexEnergy& e,
                                        const PhysicalParams& p, double tol, int max_iter) {
    std::vector<Complex> C(Nsize + 1);
    for (std::size_t n = 1; n <= Nsize; ++n)
        C[n] = cn_closed_form(static_cast<int>(n), e, p, tol, max_iter);
    return C;
}

}  // namespace detail

// Build G^(Nsize) from the tail values alone:
//
//   column m diagonal:  G_{m,m} = (1 - J_{m,m-1} G_{m-1,m}) / (J_{m,m} - J_{m,m+1}^2 C_{m+1})
//   below the diagonal: G_{n,m} = -C_n J_{n,n-1} G_{n-1,m},   n > m
//
// (the denominator of the diagonal formula is exactly C_m^{-1}, so column 0
// starts from G_{0,0} = C_0). Entries above the diagonal are the symmetric
// copies. The degenerate energy z = -b_S^2/2 is rejected for Nsize >= 2; the
// 1 x 1 case needs no off-diagonal division and stays valid there.
inline GreensMatrix greens_matrix_recursive(std::size_t Nsize, const ComplexEnergy& e,
                                            const PhysicalParams& p,
                                            double tol = kDefaultTol,
                                            int max_iter = kDefaultMaxIter) {
    if (Nsize < 1) throw std::invalid_argument("greens_matrix_recursive: N must be >= 1");
    detail::check_pole(0, e, p);  // every element of G diverges at a bound energy
    if (detail::degenerate_energy(e, p)) {
        if (Nsize > 1)
            throw DegenerateEnergy(
                "greens_matrix_recursive: z = -b_S^2/2 makes J off-diagonals vanish");
        GreensMatrix G(1, GreenRoute::ClosedFormRecursion, e, p);
        G.set(0, 0, cn_closed_form(0, e, p, tol, max_iter));
        return G;
    }

    const std::vector<Complex> C = detail::tail_values(Nsize, e, p, tol, max_iter);
    GreensMatrix G(Nsize, GreenRoute::ClosedFormRecursion, e, p);
    for (std::size_t m = 0; m < Nsize; ++m) {
        const int mi = static_cast<int>(m);
        const Complex j_next = jmatrix_element(mi, mi + 1, e, p);
        const Complex denom = jmatrix_element(mi, mi, e, p) - j_next * j_next * C[m + 1];
        const Complex coupled =
            (m > 0) ? jmatrix_element(mi, mi - 1, e, p) * G(m - 1, m) : Complex(0.0);
        const double scale = std::abs(jmatrix_element(mi, mi, e, p)) +
                             std::abs(j_next * j_next * C[m + 1]);
        if (std::abs(denom) <= 1e-14 * std::max(scale, 1.0))
            throw NearSingular("greens_matrix_recursive: diagonal denominator vanished", m);
        G.set(m, m, (1.0 - coupled) / denom);
        for (std::size_t n = m + 1; n < Nsize; ++n) {
            const int ni = static_cast<int>(n);
            G.set(n, m, -C[n] * jmatrix_element(ni, ni - 1, e, p) * G(n - 1, m));
        }
    }
    return G;
}

// Max relative residual of the defining three-term identity
//
//   J_{n,n-1} G_{n-1,m} + J_{n,n} G_{n,m} + J_{n,n+1} G_{n+1,m} = delta_{n,m}
//
// over interior rows n < N-1 and all columns m. (The last row reaches the
// truncated G_{N,m} and is exact only through the tail correction.)
inline double defining_identity_residual(const GreensMatrix& G) {
    const std::size_t N = G.size();
    const ComplexEnergy& e = G.energy();
    const PhysicalParams& p = G.params();
    double worst = 0.0;
    for (std::size_t n = 0; n + 1 < N; ++n) {
        const int ni = static_cast<int>(n);
        for (std::size_t m = 0; m < N; ++m) {
            Complex sum = jmatrix_element(ni, ni, e, p) * G(n, m) +
                          jmatrix_element(ni, ni + 1, e, p) * G(n + 1, m);
            double scale = std::abs(jmatrix_element(ni, ni, e, p) * G(n, m)) +
                           std::abs(jmatrix_element(ni, ni + 1, e, p) * G(n + 1, m));
            if (n > 0) {
                sum += jmatrix_element(ni, ni - 1, e, p) * G(n - 1, m);
                scale += std::abs(jmatrix_element(ni, ni - 1, e, p) * G(n - 1, m));
            }
            if (n == m) sum -= 1.0;
            worst = std::max(worst, std::abs(sum) / std::max(scale, 1.0));
        }
    }
    return worst;
}

// Test mode for the symmetry of the recursion: entries below the diagonal
// come from the tail chain as usual, entries above it are recomputed
// independently from the row identities (seeding G_{m-1,m} from row m and
// stepping the homogeneous three-term relation upward), and the worst
// relative mismatch against the transposed value is returned.
inline double recursion_symmetry_defect(std::size_t Nsize, const ComplexEnergy& e,
                                        const PhysicalParams& p,
                                        double tol = kDefaultTol,
                                        int max_iter = kDefaultMaxIter) {
    if (Nsize < 2) return 0.0;
    const GreensMatrix G = greens_matrix_recursive(Nsize, e, p, tol, max_iter);
    auto J = [&](int i, int j) { return jmatrix_element(i, j, e, p); };

    // The row identity for the last column reaches G_{N,N-1}, one step past
    // the truncation; extend it with the tail chain.
    const std::size_t last = Nsize - 1;
    const Complex outside = -cn_closed_form(static_cast<int>(Nsize), e, p, tol, max_iter) *
                            J(static_cast<int>(Nsize), static_cast<int>(Nsize) - 1) *
                            G(last, last);

    double worst = 0.0;
    std::vector<Complex> above(Nsize);
    for (std::size_t m = 1; m < Nsize; ++m) {
        const int mi = static_cast<int>(m);
        const Complex below = (m + 1 < Nsize) ? G(m + 1, m) : outside;
        above[m - 1] = (1.0 - J(mi, mi) * G(m, m) - J(mi, mi + 1) * below) / J(mi, mi - 1);
        for (std::size_t n = m - 1; n >= 1; --n) {
            const int ni = static_cast<int>(n);
            const Complex lower = (n + 1 == m) ? G(m, m) : above[n + 1];
            above[n - 1] = -(J(ni, ni) * above[n] + J(ni, ni + 1) * lower) / J(ni, ni - 1);
        }
        for (std::size_t n = 0; n < m; ++n) {
            const double scale = std::max(std::abs(G(n, m)), 1e-300);
            worst = std::max(worst, std::abs(above[n] - G(n, m)) / scale);
        }
    }
    return worst;
}

// The ratio -(1/J_{N+1,N}) G_{N+1,m} / G_{N,m} extracted from a plain
// (uncorrected) truncation of size `size`. Used to demonstrate that the
// ratio does not depend on m and equals C_{N+1}.
inline Complex tail_ratio_from_plain_inverse(int N, std::size_t m, std::size_t size,
                                             const ComplexEnergy& e, const PhysicalParams& p) {
    if (static_cast<std::size_t>(N) + 1 >= size || m >= size)
        throw std::invalid_argument("tail_ratio_from_plain_inverse: indices exceed size");
    const TridiagonalMatrix J = truncated_jmatrix(size, e, p);
    std::vector<Complex> rhs(size, Complex(0.0));
    rhs[m] = 1.0;
    const std::vector<Complex> col = solve_tridiagonal(J, rhs);
    return -col[N + 1] / (jmatrix_element(N + 1, N, e, p) * col[N]);
}

}  // namespace sturmian
