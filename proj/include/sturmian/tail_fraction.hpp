#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "sturmian/hypergeometric.hpp"
#include "sturmian/jmatrix.hpp"
#include "sturmian/physical.hpp"

namespace sturmian {

// The tail correction C_N is the m-independent ratio
//
//   C_N = -(1/J_{N,N-1}) G_{N,m} / G_{N-1,m},
//
// the single number that turns the truncated inverse of J^(N) into the exact
// Green's matrix. Two independent evaluations are provided: the direct
// continued fraction over J elements (cn_direct) and the exact closed form
// through a ratio of Gauss hypergeometric functions (cn_closed_form).

// Detection threshold for the analytically exact pole condition
// N + L + 1 + i*gamma = 0, -1, -2, ...
inline constexpr double kPoleTol = 1e-10;

// Magnitude below which an inverse tail value is treated as a pole hit.
inline constexpr double kInverseFloor = 1e-280;

namespace detail {

inline bool degenerate_energy(const ComplexEnergy& e, const PhysicalParams& p) {
    const Complex k2 = e.k * e.k;
    const double b2 = p.b_s * p.b_s;
    return std::abs(k2 + b2) <= 1e-12 * (std::abs(k2) + b2);
}

// Throws PoleAtEnergy when N+L+1+i*gamma sits on a nonpositive integer,
// naming the radial quantum number n_r of the offending bound state.
inline void check_pole(int N, const ComplexEnergy& e, const PhysicalParams& p) {
    const Complex u = Complex(N + p.L + 1.0) + e.i_gamma;
    if (near_nonpositive_integer(u, kPoleTol)) {
        const int n_r = N - static_cast<int>(std::round(u.real()));
        throw PoleAtEnergy("z is a bound-state pole of the Green's operator (n_r = " +
                               std::to_string(n_r) + ")",
                           n_r);
    }
}

}  // namespace detail

// Matched T-fraction parameters: the five equations
//
//   y         = d^2 ((k^2+b_S^2)/(4 b_S))^2
//   1 + y     = d (k^2-b_S^2)/(2 b_S)
//   y(b+c-a)  = d^2 ((k^2+b_S^2)/(4 b_S))^2 (2N+2L+1)
//   y b(c-a)  = d^2 ((k^2+b_S^2)/(4 b_S))^2 N(N+2L+1)
//   c+(b-a+1)y = d (-Z + (k^2-b_S^2)/(2 b_S)(N+L+1))
//
// are solved by d = -4 b_S/(b_S-ik)^2, y = ((b_S+ik)/(b_S-ik))^2 and (first
// branch) a = -L+i*gamma, b = N, c = N+L+1+i*gamma. The second branch is
// related through Euler's transformation (see euler_transform_check) and is
// never used for evaluation.
struct TFractionMatch {
    Complex a, b, c, y, d;
};

inline TFractionMatch match_tfraction_params(int N, const ComplexEnergy& e,
                                             const PhysicalParams& p) {
    if (N < 0) throw std::invalid_argument("match_tfraction_params: N must be >= 0");
    const Complex ik = Complex(0.0, 1.0) * e.k;
    const Complex denom = p.b_s - ik;
    TFractionMatch m;
    m.d = -4.0 * p.b_s / (denom * denom);
    const Complex w = (p.b_s + ik) / denom;
    m.y = w * w;
    if (std::abs(m.y) >= 1.0 - 1e-12)
        throw CutProximity("match_tfraction_params: |y| ~ 1, z is on or next to the branch cut");
    m.a = Complex(-p.L) + e.i_gamma;
    m.b = Complex(N);
    m.c = Complex(N + p.L + 1.0) + e.i_gamma;
    return m;
}

// C_N by the direct continued fraction over J-matrix elements,
//
//   C_N^{-1} = J_{N,N} + K_{p>=1}( -J_{N+p-1,N+p}^2 / J_{N+p,N+p} ),
//
// evaluated forward and inverted. Non-convergence is reported in the result,
// not thrown.
inline CFResult cn_direct(int N, const ComplexEnergy& e, const PhysicalParams& p,
                          double tol = kDefaultTol, int max_iter = kDefaultMaxIter) {
    if (N < 0) throw std::invalid_argument("cn_direct: N must be >= 0");
    const Complex off = detail::jmatrix_off_coeff(e, p);
    const Complex diag = detail::jmatrix_diag_coeff(e, p);
    const double L = p.L, Z = p.Z;
    CFTerms terms{
        diag * (N + L + 1.0) - Z,
        [=](int q) { return -off * off * ((N + q) * (N + 2.0 * L + 1.0 + q)); },
        [=](int q) { return diag * (N + L + 1.0 + q) - Z; },
    };
    CFResult cf = eval_continued_fraction(terms, tol, max_iter);
    if (std::abs(cf.value) < kInverseFloor)
        throw PoleAtEnergy("cn_direct: C_N^{-1} vanished, z is at a pole", -1);
    cf.value = 1.0 / cf.value;
    return cf;
}

namespace detail {

struct CnInfo {
    Complex value{0.0, 0.0};
    int iterations = 0;
    bool converged = true;
};

// Closed form
//
//   C_N = [-4 b_S/(b_S-ik)^2] / (N+L+1+i*gamma)
//         * 2F1(-L+ig, N+1; N+L+2+ig; y) / 2F1(-L+ig, N; N+L+1+ig; y).
//
// Note the displayed ratio is the reciprocal of the T-fraction's ratio times
// c: T(a,N;c;y) = c 2F1(a,N;c;y)/2F1(a,N+1;c+1;y) = d C_N^{-1}, so
// C_N = (d/c) / [T/c]. Both 2F1 factors come from the power series when
// |y| < 0.9 and from the T-fraction otherwise.
inline CnInfo cn_closed_form_info(int N, const ComplexEnergy& e, const PhysicalParams& p,
                                  double tol, int max_iter) {
    check_pole(N, e, p);
    const TFractionMatch m = match_tfraction_params(N, e, p);
    CnInfo info;
    const Complex prefactor = m.d / m.c;
    if (std::abs(m.y) < 0.9) {
        int terms_num = 0, terms_den = 0;
        const Complex num =
            hyp2f1_series_counted(Hyp2F1Params(m.a, m.b + 1.0, m.c + 1.0, m.y), tol, terms_num);
        const Complex den = hyp2f1_series_counted(Hyp2F1Params(m.a, m.b, m.c, m.y), tol, terms_den);
        if (std::abs(den) < kInverseFloor)
            throw Error("cn_closed_form: denominator 2F1 vanished");
        info.value = prefactor * num / den;
        info.iterations = std::max(terms_num, terms_den);
        return info;
    }
    const CFResult cf = hyp2f1_ratio_result(Hyp2F1Params(m.a, m.b, m.c, m.y), tol, max_iter);
    if (std::abs(cf.value) < kInverseFloor)
        throw Error("cn_closed_form: hypergeometric ratio vanished");
    info.value = prefactor / cf.value;
    info.iterations = cf.iterations;
    info.converged = cf.converged;
    return info;
}

}  // namespace detail

inline Complex cn_closed_form(int N, const ComplexEnergy& e, const PhysicalParams& p,
                              double tol = kDefaultTol, int max_iter = kDefaultMaxIter) {
    if (N < 0) throw std::invalid_argument("cn_closed_form: N must be >= 0");
    const detail::CnInfo info = detail::cn_closed_form_info(N, e, p, tol, max_iter);
    if (!info.converged)
        throw NonConvergence("cn_closed_form: ratio fraction did not converge",
                             info.iterations, 0.0);
    return info.value;
}

// Relative residual of the Euler-transform identity that makes the two
// T-fraction parameter branches coincide,
//
//   2F1(-L+ig, N; N+L+1+ig; y)
//       = (1-y)^{2L+1} 2F1(L+1+ig, N+2L+1; N+L+1+ig; y),
//
// with the power on the principal branch. (The exponent is c-a-b = 2L+1.)
inline double euler_transform_check(int N, const ComplexEnergy& e, const PhysicalParams& p,
                                    double tol = kDefaultTol) {
    const TFractionMatch m = match_tfraction_params(N, e, p);
    if (std::abs(m.y) >= 0.9)
        throw std::domain_error("euler_transform_check: |y| must be < 0.9");
    const Complex f1 = hyp2f1_series(Hyp2F1Params(m.a, m.b, m.c, m.y), tol);
    const Complex f2 = hyp2f1_series(
        Hyp2F1Params(Complex(p.L + 1.0) + e.i_gamma, m.b + 2.0 * p.L + 1.0, m.c, m.y), tol);
    const Complex transformed = std::pow(1.0 - m.y, 2.0 * p.L + 1.0) * f2;
    const double scale = std::max(std::abs(f1), 1e-300);
    return std::abs(f1 - transformed) / scale;
}

// G_{0,0} = C_0: the corner element of the Green's matrix,
//
//   G_{0,0} = -4 b_S/(b_S-ik)^2 * 1/(L+1+ig) * 2F1(-L+ig, 1; L+2+ig; y).
inline Complex g00(const ComplexEnergy& e, const PhysicalParams& p,
                   double tol = kDefaultTol, int max_iter = kDefaultMaxIter) {
    return cn_closed_form(0, e, p, tol, max_iter);
}

struct G00Info {
    Complex value{0.0, 0.0};
    int iterations = 0;
    bool converged = true;
};

// Scan-friendly variant: reports iteration count and does not throw on a
// non-converged hypergeometric ratio.
inline G00Info g00_info(const ComplexEnergy& e, const PhysicalParams& p,
                        double tol = kDefaultTol, int max_iter = kDefaultMaxIter) {
    const detail::CnInfo info = detail::cn_closed_form_info(0, e, p, tol, max_iter);
    return G00Info{info.value, info.iterations, info.converged};
}

// One step of the tail recursion, C_{N+1} = J_{N,N}/J_{N,N+1}^2
// - C_N^{-1}/J_{N,N+1}^2. Rejects the degenerate energy z = -b_S^2/2 where
// every off-diagonal J element (the divisor) vanishes.
inline Complex cn_forward_recursion(Complex c_prev, int N, const ComplexEnergy& e,
                                    const PhysicalParams& p) {
    if (N < 0) throw std::invalid_argument("cn_forward_recursion: N must be >= 0");
    if (detail::degenerate_energy(e, p))
        throw DegenerateEnergy("cn_forward_recursion: z = -b_S^2/2 makes J_{N,N+1} = 0");
    if (std::abs(c_prev) < kInverseFloor)
        throw Error("cn_forward_recursion: C_N is zero, cannot invert");
    const Complex j_off = jmatrix_element(N, N + 1, e, p);
    const Complex j_off2 = j_off * j_off;
    return jmatrix_element(N, N, e, p) / j_off2 - 1.0 / (c_prev * j_off2);
}

}  // namespace sturmian
