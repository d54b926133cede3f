#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sturmian/tail_fraction.hpp"

namespace sturmian {

// One bound level of the attractive Coulomb system:
//   E_{n_r} = -Z^2 / (2 (n_r + L + 1)^2),  n_r = 0, 1, 2, ...
struct BoundState {
    int n_r = 0;
    double energy = 0.0;
    double principal_combination = 0.0;  // n_r + L + 1
};

inline std::vector<BoundState> analytic_spectrum(const PhysicalParams& p, int n_max) {
    if (p.Z >= 0.0)
        throw std::invalid_argument("analytic_spectrum: no bound states for Z >= 0");
    if (n_max < 1) throw std::invalid_argument("analytic_spectrum: n_max must be >= 1");
    std::vector<BoundState> levels;
    levels.reserve(n_max);
    for (int n_r = 0; n_r < n_max; ++n_r) {
        const double pc = n_r + p.L + 1.0;
        levels.push_back({n_r, -p.Z * p.Z / (2.0 * pc * pc), pc});
    }
    return levels;
}

namespace detail {

// Re(1/G00) on the negative real axis; real-valued and analytic there away
// from the cut, with simple zeros at the bound energies.
inline double inverse_g00(double x, const PhysicalParams& p) {
    const ComplexEnergy e = make_complex_energy(Complex(x, 0.0), p);
    return (1.0 / g00(e, p)).real();
}

}  // namespace detail

// Root of 1/G00(z) inside [lo, hi] on the negative real axis, by bracketed
// bisection with secant acceleration. The bracket must contain exactly one
// sign change of Re(1/G00). Hitting a pole exactly during evaluation is a
// certificate in itself (the PoleAtEnergy guard fires on the analytic pole
// condition) and returns that abscissa.
inline double locate_pole(const PhysicalParams& p, double lo, double hi,
                          double tol = 1e-10) {
    if (p.Z >= 0.0) throw std::invalid_argument("locate_pole: no bound states for Z >= 0");
    if (!(lo < hi) || hi >= 0.0)
        throw std::invalid_argument("locate_pole: bracket must satisfy lo < hi < 0");
    if (!(tol > 0.0)) throw std::invalid_argument("locate_pole: tol must be > 0");

    // When a probe lands on the pole itself, that probe is the answer.
    double pole_hit = 0.0;
    auto f = [&](double x) -> std::pair<double, bool> {
        try {
            return {detail::inverse_g00(x, p), false};
        } catch (const PoleAtEnergy&) {
            pole_hit = x;
            return {0.0, true};
        }
    };

    auto [fa, hit_a] = f(lo);
    if (hit_a) return pole_hit;
    auto [fb, hit_b] = f(hi);
    if (hit_b) return pole_hit;
    if (fa == 0.0) return lo;
    if (fb == 0.0) return hi;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChange("locate_pole: no sign change of Re(1/G00) on the bracket");

    double a = lo, b = hi;
    while (b - a > tol) {
        // Secant candidate, kept strictly inside; fall back to the midpoint.
        double x = a - fa * (b - a) / (fb - fa);
        const double mid = 0.5 * (a + b);
        if (!(x > a + 0.01 * (b - a)) || !(x < b - 0.01 * (b - a))) x = mid;
        auto [fx, hit] = f(x);
        if (hit) return pole_hit;
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    return 0.5 * (a + b);
}

// Least-squares slope of log|G00(z0+delta)| against log|delta| over the given
// radii (probed on both sides of z0). A first-order pole gives slope -1; a
// regular point gives slope ~ 0.
inline double pole_order_probe(const PhysicalParams& p, double z0,
                               const std::vector<double>& radii) {
    if (radii.empty()) throw std::invalid_argument("pole_order_probe: radii must be nonempty");
    std::vector<double> xs, ys;
    for (const double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("pole_order_probe: radii must be > 0");
        for (const double delta : {r, -r}) {
            const ComplexEnergy e = make_complex_energy(Complex(z0 + delta, 0.0), p);
            xs.push_back(std::log(r));
            ys.push_back(std::log(std::abs(g00(e, p))));
        }
    }
    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Numerically locate the first n_levels bound states by bracketing each
// analytic anchor. Brackets start at a quarter of the gap to the nearest
// neighboring level and shrink when they turn out to contain a zero of G00
// as well (the zeros can sit close to the poles for some b_S).
inline std::vector<double> locate_spectrum(const PhysicalParams& p, int n_levels,
                                           double tol = 1e-10) {
    const std::vector<BoundState> levels = analytic_spectrum(p, n_levels + 1);
    std::vector<double> located;
    located.reserve(n_levels);
    for (int i = 0; i < n_levels; ++i) {
        const double E = levels[i].energy;
        const double gap_up = levels[i + 1].energy - E;
        const double gap_down = (i > 0) ? E - levels[i - 1].energy : gap_up;
        double delta = 0.25 * std::min(gap_up, gap_down);
        double root = 0.0;
        bool found = false;
        for (int attempt = 0; attempt < 8 && !found; ++attempt, delta *= 0.25) {
            try {
                root = locate_pole(p, E - delta, E + delta, tol);
            } catch (const NoSignChange&) {
                continue;  // bracket caught a G00 zero as well; tighten
            }
            // Reject roots that are divergences of 1/G00 (zeros of G00).
            try {
                found = std::abs(detail::inverse_g00(root, p)) < 1e-3;
            } catch (const PoleAtEnergy&) {
                found = true;
            }
        }
        if (!found)
            throw NoSignChange("locate_spectrum: could not isolate the pole for n_r = " +
                               std::to_string(levels[i].n_r));
        located.push_back(root);
    }
    return located;
}

}  // namespace sturmian
