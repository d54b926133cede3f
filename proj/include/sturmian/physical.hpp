#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sturmian/continued_fraction.hpp"

namespace sturmian {

// Fixed problem definition: Coulomb strength Z (attractive when Z < 0),
// Sturmian scale b_S, orbital quantum number l, dimension D >= 2, and the
// effective angular momentum L = l + (D-3)/2 (half-integer in even D).
// Units are hbar = m = 1.
struct PhysicalParams {
    double Z = -1.0;
    double b_s = 1.0;
    int l = 0;
    int dimension = 3;
    double L = 0.0;
};

inline PhysicalParams make_physical_params(double Z, double b_s, int l, int dimension) {
    if (!(b_s > 0.0)) throw std::invalid_argument("PhysicalParams: b_S must be > 0");
    if (l < 0) throw std::invalid_argument("PhysicalParams: l must be >= 0");
    if (dimension < 2) throw std::invalid_argument("PhysicalParams: D must be >= 2");
    PhysicalParams p;
    p.Z = Z;
    p.b_s = b_s;
    p.l = l;
    p.dimension = dimension;
    p.L = l + (dimension - 3) / 2.0;
    return p;
}

// Complex energy z with its derived momentum k = sqrt(2z) on the physical
// branch Im k >= 0 (so k = i|k| for z on the negative real axis, and
// |y(z)| < 1 everywhere off the positive real axis). Im k = 0 means z sits
// on the branch cut; that is flagged, not rejected, so callers can decide.
struct ComplexEnergy {
    Complex z{-0.5, 0.0};
    Complex k{0.0, 1.0};
    Complex i_gamma{0.0, 0.0};  // i*Z/k; real and negative for attractive bound states
    bool on_branch_cut = false;
};

inline ComplexEnergy make_complex_energy(Complex z, const PhysicalParams& p) {
    if (z == Complex(0.0)) throw std::invalid_argument("ComplexEnergy: z = 0 has no momentum branch");
    Complex k = std::sqrt(2.0 * z);
    if (k.imag() < 0.0) k = -k;
    ComplexEnergy e;
    e.z = z;
    e.k = k;
    e.i_gamma = Complex(0.0, 1.0) * p.Z / k;
    e.on_branch_cut = (k.imag() == 0.0);
    return e;
}

}  // namespace sturmian
