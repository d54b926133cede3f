#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sturmian {

// Numerical failures that carry physical meaning get their own types so
// callers (and the CLI exit-code contract) can tell them apart from plain
// usage errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative evaluation hit its cap before reaching the requested tolerance.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, int iterations_, double residual_)
        : Error(what), iterations(iterations_), residual(residual_) {}
    int iterations;
    double residual;
};

// z coincides (within the analytic detection threshold) with a bound-state
// pole of the resolvent: N+L+1+i*gamma is a nonpositive integer.
class PoleAtEnergy : public Error {
public:
    PoleAtEnergy(const std::string& what, int radial_index_ = -1)
        : Error(what), radial_index(radial_index_) {}
    int radial_index;  // n_r when identifiable, else -1
};

// |y(z)| is too close to 1: z sits on or next to the positive-energy branch
// cut, outside the convergence region of both hypergeometric routes.
class CutProximity : public Error {
public:
    using Error::Error;
};

// A pivot of the tridiagonal elimination collapsed; z is at or near an
// eigenvalue of the tail-corrected operator.
class NearSingular : public Error {
public:
    NearSingular(const std::string& what, std::size_t pivot_index_)
        : Error(what), pivot_index(pivot_index_) {}
    std::size_t pivot_index;
};

// Root bracket endpoints do not straddle a sign change.
class NoSignChange : public Error {
public:
    using Error::Error;
};

// z = -b_S^2/2 makes k^2 + b_S^2 = 0: every off-diagonal J element vanishes
// and the recursion relations divide by zero.
class DegenerateEnergy : public Error {
public:
    using Error::Error;
};

}  // namespace sturmian
