#pragma once

// Coulomb-Sturmian matrix elements of the Coulomb Green's operator:
// exact closed-form tail fractions, cross-validating evaluation routes,
// and the bound spectrum from the resolvent poles.

#include "sturmian/basis.hpp"
#include "sturmian/continued_fraction.hpp"
#include "sturmian/errors.hpp"
#include "sturmian/green_matrix.hpp"
#include "sturmian/hypergeometric.hpp"
#include "sturmian/io.hpp"
#include "sturmian/jmatrix.hpp"
#include "sturmian/laguerre.hpp"
#include "sturmian/physical.hpp"
#include "sturmian/spectrum.hpp"
#include "sturmian/tail_fraction.hpp"
#include "sturmian/tridiagonal.hpp"
