#pragma once

#include "coslab/complex_matrix.hpp"

namespace coslab {

/// cos(t*a) by argument scaling, truncated Taylor series on the scaled
/// argument, and double-angle squaring C(2u) = 2C(u)^2 - 1. Exactly even in t
/// (the sign of t never enters the computation). Throws overflow_error
/// (carrying ||t*a||) when an intermediate leaves the guarded range.
Matrix matrix_cos(const Matrix& a, double t);

/// Principal square root by the Denman-Beavers iteration; the independent
/// cross-check for the binomial-series square root. Requires the spectrum to
/// avoid the closed negative real axis (checked); the result has spectrum in
/// the open right half-plane.
Matrix matrix_sqrt_newton(const Matrix& x);

} // namespace coslab
