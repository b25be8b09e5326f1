#pragma once

#include <vector>

#include "coslab/complex_matrix.hpp"

namespace coslab {

/// Coefficients of the binomial series sqrt(1-z) = sum (-1)^n alpha_n z^n,
/// alpha_n = (1/n!) * (1/2)(1/2 - 1)...(1/2 - n + 1), with running absolute
/// partial sums for exact tail bounds. alpha[0] is taken as 1 so that the
/// series has its constant term; the absolute sums start at n = 1 either way.
struct SqrtSeriesCoeffs {
    int n_max = 0;
    std::vector<double> alpha;       // alpha[0] = 1, then the product formula
    std::vector<double> abs_partial; // abs_partial[k] = sum_{n=1..k} |alpha[n]|

    static SqrtSeriesCoeffs make(int n_max);
};

/// 1 - sqrt(1 - norm_x): the closed form of the series' absolute tail and the
/// certified bound for ||1 - sqrt(1-x)||. Stable for tiny arguments (no
/// 1 - sqrt cancellation). Domain [0, 1].
double bound_rhs(double norm_x);

/// Hard cap on series terms; hitting it means boundary-slow convergence.
constexpr long kSeriesTermCap = 1000000;

/// Principal square root of 1-z by the truncated binomial series. Truncation
/// uses the exact tail identity: stop once (1 - sqrt(1-|z|)) minus the
/// weighted absolute partial sum drops below tol. Throws domain_error for
/// |z| > 1 and slow_convergence_error when the cap is reached first.
cdouble scalar_sqrt_series(cdouble z, double tol);

struct MatrixSqrtSeriesResult {
    Matrix value;
    long terms_used = 0;
    double tail_bound = 0.0;      // certified remainder of the truncation
    double certified_bound = 0.0; // 1 - sqrt(1 - ||x||), bound for ||1 - value||
    bool flagged_slow = false;    // term cap reached before the tail met tol
};

/// Matrix form of the series on the closed unit ball ||x|| <= 1. The boundary
/// is permitted but flagged when the requested tolerance is out of reach.
MatrixSqrtSeriesResult matrix_sqrt_series(const Matrix& x, double tol);

/// True iff every eigenvalue of the series square root of 1-x has real part
/// >= -1e-9 (characters realized as eigenvalue evaluations).
bool halfplane_check(const Matrix& x);

} // namespace coslab
