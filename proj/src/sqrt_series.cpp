#include "coslab/sqrt_series.hpp"

#include <cmath>

#include "coslab/eigen.hpp"
#include "coslab/errors.hpp"

namespace coslab {

namespace {

constexpr double kBoundarySlack = 1e-12; // treat norms in (1, 1+slack] as the boundary

// alpha[n+1] from alpha[n]; the stable ratio recurrence.
inline double next_alpha(double alpha_n, long n) {
    return alpha_n * (0.5 - static_cast<double>(n)) / (static_cast<double>(n) + 1.0);
}

} // namespace

SqrtSeriesCoeffs SqrtSeriesCoeffs::make(int n_max) {
    if (n_max < 1)
        throw invalid_input_error("SqrtSeriesCoeffs: n_max must be >= 1");
    SqrtSeriesCoeffs c;
    c.n_max = n_max;
    c.alpha.resize(n_max + 1);
    c.abs_partial.resize(n_max + 1);
    c.alpha[0] = 1.0;
    c.abs_partial[0] = 0.0;
    double a = 1.0;
    for (int n = 0; n < n_max; ++n) {
        a = next_alpha(a, n);
        c.alpha[n + 1] = a;
        c.abs_partial[n + 1] = c.abs_partial[n] + std::fabs(a);
    }
    return c;
}

double bound_rhs(double norm_x) {
    if (!(norm_x >= 0.0 && norm_x <= 1.0))
        throw domain_error("bound_rhs: argument must lie in [0, 1]");
    // 1 - sqrt(1-m) written cancellation-free.
    return norm_x / (1.0 + std::sqrt(1.0 - norm_x));
}

cdouble scalar_sqrt_series(cdouble z, double tol) {
    if (tol <= 0.0)
        throw invalid_input_error("scalar_sqrt_series: tol must be > 0");
    const double t = std::abs(z);
    if (t > 1.0 + kBoundarySlack)
        throw domain_error("scalar_sqrt_series: |z| must be <= 1");
    const double tt = std::min(t, 1.0);
    const double tail_total = bound_rhs(tt);

    cdouble sum(1.0, 0.0);
    cdouble zpow(1.0, 0.0);
    double alpha = 1.0;
    double sign = 1.0;
    double abs_sum = 0.0;
    double tpow = 1.0;
    for (long n = 0; n < kSeriesTermCap; ++n) {
        alpha = next_alpha(alpha, n);
        sign = -sign;
        zpow *= z;
        tpow *= tt;
        sum += sign * alpha * zpow;
        abs_sum += std::fabs(alpha) * tpow;
        const double tail = tail_total - abs_sum;
        if (tail < tol)
            return sum;
    }
    throw slow_convergence_error(
        "scalar_sqrt_series: boundary convergence too slow for tol; "
        "use the Newton square root instead",
        tail_total);
}

MatrixSqrtSeriesResult matrix_sqrt_series(const Matrix& x, double tol) {
    if (tol <= 0.0)
        throw invalid_input_error("matrix_sqrt_series: tol must be > 0");
    const double norm_x = operator_norm(x);
    if (norm_x > 1.0 + kBoundarySlack)
        throw domain_error("matrix_sqrt_series: ||x|| must be <= 1");
    const double t = std::min(norm_x, 1.0);
    const double tail_total = bound_rhs(t);
    const int dim = x.dim();

    MatrixSqrtSeriesResult r;
    r.certified_bound = tail_total;
    r.value = Matrix::identity(dim);
    Matrix xpow = Matrix::identity(dim);
    double alpha = 1.0;
    double sign = 1.0;
    double abs_sum = 0.0;
    double tpow = 1.0;
    for (long n = 0; n < kSeriesTermCap; ++n) {
        alpha = next_alpha(alpha, n);
        sign = -sign;
        xpow = xpow * x;
        tpow *= t;
        r.value += xpow * cdouble(sign * alpha, 0.0);
        abs_sum += std::fabs(alpha) * tpow;
        r.terms_used = n + 1;
        const double tail = tail_total - abs_sum;
        if (tail < tol) {
            r.tail_bound = std::max(tail, 0.0);
            return r;
        }
        // Once x^n underflows to zero the sum can no longer change.
        if (xpow.max_abs() == 0.0) {
            r.tail_bound = std::max(tail, 0.0);
            return r;
        }
    }
    r.tail_bound = std::max(tail_total - abs_sum, 0.0);
    r.flagged_slow = true;
    return r;
}

bool halfplane_check(const Matrix& x) {
    const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
    const Spectrum s = spectrum(r.value);
    for (const auto& ev : s.eigenvalues)
        if (ev.real() < -1e-9)
            return false;
    return true;
}

} // namespace coslab
