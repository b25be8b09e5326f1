#include "coslab/matrix_functions.hpp"

#include <cmath>
#include <string>

#include "coslab/eigen.hpp"
#include "coslab/errors.hpp"

namespace coslab {

namespace {

constexpr double kScaleTarget = 0.5;     // scale ||t*a|| below this before the series
constexpr double kTaylorTol = 1e-16;     // stop when the next term's norm bound drops below
constexpr double kOverflowGuard = 1e150;

} // namespace

Matrix matrix_cos(const Matrix& a, double t) {
    if (!std::isfinite(t))
        throw invalid_input_error("matrix_cos: t must be finite");
    if (!a.all_finite())
        throw invalid_input_error("matrix_cos: non-finite entries");

    const int n = a.dim();
    // |t| only: evenness in t holds bit-for-bit because -t never enters.
    const double s = std::fabs(t);
    Matrix scaled = a * cdouble(s, 0.0);
    const double norm_ta = operator_norm(scaled);

    int k = 0;
    double reduced = norm_ta;
    while (reduced > kScaleTarget) {
        reduced *= 0.5;
        ++k;
    }
    if (k > 0)
        scaled *= cdouble(std::ldexp(1.0, -k), 0.0);

    const Matrix b2 = scaled * scaled;
    const double b2_bound = b2.frobenius_norm();

    Matrix cosine = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int j = 0; j < 64; ++j) {
        const double factor = 1.0 / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
        term = term * b2 * cdouble(-factor, 0.0);
        cosine += term;
        const double next_bound =
            term.frobenius_norm() * b2_bound / ((2.0 * j + 3.0) * (2.0 * j + 4.0));
        if (next_bound < kTaylorTol)
            break;
    }

    for (int i = 0; i < k; ++i) {
        cosine = cosine * cosine * cdouble(2.0, 0.0);
        for (int d = 0; d < n; ++d)
            cosine(d, d) -= cdouble(1.0, 0.0);
        if (cosine.max_abs() > kOverflowGuard)
            throw overflow_error("matrix_cos: overflow guard tripped at ||t*a|| = " +
                                     std::to_string(norm_ta),
                                 norm_ta);
    }
    return cosine;
}

Matrix matrix_sqrt_newton(const Matrix& x) {
    if (!x.all_finite())
        throw invalid_input_error("matrix_sqrt_newton: non-finite entries");

    const Spectrum spec = spectrum(x);
    for (const cdouble& ev : spec.eigenvalues) {
        const double scale = 1.0 + std::abs(ev);
        if (std::abs(ev.imag()) <= 1e-12 * scale && ev.real() <= 1e-12 * scale)
            throw domain_error("matrix_sqrt_newton: spectrum touches the closed negative real axis");
    }

    const int n = x.dim();
    Matrix y = x;
    Matrix z = Matrix::identity(n);
    const int cap = 100;
    for (int iter = 0; iter < cap; ++iter) {
        const Matrix y_next = (y + inverse(z)) * cdouble(0.5, 0.0);
        const Matrix z_next = (z + inverse(y)) * cdouble(0.5, 0.0);
        const double step = (y_next - y).frobenius_norm();
        y = y_next;
        z = z_next;
        if (step <= 1e-14 * std::max(1.0, y.frobenius_norm())) {
            const double residual = (y * y - x).frobenius_norm();
            if (residual > 1e-9 * std::max(1.0, x.frobenius_norm()))
                throw numerical_failure("matrix_sqrt_newton: converged with poor residual",
                                        residual);
            return y;
        }
    }
    const double residual = (y * y - x).frobenius_norm();
    throw numerical_failure("matrix_sqrt_newton: iteration cap exceeded", residual);
}

} // namespace coslab
