#pragma once

#include <vector>

#include "coslab/complex_matrix.hpp"

namespace coslab {

/// The full eigenvalue list of a matrix, with real/imaginary parts exposed
/// separately. For an algebra generated by one matrix these play the role of
/// character evaluations.
struct Spectrum {
    std::vector<cdouble> eigenvalues;

    double real_part(int i) const { return eigenvalues[i].real(); }
    double imag_part(int i) const { return eigenvalues[i].imag(); }

    std::vector<double> real_parts() const;
    std::vector<double> imag_parts() const;

    double spectral_radius() const;
};

/// Eigenvalues of a general dense complex matrix: Householder reduction to
/// Hessenberg form followed by implicit single-shift QR with Wilkinson shifts.
/// Deflation tolerance 1e-12, iteration cap 100*dim. Throws numerical_failure
/// (carrying the worst unreduced subdiagonal) if the cap is reached.
Spectrum spectrum(const Matrix& x);

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi, ascending.
/// Input is not checked for Hermitian-ness beyond using only its lower part's
/// conjugate structure; intended for Gram matrices x^H x.
std::vector<double> hermitian_eigenvalues(const Matrix& h);

/// Operator (spectral) norm: largest singular value, computed as
/// sqrt(lambda_max(x^H x)) with the Jacobi Hermitian solver. Submultiplicative,
/// and exactly 1 on the identity. Throws invalid_input_error on non-finite
/// entries.
double operator_norm(const Matrix& x);

/// max |lambda| over the spectrum.
double spectral_radius_eig(const Matrix& x);

struct GelfandEstimate {
    double value = 0.0;
    int k_used = 0;            // estimate is ||x^(2^k)||^(1/2^k)
    bool guard_triggered = false;
};

/// Norm-root estimate of the spectral radius by repeated squaring, stopping
/// early (with the flag set) when the power's norm leaves [1e-300, 1e150].
GelfandEstimate spectral_radius_gelfand(const Matrix& x, int k_max);

} // namespace coslab
