#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coslab/eigen.hpp"
#include "coslab/errors.hpp"
#include "coslab/matrix_functions.hpp"
#include "coslab/random.hpp"
#include "coslab/rng.hpp"
#include "coslab/sqrt_series.hpp"

using namespace coslab;

TEST_CASE("alpha coefficients") {
    const SqrtSeriesCoeffs c = SqrtSeriesCoeffs::make(2500);
    CHECK(c.alpha[0] == 1.0);
    CHECK(c.alpha[1] == 0.5);
    CHECK(c.alpha[2] == -0.125);
    CHECK(c.alpha[3] == 0.0625);

    // Sign pattern (-1)^(n-1) alpha_n >= 0.
    for (int n = 1; n <= c.n_max; ++n)
        CHECK((n % 2 == 1 ? c.alpha[n] : -c.alpha[n]) >= 0.0);

    // Absolute sums approach 1 from below; tail is O(n^-1/2).
    CHECK(c.abs_partial[c.n_max] <= 1.0);
    CHECK(c.abs_partial[c.n_max] >= 1.0 - 2e-2);

    CHECK_THROWS_AS(SqrtSeriesCoeffs::make(0), invalid_input_error);
}

TEST_CASE("bound_rhs closed form") {
    CHECK(bound_rhs(0.0) == 0.0);
    CHECK(bound_rhs(1.0) == 1.0);
    CHECK(bound_rhs(0.5) == doctest::Approx(0.2928932188134524).epsilon(1e-15));
    CHECK_THROWS_AS(bound_rhs(-0.1), domain_error);
    CHECK_THROWS_AS(bound_rhs(1.1), domain_error);
}

TEST_CASE("scalar series") {
    CHECK(scalar_sqrt_series(cdouble(0.0, 0.0), 1e-12) == cdouble(1.0, 0.0));
    CHECK(std::abs(scalar_sqrt_series(cdouble(0.75, 0.0), 1e-13) - cdouble(0.5, 0.0)) <=
          1e-12);

    // Principal root oracle in polar form.
    const cdouble z(0.5, 0.5);
    const cdouble w = scalar_sqrt_series(z, 1e-13);
    const cdouble oracle = std::sqrt(cdouble(1.0, 0.0) - z);
    CHECK(std::abs(w - oracle) <= 1e-12);
    CHECK(w.real() >= 0.0);

    CHECK_THROWS_AS(scalar_sqrt_series(cdouble(1.5, 0.0), 1e-6), domain_error);
    CHECK_THROWS_AS(scalar_sqrt_series(cdouble(1.0, 0.0), 1e-6), slow_convergence_error);
    CHECK_THROWS_AS(scalar_sqrt_series(cdouble(0.5, 0.0), 0.0), invalid_input_error);
}

TEST_CASE("scalar series meets its tolerance contract") {
    // |w^2 - (1-z)| <= 2 tol and Re(w) >= 0 across the open disk.
    Rng rng(137);
    for (int trial = 0; trial < 200; ++trial) {
        cdouble z = rng.next_complex_box();
        while (std::abs(z) > 0.98)
            z = rng.next_complex_box();
        const double tol = std::pow(10.0, rng.uniform(-13.0, -4.0));
        const cdouble w = scalar_sqrt_series(z, tol);
        CHECK(std::abs(w * w - (cdouble(1.0, 0.0) - z)) <= 2.0 * tol);
        CHECK(w.real() >= 0.0);
    }
}

TEST_CASE("matrix series: diagonal and random") {
    const MatrixSqrtSeriesResult r0 = matrix_sqrt_series(Matrix(3), 1e-12);
    CHECK((r0.value - Matrix::identity(3)).max_abs() == 0.0);
    CHECK(r0.certified_bound == 0.0);

    const MatrixSqrtSeriesResult rd =
        matrix_sqrt_series(diag_matrix({cdouble(0.75, 0.0), cdouble(0.0, 0.0)}), 1e-13);
    CHECK(std::abs(rd.value(0, 0) - cdouble(0.5, 0.0)) <= 1e-12);
    CHECK(std::abs(rd.value(1, 1) - cdouble(1.0, 0.0)) <= 1e-12);

    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix x = random_matrix_with_norm(rng, dim, 0.9);
        const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-10);
        const Matrix newton = matrix_sqrt_newton(Matrix::identity(dim) - x);
        CHECK(operator_norm(r.value - newton) <= 1e-8);
        CHECK(operator_norm(r.value * r.value - (Matrix::identity(dim) - x)) <= 1e-9);
        CHECK(operator_norm(Matrix::identity(dim) - r.value) <=
              r.certified_bound + 1e-9);
    }

    Matrix big(2);
    big(0, 1) = cdouble(2.0, 0.0);
    CHECK_THROWS_AS(matrix_sqrt_series(big, 1e-9), domain_error);
}

TEST_CASE("matrix series: boundary is flagged, not fatal") {
    Matrix x(1);
    x(0, 0) = cdouble(1.0, 0.0); // ||x|| = 1 exactly
    const MatrixSqrtSeriesResult r = matrix_sqrt_series(x, 1e-6);
    CHECK(r.flagged_slow);
    CHECK(r.terms_used == kSeriesTermCap);
    CHECK(r.tail_bound > 0.0);
    CHECK(r.tail_bound < 1e-2); // achieved accuracy is reported
    CHECK(std::abs(r.value(0, 0)) <= r.tail_bound + 1e-12); // sqrt(0) = 0
}

TEST_CASE("half-plane property of the series root") {
    CHECK(halfplane_check(Matrix(4)));                          // eigenvalues all 1
    CHECK(halfplane_check(diag_matrix({cdouble(1.0, 0.0)})));   // boundary Re = 0

    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = rng.uniform_int(2, 6);
        const Matrix x = random_matrix_with_norm(rng, dim, rng.uniform(0.0, 0.95));
        CHECK(halfplane_check(x));
    }
}

TEST_CASE("partial sums against the closed-form tail") {
    const SqrtSeriesCoeffs c = SqrtSeriesCoeffs::make(4000);
    for (const double t : {0.1, 0.5, 0.9}) {
        double sum = 0.0;
        double abs_sum = 0.0;
        double tpow = 1.0;
        for (int n = 1; n <= c.n_max; ++n) {
            tpow *= t;
            sum += (n % 2 == 1 ? 1.0 : -1.0) * c.alpha[n] * tpow;
            abs_sum += std::fabs(c.alpha[n]) * tpow;
        }
        const double target = bound_rhs(t);
        const double tail = std::max(target - abs_sum, 0.0);
        CHECK(std::fabs(sum - target) <= tail + 1e-12);
    }
}
