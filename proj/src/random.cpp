#include "coslab/random.hpp"

#include <cmath>

#include "coslab/eigen.hpp"
#include "coslab/errors.hpp"

namespace coslab {

Matrix random_matrix(Rng& rng, int dim) {
    Matrix m(dim);
    for (auto& v : m.data())
        v = rng.next_complex_box();
    return m;
}

Matrix random_matrix_with_norm(Rng& rng, int dim, double target) {
    if (target < 0.0)
        throw invalid_input_error("random_matrix_with_norm: target must be >= 0");
    Matrix m = random_matrix(rng, dim);
    if (target == 0.0)
        return Matrix(dim);
    double norm = operator_norm(m);
    while (norm == 0.0) {
        m = random_matrix(rng, dim);
        norm = operator_norm(m);
    }
    m *= cdouble(target / norm, 0.0);
    return m;
}

Matrix random_unitary(Rng& rng, int dim) {
    // Modified Gram-Schmidt on the columns of a random matrix.
    Matrix m = random_matrix(rng, dim);
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < j; ++k) {
            cdouble proj(0.0, 0.0);
            for (int i = 0; i < dim; ++i)
                proj += std::conj(m(i, k)) * m(i, j);
            for (int i = 0; i < dim; ++i)
                m(i, j) -= proj * m(i, k);
        }
        double norm2 = 0.0;
        for (int i = 0; i < dim; ++i)
            norm2 += std::norm(m(i, j));
        if (norm2 < 1e-24) {
            // Degenerate draw; retry the whole matrix.
            return random_unitary(rng, dim);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < dim; ++i)
            m(i, j) *= inv;
    }
    return m;
}

Matrix random_normal_matrix(Rng& rng, int dim, double radius) {
    const Matrix q = random_unitary(rng, dim);
    Matrix d(dim);
    for (int i = 0; i < dim; ++i) {
        // Rejection-sample the unit disk, then scale.
        cdouble z;
        do {
            z = rng.next_complex_box();
        } while (std::norm(z) > 1.0);
        d(i, i) = z * radius;
    }
    return q * d * q.adjoint();
}

} // namespace coslab
