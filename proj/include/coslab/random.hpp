#pragma once

#include "coslab/complex_matrix.hpp"
#include "coslab/rng.hpp"

namespace coslab {

/// Entries uniform over [-1,1) x [-1,1) in the complex plane.
Matrix random_matrix(Rng& rng, int dim);

/// Random matrix rescaled so that its operator norm equals `target` exactly
/// as computed (target 0 gives the zero matrix).
Matrix random_matrix_with_norm(Rng& rng, int dim, double target);

/// Random normal matrix (unitarily diagonalizable): Q diag(lambda) Q^H with Q
/// from modified Gram-Schmidt and eigenvalues uniform over the disk of radius
/// `radius`.
Matrix random_normal_matrix(Rng& rng, int dim, double radius);

/// Random unitary via modified Gram-Schmidt on a random matrix.
Matrix random_unitary(Rng& rng, int dim);

} // namespace coslab
