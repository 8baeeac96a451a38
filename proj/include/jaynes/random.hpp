#pragma once

// Random test ensembles shared by the property checks.

#include <array>
#include <random>

#include "jaynes/hermitian.hpp"

namespace jaynes {

using Rng = std::mt19937_64;

/// Entries (real and imaginary parts) uniform in [-scale, scale], then symmetrized.
HermitianOperator random_hermitian(Eigen::Index dim, Rng& rng, double scale = 1.0);

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

/// G G^dagger / Tr with G a dim x rank complex Ginibre matrix.
DensityMatrix random_density_matrix(Eigen::Index dim, Eigen::Index rank, Rng& rng);

/// Uniform point on the probability simplex.
std::array<double, 4> random_simplex4(Rng& rng);

}  // namespace jaynes
