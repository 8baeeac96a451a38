#pragma once

// Dense complex linear algebra for small Hilbert spaces.
//
// Basis conventions used throughout the library:
//   computational basis order (up-up, up-down, down-up, down-down),
//   party 1 on the slow Kronecker index, |up> the +1 eigenvector of sigma_z,
//   Bell order (Phi+, Phi-, Psi+, Psi-).

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace jaynes {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double structural = 1e-12;
inline constexpr double pipeline = 1e-10;
inline constexpr double roundtrip = 1e-9;
}  // namespace tol

/// Largest absolute entry of a - b.
double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest absolute entry of m - m^dagger.
double hermiticity_deviation(const ComplexMatrix& m);

/// A square, finite, Hermitian matrix. Construction validates the
/// Hermiticity contract and stores the exactly symmetrized matrix.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);

  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);

 private:
  ComplexMatrix m_;
};

/// Unit-norm state vector.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  [[nodiscard]] const ComplexVector& amplitudes() const noexcept { return v_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return v_.size(); }

  /// |psi><psi|
  [[nodiscard]] ComplexMatrix projector() const { return v_ * v_.adjoint(); }

 private:
  ComplexVector v_;
};

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator h);
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianOperator(m)) {}

  static DensityMatrix maximally_mixed(Eigen::Index dim);
  static DensityMatrix pure(const StateVector& psi);

  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
  [[nodiscard]] const HermitianOperator& op() const noexcept { return h_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return h_.dim(); }

 private:
  HermitianOperator h_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns

  [[nodiscard]] ComplexMatrix reconstruct() const;
};

enum class PauliAxis { I, X, Y, Z };

HermitianOperator pauli(PauliAxis axis);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

/// (Phi+, Phi-, Psi+, Psi-) in the computational basis.
std::array<StateVector, 4> bell_basis();

/// Unitary whose columns are the Bell vectors in library order.
ComplexMatrix bell_basis_matrix();

SpectralDecomposition eig_hermitian(const HermitianOperator& h);

/// Validates Hermiticity (deviation > 1e-12 throws std::invalid_argument).
SpectralDecomposition eig_hermitian(const ComplexMatrix& m);

/// Applies f to the spectrum of h. Throws std::domain_error when f yields a
/// non-finite value on some eigenvalue.
template <class F>
HermitianOperator matrix_function(const HermitianOperator& h, F&& f) {
  const SpectralDecomposition sd = eig_hermitian(h);
  RealVector mapped(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    const double v = f(sd.eigenvalues(i));
    if (!std::isfinite(v)) {
      throw std::domain_error("matrix_function: function undefined at eigenvalue " +
                              std::to_string(sd.eigenvalues(i)));
    }
    mapped(i) = v;
  }
  const ComplexMatrix out =
      sd.eigenvectors * mapped.cast<cplx>().asDiagonal() * sd.eigenvectors.adjoint();
  return HermitianOperator(out);
}

/// -sum e ln e in nats; eigenvalues are clamped to [0,1] and 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of a probability vector with the same clamping convention.
double shannon_entropy(const RealVector& p);

/// Tr(rho O). Throws std::invalid_argument on dimension mismatch.
double expectation(const DensityMatrix& rho, const HermitianOperator& obs);

/// Real Hilbert-Schmidt inner product Re Tr(a^dagger b).
double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Party { First = 1, Second = 2 };

/// Partial transpose on a 2x2 bipartite space (dim must be 4).
HermitianOperator partial_transpose(const HermitianOperator& h, Party party);
HermitianOperator partial_transpose(const DensityMatrix& rho, Party party);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace jaynes
