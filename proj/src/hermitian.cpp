#include "jaynes/hermitian.hpp"

#include <algorithm>

namespace jaynes {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_deviation: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const ComplexMatrix& m) {
  return max_abs_deviation(m, m.adjoint());
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  require_square(m, "HermitianOperator");
  if (!m.allFinite()) {
    throw std::invalid_argument("HermitianOperator: non-finite entry");
  }
  const double dev = hermiticity_deviation(m);
  if (dev > tol::structural) {
    throw std::invalid_argument("HermitianOperator: not Hermitian (deviation " +
                                std::to_string(dev) + ")");
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "operator+");
  return HermitianOperator(a.m_ + b.m_);
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "operator-");
  return HermitianOperator(a.m_ - b.m_);
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.m_);
}

StateVector::StateVector(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw std::invalid_argument("StateVector: empty");
  const double n = v_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol::structural) {
    throw std::invalid_argument("StateVector: norm " + std::to_string(n) + " is not 1");
  }
}

DensityMatrix::DensityMatrix(HermitianOperator h) : h_(std::move(h)) {
  const double tr = h_.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol::pipeline) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
  const double lo = eig_hermitian(h_).eigenvalues(0);
  if (lo < -tol::pipeline) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("maximally_mixed: dim must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.projector());
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

HermitianOperator pauli(PauliAxis axis) {
  ComplexMatrix m(2, 2);
  const cplx i{0.0, 1.0};
  switch (axis) {
    case PauliAxis::I: m << 1, 0, 0, 1; break;
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, -i, i, 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return HermitianOperator(m);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(tensor_product(a.matrix(), b.matrix()));
}

std::array<StateVector, 4> bell_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  auto vec = [s](double uu, double ud, double du, double dd) {
    ComplexVector v(4);
    v << uu * s, ud * s, du * s, dd * s;
    return StateVector(v);
  };
  return {vec(1, 0, 0, 1), vec(1, 0, 0, -1), vec(0, 1, 1, 0), vec(0, 1, -1, 0)};
}

ComplexMatrix bell_basis_matrix() {
  const auto basis = bell_basis();
  ComplexMatrix u(4, 4);
  for (int k = 0; k < 4; ++k) u.col(k) = basis[k].amplitudes();
  return u;
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectralDecomposition eig_hermitian(const ComplexMatrix& m) {
  return eig_hermitian(HermitianOperator(m));
}

double shannon_entropy(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double e = std::clamp(p(i), 0.0, 1.0);
    if (e > 0.0) s -= e * std::log(e);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return shannon_entropy(eig_hermitian(rho.op()).eigenvalues);
}

double expectation(const DensityMatrix& rho, const HermitianOperator& obs) {
  require_same_dim(rho.dim(), obs.dim(), "expectation");
  const cplx tr = (rho.matrix() * obs.matrix()).trace();
  if (std::abs(tr.imag()) >= tol::pipeline) {
    throw std::logic_error("expectation: trace has imaginary part " + std::to_string(tr.imag()));
  }
  return tr.real();
}

double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace().real();
}

HermitianOperator partial_transpose(const HermitianOperator& h, Party party) {
  if (h.dim() != 4) {
    throw std::invalid_argument("partial_transpose: expected a 4x4 two-qubit operator");
  }
  const ComplexMatrix& m = h.matrix();
  ComplexMatrix out(4, 4);
  // index = 2*a + b with a the party-1 bit
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const cplx v = m(2 * a + b, 2 * c + d);
          if (party == Party::First) {
            out(2 * c + b, 2 * a + d) = v;
          } else {
            out(2 * a + d, 2 * c + b) = v;
          }
        }
  return HermitianOperator(out);
}

HermitianOperator partial_transpose(const DensityMatrix& rho, Party party) {
  return partial_transpose(rho.op(), party);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace_distance");
  const RealVector ev = eig_hermitian(HermitianOperator(a.matrix() - b.matrix())).eigenvalues;
  return 0.5 * ev.cwiseAbs().sum();
}

}  // namespace jaynes
