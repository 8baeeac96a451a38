#include "jaynes/entanglement.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "jaynes/bell_chsh.hpp"

namespace jaynes {

namespace {

void require_two_qubit(const DensityMatrix& rho, const char* where) {
  if (rho.dim() != 4) {
    throw std::invalid_argument(std::string(where) + ": expected a 4x4 two-qubit state");
  }
}

void require_bell_fidelity(double f, const char* where) {
  if (!(f >= 0.25 - tol::structural && f <= 1.0 + tol::structural)) {
    throw std::domain_error(std::string(where) + ": f must lie in [1/4, 1] (f = " +
                            std::to_string(f) + ")");
  }
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= -tol::structural && p <= 1.0 + tol::structural)) {
    throw std::domain_error("binary_entropy: p must lie in [0, 1] (p = " + std::to_string(p) + ")");
  }
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

double eof_bell_diagonal(double f) {
  require_bell_fidelity(f, "eof_bell_diagonal");
  if (f <= 0.5) return 0.0;
  f = std::min(f, 1.0);
  return binary_entropy(0.5 + std::sqrt(f * (1.0 - f)));
}

double ree_bell_diagonal(double f) {
  require_bell_fidelity(f, "ree_bell_diagonal");
  if (f <= 0.5) return 0.0;
  return std::log(2.0) - binary_entropy(std::min(f, 1.0));
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubit(rho, "concurrence");
  // The mu_i (square roots of the spectrum of sqrt(rho) R sqrt(rho), R the
  // spin-flipped state) are the singular values of W^T (sy x sy) W with
  // rho = W W^dagger. Working on that product keeps null directions of rho
  // exactly out of the spectrum instead of taking square roots of round-off.
  const SpectralDecomposition sd = eig_hermitian(rho.op());
  const double cutoff = 1e-13 * std::max(1.0, sd.eigenvalues.maxCoeff());
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < 4; ++i)
    if (sd.eigenvalues(i) > cutoff) support.push_back(i);
  ComplexMatrix w(4, static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) {
    const Eigen::Index i = support[k];
    w.col(static_cast<Eigen::Index>(k)) = std::sqrt(sd.eigenvalues(i)) * sd.eigenvectors.col(i);
  }
  const ComplexMatrix yy = tensor_product(pauli(PauliAxis::Y).matrix(), pauli(PauliAxis::Y).matrix());
  const ComplexMatrix tau = w.transpose() * yy * w;
  const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(tau).singularValues();  // descending
  double c = sv.size() > 0 ? sv(0) : 0.0;
  for (Eigen::Index i = 1; i < sv.size(); ++i) c -= sv(i);
  return std::max(0.0, c);
}

bool is_ppt_separable(const DensityMatrix& rho) {
  require_two_qubit(rho, "is_ppt_separable");
  const HermitianOperator pt = partial_transpose(rho, Party::Second);
  return eig_hermitian(pt).eigenvalues(0) >= -tol::pipeline;
}

EntanglementReport entanglement_report(const DensityMatrix& rho) {
  require_two_qubit(rho, "entanglement_report");
  EntanglementReport rep;
  rep.concurrence = concurrence(rho);
  rep.ppt_separable = is_ppt_separable(rho);
  rep.bell_diagonal = bell_offdiagonal(rho.matrix()) <= tol::pipeline;
  if (rep.bell_diagonal) {
    const double f = BellDiagonalState::from_density_matrix(rho).max_weight();
    rep.f = f;
    rep.e1 = eof_bell_diagonal(f);
    rep.e2 = ree_bell_diagonal(f);
  } else {
    rep.e1 = eof_from_concurrence(rep.concurrence);
  }
  return rep;
}

}  // namespace jaynes
