#include "jaynes/bell_chsh.hpp"

#include <algorithm>
#include <string>

namespace jaynes {

namespace {

void require_unit_interval(double v, const char* name, const char* where) {
  if (!std::isfinite(v) || std::abs(v) > 1.0) {
    throw std::domain_error(std::string(where) + ": |" + name + "| <= 1 violated (" + name +
                            " = " + std::to_string(v) + ")");
  }
}

void require_entangled_regime(double b, const char* where) {
  require_unit_interval(b, "b", where);
  if (b < 0.5) {
    throw std::domain_error(std::string(where) +
                            ": requires b >= 1/2 so that the Phi+ weight is largest (b = " +
                            std::to_string(b) + ")");
  }
}

void require_admissible(double b, double x, const char* where) {
  require_unit_interval(b, "b", where);
  require_unit_interval(x, "x", where);
  if (x < 2.0 * b - 1.0) {
    throw std::domain_error(std::string(where) + ": x >= 2b - 1 violated (b = " +
                            std::to_string(b) + ", x = " + std::to_string(x) + ")");
  }
  if (x > 2.0 * b + 1.0) {
    throw std::domain_error(std::string(where) + ": x <= 2b + 1 violated (b = " +
                            std::to_string(b) + ", x = " + std::to_string(x) + ")");
  }
}

}  // namespace

BellDiagonalState::BellDiagonalState(const std::array<double, 4>& weights) : w_(weights) {
  double sum = 0.0;
  for (double w : w_) {
    if (!std::isfinite(w) || w < -tol::structural) {
      throw std::invalid_argument("BellDiagonalState: negative or non-finite weight " +
                                  std::to_string(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::pipeline) {
    throw std::invalid_argument("BellDiagonalState: weights sum to " + std::to_string(sum));
  }
}

double BellDiagonalState::weight(int k) const { return std::max(0.0, w_.at(k)); }

std::array<double, 4> BellDiagonalState::weights() const {
  return {weight(0), weight(1), weight(2), weight(3)};
}

double BellDiagonalState::max_weight() const {
  const auto w = weights();
  return *std::max_element(w.begin(), w.end());
}

BellDiagonalState BellDiagonalState::from_density_matrix(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("BellDiagonalState: expected 4x4 state");
  const ComplexMatrix m = to_bell_frame(rho.matrix());
  if (bell_offdiagonal(rho.matrix()) > tol::pipeline) {
    throw std::invalid_argument("BellDiagonalState: state is not Bell-diagonal");
  }
  return BellDiagonalState({m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real()});
}

void ConstraintPoint::validate() const {
  if (x) {
    require_admissible(b, *x, "ConstraintPoint");
  } else {
    require_unit_interval(b, "b", "ConstraintPoint");
  }
}

ChshOperators chsh_operators() {
  const HermitianOperator x = tensor_product(pauli(PauliAxis::X), pauli(PauliAxis::X));
  const HermitianOperator z = tensor_product(pauli(PauliAxis::Z), pauli(PauliAxis::Z));
  return {0.5 * (x + z), x, z};
}

ComplexMatrix to_bell_frame(const ComplexMatrix& m) {
  const ComplexMatrix u = bell_basis_matrix();
  return u.adjoint() * m * u;
}

double bell_offdiagonal(const ComplexMatrix& m) {
  ComplexMatrix f = to_bell_frame(m);
  f.diagonal().setZero();
  return f.cwiseAbs().maxCoeff();
}

DensityMatrix to_density_matrix(const BellDiagonalState& s) {
  const auto basis = bell_basis();
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) rho += s.weight(k) * basis[k].projector();
  return DensityMatrix(rho);
}

bool admissible(double b, double x) {
  return std::abs(b) <= 1.0 && std::abs(x) <= 1.0 && x >= 2.0 * b - 1.0 && x <= 2.0 * b + 1.0;
}

BellDiagonalState jaynes_b(double b) {
  require_unit_interval(b, "b", "jaynes_b");
  const double plus = (1.0 + b) / 2.0;
  const double minus = (1.0 - b) / 2.0;
  const double mid = (1.0 - b * b) / 4.0;
  return BellDiagonalState({plus * plus, mid, mid, minus * minus});
}

BellDiagonalState jaynes_bx(double b, double x) {
  require_admissible(b, x, "jaynes_bx");
  // factored forms are nonnegative term by term on the admissible region
  const double up = 1.0 - x + 2.0 * b;
  const double down = 1.0 + x - 2.0 * b;
  return BellDiagonalState({(1.0 + x) * up / 4.0, (1.0 - x) * up / 4.0, (1.0 + x) * down / 4.0,
                            (1.0 - x) * down / 4.0});
}

BellDiagonalState jaynes_state(const ConstraintPoint& p) {
  p.validate();
  return p.x ? jaynes_bx(p.b, *p.x) : jaynes_b(p.b);
}

double largest_eigenvalue_j1(double b) {
  require_entangled_regime(b, "largest_eigenvalue_j1");
  const double plus = (1.0 + b) / 2.0;
  return plus * plus;
}

double largest_eigenvalue_j2(double b, double x) {
  require_entangled_regime(b, "largest_eigenvalue_j2");
  require_admissible(b, x, "largest_eigenvalue_j2");
  const double plus = (1.0 + b) / 2.0;
  const double shift = (x - b) / 2.0;
  return plus * plus - shift * shift;
}

double variance_x(double x) {
  require_unit_interval(x, "x", "variance_x");
  return 1.0 - x * x;
}

BellDiagonalState min_variance_state(double b) {
  if (!(b >= 0.0 && b <= 1.0)) {
    throw std::domain_error("min_variance_state: b must lie in [0, 1] (b = " + std::to_string(b) +
                            ")");
  }
  return BellDiagonalState({b, 0.0, 1.0 - b, 0.0});
}

}  // namespace jaynes
