#pragma once

// Closed forms for the Bell-CHSH inference example: the operators B, X, Z,
// the maximum-entropy states for <B> alone and for (<B>, <X>), their largest
// eigenvalues, the variance of X and the minimum-variance state.

#include <array>
#include <optional>

#include "jaynes/hermitian.hpp"

namespace jaynes {

/// Four Bell-basis weights in library order (Phi+, Phi-, Psi+, Psi-).
class BellDiagonalState {
 public:
  enum Index { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

  /// Each weight must be >= -1e-12 and the sum must be 1 within 1e-10.
  explicit BellDiagonalState(const std::array<double, 4>& weights);

  /// Weight read with tiny negatives clamped to zero.
  [[nodiscard]] double weight(int k) const;
  [[nodiscard]] std::array<double, 4> weights() const;
  [[nodiscard]] double max_weight() const;

  /// Extracts the weights of a density matrix that is Bell-diagonal within
  /// 1e-10; throws std::invalid_argument otherwise.
  static BellDiagonalState from_density_matrix(const DensityMatrix& rho);

 private:
  std::array<double, 4> w_;
};

/// (<B>, optional <X>) input pair.
struct ConstraintPoint {
  double b = 0.0;
  std::optional<double> x;

  /// Throws std::domain_error naming the violated bound.
  void validate() const;
};

struct ChshOperators {
  HermitianOperator b;
  HermitianOperator x;
  HermitianOperator z;
};

/// X = sx (x) sx, Z = sz (x) sz, B = (X + Z) / 2.
ChshOperators chsh_operators();

/// rho expressed in the Bell basis, U^dagger rho U.
ComplexMatrix to_bell_frame(const ComplexMatrix& m);

/// Largest off-diagonal magnitude of m in the Bell basis.
double bell_offdiagonal(const ComplexMatrix& m);

DensityMatrix to_density_matrix(const BellDiagonalState& s);

/// True iff |b| <= 1, |x| <= 1 and 2b - 1 <= x <= 2b + 1 (all four
/// two-constraint weights nonnegative).
bool admissible(double b, double x);

BellDiagonalState jaynes_b(double b);
BellDiagonalState jaynes_bx(double b, double x);
BellDiagonalState jaynes_state(const ConstraintPoint& p);

/// ((1+b)/2)^2; requires b in [1/2, 1].
double largest_eigenvalue_j1(double b);

/// ((1+b)/2)^2 - ((x-b)/2)^2; requires b in [1/2, 1] and (b, x) admissible.
double largest_eigenvalue_j2(double b, double x);

/// 1 - x^2 (X squares to the identity).
double variance_x(double x);

/// (b, 0, 1-b, 0), the x = 1 member of the two-constraint family.
BellDiagonalState min_variance_state(double b);

}  // namespace jaynes
