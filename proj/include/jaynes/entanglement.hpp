#pragma once

// Entanglement quantifiers for two qubits. All entropies are in nats.

#include <optional>

#include "jaynes/hermitian.hpp"

namespace jaynes {

/// -p ln p - (1-p) ln(1-p); p outside [0,1] beyond 1e-12 throws.
double binary_entropy(double p);

/// Entanglement of formation of a Bell-diagonal state with largest weight f.
/// Zero for f <= 1/2; f must lie in [1/4, 1].
double eof_bell_diagonal(double f);

/// Relative entropy of entanglement of a Bell-diagonal state, ln 2 - h(f).
/// Zero for f <= 1/2; f must lie in [1/4, 1].
double ree_bell_diagonal(double f);

/// Wootters: h((1 + sqrt(1 - C^2)) / 2).
double eof_from_concurrence(double c);

/// Wootters concurrence of a 4x4 two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Peres-Horodecki test: min eigenvalue of the partial transpose >= -1e-10.
bool is_ppt_separable(const DensityMatrix& rho);

struct EntanglementReport {
  std::optional<double> f;  // Bell-diagonal inputs only
  double concurrence = 0.0;
  double e1 = 0.0;
  std::optional<double> e2;  // Bell-diagonal inputs only
  bool ppt_separable = false;
  bool bell_diagonal = false;
};

EntanglementReport entanglement_report(const DensityMatrix& rho);

}  // namespace jaynes
