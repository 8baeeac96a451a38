#pragma once

// Maximum-entropy state inference under expectation-value constraints.
//
// The maximizer of S(rho) subject to Tr(rho O_i) = e_i and Tr rho = 1 has the
// Gibbs form rho(lambda) = exp(sum_i lambda_i O_i) / Z. The multipliers are
// found by minimizing the convex dual
//
//   psi(lambda) = ln Tr exp(sum_i lambda_i O_i) - sum_i lambda_i e_i,
//
// whose gradient is <O_i>_rho(lambda) - e_i. The solver runs BFGS from
// lambda = 0 with a backtracking line search and never assumes the
// observables commute.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jaynes/hermitian.hpp"

namespace jaynes {

struct Constraint {
  std::string name;
  HermitianOperator observable;
  double target;
};

/// Observables with target expectations on a common Hilbert space.
///
/// Construction rejects (std::invalid_argument) mismatched dimensions,
/// targets outside the spectrum interval of their observable, and linearly
/// dependent observables (smallest Hilbert-Schmidt Gram eigenvalue <= 1e-8).
class ConstraintSet {
 public:
  inline static constexpr double gram_threshold = 1e-8;

  explicit ConstraintSet(Eigen::Index dim, std::vector<Constraint> constraints = {});

  [[nodiscard]] Eigen::Index dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return constraints_.size(); }
  [[nodiscard]] bool empty() const noexcept { return constraints_.empty(); }
  [[nodiscard]] const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  [[nodiscard]] const HermitianOperator& observable(std::size_t i) const {
    return constraints_.at(i).observable;
  }
  [[nodiscard]] RealVector targets() const;
  [[nodiscard]] std::vector<HermitianOperator> observables() const;

 private:
  Eigen::Index dim_;
  std::vector<Constraint> constraints_;
};

struct SolverConfig {
  double residual_tolerance = 1e-10;
  int max_iterations = 500;
  double multiplier_cap = 50.0;

  void validate() const;
};

enum class SolverStatus { Converged, BoundaryLimit, MaxIterations };

std::string_view to_string(SolverStatus s);

struct SolverReport {
  DensityMatrix state;
  RealVector multipliers;
  RealVector residuals;  // <O_i> - e_i
  int iterations = 0;
  SolverStatus status = SolverStatus::MaxIterations;
  std::vector<double> dual_trace;  // psi at lambda = 0 and after every accepted step
  std::string diagnostic;

  [[nodiscard]] double max_residual() const;
};

/// exp(sum lambda_i O_i) / Tr exp(...). Strictly positive for finite multipliers.
DensityMatrix gibbs_state(Eigen::Index dim, std::span<const HermitianOperator> observables,
                          const RealVector& multipliers);
DensityMatrix gibbs_state(const ConstraintSet& constraints, const RealVector& multipliers);

struct DualPoint {
  double value;
  RealVector gradient;
  ComplexMatrix state;
};

/// psi, its gradient and the Gibbs state from a single eigendecomposition.
DualPoint evaluate_dual(const ConstraintSet& constraints, const RealVector& multipliers);

double dual_objective(const ConstraintSet& constraints, const RealVector& multipliers);
RealVector dual_gradient(const ConstraintSet& constraints, const RealVector& multipliers);

SolverReport solve(const ConstraintSet& constraints, const SolverConfig& config = {});

/// Samples random constraint-preserving perturbations of report.state (kept
/// PSD) and returns false if any has entropy above S(report.state) + 1e-8, or
/// if report.state does not satisfy the constraints within 1e-8.
/// Throws std::invalid_argument unless report.status is Converged.
bool verify_maximality(const SolverReport& report, const ConstraintSet& constraints, int samples,
                       std::uint64_t seed = 0x6a61796e6573ULL);

/// Independent solves, distributed over OpenMP threads.
std::vector<SolverReport> solve_all(std::span<const ConstraintSet> problems,
                                    const SolverConfig& config = {});

/// Serial reference for solve_all.
std::vector<SolverReport> solve_all_reference(std::span<const ConstraintSet> problems,
                                              const SolverConfig& config = {});

}  // namespace jaynes
