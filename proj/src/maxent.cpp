#include "jaynes/maxent.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <set>

#include "omp_compat.hpp"

namespace jaynes {

namespace {

// Round-off allowance on psi when the line search falls back to the
// approximate Wolfe test.
constexpr double kDualNoise = 1e-14;
constexpr double kArmijo = 1e-4;
constexpr double kWolfeLow = 0.9;
constexpr double kWolfeHigh = 0.8;
constexpr int kMaxBacktracks = 60;

struct SpectrumInterval {
  double lo;
  double hi;
};

SpectrumInterval spectrum_interval(const HermitianOperator& o) {
  const RealVector ev = eig_hermitian(o).eigenvalues;
  return {ev(0), ev(ev.size() - 1)};
}

ComplexMatrix exponent(const ConstraintSet& cs, const RealVector& lambda) {
  ComplexMatrix h = ComplexMatrix::Zero(cs.dim(), cs.dim());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    h += lambda(static_cast<Eigen::Index>(i)) * cs.observable(i).matrix();
  }
  return h;
}

struct GibbsParts {
  double log_partition;
  ComplexMatrix state;
};

// Shifted by the top eigenvalue so exp never overflows.
GibbsParts gibbs_from_exponent(const ComplexMatrix& h) {
  const SpectralDecomposition sd = eig_hermitian(HermitianOperator(h));
  const double top = sd.eigenvalues.maxCoeff();
  RealVector w = (sd.eigenvalues.array() - top).exp();
  const double z = w.sum();
  w /= z;
  ComplexMatrix rho = sd.eigenvectors * w.cast<cplx>().asDiagonal() * sd.eigenvectors.adjoint();
  rho = (rho + rho.adjoint()) * 0.5;
  return {top + std::log(z), std::move(rho)};
}

RealVector project_box(RealVector v, double cap) {
  return v.cwiseMax(-cap).cwiseMin(cap);
}

SolverReport make_report(const RealVector& lambda, const DualPoint& at,
                         int iterations, SolverStatus status, std::vector<double> trace,
                         std::string diagnostic) {
  return SolverReport{DensityMatrix(at.state), lambda, at.gradient, iterations, status,
                      std::move(trace), std::move(diagnostic)};
}

}  // namespace

ConstraintSet::ConstraintSet(Eigen::Index dim, std::vector<Constraint> constraints)
    : dim_(dim), constraints_(std::move(constraints)) {
  if (dim_ <= 0) throw std::invalid_argument("ConstraintSet: dimension must be positive");
  std::set<std::string> names;
  for (const Constraint& c : constraints_) {
    if (c.observable.dim() != dim_) {
      throw std::invalid_argument("ConstraintSet: observable '" + c.name + "' has dimension " +
                                  std::to_string(c.observable.dim()) + ", expected " +
                                  std::to_string(dim_));
    }
    if (!c.name.empty() && !names.insert(c.name).second) {
      throw std::invalid_argument("ConstraintSet: duplicate observable name '" + c.name + "'");
    }
    if (!std::isfinite(c.target)) {
      throw std::invalid_argument("ConstraintSet: non-finite target for '" + c.name + "'");
    }
    const SpectrumInterval s = spectrum_interval(c.observable);
    if (c.target < s.lo - tol::structural || c.target > s.hi + tol::structural) {
      throw std::invalid_argument("ConstraintSet: target " + std::to_string(c.target) + " for '" +
                                  c.name + "' lies outside the spectrum [" + std::to_string(s.lo) +
                                  ", " + std::to_string(s.hi) + "]");
    }
  }
  const auto n = static_cast<Eigen::Index>(constraints_.size());
  if (n > 0) {
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        gram(i, j) = hs_inner(constraints_[i].observable.matrix(), constraints_[j].observable.matrix());
    const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues()(0);
    if (smallest <= gram_threshold) {
      throw std::invalid_argument(
          "ConstraintSet: observables are linearly dependent (smallest Gram eigenvalue " +
          std::to_string(smallest) + ")");
    }
  }
}

RealVector ConstraintSet::targets() const {
  RealVector t(static_cast<Eigen::Index>(constraints_.size()));
  for (std::size_t i = 0; i < constraints_.size(); ++i) t(static_cast<Eigen::Index>(i)) = constraints_[i].target;
  return t;
}

std::vector<HermitianOperator> ConstraintSet::observables() const {
  std::vector<HermitianOperator> out;
  out.reserve(constraints_.size());
  for (const Constraint& c : constraints_) out.push_back(c.observable);
  return out;
}

void SolverConfig::validate() const {
  if (!(residual_tolerance > 0.0)) throw std::invalid_argument("SolverConfig: residual_tolerance must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
  if (!(multiplier_cap > 0.0)) throw std::invalid_argument("SolverConfig: multiplier_cap must be > 0");
}

std::string_view to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "Converged";
    case SolverStatus::BoundaryLimit: return "BoundaryLimit";
    case SolverStatus::MaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

double SolverReport::max_residual() const {
  return residuals.size() == 0 ? 0.0 : residuals.cwiseAbs().maxCoeff();
}

DensityMatrix gibbs_state(Eigen::Index dim, std::span<const HermitianOperator> observables,
                          const RealVector& multipliers) {
  if (static_cast<Eigen::Index>(observables.size()) != multipliers.size()) {
    throw std::invalid_argument("gibbs_state: observable and multiplier counts differ");
  }
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].dim() != dim) throw std::invalid_argument("gibbs_state: dimension mismatch");
    h += multipliers(static_cast<Eigen::Index>(i)) * observables[i].matrix();
  }
  return DensityMatrix(gibbs_from_exponent(h).state);
}

DensityMatrix gibbs_state(const ConstraintSet& constraints, const RealVector& multipliers) {
  const auto obs = constraints.observables();
  return gibbs_state(constraints.dim(), obs, multipliers);
}

DualPoint evaluate_dual(const ConstraintSet& cs, const RealVector& lambda) {
  if (static_cast<Eigen::Index>(cs.size()) != lambda.size()) {
    throw std::invalid_argument("evaluate_dual: multiplier count differs from constraint count");
  }
  GibbsParts g = gibbs_from_exponent(exponent(cs, lambda));
  const RealVector targets = cs.targets();
  RealVector grad(lambda.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    grad(k) = (g.state * cs.observable(i).matrix()).trace().real() - targets(k);
  }
  const double value = g.log_partition - lambda.dot(targets);
  return {value, std::move(grad), std::move(g.state)};
}

double dual_objective(const ConstraintSet& cs, const RealVector& lambda) {
  return evaluate_dual(cs, lambda).value;
}

RealVector dual_gradient(const ConstraintSet& cs, const RealVector& lambda) {
  return evaluate_dual(cs, lambda).gradient;
}

SolverReport solve(const ConstraintSet& cs, const SolverConfig& config) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(cs.size());
  const double cap = config.multiplier_cap;
  const double gtol = config.residual_tolerance;

  RealVector lambda = RealVector::Zero(n);
  DualPoint cur = evaluate_dual(cs, lambda);
  std::vector<double> trace{cur.value};
  if (n == 0) {
    return make_report(lambda, cur, 0, SolverStatus::Converged, std::move(trace), {});
  }

  // A target on the spectrum edge has no finite multiplier: the residual
  // falls below tolerance long before |lambda| reaches the cap, so such
  // problems are pushed along the current ray to the cap instead of being
  // declared converged.
  bool on_edge = false;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const SpectrumInterval s = spectrum_interval(cs.observable(i));
    const double t = cs.constraints()[i].target;
    if (t - s.lo <= gtol || s.hi - t <= gtol) on_edge = true;
  }

  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  bool first_update = true;

  auto finish_on_edge = [&](int iters, std::string why) {
    const double reach = lambda.cwiseAbs().maxCoeff();
    if (reach > 0.0 && reach < cap) {
      lambda *= cap / reach;
      cur = evaluate_dual(cs, lambda);
      trace.push_back(cur.value);
    }
    return make_report(lambda, cur, iters, SolverStatus::BoundaryLimit, std::move(trace),
                       std::move(why));
  };

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    if (cur.gradient.cwiseAbs().maxCoeff() <= gtol) {
      if (on_edge) return finish_on_edge(iter - 1, "target on the spectrum boundary; multiplier diverges");
      return make_report(lambda, cur, iter - 1, SolverStatus::Converged, std::move(trace), {});
    }

    RealVector dir = -inv_hessian * cur.gradient;
    if (cur.gradient.dot(dir) >= 0.0) {
      inv_hessian.setIdentity();
      first_update = true;
      dir = -cur.gradient;
    }

    std::optional<DualPoint> next;
    RealVector step;
    double t = 1.0;
    for (int k = 0; k < kMaxBacktracks; ++k, t *= 0.5) {
      const RealVector trial = project_box(lambda + t * dir, cap);
      step = trial - lambda;
      const double slope = cur.gradient.dot(step);
      if (!(slope < 0.0)) continue;
      DualPoint cand = evaluate_dual(cs, trial);
      const bool armijo = cand.value <= cur.value + kArmijo * slope;
      const double new_slope = cand.gradient.dot(step);
      const bool approx_wolfe = cand.value <= cur.value + kDualNoise * std::max(1.0, std::abs(cur.value)) &&
                                new_slope >= kWolfeLow * slope && new_slope <= -kWolfeHigh * slope;
      if (armijo || approx_wolfe) {
        next = std::move(cand);
        break;
      }
    }

    if (!next || step.cwiseAbs().maxCoeff() == 0.0) {
      if (on_edge) return finish_on_edge(iter, "target on the spectrum boundary; line search stalled");
      if (cur.gradient.cwiseAbs().maxCoeff() <= gtol) {
        return make_report(lambda, cur, iter - 1, SolverStatus::Converged, std::move(trace), {});
      }
      return make_report(lambda, cur, iter, SolverStatus::MaxIterations, std::move(trace),
                         "line search stalled before the residual tolerance was met");
    }

    const RealVector y = next->gradient - cur.gradient;
    const double sy = step.dot(y);
    if (sy > std::numeric_limits<double>::epsilon() * step.norm() * y.norm()) {
      if (first_update) {
        inv_hessian = Eigen::MatrixXd::Identity(n, n) * (sy / y.squaredNorm());
        first_update = false;
      }
      const double r = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n) - r * step * y.transpose();
      inv_hessian = left * inv_hessian * left.transpose() + r * step * step.transpose();
    }

    lambda += step;
    cur = std::move(*next);
    trace.push_back(cur.value);

    if (lambda.cwiseAbs().maxCoeff() >= cap) {
      return make_report(lambda, cur, iter, SolverStatus::BoundaryLimit, std::move(trace),
                         "multiplier reached the cap; targets are on or beyond the feasible boundary");
    }
  }

  if (on_edge) return finish_on_edge(config.max_iterations, "target on the spectrum boundary");
  if (cur.gradient.cwiseAbs().maxCoeff() <= gtol) {
    return make_report(lambda, cur, config.max_iterations, SolverStatus::Converged,
                       std::move(trace), {});
  }
  return make_report(lambda, cur, config.max_iterations, SolverStatus::MaxIterations,
                     std::move(trace), "iteration budget exhausted");
}

bool verify_maximality(const SolverReport& report, const ConstraintSet& cs, int samples,
                       std::uint64_t seed) {
  if (report.status != SolverStatus::Converged) {
    throw std::invalid_argument("verify_maximality: report is not Converged");
  }
  if (report.state.dim() != cs.dim()) {
    throw std::invalid_argument("verify_maximality: dimension mismatch");
  }
  constexpr double feasibility = 1e-8;
  constexpr double entropy_slack = 1e-8;
  const Eigen::Index d = cs.dim();

  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (std::abs(expectation(report.state, cs.observable(i)) - cs.constraints()[i].target) > feasibility) {
      return false;
    }
  }

  // Orthonormal basis (Hilbert-Schmidt) of span{I, O_1, ..., O_k}.
  std::vector<ComplexMatrix> fixed;
  auto orthogonalize = [&fixed](ComplexMatrix m) {
    for (const ComplexMatrix& q : fixed) m -= hs_inner(q, m) * q;
    return m;
  };
  {
    std::vector<ComplexMatrix> span{ComplexMatrix::Identity(d, d)};
    for (const Constraint& c : cs.constraints()) span.push_back(c.observable.matrix());
    for (ComplexMatrix m : span) {
      m = orthogonalize(std::move(m));
      const double nrm = std::sqrt(hs_inner(m, m));
      if (nrm > 1e-10) fixed.push_back(m / nrm);
    }
  }

  const double base = von_neumann_entropy(report.state);
  const SpectralDecomposition sd = eig_hermitian(report.state.op());
  const double floor_eig = std::max(0.0, sd.eigenvalues(0));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> decade(-6.0, 0.0);

  for (int s = 0; s < samples; ++s) {
    ComplexMatrix delta(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) delta(i, j) = cplx(gauss(rng), gauss(rng));
    delta = orthogonalize((delta + delta.adjoint()) * 0.5);
    delta = (delta + delta.adjoint()) * 0.5;
    const RealVector dev = eig_hermitian(HermitianOperator(delta)).eigenvalues;
    const double spectral = dev.cwiseAbs().maxCoeff();
    if (spectral < 1e-14) continue;

    // Weyl: rho + t delta stays PSD for t <= lambda_min(rho) / ||delta||.
    // Rank-deficient states fall back to halving until the trial is PSD.
    const double reach = floor_eig > 0.0 ? floor_eig / spectral : 1.0 / spectral;
    double t = reach * std::pow(10.0, decade(rng));
    RealVector ev;
    bool psd = false;
    for (int k = 0; k < 60 && !psd; ++k, t *= 0.5) {
      ComplexMatrix candidate = report.state.matrix() + t * delta;
      candidate = (candidate + candidate.adjoint()) * 0.5;
      ev = eig_hermitian(HermitianOperator(candidate)).eigenvalues;
      psd = ev(0) >= 0.0;
    }
    if (!psd) continue;
    if (shannon_entropy(ev) > base + entropy_slack) return false;
  }
  return true;
}

std::vector<SolverReport> solve_all_reference(std::span<const ConstraintSet> problems,
                                              const SolverConfig& config) {
  std::vector<SolverReport> out;
  out.reserve(problems.size());
  for (const ConstraintSet& cs : problems) out.push_back(solve(cs, config));
  return out;
}

std::vector<SolverReport> solve_all(std::span<const ConstraintSet> problems,
                                    const SolverConfig& config) {
  const auto n = static_cast<std::ptrdiff_t>(problems.size());
  std::vector<std::optional<SolverReport>> slots(problems.size());
  std::vector<std::exception_ptr> errors(problems.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      slots[i].emplace(solve(problems[i], config));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  std::vector<SolverReport> out;
  out.reserve(problems.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace jaynes
