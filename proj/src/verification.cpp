#include "jaynes/verification.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "jaynes/entanglement.hpp"
#include "jaynes/maxent.hpp"
#include "jaynes/random.hpp"
#include "jaynes/sweep.hpp"

namespace jaynes {

namespace {

constexpr double kStateDistance = 1e-8;
constexpr double kTargetResidual = 1e-10;
constexpr double kFormula = 1e-12;

// Thrown by a check body to report a failed assertion with context.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream s;
  s.precision(12);
  (s << ... << parts);
  return s.str();
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

template <class Body>
CheckResult run_check(int criterion, std::string title, Body&& body) {
  CheckResult r{criterion, std::move(title), false, {}};
  try {
    r.detail = body();
    r.passed = true;
  } catch (const CheckFailure& e) {
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.detail = cat("threw: ", e.what());
  }
  return r;
}

std::vector<double> b_grid_solver() {
  std::vector<double> v;
  for (int k = 0; k < 10; ++k) v.push_back(0.5 + 0.05 * k);
  return v;
}

// 10 midpoints of [2b - 1, 1]: strictly admissible, finite multipliers.
std::vector<std::pair<double, double>> bx_grid_solver() {
  std::vector<std::pair<double, double>> pts;
  for (double b : b_grid_solver()) {
    const double lo = 2.0 * b - 1.0;
    for (int j = 0; j < 10; ++j) pts.emplace_back(b, lo + (j + 0.5) / 10.0 * (1.0 - lo));
  }
  return pts;
}

// b in {0.50, ..., 1.00}, 21 points on the closed interval [2b - 1, 1] plus x = b.
std::vector<std::pair<double, double>> bx_grid_full() {
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k <= 10; ++k) {
    const double b = 0.5 + 0.05 * k;
    const double lo = 2.0 * b - 1.0;
    std::vector<double> xs;
    for (int j = 0; j <= 20; ++j) xs.push_back(j == 20 ? 1.0 : lo + (1.0 - lo) * j / 20.0);
    if (std::none_of(xs.begin(), xs.end(), [b](double x) { return std::abs(x - b) <= kFormula; })) {
      xs.push_back(b);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) pts.emplace_back(b, x);
  }
  return pts;
}

ConstraintSet b_only(double b) {
  const ChshOperators ops = chsh_operators();
  return ConstraintSet(4, {{"B", ops.b, b}});
}

ConstraintSet b_and_x(double b, double x) {
  const ChshOperators ops = chsh_operators();
  return ConstraintSet(4, {{"B", ops.b, b}, {"X", ops.x, x}});
}

double max_eigenvalue(const BellDiagonalState& s) {
  return eig_hermitian(to_density_matrix(s).op()).eigenvalues(3);
}

double entropy(const BellDiagonalState& s) { return von_neumann_entropy(to_density_matrix(s)); }

CheckResult check_single_constraint(const ClosedForms& forms) {
  return run_check(1, "Jaynes state from <B> alone", [&] {
    std::vector<ConstraintSet> problems;
    for (double b : b_grid_solver()) problems.push_back(b_only(b));
    const auto reports = solve_all(problems);
    double worst = 0.0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const double b = b_grid_solver()[i];
      expect(reports[i].status == SolverStatus::Converged,
             cat("solver did not converge at b=", b, " (", to_string(reports[i].status), ")"));
      const double d = trace_distance(reports[i].state, to_density_matrix(forms.jaynes_b(b)));
      expect(d < kStateDistance, cat("trace distance ", d, " >= 1e-8 at b=", b));
      worst = std::max(worst, d);
    }
    return cat("10 points, max trace distance ", worst);
  });
}

CheckResult check_two_constraints(const ClosedForms& forms) {
  return run_check(2, "Jaynes state from <B> and <X>", [&] {
    const auto pts = bx_grid_solver();
    std::vector<ConstraintSet> problems;
    for (const auto& [b, x] : pts) problems.push_back(b_and_x(b, x));
    const auto reports = solve_all(problems);
    const ChshOperators ops = chsh_operators();
    double worst_d = 0.0, worst_r = 0.0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto [b, x] = pts[i];
      expect(reports[i].status == SolverStatus::Converged,
             cat("solver did not converge at (b, x)=(", b, ", ", x, ")"));
      const double d = trace_distance(reports[i].state, to_density_matrix(forms.jaynes_bx(b, x)));
      expect(d < kStateDistance, cat("trace distance ", d, " >= 1e-8 at (", b, ", ", x, ")"));
      const double r = std::max(std::abs(expectation(reports[i].state, ops.b) - b),
                                std::abs(expectation(reports[i].state, ops.x) - x));
      expect(r <= kTargetResidual, cat("expectation residual ", r, " > 1e-10 at (", b, ", ", x, ")"));
      worst_d = std::max(worst_d, d);
      worst_r = std::max(worst_r, r);
    }
    return cat("100 points, max trace distance ", worst_d, ", max residual ", worst_r);
  });
}

CheckResult check_eigenvalue_formulas(const ClosedForms& forms) {
  return run_check(3, "largest-eigenvalue formulas f_J1, f_J2", [&] {
    double worst = 0.0;
    for (double b : b_grid_solver()) {
      const double dev = std::abs(max_eigenvalue(forms.jaynes_b(b)) - forms.f_j1(b));
      expect(dev <= kFormula, cat("max eigenvalue of rho_J1 != f_J1 at b=", b, " (dev ", dev, ")"));
      worst = std::max(worst, dev);
    }
    for (const auto& [b, x] : bx_grid_solver()) {
      const double dev = std::abs(max_eigenvalue(forms.jaynes_bx(b, x)) - forms.f_j2(b, x));
      expect(dev <= kFormula,
             cat("max eigenvalue of rho_J2 != f_J2 at (", b, ", ", x, ") (dev ", dev, ")"));
      worst = std::max(worst, dev);
    }
    return cat("110 points, max deviation ", worst);
  });
}

CheckResult check_entanglement_decrease(const ClosedForms& forms) {
  return run_check(4, "entanglement decrease E(rho_J1) >= E(rho_J2)", [&] {
    std::size_t equal = 0, strict = 0;
    for (const auto& [b, x] : bx_grid_full()) {
      const double f1 = forms.f_j1(b);
      const double f2 = forms.f_j2(b, x);
      const double d1 = forms.eof(f1) - forms.eof(f2);
      const double d2 = forms.ree(f1) - forms.ree(f2);
      if (std::abs(x - b) <= kFormula) {
        expect(std::abs(d1) <= kFormula && std::abs(d2) <= kFormula,
               cat("equality at x=b broken at b=", b, " (dE1=", d1, ", dE2=", d2, ")"));
        ++equal;
      } else {
        expect(d1 > 0.0, cat("E1(rho_J1) >= E1(rho_J2) violated (strictly) at (", b, ", ", x, "), dE1=", d1));
        expect(d2 > 0.0, cat("E2(rho_J1) >= E2(rho_J2) violated (strictly) at (", b, ", ", x, "), dE2=", d2));
        ++strict;
      }
    }
    const double gap = forms.ree(forms.f_j1(0.75)) - forms.ree(forms.f_j2(0.75, 0.9));
    expect(std::abs(gap - expected::ree_gap_b075_x09) <= expected::spot_tolerance,
           cat("E2(rho_J1(0.75)) - E2(rho_J2(0.75,0.9)) = ", gap, ", expected ",
               expected::ree_gap_b075_x09));
    return cat(strict, " strict points, ", equal, " equality points; E2(rho_J1(0.75)) - E2(rho_J2(0.75,0.9)) = ",
               gap, " >= 0");
  });
}

CheckResult check_separability_edge(const ClosedForms& forms) {
  return run_check(5, "overestimation at <B> = 1/2", [&] {
    const BellDiagonalState j1 = forms.jaynes_b(0.5);
    const double f = forms.f_j1(0.5);
    expect(std::abs(f - expected::f_j1_b05) <= kFormula, cat("f_J1(0.5) = ", f, ", expected 0.5625"));
    expect(std::abs(j1.max_weight() - f) <= kFormula, cat("max weight of rho_J1(0.5) = ", j1.max_weight()));
    expect(f > 0.5, "f_J1(0.5) must exceed 1/2");
    expect(!is_ppt_separable(to_density_matrix(j1)), "rho_J1(0.5) unexpectedly passes PPT");
    const double e2 = forms.ree(f);
    expect(std::abs(e2 - expected::ree_j1_b05) <= expected::spot_tolerance,
           cat("E2(rho_J1(0.5)) = ", e2, ", expected 0.007834"));
    const BellDiagonalState mv = forms.min_variance_state(0.5);
    const DensityMatrix rho_mv = to_density_matrix(mv);
    expect(is_ppt_separable(rho_mv), "min_variance_state(0.5) fails PPT");
    const double e1_mv = forms.eof(mv.max_weight());
    const double e2_mv = forms.ree(mv.max_weight());
    expect(e1_mv == 0.0 && e2_mv == 0.0, cat("min-variance state entanglement E1=", e1_mv, ", E2=", e2_mv));
    const EntanglementReport rep = entanglement_report(rho_mv);
    expect(rep.concurrence <= kFormula, cat("min-variance state concurrence ", rep.concurrence));
    return cat("f=", f, ", E2(rho_J1)=", e2, ", rho_J1 not PPT; min-variance state PPT, E1=E2=0");
  });
}

CheckResult check_minimum_variance(const ClosedForms& forms) {
  return run_check(6, "minimum-variance principle", [&] {
    const auto pts = bx_grid_full();
    for (int k = 0; k <= 10; ++k) {
      const double b = 0.5 + 0.05 * k;
      const double lo = 2.0 * b - 1.0;
      const double e2_at_one = forms.ree(forms.f_j2(b, 1.0));
      const double e2_at_lo = forms.ree(forms.f_j2(b, lo));
      expect(std::abs(forms.variance_x(1.0)) <= kFormula, "variance at x=1 is not 0");
      for (const auto& [pb, x] : pts) {
        if (pb != b || x == 1.0) continue;
        expect(forms.variance_x(x) > forms.variance_x(1.0),
               cat("variance minimum not unique at x=1 for b=", b, " (x=", x, ")"));
        expect(e2_at_one <= forms.ree(forms.f_j2(b, x)) + kFormula,
               cat("E2(rho_J2) not minimal at x=1 for b=", b, " (x=", x, ")"));
      }
      const auto w = forms.jaynes_bx(b, 1.0).weights();
      const std::array<double, 4> expect_w{b, 0.0, 1.0 - b, 0.0};
      const auto mv = forms.min_variance_state(b).weights();
      for (int i = 0; i < 4; ++i) {
        expect(std::abs(w[i] - expect_w[i]) <= kFormula,
               cat("jaynes_bx(", b, ", 1) weight ", i, " = ", w[i], ", expected ", expect_w[i]));
        expect(std::abs(mv[i] - w[i]) <= kFormula, cat("min_variance_state(", b, ") != jaynes_bx(b, 1)"));
      }
      expect(std::abs(forms.jaynes_bx(b, 1.0).max_weight() - b) <= kFormula,
             cat("largest eigenvalue at x=1 is not <B> for b=", b));
      expect(std::abs(forms.f_j2(b, 1.0) - b) <= kFormula && std::abs(forms.f_j2(b, lo) - b) <= kFormula,
             cat("f_J2 endpoints differ from b at b=", b));
      expect(std::abs(e2_at_one - e2_at_lo) <= kFormula,
             cat("E2 at x=1 and x=2b-1 differ for b=", b));
    }
    return std::string("unique variance minimum at x=1; jaynes_bx(b,1) = (b,0,1-b,0); E2 minimal at both endpoints");
  });
}

CheckResult check_entropy_maximality(const ClosedForms& forms) {
  return run_check(7, "entropy maximality", [&] {
    const ConstraintSet one = b_only(0.75);
    const ConstraintSet two = b_and_x(0.75, 0.9);
    const SolverReport r1 = solve(one);
    const SolverReport r2 = solve(two);
    expect(verify_maximality(r1, one, 200), "verify_maximality failed for {B: 0.75}");
    expect(verify_maximality(r2, two, 200), "verify_maximality failed for {B: 0.75, X: 0.9}");
    for (const auto& [b, x] : bx_grid_full()) {
      const double s1 = entropy(forms.jaynes_b(b));
      const double s2 = entropy(forms.jaynes_bx(b, x));
      expect(s1 >= s2 - kFormula, cat("S(rho_J1) < S(rho_J2) at (", b, ", ", x, "): ", s1, " < ", s2));
    }
    return cat("200-sample perturbation checks pass; S(rho_J1(0.75))=", von_neumann_entropy(r1.state),
               ", S(rho_J2(0.75,0.9))=", von_neumann_entropy(r2.state));
  });
}

CheckResult check_solver_hygiene() {
  return run_check(8, "solver hygiene", [] {
    Rng rng(20240601);
    std::uniform_real_distribution<double> near(-1.0, 1.0);
    std::uniform_real_distribution<double> wide(-3.0, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ConstraintSet cs = b_and_x(0.75, 0.9);
    const double h = 1e-5;
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const RealVector lambda = RealVector{{near(rng), near(rng)}};
      const RealVector g = dual_gradient(cs, lambda);
      for (Eigen::Index i = 0; i < 2; ++i) {
        RealVector up = lambda, dn = lambda;
        up(i) += h;
        dn(i) -= h;
        const double fd = (dual_objective(cs, up) - dual_objective(cs, dn)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - g(i)));
      }
    }
    expect(worst <= 1e-6, cat("gradient vs central differences: max deviation ", worst));
    for (int s = 0; s < 100; ++s) {
      const RealVector a{{wide(rng), wide(rng)}};
      const RealVector b{{wide(rng), wide(rng)}};
      const double t = unit(rng);
      const double lhs = dual_objective(cs, t * a + (1.0 - t) * b);
      const double rhs = t * dual_objective(cs, a) + (1.0 - t) * dual_objective(cs, b);
      expect(lhs <= rhs + 1e-10, cat("dual convexity violated by ", lhs - rhs));
    }
    const SolverReport edge = solve(b_only(1.0));
    expect(edge.status == SolverStatus::BoundaryLimit,
           cat("solve({B: 1}) returned ", to_string(edge.status), " instead of BoundaryLimit"));
    return cat("gradient max deviation ", worst, "; convexity 100/100; solve({B: 1}) -> BoundaryLimit after ",
               edge.iterations, " iterations");
  });
}

CheckResult check_property_suites() {
  return run_check(9, "entanglement property suites", [] {
    Rng rng(77);
    for (int s = 0; s < 500; ++s) {
      const BellDiagonalState w(random_simplex4(rng));
      const bool ppt = is_ppt_separable(to_density_matrix(w));
      expect(ppt == (w.max_weight() <= 0.5 + kFormula),
             cat("PPT <=> f <= 1/2 broken at f=", w.max_weight()));
    }
    double worst_eof = 0.0;
    for (int s = 0; s < 500; ++s) {
      const BellDiagonalState w(random_simplex4(rng));
      const double via_c = eof_from_concurrence(concurrence(to_density_matrix(w)));
      const double dev = std::abs(eof_bell_diagonal(w.max_weight()) - via_c);
      expect(dev <= 1e-9, cat("concurrence-EoF mismatch ", dev, " at f=", w.max_weight()));
      worst_eof = std::max(worst_eof, dev);
    }
    double worst_lu = 0.0;
    for (int s = 0; s < 100; ++s) {
      const DensityMatrix rho = random_density_matrix(4, 1 + s % 3, rng);
      const ComplexMatrix u = tensor_product(random_unitary(2, rng), random_unitary(2, rng));
      const DensityMatrix moved(ComplexMatrix(u * rho.matrix() * u.adjoint()));
      const double dev = std::abs(concurrence(moved) - concurrence(rho));
      expect(dev <= 1e-9, cat("concurrence changed by ", dev, " under a local unitary"));
      worst_lu = std::max(worst_lu, dev);
    }
    return cat("PPT 500/500; concurrence-EoF max dev ", worst_eof, "; local-unitary max dev ", worst_lu);
  });
}

}  // namespace

ClosedForms reference_forms() {
  return ClosedForms{
      [](double b) { return jaynes_b(b); },
      [](double b, double x) { return jaynes_bx(b, x); },
      [](double b) { return largest_eigenvalue_j1(b); },
      [](double b, double x) { return largest_eigenvalue_j2(b, x); },
      [](double f) { return eof_bell_diagonal(f); },
      [](double f) { return ree_bell_diagonal(f); },
      [](double b) { return min_variance_state(b); },
      [](double x) { return variance_x(x); },
  };
}

std::vector<std::string> mutation_names() { return {"f_j2_sign", "jaynes_bx_swap", "ree_sign"}; }

ClosedForms mutated_forms(std::string_view name) {
  ClosedForms f = reference_forms();
  if (name == "f_j2_sign") {
    f.f_j2 = [](double b, double x) {
      const double plus = (1.0 + b) / 2.0;
      const double shift = (x - b) / 2.0;
      return plus * plus + shift * shift;
    };
  } else if (name == "jaynes_bx_swap") {
    f.jaynes_bx = [](double b, double x) {
      auto w = jaynes_bx(b, x).weights();
      std::swap(w[BellDiagonalState::PhiMinus], w[BellDiagonalState::PsiPlus]);
      return BellDiagonalState(w);
    };
  } else if (name == "ree_sign") {
    f.ree = [](double fid) { return -ree_bell_diagonal(fid); };
  } else {
    throw std::invalid_argument("unknown mutation '" + std::string(name) + "'");
  }
  return f;
}

std::vector<CheckResult> run_reproduction_checks(const ClosedForms& forms) {
  return {check_single_constraint(forms), check_two_constraints(forms),
          check_eigenvalue_formulas(forms), check_entanglement_decrease(forms),
          check_separability_edge(forms),   check_minimum_variance(forms),
          check_entropy_maximality(forms),  check_solver_hygiene(),
          check_property_suites()};
}

CheckResult check_determinism_and_mutations() {
  return run_check(10, "determinism and mutation sensitivity", [] {
    const SweepGrid grid{0.5, 1.0, 11, 11};
    const std::string first = to_csv(sweep(grid));
    const std::string second = to_csv(sweep(grid));
    const std::string serial = to_csv(sweep_reference(grid));
    expect(first == second, "two parallel sweeps differ");
    expect(first == serial, "parallel sweep differs from the serial reference");
    std::string caught;
    for (const std::string& name : mutation_names()) {
      const auto results = run_reproduction_checks(mutated_forms(name));
      const auto failed = std::find_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.passed; });
      expect(failed != results.end(), cat("mutation ", name, " went unnoticed"));
      caught += cat(caught.empty() ? "" : ", ", name, " -> criterion ", failed->criterion);
    }
    return cat("sweep CSV byte-identical (", first.size(), " bytes); mutations caught: ", caught);
  });
}

bool print_results(std::ostream& out, std::span<const CheckResult> results) {
  bool all = true;
  for (const CheckResult& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.criterion << ' ' << r.title << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace jaynes
