// jaynes: maximum-entropy inference and the Bell-CHSH reproduction checks.
//
//   jaynes verify [--mutate <name>]
//   jaynes sweep --b-min <f> --b-max <f> --b-steps <n> --x-steps <n> --out <path> [--serial]
//   jaynes infer --constraints <path> [--strict] [--precision <n>]
//
// Exit codes: 0 success, 1 verification/assertion failure, 2 usage/parse error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jaynes/constraint_file.hpp"
#include "jaynes/entanglement.hpp"
#include "jaynes/maxent.hpp"
#include "jaynes/sweep.hpp"
#include "jaynes/verification.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

int cmd_verify(const std::string& mutation) {
  jaynes::ClosedForms forms = jaynes::reference_forms();
  if (!mutation.empty()) {
    try {
      forms = jaynes::mutated_forms(mutation);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsage;
    }
    std::cout << "note: closed form mutated (" << mutation << ")\n";
  }
  std::vector<jaynes::CheckResult> results = jaynes::run_reproduction_checks(forms);
  results.push_back(jaynes::check_determinism_and_mutations());
  const bool ok = jaynes::print_results(std::cout, results);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  std::cout << passed << "/" << results.size() << " checks passed\n";
  return ok ? kOk : kFailure;
}

int cmd_sweep(const jaynes::SweepGrid& grid, const std::string& out_path, bool serial) {
  std::vector<jaynes::SweepRow> rows;
  try {
    rows = serial ? jaynes::sweep_reference(grid) : jaynes::sweep(grid);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kUsage;
    }
    jaynes::write_csv(out, rows);
    if (!out.flush()) {
      std::cerr << "error: write to " << out_path << " failed\n";
      return kUsage;
    }
  }

  std::ifstream in(out_path, std::ios::binary);
  const std::vector<jaynes::SweepRow> reread = jaynes::read_csv(in);
  if (reread.size() != rows.size()) {
    std::cerr << "error: re-read " << reread.size() << " rows, wrote " << rows.size() << '\n';
    return kFailure;
  }
  for (const jaynes::SweepRow& r : reread) {
    if (auto bad = jaynes::row_violation(r)) {
      std::cerr << "error: " << *bad << '\n';
      return kFailure;
    }
  }
  std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
  return kOk;
}

void print_matrix(std::ostream& out, const jaynes::ComplexMatrix& m, int precision) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::ostringstream cell;
      cell << std::setprecision(precision) << m(i, j).real() << (m(i, j).imag() < 0 ? "-" : "+")
           << std::abs(m(i, j).imag()) << "i";
      out << std::setw(precision + 12) << cell.str();
    }
    out << '\n';
  }
}

int cmd_infer(const std::string& path, bool strict, int precision) {
  jaynes::ConstraintFileModel model;
  std::optional<jaynes::ConstraintSet> cs;
  try {
    model = jaynes::load_constraint_file(path);
    cs.emplace(jaynes::to_constraint_set(model));
  } catch (const jaynes::ConstraintFileError& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
    return kUsage;
  }

  const jaynes::SolverReport rep = jaynes::solve(*cs);
  std::ostream& out = std::cout;
  out << std::setprecision(precision);
  out << "status: " << jaynes::to_string(rep.status) << '\n';
  out << "iterations: " << rep.iterations << '\n';
  out << "state:\n";
  print_matrix(out, rep.state.matrix(), precision);
  out << "entropy: " << jaynes::von_neumann_entropy(rep.state) << '\n';
  for (std::size_t i = 0; i < cs->size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out << "constraint " << cs->constraints()[i].name << ": target " << cs->constraints()[i].target
        << ", multiplier " << rep.multipliers(k) << ", residual " << rep.residuals(k) << '\n';
  }
  if (rep.state.dim() == 4) {
    const jaynes::EntanglementReport e = jaynes::entanglement_report(rep.state);
    out << "concurrence: " << e.concurrence << '\n';
    out << "e1 (entanglement of formation): " << e.e1 << '\n';
    if (e.f) out << "f (largest Bell weight): " << *e.f << '\n';
    if (e.e2) out << "e2 (relative entropy of entanglement): " << *e.e2 << '\n';
    out << "ppt_separable: " << (e.ppt_separable ? "true" : "false") << '\n';
  }
  if (rep.status != jaynes::SolverStatus::Converged) {
    std::cerr << "warning: solver finished with " << jaynes::to_string(rep.status);
    if (!rep.diagnostic.empty()) std::cerr << " (" << rep.diagnostic << ")";
    std::cerr << '\n';
    if (strict) return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy inference of quantum states and Bell-CHSH entanglement checks"};
  app.require_subcommand(1);

  std::string mutation;
  auto* verify = app.add_subcommand("verify", "Run every reproduction check and print PASS/FAIL per item");
  verify->add_option("--mutate", mutation, "Replace a closed form by a broken variant (test harness)")
      ->group("");

  jaynes::SweepGrid grid;
  std::string out_path;
  bool serial = false;
  auto* sweep = app.add_subcommand("sweep", "Write closed-form quantities over the (<B>, <X>) grid as CSV");
  sweep->add_option("--b-min", grid.b_min, "Smallest <B>")->required();
  sweep->add_option("--b-max", grid.b_max, "Largest <B>")->required();
  sweep->add_option("--b-steps", grid.b_steps, "Number of <B> values")->required();
  sweep->add_option("--x-steps", grid.x_steps, "Number of <X> values per <B> on [2<B>-1, 1]")->required();
  sweep->add_option("--out", out_path, "Output CSV path")->required();
  sweep->add_flag("--serial", serial, "Use the single-threaded reference kernel");

  std::string constraints;
  bool strict = false;
  int precision = 12;
  auto* infer = app.add_subcommand("infer", "Solve the maximum-entropy problem for a JSON constraint file");
  infer->add_option("--constraints", constraints, "Constraint file")->required();
  infer->add_flag("--strict", strict, "Exit 1 unless the solver converged");
  infer->add_option("--precision", precision, "Significant digits in the printed output")
      ->check(CLI::Range(1, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(mutation);
    if (*sweep) return cmd_sweep(grid, out_path, serial);
    if (*infer) return cmd_infer(constraints, strict, precision);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
