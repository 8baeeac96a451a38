#include "jaynes/sweep.hpp"

#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "jaynes/bell_chsh.hpp"
#include "jaynes/entanglement.hpp"
#include "omp_compat.hpp"

namespace jaynes {

namespace {

constexpr double kRowTolerance = 1e-12;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
  v.back() = hi;
  return v;
}

void put_number(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  out << buf;
}

double parse_number(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s, std::size_t line) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::runtime_error("csv line " + std::to_string(line) + ": bad boolean '" + s + "'");
}

}  // namespace

void SweepGrid::validate() const {
  if (!(b_min >= 0.5 && b_min <= b_max && b_max <= 1.0)) {
    throw std::invalid_argument("sweep: need 0.5 <= b_min <= b_max <= 1");
  }
  if (b_steps < 1 || x_steps < 1) throw std::invalid_argument("sweep: step counts must be >= 1");
}

std::vector<std::pair<double, double>> grid_points(const SweepGrid& grid) {
  grid.validate();
  std::vector<std::pair<double, double>> pts;
  for (double b : linspace(grid.b_min, grid.b_max, grid.b_steps)) {
    for (double x : linspace(2.0 * b - 1.0, 1.0, grid.x_steps)) {
      if (admissible(b, x)) pts.emplace_back(b, x);
    }
  }
  return pts;
}

SweepRow evaluate_row(double b, double x) {
  const BellDiagonalState j1 = jaynes_b(b);
  const BellDiagonalState j2 = jaynes_bx(b, x);
  const DensityMatrix rho1 = to_density_matrix(j1);
  const DensityMatrix rho2 = to_density_matrix(j2);

  SweepRow r;
  r.b = b;
  r.x = x;
  r.f_j1 = largest_eigenvalue_j1(b);
  r.f_j2 = largest_eigenvalue_j2(b, x);
  r.e1_j1 = eof_bell_diagonal(r.f_j1);
  r.e1_j2 = eof_bell_diagonal(r.f_j2);
  r.e2_j1 = ree_bell_diagonal(r.f_j1);
  r.e2_j2 = ree_bell_diagonal(r.f_j2);
  r.variance = variance_x(x);
  r.sep_j1 = is_ppt_separable(rho1);
  r.sep_j2 = is_ppt_separable(rho2);
  r.entropy_j1 = von_neumann_entropy(rho1);
  r.entropy_j2 = von_neumann_entropy(rho2);
  return r;
}

std::vector<SweepRow> sweep_reference(const SweepGrid& grid) {
  std::vector<SweepRow> rows;
  for (const auto& [b, x] : grid_points(grid)) rows.push_back(evaluate_row(b, x));
  return rows;
}

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  const auto pts = grid_points(grid);
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
  std::vector<SweepRow> rows(pts.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      rows[i] = evaluate_row(pts[i].first, pts[i].second);
    } catch (...) {
#pragma omp critical(jaynes_sweep_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::optional<std::string> row_violation(const SweepRow& r) {
  auto at = [&r] {
    std::ostringstream s;
    s << " at b=" << r.b << ", x=" << r.x;
    return s.str();
  };
  if (r.f_j1 < r.f_j2 - kRowTolerance) return "f_j1 >= f_j2 violated" + at();
  if (r.e1_j1 < r.e1_j2 - kRowTolerance) return "e1_j1 >= e1_j2 violated" + at();
  if (r.e2_j1 < r.e2_j2 - kRowTolerance) return "e2_j1 >= e2_j2 violated" + at();
  return std::nullopt;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    const double head[] = {r.b, r.x, r.f_j1, r.f_j2, r.e1_j1, r.e1_j2, r.e2_j1, r.e2_j2, r.variance};
    for (double v : head) {
      put_number(out, v);
      out << ',';
    }
    out << (r.sep_j1 ? "true" : "false") << ',' << (r.sep_j2 ? "true" : "false") << ',';
    put_number(out, r.entropy_j1);
    out << ',';
    put_number(out, r.entropy_j2);
    out << '\n';
  }
}

std::string to_csv(std::span<const SweepRow> rows) {
  std::ostringstream s;
  write_csv(s, rows);
  return s.str();
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw std::runtime_error("csv line 1: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 13) {
      throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected 13 columns, got " +
                               std::to_string(cells.size()));
    }
    SweepRow r;
    double* nums[] = {&r.b, &r.x, &r.f_j1, &r.f_j2, &r.e1_j1, &r.e1_j2, &r.e2_j1, &r.e2_j2, &r.variance};
    for (std::size_t k = 0; k < 9; ++k) *nums[k] = parse_number(cells[k], lineno);
    r.sep_j1 = parse_bool(cells[9], lineno);
    r.sep_j2 = parse_bool(cells[10], lineno);
    r.entropy_j1 = parse_number(cells[11], lineno);
    r.entropy_j2 = parse_number(cells[12], lineno);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace jaynes
