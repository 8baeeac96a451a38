#pragma once

// Closed-form sweep over the (<B>, <X>) plane and its CSV encoding.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jaynes {

struct SweepRow {
  double b = 0.0;
  double x = 0.0;
  double f_j1 = 0.0;
  double f_j2 = 0.0;
  double e1_j1 = 0.0;
  double e1_j2 = 0.0;
  double e2_j1 = 0.0;
  double e2_j2 = 0.0;
  double variance = 0.0;
  bool sep_j1 = false;
  bool sep_j2 = false;
  double entropy_j1 = 0.0;
  double entropy_j2 = 0.0;
};

/// b on b_steps evenly spaced points of [b_min, b_max]; for each b, x on
/// x_steps evenly spaced points of [2b - 1, 1]. A single step means the lower
/// end of the interval.
struct SweepGrid {
  double b_min = 0.5;
  double b_max = 1.0;
  int b_steps = 11;
  int x_steps = 11;

  /// Throws std::invalid_argument unless 0.5 <= b_min <= b_max <= 1 and both
  /// step counts are >= 1.
  void validate() const;
};

/// Admissible (b, x) points in emission order (b-major, x ascending).
std::vector<std::pair<double, double>> grid_points(const SweepGrid& grid);

/// One row from the closed forms; throws std::domain_error if inadmissible.
SweepRow evaluate_row(double b, double x);

/// Rows evaluated on OpenMP threads, emitted in grid order.
std::vector<SweepRow> sweep(const SweepGrid& grid);

/// Serial reference for sweep().
std::vector<SweepRow> sweep_reference(const SweepGrid& grid);

/// First violated row invariant (f_j1 >= f_j2, e1_j1 >= e1_j2, e2_j1 >= e2_j2,
/// tolerance 1e-12), if any.
std::optional<std::string> row_violation(const SweepRow& row);

inline constexpr const char* kSweepHeader =
    "b,x,f_j1,f_j2,e1_j1,e1_j2,e2_j1,e2_j2,variance,sep_j1,sep_j2,entropy_j1,entropy_j2";

/// Header plus one line per row; 12 significant digits, '\n' line ends.
void write_csv(std::ostream& out, std::span<const SweepRow> rows);
std::string to_csv(std::span<const SweepRow> rows);

/// Parses what write_csv produces; throws std::runtime_error with the line
/// number on malformed input.
std::vector<SweepRow> read_csv(std::istream& in);

}  // namespace jaynes
