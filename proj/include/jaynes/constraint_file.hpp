#pragma once

// JSON constraint documents for the infer command:
//
//   {
//     "dimension": 4,
//     "observables": [
//       {"name": "B", "matrix": [[re, im], [re, im], ...]}   // row-major, dim*dim pairs
//     ],
//     "targets": [0.75]
//   }

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jaynes/hermitian.hpp"
#include "jaynes/maxent.hpp"

namespace jaynes {

struct NamedObservable {
  std::string name;
  ComplexMatrix matrix;
};

struct ConstraintFileModel {
  int dimension = 0;
  std::vector<NamedObservable> observables;
  std::vector<double> targets;
};

/// Parse or schema error. what() carries "line L, column C: ..." for syntax
/// errors and a field path such as "observables[1].matrix[5]: ..." for
/// schema violations.
class ConstraintFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ConstraintFileModel parse_constraint_file(std::string_view text);
ConstraintFileModel load_constraint_file(const std::filesystem::path& path);

std::string to_json(const ConstraintFileModel& model);

/// Builds the solver input; ConstraintSet rejections are rethrown as
/// ConstraintFileError.
ConstraintSet to_constraint_set(const ConstraintFileModel& model);

}  // namespace jaynes
