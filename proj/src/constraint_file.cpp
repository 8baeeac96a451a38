#include "jaynes/constraint_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace jaynes {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConstraintFileError(path + ": " + msg);
}

std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double real_field(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "non-finite value");
  return d;
}

}  // namespace

ConstraintFileModel parse_constraint_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ConstraintFileError(locate(text, at) + ": " + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");

  ConstraintFileModel m;
  if (!doc.contains("dimension")) fail("dimension", "missing field");
  const json& dim = doc["dimension"];
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    fail("dimension", "expected a positive integer");
  }
  m.dimension = dim.get<int>();
  const auto d = static_cast<Eigen::Index>(m.dimension);

  if (!doc.contains("observables")) fail("observables", "missing field");
  if (!doc["observables"].is_array()) fail("observables", "expected an array");
  if (!doc.contains("targets")) fail("targets", "missing field");
  if (!doc["targets"].is_array()) fail("targets", "expected an array");

  std::set<std::string> names;
  const json& obs = doc["observables"];
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const std::string path = "observables[" + std::to_string(k) + "]";
    const json& o = obs[k];
    if (!o.is_object()) fail(path, "expected an object");
    if (!o.contains("name") || !o["name"].is_string()) fail(path + ".name", "expected a string");
    NamedObservable no;
    no.name = o["name"].get<std::string>();
    if (no.name.empty()) fail(path + ".name", "must not be empty");
    if (!names.insert(no.name).second) fail(path + ".name", "duplicate name '" + no.name + "'");
    if (!o.contains("matrix") || !o["matrix"].is_array()) fail(path + ".matrix", "expected an array");
    const json& entries = o["matrix"];
    if (entries.size() != static_cast<std::size_t>(d * d)) {
      fail(path + ".matrix", "expected " + std::to_string(d * d) + " [re, im] pairs, got " +
                                 std::to_string(entries.size()));
    }
    no.matrix.resize(d, d);
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const std::string epath = path + ".matrix[" + std::to_string(e) + "]";
      const json& pair = entries[e];
      if (!pair.is_array() || pair.size() != 2) fail(epath, "expected a [re, im] pair");
      const auto row = static_cast<Eigen::Index>(e) / d;
      const auto col = static_cast<Eigen::Index>(e) % d;
      no.matrix(row, col) = cplx(real_field(pair[0], epath + "[0]"), real_field(pair[1], epath + "[1]"));
    }
    const double dev = hermiticity_deviation(no.matrix);
    if (dev > tol::structural) {
      fail(path + ".matrix", "not Hermitian (max |M - M^dagger| = " + std::to_string(dev) + ")");
    }
    m.observables.push_back(std::move(no));
  }

  const json& targets = doc["targets"];
  for (std::size_t k = 0; k < targets.size(); ++k) {
    m.targets.push_back(real_field(targets[k], "targets[" + std::to_string(k) + "]"));
  }
  if (m.targets.size() != m.observables.size()) {
    fail("targets", "expected " + std::to_string(m.observables.size()) + " values, got " +
                        std::to_string(m.targets.size()));
  }
  return m;
}

ConstraintFileModel load_constraint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConstraintFileError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_constraint_file(buf.str());
}

std::string to_json(const ConstraintFileModel& model) {
  json doc;
  doc["dimension"] = model.dimension;
  doc["observables"] = json::array();
  for (const NamedObservable& o : model.observables) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < o.matrix.rows(); ++i)
      for (Eigen::Index j = 0; j < o.matrix.cols(); ++j)
        entries.push_back({o.matrix(i, j).real(), o.matrix(i, j).imag()});
    doc["observables"].push_back({{"name", o.name}, {"matrix", entries}});
  }
  doc["targets"] = model.targets;
  return doc.dump(2) + "\n";
}

ConstraintSet to_constraint_set(const ConstraintFileModel& model) {
  if (model.targets.size() != model.observables.size()) {
    throw ConstraintFileError("targets: count differs from observables");
  }
  std::vector<Constraint> cs;
  try {
    for (std::size_t k = 0; k < model.observables.size(); ++k) {
      cs.push_back({model.observables[k].name, HermitianOperator(model.observables[k].matrix),
                    model.targets[k]});
    }
    return ConstraintSet(model.dimension, std::move(cs));
  } catch (const std::invalid_argument& e) {
    throw ConstraintFileError(e.what());
  }
}

}  // namespace jaynes
