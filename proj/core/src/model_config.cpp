#include "qsync/model_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsync/errors.hpp"
#include "qsync/models.hpp"

namespace qsync {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where.empty() ? what : where + ": " + what);
}

void reject_unknown(const json& object, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where, "unknown field '" + key + "'");
    }
  }
}

Operator parse_matrix(const json& rows, int dim, const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    fail(where, "inline matrix must be an array of " + std::to_string(dim) + " rows");
  }
  Operator op(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail(where, "row " + std::to_string(r + 1) + " must have " +
                      std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const json& entry = row[c];
      if (entry.is_number()) {
        op(r, c) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                 entry[1].is_number()) {
        op(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        fail(where, "matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return op;
}

Operator resolve_operator(const json& spec, int dim, const std::string& where) {
  if (spec.is_array()) {
    return parse_matrix(spec, dim, where);
  }
  if (!spec.is_string()) {
    fail(where, "operator must be a name or an inline matrix");
  }
  const std::string name = spec.get<std::string>();
  if (name == "Sz") {
    return spin_operators(dim).sz;
  }
  if (name == "Sx") {
    return spin_operators(dim).sx;
  }
  if (name == "Sy") {
    return spin_operators(dim).sy;
  }
  if (name == "Sx2") {
    const Operator sx = spin_operators(dim).sx;
    return sx * sx;
  }
  if (name.rfind("sigma", 0) == 0) {
    std::istringstream stream(name.substr(5));
    int j = 0;
    int k = 0;
    if (stream >> j >> k) {
      std::string leftover;
      if (!(stream >> leftover)) {
        try {
          return transition_op(dim, j, k);
        } catch (const std::invalid_argument& err) {
          fail(where, err.what());
        }
      }
    }
    fail(where, "expected 'sigma j k' with two level indices");
  }
  fail(where, "unknown operator name '" + name + "'");
}

json matrix_to_json(const Operator& op) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < op.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < op.cols(); ++c) {
      row.push_back({op(r, c).real(), op(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ModelConfig parse_model_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  reject_unknown(doc, {"dim", "hamiltonian", "dissipators", "family", "quadrature"},
                 "config");

  ModelConfig config;
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ConfigError("config: integer field 'dim' is required");
  }
  const int dim = doc["dim"].get<int>();
  if (dim < 1) {
    throw ConfigError("config: dim must be positive");
  }
  config.model.dim = dim;

  if (doc.contains("hamiltonian")) {
    if (!doc["hamiltonian"].is_array()) {
      throw ConfigError("config: 'hamiltonian' must be an array");
    }
    int index = 0;
    for (const json& term : doc["hamiltonian"]) {
      const std::string where = "hamiltonian[" + std::to_string(index++) + "]";
      if (!term.is_object()) {
        fail(where, "term must be an object");
      }
      reject_unknown(term, {"op", "coeff", "drive"}, where);
      if (!term.contains("op") || !term.contains("coeff") ||
          !term["coeff"].is_number()) {
        fail(where, "fields 'op' and numeric 'coeff' are required");
      }
      HamiltonianTerm parsed;
      parsed.op = resolve_operator(term["op"], dim, where + ".op");
      parsed.coeff = term["coeff"].get<double>();
      if (term.contains("drive")) {
        if (!term["drive"].is_boolean()) {
          fail(where, "'drive' must be a boolean");
        }
        parsed.drive = term["drive"].get<bool>();
      }
      config.model.hamiltonian.push_back(std::move(parsed));
    }
  }

  if (doc.contains("dissipators")) {
    if (!doc["dissipators"].is_array()) {
      throw ConfigError("config: 'dissipators' must be an array");
    }
    int index = 0;
    for (const json& entry : doc["dissipators"]) {
      const std::string where = "dissipators[" + std::to_string(index++) + "]";
      if (!entry.is_object()) {
        fail(where, "dissipator must be an object");
      }
      reject_unknown(entry, {"op", "rate"}, where);
      if (!entry.contains("op") || !entry.contains("rate") ||
          !entry["rate"].is_number()) {
        fail(where, "fields 'op' and numeric 'rate' are required");
      }
      Dissipator parsed;
      parsed.jump = resolve_operator(entry["op"], dim, where + ".op");
      parsed.rate = entry["rate"].get<double>();
      config.model.dissipators.push_back(std::move(parsed));
    }
  }

  if (doc.contains("family")) {
    if (!doc["family"].is_string()) {
      throw ConfigError("config: 'family' must be a string");
    }
    config.family_id = doc["family"].get<std::string>();
    if (config.family_id != "spin" && config.family_id != "su3") {
      throw ConfigError("config: family must be 'spin' or 'su3', got '" +
                        config.family_id + "'");
    }
  }

  if (doc.contains("quadrature")) {
    const json& quad = doc["quadrature"];
    if (!quad.is_object()) {
      throw ConfigError("config: 'quadrature' must be an object");
    }
    reject_unknown(quad, {"theta_nodes", "phase_grid"}, "quadrature");
    if (quad.contains("theta_nodes")) {
      if (!quad["theta_nodes"].is_number_integer()) {
        throw ConfigError("quadrature: 'theta_nodes' must be an integer");
      }
      config.theta_nodes = quad["theta_nodes"].get<int>();
      if (config.theta_nodes < 1) {
        throw ConfigError("quadrature: 'theta_nodes' must be positive");
      }
    }
    if (quad.contains("phase_grid")) {
      if (!quad["phase_grid"].is_number_integer()) {
        throw ConfigError("quadrature: 'phase_grid' must be an integer");
      }
      config.phase_grid = quad["phase_grid"].get<int>();
    }
  }

  try {
    config.model.validate();
    if (!config.family_id.empty()) {
      config_family(config);
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  return config;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_config(buffer.str());
}

std::string serialize_model_config(const ModelConfig& config) {
  json doc;
  doc["dim"] = config.model.dim;
  doc["hamiltonian"] = json::array();
  for (const auto& term : config.model.hamiltonian) {
    doc["hamiltonian"].push_back({{"op", matrix_to_json(term.op)},
                                  {"coeff", term.coeff},
                                  {"drive", term.drive}});
  }
  doc["dissipators"] = json::array();
  for (const auto& entry : config.model.dissipators) {
    doc["dissipators"].push_back(
        {{"op", matrix_to_json(entry.jump)}, {"rate", entry.rate}});
  }
  if (!config.family_id.empty()) {
    doc["family"] = config.family_id;
  }
  doc["quadrature"] = {{"theta_nodes", config.theta_nodes},
                       {"phase_grid", config.phase_grid}};
  return doc.dump(2);
}

CoherentFamily config_family(const ModelConfig& config) {
  if (config.family_id.empty()) {
    throw ConfigError("config selects no coherent family (set \"family\")");
  }
  try {
    return family_by_id(config.family_id, config.model.dim);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
}

}  // namespace qsync
