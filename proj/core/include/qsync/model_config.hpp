#pragma once

#include <string>

#include "qsync/coherent.hpp"
#include "qsync/lindblad.hpp"

namespace qsync {

/// Parsed model configuration: the Lindblad model plus the coherent family
/// selection and quadrature overrides. See README for the JSON schema;
/// operators are given by name ("Sz", "Sx", "Sy", "Sx2", "sigma j k") or as
/// inline matrices, and unknown fields are rejected.
struct ModelConfig {
  LindbladModel model;
  std::string family_id;  // "spin", "su3" or empty when absent
  int theta_nodes = 64;
  int phase_grid = 0;  // 0 = family default
};

/// Parses a JSON document; throws ConfigError with position/field
/// diagnostics on any problem.
ModelConfig parse_model_config(const std::string& json_text);

/// Reads and parses a config file.
ModelConfig load_model_config(const std::string& path);

/// Canonical JSON for a parsed config (operators inlined as [re, im]
/// matrices). Parsing the output reproduces an equivalent configuration.
std::string serialize_model_config(const ModelConfig& config);

/// Family named by the config; throws ConfigError when none was selected.
CoherentFamily config_family(const ModelConfig& config);

}  // namespace qsync
