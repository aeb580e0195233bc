#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qsync/models.hpp"

namespace qsync {

/// One swept parameter axis. The name is either a model parameter
/// ("gamma_g") or a ratio "A/B", which assigns A = value * resolved(B); this
/// covers axes such as gamma_g/gamma_d directly.
struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log_scale = false;
};

/// Grid specification for a parameter sweep over one of the named models.
struct SweepSpec {
  std::string model;  // "spin1" | "spin32" | "su3"
  std::vector<SweepAxis> axes;
  std::vector<std::pair<std::string, double>> fixed;
  std::vector<std::string> measures;  // "S_max", "l1", "rel_entropy", "residuals"
  std::string family;                 // "spin" | "su3"
  int theta_nodes = 64;
  int phase_grid = 0;  // 0 selects the family default
  int workers = 1;

  void validate() const;  // throws std::invalid_argument
};

/// Result table: one row per grid point in row-major order over the axes.
/// Numeric columns hold the axis values, the requested measures and the
/// solver diagnostics; the status column is "ok" or the error message of the
/// failed grid point (failures never abort the sweep).
struct SweepTable {
  SweepSpec spec;
  std::vector<std::string> columns;  // numeric columns, in CSV order
  std::vector<std::vector<double>> rows;
  std::vector<std::string> status;  // one entry per row
};

/// Runs the sweep: per grid point build the model, solve the steady state
/// and evaluate the requested measures. Grid points are independent and are
/// evaluated concurrently up to spec.workers; rows are merged by grid index,
/// so the output is deterministic.
SweepTable run_sweep(const SweepSpec& spec);

/// CSV with a leading timestamp metadata line, a header row and %.17g
/// floats. Two runs of the same spec differ only in the timestamp line;
/// pass timestamp = false to omit it entirely.
void write_sweep_csv(const SweepTable& table, std::ostream& out,
                     bool timestamp = true);

/// JSON sidecar describing the sweep: spec, quadrature and code version.
std::string sweep_metadata_json(const SweepTable& table);

}  // namespace qsync
