#include "qsync/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qsync/errors.hpp"
#include "qsync/sync_measure.hpp"
#include "qsync/version.hpp"

namespace qsync {

namespace {

double axis_value(const SweepAxis& axis, int index) {
  if (axis.count == 1) {
    return axis.min;
  }
  const double t = static_cast<double>(index) / (axis.count - 1);
  if (axis.log_scale) {
    return std::exp(std::log(axis.min) + t * (std::log(axis.max) - std::log(axis.min)));
  }
  return axis.min + t * (axis.max - axis.min);
}

std::map<std::string, double> resolve_params(
    const std::vector<std::pair<std::string, double>>& entries) {
  std::map<std::string, double> resolved;
  std::vector<std::pair<std::string, double>> ratios;
  for (const auto& [name, value] : entries) {
    if (name.find('/') == std::string::npos) {
      resolved[name] = value;
    } else {
      ratios.emplace_back(name, value);
    }
  }
  // Ratio entries "A/B" assign A = value * B once B is known; repeated passes
  // let ratios chain (epsilon/gamma_g after gamma_g/gamma_d).
  bool progress = true;
  while (progress && !ratios.empty()) {
    progress = false;
    for (auto it = ratios.begin(); it != ratios.end();) {
      const auto slash = it->first.find('/');
      const std::string target = it->first.substr(0, slash);
      const std::string base = it->first.substr(slash + 1);
      const auto found = resolved.find(base);
      if (found != resolved.end()) {
        resolved[target] = it->second * found->second;
        it = ratios.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  if (!ratios.empty()) {
    throw std::invalid_argument("sweep: unresolvable ratio parameter '" +
                                ratios.front().first + "'");
  }
  return resolved;
}

}  // namespace

void SweepSpec::validate() const {
  if (axes.empty()) {
    throw std::invalid_argument("sweep: at least one axis required");
  }
  for (const auto& axis : axes) {
    if (axis.count < 1) {
      throw std::invalid_argument("sweep axis '" + axis.name + "': count must be >= 1");
    }
    if (axis.count > 1 && !(axis.min < axis.max)) {
      throw std::invalid_argument("sweep axis '" + axis.name + "': min must be < max");
    }
    if (axis.log_scale && (axis.min <= 0.0 || axis.max <= 0.0)) {
      throw std::invalid_argument("sweep axis '" + axis.name +
                                  "': log scale requires positive bounds");
    }
  }
  for (const auto& measure : measures) {
    if (measure != "S_max" && measure != "l1" && measure != "rel_entropy" &&
        measure != "residuals") {
      throw std::invalid_argument("sweep: unknown measure '" + measure + "'");
    }
  }
  named_model_dim(model);  // rejects unknown model ids
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  {
    // Structural pre-flight: every ratio axis must resolve and every
    // resolved name must be a model parameter. Point-specific failures are
    // still recorded per row below.
    std::vector<std::pair<std::string, double>> probe = spec.fixed;
    for (const auto& axis : spec.axes) {
      probe.emplace_back(axis.name, axis.min);
    }
    const auto& names = named_model_params(spec.model);
    for (const auto& [name, value] : resolve_params(probe)) {
      (void)value;
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw std::invalid_argument("sweep: model '" + spec.model +
                                    "' has no parameter '" + name + "'");
      }
    }
  }
  const int dim = named_model_dim(spec.model);
  const CoherentFamily family = family_by_id(spec.family, dim);
  const Quadrature quad = make_quadrature(family, spec.theta_nodes, spec.phase_grid);
  const ZMatrix z = z_matrix(family, quad);
  const int phase_grid =
      spec.phase_grid > 0 ? spec.phase_grid
                          : std::max(4 * family.dim, min_phase_grid(family));
  const std::size_t group_count = phase_groups(family).size();

  SweepTable table;
  table.spec = spec;
  for (const auto& axis : spec.axes) {
    table.columns.push_back(axis.name);
  }
  bool want_smax = false;
  bool want_l1 = false;
  bool want_rel = false;
  bool want_residuals = false;
  for (const auto& measure : spec.measures) {
    if (measure == "S_max") {
      want_smax = true;
      table.columns.push_back("S_max");
    } else if (measure == "l1") {
      want_l1 = true;
      table.columns.push_back("l1");
    } else if (measure == "rel_entropy") {
      want_rel = true;
      table.columns.push_back("rel_entropy");
    } else if (measure == "residuals") {
      want_residuals = true;
      for (std::size_t g = 0; g < group_count; ++g) {
        table.columns.push_back("residual_" + std::to_string(g + 1));
      }
    }
  }
  table.columns.insert(table.columns.end(),
                       {"solver_residual", "trace_error", "min_eigenvalue"});

  long total = 1;
  for (const auto& axis : spec.axes) {
    total *= axis.count;
  }
  table.rows.assign(total, std::vector<double>(table.columns.size(),
                                               std::numeric_limits<double>::quiet_NaN()));
  table.status.assign(total, "ok");

  const auto evaluate = [&](long row) {
    std::vector<std::pair<std::string, double>> entries = spec.fixed;
    long rest = row;
    // Row-major: the last axis varies fastest.
    std::vector<double> axis_values(spec.axes.size());
    for (int a = static_cast<int>(spec.axes.size()) - 1; a >= 0; --a) {
      const int idx = static_cast<int>(rest % spec.axes[a].count);
      rest /= spec.axes[a].count;
      axis_values[a] = axis_value(spec.axes[a], idx);
      entries.emplace_back(spec.axes[a].name, axis_values[a]);
    }
    std::vector<double>& cells = table.rows[row];
    std::size_t col = 0;
    for (double v : axis_values) {
      cells[col++] = v;
    }
    try {
      const LindbladModel model = build_named_model(spec.model, resolve_params(entries));
      const SteadyState solved = solve_steady_state(build_liouvillian(model));
      if (want_smax) {
        cells[col++] = sync_max(family, z, solved.rho, phase_grid).max_abs;
      }
      if (want_l1) {
        cells[col++] = l1_coherence(solved.rho);
      }
      if (want_rel) {
        cells[col++] = rel_entropy_sync(solved.rho).value;
      }
      if (want_residuals) {
        for (const auto& group : blockade_residual(family, z, solved.rho)) {
          cells[col++] = group.residual;
        }
      }
      cells[col++] = solved.residual;
      cells[col++] = solved.rho.trace_error();
      cells[col++] = solved.rho.min_eigenvalue();
    } catch (const std::exception& err) {
      table.status[row] = err.what();
    }
  };

  const int workers = std::max(1, std::min<int>(spec.workers, static_cast<int>(total)));
  if (workers == 1) {
    for (long row = 0; row < total; ++row) {
      evaluate(row);
    }
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (long row = next.fetch_add(1); row < total; row = next.fetch_add(1)) {
          evaluate(row);
        }
      });
    }
    for (auto& thread : pool) {
      thread.join();
    }
  }
  return table;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out, bool timestamp) {
  if (timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&now));
    out << "# generated " << stamp << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << table.columns[c] << ",";
  }
  out << "status\n";
  char buffer[40];
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (double v : table.rows[r]) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", v);
      out << buffer << ",";
    }
    out << table.status[r] << "\n";
  }
}

std::string sweep_metadata_json(const SweepTable& table) {
  nlohmann::json meta;
  meta["version"] = std::string(kVersion);
  meta["model"] = table.spec.model;
  meta["family"] = table.spec.family;
  meta["theta_nodes"] = table.spec.theta_nodes;
  meta["phase_grid"] = table.spec.phase_grid;
  meta["workers"] = table.spec.workers;
  meta["rows"] = table.rows.size();
  meta["axes"] = nlohmann::json::array();
  for (const auto& axis : table.spec.axes) {
    meta["axes"].push_back({{"name", axis.name},
                            {"min", axis.min},
                            {"max", axis.max},
                            {"count", axis.count},
                            {"log", axis.log_scale}});
  }
  meta["fixed"] = nlohmann::json::object();
  for (const auto& [name, value] : table.spec.fixed) {
    meta["fixed"][name] = value;
  }
  meta["measures"] = table.spec.measures;
  meta["columns"] = table.columns;
  return meta.dump(2);
}

}  // namespace qsync
