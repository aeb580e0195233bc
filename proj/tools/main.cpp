// Command-line interface: steady states, symmetry analysis, synchronization
// measures, Q-function grids, parameter sweeps and a self-verification suite.
//
// Exit codes: 0 success, 1 numerical failure, 2 invalid input.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsync/coherent.hpp"
#include "qsync/errors.hpp"
#include "qsync/lie_algebra.hpp"
#include "qsync/lindblad.hpp"
#include "qsync/model_config.hpp"
#include "qsync/models.hpp"
#include "qsync/operators.hpp"
#include "qsync/sweep.hpp"
#include "qsync/sync_measure.hpp"
#include "qsync/version.hpp"

namespace {

using nlohmann::json;
using namespace qsync;

constexpr double kPi = std::numbers::pi;

/// Writes the fully assembled output in one shot so failed commands never
/// leave partial files behind.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') {
      std::cout << '\n';
    }
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw ConfigError("cannot open output file '" + out_path + "'");
  }
  out << text;
}

json rho_to_json(const Eigen::MatrixXcd& rho) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      row.push_back({rho(r, c).real(), rho(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  int quad_theta = 0;   // 0 = config/default value
  int phase_grid = -1;  // -1 = config/default value
};

void add_common(CLI::App* cmd, CommonOptions* opts, bool with_quadrature) {
  cmd->add_option("--config", opts->config_path, "model config JSON path")
      ->required();
  cmd->add_option("--out", opts->out_path, "output path (default: stdout)");
  if (with_quadrature) {
    cmd->add_option("--quad-theta", opts->quad_theta,
                    "Gauss-Legendre nodes per population angle");
    cmd->add_option("--phase-grid", opts->phase_grid, "uniform phase grid size");
  }
}

int quad_theta_nodes(const CommonOptions& opts, const ModelConfig& config) {
  return opts.quad_theta > 0 ? opts.quad_theta : config.theta_nodes;
}

int phase_grid_size(const CommonOptions& opts, const ModelConfig& config,
                    const CoherentFamily& family) {
  const int configured = opts.phase_grid >= 0 ? opts.phase_grid : config.phase_grid;
  return configured > 0 ? configured
                        : std::max(4 * family.dim, min_phase_grid(family));
}

int run_symmetry(const CommonOptions& opts, bool include_drives,
                 bool include_dissipators) {
  const ModelConfig config = load_model_config(opts.config_path);
  std::optional<CoherentFamily> family;
  if (!config.family_id.empty()) {
    family = config_family(config);
  }
  AnalyzeOptions analyze_opts;
  analyze_opts.include_drives = include_drives;
  analyze_opts.include_dissipators = include_dissipators;
  const AlgebraReport report =
      analyze(config.model, family ? &*family : nullptr, analyze_opts);

  json doc;
  doc["blocks"] = report.blocks;
  doc["block_dims"] = report.block_dims;
  doc["closure_dims"] = report.closure_dims;
  doc["labels"] = report.labels;
  doc["blockade_feasible"] = report.blockade_feasible;
  emit(doc.dump(2), opts.out_path);
  return 0;
}

int run_steady(const CommonOptions& opts) {
  const ModelConfig config = load_model_config(opts.config_path);
  const SteadyState solved = solve_steady_state(build_liouvillian(config.model));

  json doc;
  doc["dim"] = config.model.dim;
  doc["rho"] = rho_to_json(solved.rho.entries());
  doc["residual"] = solved.residual;
  doc["null_gap"] = solved.null_gap;
  doc["trace_error"] = solved.rho.trace_error();
  const Eigen::VectorXd eigs = solved.rho.eigenvalues();
  doc["eigenvalues"] = std::vector<double>(eigs.data(), eigs.data() + eigs.size());
  doc["min_eigenvalue"] = eigs.minCoeff();
  emit(doc.dump(2), opts.out_path);
  return 0;
}

int run_sync(const CommonOptions& opts) {
  const ModelConfig config = load_model_config(opts.config_path);
  const CoherentFamily family = config_family(config);
  const Quadrature quad = make_quadrature(family, quad_theta_nodes(opts, config),
                                          phase_grid_size(opts, config, family));
  const ZMatrix z = z_matrix(family, quad);
  const SteadyState solved = solve_steady_state(build_liouvillian(config.model));
  const SyncResult sync = sync_max(family, z, solved.rho, quad.phase_grid);

  json doc;
  doc["S_max"] = sync.max_abs;
  doc["argmax"] = std::vector<double>(sync.argmax.data(),
                                      sync.argmax.data() + sync.argmax.size());
  doc["l1"] = l1_coherence(solved.rho);
  doc["rel_entropy"] = rel_entropy_sync(solved.rho).value;
  json residuals = json::array();
  for (const auto& group : blockade_residual(family, z, solved.rho)) {
    residuals.push_back(group.residual);
  }
  doc["residuals"] = residuals;
  doc["solver"] = {{"residual", solved.residual},
                   {"trace_error", solved.rho.trace_error()},
                   {"min_eigenvalue", solved.rho.min_eigenvalue()}};
  emit(doc.dump(2), opts.out_path);
  return 0;
}

int run_qfunc(const CommonOptions& opts, int grid_theta, int grid_phi) {
  if (grid_theta < 2 || grid_phi < 2) {
    throw ConfigError("qfunc: grid resolutions must be at least 2");
  }
  const ModelConfig config = load_model_config(opts.config_path);
  const CoherentFamily family = config_family(config);
  const SteadyState solved = solve_steady_state(build_liouvillian(config.model));

  std::ostringstream out;
  for (int a = 0; a < family.n_theta; ++a) {
    out << "theta_" << a + 1 << ",";
  }
  for (int p = 0; p < family.n_phases; ++p) {
    out << "phi_" << p + 1 << ",";
  }
  out << "Q,Q_offdiag\n";

  char buffer[40];
  const auto write_value = [&](double v, char sep) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    out << buffer << sep;
  };

  std::vector<int> sizes;
  for (int a = 0; a < family.n_theta; ++a) {
    sizes.push_back(grid_theta);
  }
  for (int p = 0; p < family.n_phases; ++p) {
    sizes.push_back(grid_phi);
  }
  std::vector<int> index(sizes.size(), 0);
  Eigen::VectorXd theta(family.n_theta);
  Eigen::VectorXd phi(family.n_phases);
  while (true) {
    for (int a = 0; a < family.n_theta; ++a) {
      const auto [lo, hi] = family.theta_domain[a];
      theta(a) = lo + (hi - lo) * index[a] / (grid_theta - 1);
    }
    for (int p = 0; p < family.n_phases; ++p) {
      phi(p) = 2.0 * kPi * index[family.n_theta + p] / grid_phi;
    }
    for (int a = 0; a < family.n_theta; ++a) {
      write_value(theta(a), ',');
    }
    for (int p = 0; p < family.n_phases; ++p) {
      write_value(phi(p), ',');
    }
    write_value(q_function(family, solved.rho, theta, phi), ',');
    write_value(q_function_offdiag(family, solved.rho, theta, phi), '\n');

    int axis = static_cast<int>(sizes.size()) - 1;
    while (axis >= 0) {
      if (++index[axis] < sizes[axis]) {
        break;
      }
      index[axis] = 0;
      --axis;
    }
    if (axis < 0) {
      break;
    }
  }
  emit(out.str(), opts.out_path);
  return 0;
}

SweepSpec parse_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read sweep spec '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("sweep spec must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "model" && key != "axes" && key != "fixed" && key != "measures" &&
        key != "family" && key != "quadrature" && key != "workers") {
      throw ConfigError("sweep spec: unknown field '" + key + "'");
    }
  }
  SweepSpec spec;
  if (!doc.contains("model") || !doc["model"].is_string()) {
    throw ConfigError("sweep spec: string field 'model' is required");
  }
  spec.model = doc["model"].get<std::string>();
  if (!doc.contains("family") || !doc["family"].is_string()) {
    throw ConfigError("sweep spec: string field 'family' is required");
  }
  spec.family = doc["family"].get<std::string>();
  if (!doc.contains("axes") || !doc["axes"].is_array() || doc["axes"].empty()) {
    throw ConfigError("sweep spec: nonempty array 'axes' is required");
  }
  for (const json& axis : doc["axes"]) {
    if (!axis.is_object()) {
      throw ConfigError("sweep spec: each axis must be an object");
    }
    for (const auto& [key, value] : axis.items()) {
      (void)value;
      if (key != "name" && key != "min" && key != "max" && key != "count" &&
          key != "scale") {
        throw ConfigError("sweep spec axis: unknown field '" + key + "'");
      }
    }
    SweepAxis parsed;
    if (!axis.contains("name") || !axis["name"].is_string() ||
        !axis.contains("min") || !axis["min"].is_number() ||
        !axis.contains("max") || !axis["max"].is_number() ||
        !axis.contains("count") || !axis["count"].is_number_integer()) {
      throw ConfigError(
          "sweep spec axis: fields 'name', 'min', 'max', 'count' are required");
    }
    parsed.name = axis["name"].get<std::string>();
    parsed.min = axis["min"].get<double>();
    parsed.max = axis["max"].get<double>();
    parsed.count = axis["count"].get<int>();
    if (axis.contains("scale")) {
      const std::string scale = axis["scale"].get<std::string>();
      if (scale != "linear" && scale != "log") {
        throw ConfigError("sweep spec axis: scale must be 'linear' or 'log'");
      }
      parsed.log_scale = scale == "log";
    }
    spec.axes.push_back(std::move(parsed));
  }
  if (doc.contains("fixed")) {
    if (!doc["fixed"].is_object()) {
      throw ConfigError("sweep spec: 'fixed' must be an object");
    }
    for (const auto& [key, value] : doc["fixed"].items()) {
      if (!value.is_number()) {
        throw ConfigError("sweep spec: fixed parameter '" + key + "' must be numeric");
      }
      spec.fixed.emplace_back(key, value.get<double>());
    }
  }
  if (doc.contains("measures")) {
    if (!doc["measures"].is_array()) {
      throw ConfigError("sweep spec: 'measures' must be an array of strings");
    }
    for (const json& measure : doc["measures"]) {
      if (!measure.is_string()) {
        throw ConfigError("sweep spec: 'measures' must be an array of strings");
      }
      spec.measures.push_back(measure.get<std::string>());
    }
  } else {
    spec.measures = {"S_max", "l1", "rel_entropy", "residuals"};
  }
  if (doc.contains("quadrature")) {
    const json& quad = doc["quadrature"];
    if (!quad.is_object()) {
      throw ConfigError("sweep spec: 'quadrature' must be an object");
    }
    if (quad.contains("theta_nodes")) {
      spec.theta_nodes = quad["theta_nodes"].get<int>();
    }
    if (quad.contains("phase_grid")) {
      spec.phase_grid = quad["phase_grid"].get<int>();
    }
  }
  if (doc.contains("workers")) {
    spec.workers = doc["workers"].get<int>();
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  return spec;
}

int run_sweep_cmd(const std::string& spec_path, const std::string& out_path,
                  const std::string& meta_path, int workers, double threshold,
                  bool threshold_set) {
  SweepSpec spec = parse_sweep_spec(spec_path);
  if (workers > 0) {
    spec.workers = workers;
  }
  SweepTable table = run_sweep(spec);

  if (threshold_set) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), "S_max");
    if (it == table.columns.end()) {
      throw ConfigError("--threshold requires the S_max measure");
    }
    const std::size_t s_col = it - table.columns.begin();
    table.columns.push_back("blockade");
    for (auto& row : table.rows) {
      row.push_back(row[s_col] <= threshold ? 1.0 : 0.0);
    }
  }

  std::ostringstream out;
  write_sweep_csv(table, out);
  emit(out.str(), out_path);
  if (!meta_path.empty()) {
    emit(sweep_metadata_json(table), meta_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify: reduced-resolution end-to-end checks.

struct VerifyReport {
  std::ostringstream out;
  bool ok = true;

  void check(const std::string& name, double residual, double bound) {
    const bool pass = residual <= bound;
    ok = ok && pass;
    char line[160];
    std::snprintf(line, sizeof(line), "%-4s %-44s residual=%.3e bound=%.0e\n",
                  pass ? "ok" : "FAIL", name.c_str(), residual, bound);
    out << line;
  }
};

int run_verify() {
  VerifyReport report;

  // Completeness of every shipped family.
  for (int dim = 2; dim <= 5; ++dim) {
    const CoherentFamily family = make_spin_family(dim);
    const double deviation = verify_completeness(family, make_quadrature(family, 48));
    report.check("completeness spin dim " + std::to_string(dim), deviation, 1e-8);
  }
  {
    const CoherentFamily family = make_su3_family();
    const double deviation = verify_completeness(family, make_quadrature(family, 32));
    report.check("completeness su3", deviation, 1e-8);
  }

  // Overlap matrices against the closed-form coefficients.
  {
    const CoherentFamily family = make_spin_family(3);
    const ZMatrix z = z_matrix(family, make_quadrature(family, 48));
    const double two_nz = 2.0 * family.norm_const * z.values(0, 1);
    report.check("z-matrix spin-1 2Nz_12 vs 3/(8 sqrt 2)",
                 std::abs(two_nz - 3.0 / (8.0 * std::sqrt(2.0))), 1e-10);
  }
  {
    const CoherentFamily family = make_su3_family();
    const ZMatrix z = z_matrix(family, make_quadrature(family, 48));
    double worst = 0.0;
    for (auto [j, k] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
      worst = std::max(worst, std::abs(2.0 * family.norm_const * z.values(j, k) -
                                       1.0 / (8.0 * kPi)));
    }
    report.check("z-matrix su3 2Nz_jk vs 1/(8 pi)", worst, 1e-10);
  }

  // Analytic measure against the direct quadrature route.
  {
    std::mt19937_64 rng(20240901);
    std::normal_distribution<double> normal;
    for (const std::string id : {"spin3", "spin4", "su3"}) {
      const CoherentFamily family =
          id == "su3" ? make_su3_family() : make_spin_family(id == "spin3" ? 3 : 4);
      const Quadrature quad = make_quadrature(family, 48);
      const ZMatrix z = z_matrix(family, quad);
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd g(family.dim, family.dim);
        for (int r = 0; r < family.dim; ++r) {
          for (int c = 0; c < family.dim; ++c) {
            g(r, c) = Complex(normal(rng), normal(rng));
          }
        }
        Eigen::MatrixXcd herm = 0.5 * (g + g.adjoint());
        herm -= (herm.trace() - 1.0) / static_cast<double>(family.dim) *
                Eigen::MatrixXcd::Identity(family.dim, family.dim);
        const DensityMatrix rho(herm);
        Eigen::VectorXd phi(family.n_phases);
        for (int p = 0; p < family.n_phases; ++p) {
          phi(p) = 2.0 * kPi * normal(rng);
        }
        worst = std::max(worst,
                         std::abs(sync_measure(family, z, rho, phi) -
                                  sync_measure_direct(family, rho, phi, quad)));
      }
      report.check("oracle equivalence " + id, worst, 1e-10);
    }
  }

  // Lie closure on unequal-gap chains.
  for (int dim = 2; dim <= 5; ++dim) {
    std::vector<Operator> generators;
    Operator diag = Operator::Zero(dim, dim);
    for (int level = 0; level < dim; ++level) {
      diag(level, level) = level + 0.15 * level * level;
    }
    generators.push_back(diag);
    for (int level = 1; level < dim; ++level) {
      generators.push_back(transition_op(dim, level, level + 1) +
                           transition_op(dim, level + 1, level));
    }
    const LieClosure closure = lie_closure(generators, dim * dim - 1);
    report.check("closure chain dim " + std::to_string(dim),
                 std::abs(closure.dimension - (dim * dim - 1)), 0.0);
  }
  {
    const SpinOperators spin = spin_operators(4);
    const LieClosure closure = lie_closure({spin.sz, spin.sx}, 15);
    report.check("closure {Sz, Sx} dim 4", std::abs(closure.dimension - 3), 0.0);
  }

  // Spin-1 blockade point: the adjacent-coherence group cancels.
  {
    const LindbladModel model = spin1_model(0.0, 0.01, 0.1, 0.1);
    const SteadyState solved = solve_steady_state(build_liouvillian(model));
    const CoherentFamily family = make_spin_family(3);
    const ZMatrix z = z_matrix(family, make_quadrature(family, 48));
    double group_residual = 0.0;
    for (const auto& group : blockade_residual(family, z, solved.rho)) {
      if (group.pairs.size() >= 2) {
        group_residual = group.residual;
      }
    }
    report.check("spin-1 blockade group residual", group_residual, 1e-9);
    report.check("spin-1 blockade coherence sum",
                 std::abs(solved.rho.entries()(0, 1) + solved.rho.entries()(1, 2)),
                 1e-9);
  }

  std::cout << report.out.str();
  std::cout << (report.ok ? "verify: all checks passed\n"
                          : "verify: FAILURES above\n");
  return report.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady states, symmetries and synchronization measures of "
               "driven-dissipative finite-level systems"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions symmetry_opts;
  bool include_drives = false;
  bool include_dissipators = false;
  CLI::App* symmetry = app.add_subcommand(
      "symmetry", "connectivity blocks, Lie closure and blockade feasibility");
  add_common(symmetry, &symmetry_opts, false);
  symmetry->add_flag("--include-drives", include_drives,
                     "count drive terms toward the closure");
  symmetry->add_flag("--include-dissipators", include_dissipators,
                     "count jump-operator transitions toward the closure");

  CommonOptions steady_opts;
  CLI::App* steady = app.add_subcommand("steady", "steady state of the model");
  add_common(steady, &steady_opts, false);

  CommonOptions sync_opts;
  CLI::App* sync = app.add_subcommand(
      "sync", "synchronization measures of the steady state");
  add_common(sync, &sync_opts, true);

  CommonOptions qfunc_opts;
  int grid_theta = 60;
  int grid_phi = 120;
  CLI::App* qfunc = app.add_subcommand("qfunc", "Q-function grid (CSV)");
  add_common(qfunc, &qfunc_opts, false);
  qfunc->add_option("--grid-theta", grid_theta, "grid points per population angle");
  qfunc->add_option("--grid-phi", grid_phi, "grid points per free phase");

  std::string sweep_spec_path;
  std::string sweep_out;
  std::string sweep_meta;
  int sweep_workers = 0;
  double threshold = 0.0;
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep (CSV)");
  sweep->add_option("--config", sweep_spec_path, "sweep spec JSON path")->required();
  sweep->add_option("--out", sweep_out, "CSV output path (default: stdout)");
  sweep->add_option("--meta", sweep_meta, "JSON metadata sidecar path");
  sweep->add_option("--workers", sweep_workers, "concurrent grid workers");
  CLI::Option* threshold_opt =
      sweep->add_option("--threshold", threshold,
                        "append a blockade column marking S_max <= threshold");

  CLI::App* verify =
      app.add_subcommand("verify", "reduced-resolution self checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForVersion& version) {
    return app.exit(version);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  try {
    if (symmetry->parsed()) {
      return run_symmetry(symmetry_opts, include_drives, include_dissipators);
    }
    if (steady->parsed()) {
      return run_steady(steady_opts);
    }
    if (sync->parsed()) {
      return run_sync(sync_opts);
    }
    if (qfunc->parsed()) {
      return run_qfunc(qfunc_opts, grid_theta, grid_phi);
    }
    if (sweep->parsed()) {
      return run_sweep_cmd(sweep_spec_path, sweep_out, sweep_meta, sweep_workers,
                           threshold, threshold_opt->count() > 0);
    }
    if (verify->parsed()) {
      return run_verify();
    }
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const NumericalError& err) {
    std::cerr << "numerical error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
