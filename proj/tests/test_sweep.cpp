#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "qsync/sweep.hpp"
#include "qsync/sync_measure.hpp"

using namespace qsync;

namespace {

SweepSpec spin1_ratio_spec(int ratio_points, int drive_points) {
  SweepSpec spec;
  spec.model = "spin1";
  spec.family = "spin";
  spec.axes = {{"gamma_g/gamma_d", 0.5, 2.0, ratio_points, false},
               {"epsilon/gamma_g", 0.01, 0.2, drive_points, false}};
  spec.fixed = {{"Delta", 0.0}, {"gamma_d", 0.1}};
  spec.measures = {"S_max", "l1"};
  return spec;
}

std::size_t column_index(const SweepTable& table, const std::string& name) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.columns[c] == name) {
      return c;
    }
  }
  FAIL("missing column " + name);
  return 0;
}

}  // namespace

TEST_CASE("one-point sweep equals a direct evaluation") {
  SweepSpec spec;
  spec.model = "spin1";
  spec.family = "spin";
  spec.axes = {{"gamma_g", 0.1, 0.1, 1, false}};
  spec.fixed = {{"Delta", 0.0}, {"epsilon", 0.01}, {"gamma_d", 0.05}};
  spec.measures = {"S_max", "l1", "rel_entropy", "residuals"};
  const SweepTable table = run_sweep(spec);
  REQUIRE(table.rows.size() == 1);
  REQUIRE(table.status[0] == "ok");

  const CoherentFamily family = make_spin_family(3);
  const ZMatrix z = z_matrix(family, make_quadrature(family, 64));
  const DensityMatrix rho =
      steady_state(build_liouvillian(spin1_model(0.0, 0.01, 0.1, 0.05)));
  CHECK(std::abs(table.rows[0][column_index(table, "S_max")] -
                 sync_max(family, z, rho, 12).max_abs) < 1e-14);
  CHECK(std::abs(table.rows[0][column_index(table, "l1")] - l1_coherence(rho)) <
        1e-14);
  CHECK(std::abs(table.rows[0][column_index(table, "residual_1")] -
                 blockade_residual(family, z, rho)[0].residual) < 1e-14);
}

TEST_CASE("sweep output is deterministic apart from the timestamp line") {
  const SweepSpec spec = spin1_ratio_spec(5, 2);
  std::ostringstream first;
  std::ostringstream second;
  write_sweep_csv(run_sweep(spec), first);
  SweepSpec threaded = spec;
  threaded.workers = 4;
  write_sweep_csv(run_sweep(threaded), second);

  std::string line;
  std::istringstream lhs(first.str());
  std::istringstream rhs(second.str());
  std::getline(lhs, line);
  CHECK(line.rfind("# generated ", 0) == 0);
  std::getline(rhs, line);
  std::string a((std::istreambuf_iterator<char>(lhs)), {});
  std::string b((std::istreambuf_iterator<char>(rhs)), {});
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

TEST_CASE("spin-1 ratio sweep minimizes along the equal-rate column") {
  const int ratio_points = 11;
  const int drive_points = 3;
  const SweepTable table = run_sweep(spin1_ratio_spec(ratio_points, drive_points));
  REQUIRE(table.rows.size() == static_cast<std::size_t>(ratio_points * drive_points));

  const std::size_t s_col = column_index(table, "S_max");
  const std::size_t l_col = column_index(table, "l1");

  // Column of the grid nearest to ratio 1.
  int nearest = 0;
  double nearest_distance = 1e100;
  for (int i = 0; i < ratio_points; ++i) {
    const double ratio = 0.5 + 1.5 * i / (ratio_points - 1);
    if (std::abs(ratio - 1.0) < nearest_distance) {
      nearest_distance = std::abs(ratio - 1.0);
      nearest = i;
    }
  }
  for (int e = 0; e < drive_points; ++e) {
    int argmin = -1;
    double minimum = 1e100;
    for (int i = 0; i < ratio_points; ++i) {
      const auto& row = table.rows[i * drive_points + e];
      REQUIRE(table.status[i * drive_points + e] == "ok");
      if (row[s_col] < minimum) {
        minimum = row[s_col];
        argmin = i;
      }
    }
    CHECK(argmin == nearest);
    CHECK(table.rows[argmin * drive_points + e][l_col] >= 1e-5);
  }
}

TEST_CASE("solver failures are recorded per row, not fatal") {
  SweepSpec spec;
  spec.model = "su3";
  spec.family = "su3";
  // gamma_h = gamma_c = 0 leaves a purely Hamiltonian generator with a
  // degenerate null space.
  spec.axes = {{"gamma_h", 0.0, 0.1, 2, false}};
  spec.fixed = {{"epsilon", 0.01}, {"gamma_c", 0.1}, {"n_h", 1.0}, {"n_c", 0.1}};
  spec.fixed.emplace_back("Delta", 0.0);
  SweepSpec degenerate = spec;
  degenerate.fixed = {{"epsilon", 0.01}, {"gamma_c", 0.0},
                      {"n_h", 1.0},     {"n_c", 0.1},
                      {"Delta", 0.0}};
  degenerate.measures = {"S_max"};
  const SweepTable table = run_sweep(degenerate);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.status[0] != "ok");
  CHECK(table.status[1] == "ok");
  const std::size_t s_col = column_index(table, "S_max");
  CHECK(std::isnan(table.rows[0][s_col]));
  CHECK(std::isfinite(table.rows[1][s_col]));
}

TEST_CASE("sweep diagnostics satisfy the solver contract") {
  const SweepTable table = run_sweep(spin1_ratio_spec(5, 2));
  const std::size_t res_col = column_index(table, "solver_residual");
  const std::size_t trace_col = column_index(table, "trace_error");
  const std::size_t eig_col = column_index(table, "min_eigenvalue");
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    REQUIRE(table.status[r] == "ok");
    CHECK(table.rows[r][res_col] <= 1e-10);
    CHECK(table.rows[r][trace_col] <= 1e-10);
    CHECK(table.rows[r][eig_col] >= -1e-9);
  }
}

TEST_CASE("spec validation") {
  SweepSpec spec = spin1_ratio_spec(5, 2);
  spec.axes[0].count = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = spin1_ratio_spec(5, 2);
  spec.axes[0].min = 3.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = spin1_ratio_spec(5, 2);
  spec.axes[0].log_scale = true;
  spec.axes[0].min = -1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = spin1_ratio_spec(5, 2);
  spec.measures = {"S_perp"};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec = spin1_ratio_spec(5, 2);
  spec.model = "bogus";
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  // Unresolvable ratio axis.
  spec = spin1_ratio_spec(3, 2);
  spec.fixed = {{"Delta", 0.0}};
  CHECK_THROWS(run_sweep(spec));
}
