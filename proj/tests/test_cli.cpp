#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kCli = QSYNC_CLI_PATH;
const std::string kConfigs = QSYNC_CONFIG_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string command = kCli + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) {
    output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = output;
  return result;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("qsync_test_" + name);
}

}  // namespace

TEST_CASE("steady command emits the state with diagnostics") {
  const RunResult result =
      run("steady --config " + kConfigs + "/spin1_blockade.json");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc["dim"] == 3);
  CHECK(doc["residual"].get<double>() <= 1e-10);
  CHECK(doc["min_eigenvalue"].get<double>() >= -1e-9);
  REQUIRE(doc["rho"].size() == 3);
  // Middle level holds nearly all population at these parameters.
  CHECK(doc["rho"][1][1][0].get<double>() > 0.9);
}

TEST_CASE("sync command reports the blockade signature") {
  const RunResult result = run("sync --config " + kConfigs + "/spin1_blockade.json");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  REQUIRE(doc.contains("S_max"));
  REQUIRE(doc.contains("argmax"));
  REQUIRE(doc.contains("l1"));
  REQUIRE(doc.contains("rel_entropy"));
  REQUIRE(doc.contains("residuals"));
  CHECK(doc["l1"].get<double>() >= 1e-4);
  // Adjacent-coherence group cancels at the equal-rate blockade point.
  CHECK(doc["residuals"][0].get<double>() <= 1e-9);
}

TEST_CASE("symmetry verdicts for the shipped fixtures") {
  SECTION("spin-1 system supports blockade") {
    const RunResult result =
        run("symmetry --config " + kConfigs + "/spin1_blockade.json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc["blockade_feasible"][0].get<bool>());
  }

  SECTION("thermal three-level system does not") {
    const RunResult result =
        run("symmetry --config " + kConfigs + "/su3_thermal.json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK_FALSE(doc["blockade_feasible"][0].get<bool>());
    CHECK(doc["block_dims"][0] == 3);
  }

  SECTION("composite generator set splits into two blocks") {
    const RunResult result =
        run("symmetry --config " + kConfigs + "/composite_two_block.json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    REQUIRE(doc["blocks"].size() == 2);
    CHECK(doc["closure_dims"][0] == 15);
    CHECK(doc["closure_dims"][1] == 3);
    CHECK(doc["blockade_feasible"][0] == false);
    CHECK(doc["blockade_feasible"][1] == true);
  }
}

TEST_CASE("malformed input exits with code 2 and writes nothing") {
  const fs::path bad = temp_file("bad.json");
  std::ofstream(bad) << "{ \"dim\": 3, ";
  const fs::path out = temp_file("bad_out.json");
  fs::remove(out);
  const RunResult result =
      run("steady --config " + bad.string() + " --out " + out.string());
  CHECK(result.exit_code == 2);
  CHECK_FALSE(fs::exists(out));
  fs::remove(bad);
}

TEST_CASE("numerical failure exits with code 1") {
  const fs::path degenerate = temp_file("degenerate.json");
  std::ofstream(degenerate) << R"({
    "dim": 2,
    "hamiltonian": [{"op": "Sz", "coeff": 1.0}]
  })";
  const RunResult result = run("steady --config " + degenerate.string());
  CHECK(result.exit_code == 1);
  fs::remove(degenerate);
}

TEST_CASE("qfunc grid has the requested resolution") {
  const fs::path out = temp_file("qfunc.csv");
  const RunResult result =
      run("qfunc --config " + kConfigs + "/spin1_blockade.json --grid-theta 12 " +
          "--grid-phi 8 --out " + out.string());
  REQUIRE(result.exit_code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta_1,phi_1,Q,Q_offdiag");
  int rows = 0;
  double q_min = 1e100;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string cell;
    for (int i = 0; i < 3; ++i) {
      std::getline(fields, cell, ',');
    }
    q_min = std::min(q_min, std::stod(cell));
  }
  CHECK(rows == 12 * 8);
  CHECK(q_min >= -1e-12);
  fs::remove(out);
}

TEST_CASE("a 1x1 sweep matches the sync command") {
  const fs::path spec = temp_file("sweep_spec.json");
  std::ofstream(spec) << R"({
    "model": "spin1",
    "family": "spin",
    "axes": [{"name": "gamma_g", "min": 0.1, "max": 0.1, "count": 1}],
    "fixed": {"Delta": 0.0, "epsilon": 0.01, "gamma_d": 0.05},
    "measures": ["S_max", "l1", "rel_entropy", "residuals"]
  })";
  const fs::path csv = temp_file("sweep.csv");
  const fs::path meta = temp_file("sweep_meta.json");
  const RunResult sweep = run("sweep --config " + spec.string() + " --out " +
                              csv.string() + " --meta " + meta.string());
  REQUIRE(sweep.exit_code == 0);

  const fs::path model = temp_file("point.json");
  std::ofstream(model) << R"({
    "dim": 3,
    "hamiltonian": [
      {"op": "Sz", "coeff": 0.0},
      {"op": "Sy", "coeff": 0.01, "drive": true}
    ],
    "dissipators": [
      {"op": [[0,0,0],[0,0,[-1.4142135623730951,0]],[0,0,0]], "rate": 0.1},
      {"op": [[0,0,0],[[1.4142135623730951,0],0,0],[0,0,0]], "rate": 0.05}
    ],
    "family": "spin"
  })";
  const RunResult sync = run("sync --config " + model.string());
  REQUIRE(sync.exit_code == 0);
  const json sync_doc = json::parse(sync.output);

  std::ifstream in(csv);
  std::string header;
  std::string line;
  std::getline(in, header);  // timestamp comment
  std::getline(in, header);
  std::getline(in, line);
  std::vector<std::string> columns;
  std::vector<std::string> cells;
  for (std::istringstream s(header); std::getline(s, header, ',');) {
    columns.push_back(header);
  }
  for (std::istringstream s(line); std::getline(s, line, ',');) {
    cells.push_back(line);
  }
  REQUIRE(columns.size() == cells.size());
  const auto cell = [&](const std::string& name) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) {
        return std::stod(cells[i]);
      }
    }
    FAIL("missing column " + name);
    return 0.0;
  };
  CHECK(std::abs(cell("S_max") - sync_doc["S_max"].get<double>()) < 1e-12);
  CHECK(std::abs(cell("l1") - sync_doc["l1"].get<double>()) < 1e-12);
  CHECK(std::abs(cell("rel_entropy") - sync_doc["rel_entropy"].get<double>()) <
        1e-12);
  CHECK(std::abs(cell("residual_1") - sync_doc["residuals"][0].get<double>()) <
        1e-12);

  const json meta_doc = json::parse(std::ifstream(meta.string()));
  CHECK(meta_doc["model"] == "spin1");
  CHECK(meta_doc["rows"] == 1);

  for (const auto& path : {spec, csv, meta, model}) {
    fs::remove(path);
  }
}

TEST_CASE("verify subcommand passes on a fresh build") {
  const RunResult result = run("verify");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("FAIL") == std::string::npos);
  CHECK(result.output.find("z-matrix") != std::string::npos);
  CHECK(result.output.find("completeness") != std::string::npos);
}
