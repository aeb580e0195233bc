#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qsync/errors.hpp"
#include "qsync/lie_algebra.hpp"
#include "qsync/models.hpp"
#include "test_helpers.hpp"

using namespace qsync;

namespace {

Operator chain_coupling(int dim, int level) {
  return transition_op(dim, level, level + 1) + transition_op(dim, level + 1, level);
}

Operator unequal_gap_diagonal(int dim) {
  Operator diag = Operator::Zero(dim, dim);
  for (int level = 0; level < dim; ++level) {
    diag(level, level) = level + 0.15 * level * level;
  }
  return diag;
}

/// Block-diagonal embedding of `a` at the given 1-based offset.
Operator embed(const Operator& a, int dim, int offset) {
  Operator out = Operator::Zero(dim, dim);
  out.block(offset - 1, offset - 1, a.rows(), a.cols()) = a;
  return out;
}

/// Two-block composite: upper unequal-gap chain, lower {Sz, Sx} pair,
/// no cross coupling.
LindbladModel composite_model(int upper_dim, int lower_dim) {
  const int dim = upper_dim + lower_dim;
  LindbladModel model;
  model.dim = dim;
  model.hamiltonian.push_back({embed(unequal_gap_diagonal(upper_dim), dim, 1), 1.0, false});
  for (int level = 1; level < upper_dim; ++level) {
    model.hamiltonian.push_back({embed(chain_coupling(upper_dim, level), dim, 1), 1.0, false});
  }
  const SpinOperators lower = spin_operators(lower_dim);
  model.hamiltonian.push_back({embed(lower.sz, dim, upper_dim + 1), 1.0, false});
  model.hamiltonian.push_back({embed(lower.sx, dim, upper_dim + 1), 1.0, false});
  return model;
}

}  // namespace

TEST_CASE("connectivity blocks") {
  SECTION("chain with one isolated level") {
    std::vector<Operator> generators;
    for (int level = 2; level < 8; ++level) {
      generators.push_back(chain_coupling(8, level));
    }
    const auto blocks = connectivity_blocks(8, generators);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == std::vector{1});
    CHECK(blocks[1] == std::vector{2, 3, 4, 5, 6, 7, 8});
  }

  SECTION("no generators: singleton blocks") {
    const auto blocks = connectivity_blocks(4, {});
    REQUIRE(blocks.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(blocks[i] == std::vector{i + 1});
    }
  }

  SECTION("spin-3/2 Sx couples everything") {
    const auto blocks = connectivity_blocks(4, {spin_operators(4).sx});
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == std::vector{1, 2, 3, 4});
  }
}

TEST_CASE("closure of the nearest-neighbor chain basis") {
  // Counting oracle: (N-1) diagonal gaps plus 2[(N-1) + ... + 1] transition
  // directions close at N^2 - 1.
  for (int dim = 2; dim <= 6; ++dim) {
    int expected = dim - 1;
    for (int k = 1; k <= dim - 1; ++k) {
      expected += 2 * k;
    }
    REQUIRE(expected == dim * dim - 1);

    std::vector<Operator> generators;
    for (int level = 1; level < dim; ++level) {
      generators.push_back(transition_op(dim, level, level) -
                           transition_op(dim, level + 1, level + 1));
      generators.push_back(chain_coupling(dim, level));
    }
    const LieClosure closure = lie_closure(generators, dim * dim - 1);
    CHECK(closure.dimension == expected);
    CHECK(closure.basis.size() == static_cast<std::size_t>(expected));
  }
}

TEST_CASE("unequal-gap chains close to the full algebra") {
  for (int dim = 2; dim <= 6; ++dim) {
    std::vector<Operator> generators{unequal_gap_diagonal(dim)};
    for (int level = 1; level < dim; ++level) {
      generators.push_back(chain_coupling(dim, level));
    }
    const LieClosure closure = lie_closure(generators, dim * dim - 1);
    CHECK(closure.dimension == dim * dim - 1);
  }
}

TEST_CASE("equally spaced spin pair generates only su(2)") {
  const SpinOperators spin = spin_operators(4);
  const LieClosure closure = lie_closure({spin.sz, spin.sx}, 15);
  CHECK(closure.dimension == 3);
}

TEST_CASE("a single generator is abelian") {
  const LieClosure closure = lie_closure({spin_operators(2).sx}, 3);
  CHECK(closure.dimension == 1);
}

TEST_CASE("closure overflow is reported") {
  std::vector<Operator> generators{unequal_gap_diagonal(4)};
  for (int level = 1; level < 4; ++level) {
    generators.push_back(chain_coupling(4, level));
  }
  CHECK_THROWS_AS(lie_closure(generators, 5), ClosureOverflowError);
}

TEST_CASE("closure dimension is basis independent") {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const SpinOperators spin = spin_operators(3);
  const std::vector<Operator> original{spin.sz, spin.sx};
  const int reference = lie_closure(original, 8).dimension;
  for (int trial = 0; trial < 10; ++trial) {
    // Random invertible real recombination of the generators.
    double a = uniform(rng);
    double b = uniform(rng);
    double c = uniform(rng);
    double d = uniform(rng);
    if (std::abs(a * d - b * c) < 0.1) {
      a += 1.0;
    }
    const std::vector<Operator> mixed{a * spin.sz + b * spin.sx,
                                      c * spin.sz + d * spin.sx};
    CHECK(lie_closure(mixed, 8).dimension == reference);
  }
}

TEST_CASE("phase independence counting") {
  SECTION("spin-1: repeated difference") {
    const PhaseIndependence counts = phase_independence(make_spin_family(3));
    CHECK(counts.n_terms == 3);
    CHECK(counts.n_independent == 2);
    CHECK(counts.feasible);
  }

  SECTION("su3: all differences distinct") {
    const PhaseIndependence counts = phase_independence(make_su3_family());
    CHECK(counts.n_terms == 3);
    CHECK(counts.n_independent == 3);
    CHECK_FALSE(counts.feasible);
  }

  SECTION("spin-3/2: three repeated-difference groups") {
    const PhaseIndependence counts = phase_independence(make_spin_family(4));
    CHECK(counts.n_terms == 6);
    CHECK(counts.n_independent == 3);
    CHECK(counts.feasible);
  }
}

TEST_CASE("analyze the two-block composite") {
  const AlgebraReport report = analyze(composite_model(4, 4));
  REQUIRE(report.blocks.size() == 2);
  CHECK(report.block_dims == std::vector{4, 4});
  CHECK(report.closure_dims == std::vector{15, 3});
  CHECK(report.labels == std::vector<std::string>{"full su(4)", "su(2) in dim 4"});
  CHECK(report.blockade_feasible == std::vector{false, true});
}

TEST_CASE("analyze the one-isolated-level composite") {
  LindbladModel model;
  model.dim = 8;
  model.hamiltonian.push_back({embed(unequal_gap_diagonal(7), 8, 2), 1.0, false});
  for (int level = 1; level < 7; ++level) {
    model.hamiltonian.push_back({embed(chain_coupling(7, level), 8, 2), 1.0, false});
  }
  const AlgebraReport report = analyze(model);
  REQUIRE(report.blocks.size() == 2);
  CHECK(report.blocks[0] == std::vector{1});
  CHECK(report.blocks[1].size() == 7);
  CHECK(report.labels[0] == "u(1)");
  CHECK(report.labels[1] == "full su(7)");
  CHECK(report.closure_dims == std::vector{0, 48});
  CHECK_FALSE(report.blockade_feasible[0]);
}

TEST_CASE("analyze the spin-1 model with its family") {
  const LindbladModel model = spin1_model(0.0, 0.01, 0.1, 0.1);
  const CoherentFamily family = make_spin_family(3);
  const AlgebraReport report = analyze(model, &family);
  REQUIRE(report.blocks.size() == 1);
  CHECK(report.block_dims[0] == 3);
  CHECK(report.blockade_feasible[0]);
}

TEST_CASE("analyze the thermal three-level model") {
  const LindbladModel model = su3_thermal_model(0.1, 0.01, 0.1, 0.1, 2.0, 0.1);
  const CoherentFamily family = make_su3_family();

  SECTION("headline verdict with the full-group family") {
    const AlgebraReport report = analyze(model, &family);
    REQUIRE(report.blocks.size() == 1);
    CHECK_FALSE(report.blockade_feasible[0]);
  }

  SECTION("bath and drive transitions realize the full algebra") {
    AnalyzeOptions options;
    options.include_drives = true;
    options.include_dissipators = true;
    const AlgebraReport report = analyze(model, &family, options);
    CHECK(report.closure_dims[0] == 8);
    CHECK(report.labels[0] == "full su(3)");
    CHECK_FALSE(report.blockade_feasible[0]);
  }
}

TEST_CASE("analyze rejects a family of the wrong dimension") {
  const LindbladModel model = spin1_model(0.0, 0.01, 0.1, 0.1);
  const CoherentFamily family = make_spin_family(4);
  CHECK_THROWS_AS(analyze(model, &family), std::invalid_argument);
}
