#pragma once

#include <string>
#include <vector>

#include "qsync/coherent.hpp"
#include "qsync/lindblad.hpp"
#include "qsync/operators.hpp"

namespace qsync {

/// Symmetry classification of a model: connectivity blocks of the level
/// graph, dynamical Lie-algebra closure dimension per block, a subgroup
/// label and a blockade-feasibility verdict per block.
struct AlgebraReport {
  std::vector<std::vector<int>> blocks;  // 1-based level indices, disjoint cover
  std::vector<int> block_dims;
  std::vector<int> closure_dims;  // traceless part only
  std::vector<std::string> labels;
  std::vector<bool> blockade_feasible;
};

/// Connected components of the level graph with an edge (j, k) whenever any
/// generator has |entry(j, k)| > 1e-12. With no generators every level is
/// its own block. Levels are 1-based.
std::vector<std::vector<int>> connectivity_blocks(int dim,
                                                  const std::vector<Operator>& generators);

struct LieClosure {
  int dimension = 0;
  std::vector<Operator> basis;  // Frobenius-orthonormal, traceless
};

/// Closure of the Hermitian generator set under i[A, B]: repeatedly adjoins
/// commutators of basis pairs and re-orthonormalizes until the dimension
/// stops growing. The identity component is projected out first, so the
/// result compares against dim^2 - 1. Throws ClosureOverflowError if the
/// basis exceeds max_dim.
LieClosure lie_closure(const std::vector<Operator>& generators, int max_dim);

struct PhaseIndependence {
  int n_terms = 0;        // C(dim, 2) coherence terms
  int n_independent = 0;  // distinct nonzero phase-difference vectors
  bool feasible = false;  // some difference vector repeats
};

/// Counts the distinct free-phase dependencies of the family's coherence
/// terms. Blockade is feasible only when at least two terms share the same
/// dependence and can cancel interferometrically.
PhaseIndependence phase_independence(const CoherentFamily& family);

struct AnalyzeOptions {
  /// Count Hamiltonian terms flagged as drives toward the closure.
  bool include_drives = false;
  /// Count the Hermitian components of jump operators toward the closure,
  /// treating bath-induced transitions as part of the realized algebra.
  bool include_dissipators = false;
};

/// Full symmetry analysis of a model. Connectivity uses every Hamiltonian
/// term and jump operator; the per-block closure uses the bare Hamiltonian
/// terms unless the options add drives or dissipator transitions. The
/// headline blockade_feasible is the phase-counting verdict of the family
/// restricted to the block when a family is supplied, otherwise the
/// algebraic verdict closure_dim < block_dim^2 - 1.
AlgebraReport analyze(const LindbladModel& model,
                      const CoherentFamily* family = nullptr,
                      const AnalyzeOptions& options = {});

/// Subgroup label for a block: "full su(N)", "su(2) in dim N", "u(1)" for
/// singleton blocks, otherwise "subalgebra dim d".
std::string algebra_label(int closure_dim, int block_dim);

}  // namespace qsync
