#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qsync/coherent.hpp"
#include "qsync/density_matrix.hpp"
#include "qsync/quadrature.hpp"

namespace qsync {

/// Population-integrated amplitude overlaps z_jk = integral r_j r_k dOmega_theta.
/// Symmetric with strictly positive entries (coherent states are never
/// orthogonal); the diagonal satisfies N * z_jj = (1/2pi)^n_phases.
struct ZMatrix {
  Eigen::MatrixXd values;
  int theta_nodes = 0;  // quadrature provenance
};

ZMatrix z_matrix(const CoherentFamily& family, const Quadrature& quad);

/// Phase-space synchronization measure at a phase point,
///   S(phi) = 2 N sum_{j<k} R_jk z_jk cos((c_j - c_k).phi - chi_jk),
/// exactly linear in the off-diagonal part of rho.
double sync_measure(const CoherentFamily& family, const ZMatrix& z,
                    const DensityMatrix& rho, const Eigen::VectorXd& phases);

/// Independent quadrature route for the same quantity: integrates the
/// population angles out of the Q-function and subtracts the uniform phase
/// distribution (1/2pi)^n_phases.
double sync_measure_direct(const CoherentFamily& family, const DensityMatrix& rho,
                           const Eigen::VectorXd& phases, const Quadrature& quad);

struct SyncResult {
  double value = 0.0;  // signed S at the reported phase point
  double max_abs = 0.0;
  Eigen::VectorXd argmax;
  double constant = 0.0;  // uniform-distribution constant of the family
};

/// Max |S| over a uniform phase grid, refined by per-coordinate
/// golden-section search. S is a finite trigonometric polynomial, so the
/// grid maximum at the required resolution is within 1e-3 relative of the
/// true maximum and the local refinement tightens it to 1e-10. Grids below
/// 2*max|c_j - c_k| + 1 points per phase are rejected.
SyncResult sync_max(const CoherentFamily& family, const ZMatrix& z,
                    const DensityMatrix& rho, int phase_grid_size);

/// l1 coherence norm sum_{j != k} |rho_jk|.
double l1_coherence(const DensityMatrix& rho);

struct RelEntropySync {
  double value = 0.0;
  Eigen::MatrixXcd minimizer;  // the nearest diagonal limit-cycle state
};

/// Relative-entropy synchronization measure over the diagonal limit-cycle
/// set. The analytic minimizer is diag(rho), giving
/// S(diag(rho)) - S(rho) in natural-log von Neumann entropies; eigenvalues
/// are floored at 1e-14 before logarithms.
RelEntropySync rel_entropy_sync(const DensityMatrix& rho);

/// Trace-distance variant over the same diagonal set, by coordinate descent
/// on the probability simplex. Slower than rel_entropy_sync and optional.
double trace_distance_sync(const DensityMatrix& rho, double tol = 1e-8);

/// Modulus of the complex sum  |sum_group z_jk rho_jk|  per phase group of
/// the family (pairs oriented as in phase_groups). All residuals zero is
/// equivalent to S vanishing identically in the free phases.
struct GroupResidual {
  Eigen::VectorXd diff;
  std::vector<std::pair<int, int>> pairs;  // 1-based, c_first - c_second = diff
  double residual = 0.0;
};

std::vector<GroupResidual> blockade_residual(const CoherentFamily& family,
                                             const ZMatrix& z,
                                             const DensityMatrix& rho);

/// One disconnected block of a composite system: its family, overlap matrix,
/// block-normalized state and trace weight in the global state.
struct CompositeBlock {
  CoherentFamily family;
  ZMatrix z;
  DensityMatrix state;
  double weight = 0.0;
};

/// Weighted sum of per-block measures at independently supplied per-block
/// phases. Weights must sum to 1.
double composite_sync(const std::vector<CompositeBlock>& blocks,
                      const std::vector<Eigen::VectorXd>& phases);

/// Maximum of the composite measure over all per-block phases; equals the
/// weighted sum of per-block maxima because the blocks' phases are
/// independent.
double composite_sync_max(const std::vector<CompositeBlock>& blocks,
                          int phase_grid_size);

/// Gram matrix of the group harmonics cos(d_g . phi - chi_g) over a uniform
/// phase grid, one row per nonzero phase group. Full rank certifies that the
/// measure vanishes only when every group amplitude vanishes.
Eigen::MatrixXd harmonic_gram(const CoherentFamily& family,
                              const std::vector<double>& group_phases,
                              int grid_per_phase);

}  // namespace qsync
