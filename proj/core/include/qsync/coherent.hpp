#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsync/density_matrix.hpp"
#include "qsync/quadrature.hpp"

namespace qsync {

/// Coherent-state family |alpha(theta, phi)> resolving the identity under
/// its group Haar measure d_Omega = w(theta) d_theta d_phi. Components
/// factor into nonnegative amplitudes and pure phases,
///   alpha_j = r_j(theta) * exp(-i c_j . phi),
/// with the sign convention exp(-i c_j . phi) fixed project-wide. The
/// global phase is excluded from phi, so only the difference vectors
/// c_j - c_k are observable.
struct CoherentFamily {
  int dim = 0;
  int n_theta = 0;   // population angles
  int n_phases = 0;  // free phases (global phase excluded)
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> amplitude;
  Eigen::MatrixXd phase_coeffs;  // dim rows, n_phases columns; (half-)integers
  std::vector<std::pair<double, double>> theta_domain;
  std::function<double(const Eigen::VectorXd&)> measure_weight;
  double norm_const = 0.0;  // N with N * Vol = dim
  std::string name;
};

/// Spin-j family for j = (dim-1)/2: the rotated extremal state with
/// binomial amplitudes, theta in [0, pi], weight sin(theta) and
/// normalization dim/(4 pi).
CoherentFamily make_spin_family(int dim);

/// SU(3) family for three-level systems: two population angles on
/// [0, pi/2] with the Fubini-Study weight sin^3(t1) cos(t1) sin(t2) cos(t2),
/// two free phases and normalization 6/pi^2.
CoherentFamily make_su3_family();

/// Smallest uniform phase grid that integrates every harmonic the family
/// produces exactly.
int min_phase_grid(const CoherentFamily& family);

/// Gauss-Legendre quadrature per population angle plus a uniform phase grid.
/// phase_grid = 0 selects the default max(4 * dim, minimum required);
/// explicit values below the minimum are rejected.
Quadrature make_quadrature(const CoherentFamily& family, int theta_nodes = 64,
                           int phase_grid = 0);

Eigen::VectorXcd coherent_vector(const CoherentFamily& family,
                                 const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& phi);

/// Husimi Q-function N <alpha|rho|alpha>.
double q_function(const CoherentFamily& family, const DensityMatrix& rho,
                  const Eigen::VectorXd& theta, const Eigen::VectorXd& phi);

/// Q-function of rho with its diagonal zeroed; may be negative.
double q_function_offdiag(const CoherentFamily& family, const DensityMatrix& rho,
                          const Eigen::VectorXd& theta, const Eigen::VectorXd& phi);

/// Max-norm deviation || N * integral |alpha><alpha| d_Omega  -  I ||_max
/// evaluated with the given quadrature.
double verify_completeness(const CoherentFamily& family, const Quadrature& quad);

/// Iterates the population-angle product rule; the callback receives the
/// angle vector and the combined weight (Gauss-Legendre weights times the
/// measure weight w(theta)).
void for_each_theta_node(const CoherentFamily& family, const Quadrature& quad,
                         const std::function<void(const Eigen::VectorXd&, double)>& fn);

/// Coherence pairs (j, k) grouped by their canonical phase-difference
/// vector; pairs are oriented so that c_first - c_second equals the stored
/// difference. Terms in the same group share their free-phase dependence.
struct PhaseGroup {
  Eigen::VectorXd diff;
  std::vector<std::pair<int, int>> pairs;  // 1-based level indices
};

std::vector<PhaseGroup> phase_groups(const CoherentFamily& family);

}  // namespace qsync
