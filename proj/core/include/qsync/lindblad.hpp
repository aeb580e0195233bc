#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qsync/density_matrix.hpp"
#include "qsync/operators.hpp"

namespace qsync {

struct HamiltonianTerm {
  Operator op;
  double coeff = 0.0;  // in units of the model's reference rate
  bool drive = false;  // external drive rather than bare level structure
};

struct Dissipator {
  Operator jump;
  double rate = 0.0;
};

/// Open-system model d rho/dt = -i[H, rho] + sum_k rate_k D[jump_k] rho with
/// H = sum coeff_i * op_i and D[O] rho = O rho O^dag - (1/2){O^dag O, rho}.
struct LindbladModel {
  int dim = 0;
  std::vector<HamiltonianTerm> hamiltonian;
  std::vector<Dissipator> dissipators;

  Operator total_hamiltonian() const;

  /// Throws std::invalid_argument unless all operators share `dim`, every
  /// Hamiltonian term is Hermitian to 1e-10 and all rates are nonnegative.
  void validate() const;
};

/// Column-stacking vectorization, fixed project-wide: vec(A)(i + dim*j) =
/// A(i, j), so vec(A X B) = (B^T kron A) vec(X). All superoperator formulas
/// are written against this convention.
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim);

/// Liouvillian as a dim^2 x dim^2 matrix acting on column-stacked states:
///   L = -i[(I kron H) - (H^T kron I)]
///       + sum_k rate_k [conj(O_k) kron O_k
///                       - (1/2)(I kron O_k^dag O_k) - (1/2)((O_k^dag O_k)^T kron I)].
Eigen::MatrixXcd build_liouvillian(const LindbladModel& model);

struct SteadyStateOptions {
  /// A second singular value below ratio * sigma_max means the null space is
  /// not one-dimensional and the steady state is reported as degenerate.
  double degeneracy_ratio = 1e-8;
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;  // ||L vec(rho)|| / sigma_max(L)
  double null_gap = 0.0;  // second-smallest / largest singular value
};

/// Steady state from the numerical null space of the Liouvillian (full SVD;
/// the smallest singular vector is phase-rotated to positive trace,
/// Hermitized and scaled to unit trace). Throws DegenerateSteadyStateError
/// or TracelessNullVectorError on the corresponding failure modes; the
/// returned state satisfies the DensityMatrix invariants.
SteadyState solve_steady_state(const Eigen::MatrixXcd& liouvillian,
                               const SteadyStateOptions& options = {});

DensityMatrix steady_state(const Eigen::MatrixXcd& liouvillian,
                           const SteadyStateOptions& options = {});

/// Classical fixed-step 4th-order Runge-Kutta integration of the master
/// equation up to t_final. Throws IntegrationInstabilityError when a step
/// produces non-finite entries (reduce dt).
DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho0,
                     double t_final, double dt);

}  // namespace qsync
