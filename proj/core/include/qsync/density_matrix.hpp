#pragma once

#include <Eigen/Dense>

namespace qsync {

/// Density matrix with polar accessors for the off-diagonal entries,
/// rho_jk = magnitude(j,k) * exp(-i * phase(j,k)). Construction stores the
/// entries as given; validate() enforces Hermiticity, unit trace and
/// positivity at the project tolerances.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  /// |rho_jk| with 1-based level indices.
  double magnitude(int j, int k) const;
  /// Polar phase chi_jk of rho_jk = |rho_jk| e^{-i chi_jk}, 1-based indices.
  double phase(int j, int k) const;

  double trace_error() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  Eigen::VectorXd eigenvalues() const;

  /// Throws NumericalError when the state violates the invariants:
  /// Hermitian to hermitian_tol, unit trace to trace_tol, and smallest
  /// eigenvalue >= eigen_floor. Violations are reported, never clipped.
  void validate(double hermitian_tol = 1e-10, double trace_tol = 1e-10,
                double eigen_floor = -1e-9) const;

 private:
  Eigen::MatrixXcd entries_;
};

/// diag(populations) as a state; populations are normalized to unit sum.
DensityMatrix diagonal_state(const Eigen::VectorXd& populations);

}  // namespace qsync
