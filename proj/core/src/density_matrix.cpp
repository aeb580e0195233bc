#include "qsync/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsync/errors.hpp"

namespace qsync {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("DensityMatrix: entries must be square");
  }
}

double DensityMatrix::magnitude(int j, int k) const {
  return std::abs(entries_(j - 1, k - 1));
}

double DensityMatrix::phase(int j, int k) const {
  // rho_jk = R e^{-i chi}  =>  chi = -arg(rho_jk)
  return -std::arg(entries_(j - 1, k - 1));
}

double DensityMatrix::trace_error() const {
  return std::abs(entries_.trace() - std::complex<double>(1.0, 0.0));
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      0.5 * (entries_ + entries_.adjoint()));
  return solver.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues().minCoeff(); }

void DensityMatrix::validate(double hermitian_tol, double trace_tol,
                             double eigen_floor) const {
  const double herm = hermiticity_error();
  if (herm > hermitian_tol) {
    throw NumericalError("density matrix is not Hermitian: max deviation " +
                         std::to_string(herm));
  }
  const double trace = trace_error();
  if (trace > trace_tol) {
    throw NumericalError("density matrix trace deviates from 1 by " +
                         std::to_string(trace));
  }
  const double lambda = min_eigenvalue();
  if (lambda < eigen_floor) {
    throw NumericalError("density matrix has negative eigenvalue " +
                         std::to_string(lambda));
  }
}

DensityMatrix diagonal_state(const Eigen::VectorXd& populations) {
  const double total = populations.sum();
  if (total <= 0.0) {
    throw std::invalid_argument("diagonal_state: populations must have positive sum");
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(populations.size(), populations.size());
  for (Eigen::Index i = 0; i < populations.size(); ++i) {
    m(i, i) = populations(i) / total;
  }
  return DensityMatrix(m);
}

}  // namespace qsync
