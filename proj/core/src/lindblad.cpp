#include "qsync/lindblad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "qsync/errors.hpp"

namespace qsync {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Operator LindbladModel::total_hamiltonian() const {
  Operator h = Operator::Zero(dim, dim);
  for (const auto& term : hamiltonian) {
    h += term.coeff * term.op;
  }
  return h;
}

void LindbladModel::validate() const {
  if (dim < 1) {
    throw std::invalid_argument("LindbladModel: dim must be positive");
  }
  for (const auto& term : hamiltonian) {
    if (term.op.rows() != dim || term.op.cols() != dim) {
      throw std::invalid_argument("LindbladModel: Hamiltonian term has wrong dimension");
    }
    if (!is_hermitian(term.op, 1e-10)) {
      throw std::invalid_argument("LindbladModel: Hamiltonian term is not Hermitian");
    }
  }
  for (const auto& d : dissipators) {
    if (d.jump.rows() != dim || d.jump.cols() != dim) {
      throw std::invalid_argument("LindbladModel: jump operator has wrong dimension");
    }
    if (d.rate < 0.0) {
      throw std::invalid_argument("LindbladModel: negative dissipation rate " +
                                  std::to_string(d.rate));
    }
  }
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& a) {
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw std::invalid_argument("unvectorize: size mismatch");
  }
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Eigen::MatrixXcd build_liouvillian(const LindbladModel& model) {
  model.validate();
  const int dim = model.dim;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  const Operator h = model.total_hamiltonian();

  Eigen::MatrixXcd lio =
      Complex(0, -1) * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& d : model.dissipators) {
    if (d.rate == 0.0) {
      continue;
    }
    const Eigen::MatrixXcd odo = d.jump.adjoint() * d.jump;
    lio += d.rate * (kron(d.jump.conjugate(), d.jump) -
                     0.5 * kron(id, odo) - 0.5 * kron(odo.transpose(), id));
  }
  return lio;
}

SteadyState solve_steady_state(const Eigen::MatrixXcd& liouvillian,
                               const SteadyStateOptions& options) {
  const Eigen::Index n = liouvillian.rows();
  if (n != liouvillian.cols() || n < 1) {
    throw std::invalid_argument("solve_steady_state: Liouvillian must be square");
  }
  const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Eigen::Index>(dim) * dim != n) {
    throw std::invalid_argument("solve_steady_state: size is not a perfect square");
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(liouvillian, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma(0);
  double gap = 1.0;
  if (n > 1 && sigma_max > 0.0) {
    gap = sigma(n - 2) / sigma_max;
    if (gap < options.degeneracy_ratio) {
      throw DegenerateSteadyStateError(
          "steady state is not unique: second singular value ratio " +
          std::to_string(gap) + " below threshold " +
          std::to_string(options.degeneracy_ratio));
    }
  }

  Eigen::VectorXcd null_vec = svd.matrixV().col(n - 1);
  Eigen::MatrixXcd raw = unvectorize(null_vec, dim);
  const Complex trace = raw.trace();
  if (std::abs(trace) < 1e-12) {
    throw TracelessNullVectorError(
        "null vector of the Liouvillian has zero trace and is not a state");
  }
  // Rotate the free global phase so the trace is real and positive before
  // Hermitizing; this keeps the Hermitian part from collapsing.
  raw *= std::conj(trace) / std::abs(trace);
  Eigen::MatrixXcd sym = 0.5 * (raw + raw.adjoint());
  sym /= sym.trace().real();

  SteadyState result;
  result.rho = DensityMatrix(sym);
  result.residual = sigma_max > 0.0
                        ? (liouvillian * vectorize(sym)).norm() / sigma_max
                        : 0.0;
  result.null_gap = gap;
  result.rho.validate();
  return result;
}

DensityMatrix steady_state(const Eigen::MatrixXcd& liouvillian,
                           const SteadyStateOptions& options) {
  return solve_steady_state(liouvillian, options).rho;
}

DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho0,
                     double t_final, double dt) {
  if (dt <= 0.0) {
    throw std::invalid_argument("evolve: dt must be positive");
  }
  if (t_final < 0.0) {
    throw std::invalid_argument("evolve: t_final must be nonnegative");
  }
  if (rho0.dim() != model.dim) {
    throw std::invalid_argument("evolve: state dimension does not match model");
  }
  const Eigen::MatrixXcd lio = build_liouvillian(model);
  Eigen::VectorXcd state = vectorize(rho0.entries());

  const long full_steps = static_cast<long>(t_final / dt);
  const double last = t_final - full_steps * dt;
  for (long step = 0; step <= full_steps; ++step) {
    const double h = step < full_steps ? dt : last;
    if (h <= 0.0) {
      break;
    }
    const Eigen::VectorXcd k1 = lio * state;
    const Eigen::VectorXcd k2 = lio * (state + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = lio * (state + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = lio * (state + h * k3);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!state.allFinite()) {
      throw IntegrationInstabilityError(
          "evolve: non-finite entries at t = " + std::to_string(step * dt) +
          "; reduce dt");
    }
  }
  return DensityMatrix(unvectorize(state, model.dim));
}

}  // namespace qsync
