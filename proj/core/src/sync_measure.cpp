#include "qsync/sync_measure.hpp"

#include "qsync/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsync {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;

void require_state_dim(const CoherentFamily& family, const DensityMatrix& rho) {
  if (family.dim != rho.dim()) {
    throw std::invalid_argument("sync measure: family/state dimension mismatch");
  }
}

struct Harmonic {
  Eigen::VectorXd diff;
  Complex amplitude;  // sum_group z_jk rho_jk, pairs oriented to +diff
};

std::vector<Harmonic> harmonics(const CoherentFamily& family, const ZMatrix& z,
                                const DensityMatrix& rho) {
  std::vector<Harmonic> result;
  for (const PhaseGroup& group : phase_groups(family)) {
    Complex amplitude = 0.0;
    for (const auto& [j, k] : group.pairs) {
      amplitude += z.values(j - 1, k - 1) * rho.entries()(j - 1, k - 1);
    }
    result.push_back(Harmonic{group.diff, amplitude});
  }
  return result;
}

double eval_harmonics(const std::vector<Harmonic>& terms, double scale,
                      const Eigen::VectorXd& phases) {
  double total = 0.0;
  for (const Harmonic& h : terms) {
    const double angle = h.diff.dot(phases);
    total += std::real(h.amplitude * std::exp(Complex(0.0, angle)));
  }
  return scale * total;
}

/// Golden-section maximization of f on [lo, hi] down to interval width tol.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol, double* arg) {
  double a = lo;
  double b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  const double best = 0.5 * (a + b);
  if (arg != nullptr) {
    *arg = best;
  }
  return f(best);
}

}  // namespace

ZMatrix z_matrix(const CoherentFamily& family, const Quadrature& quad) {
  ZMatrix z;
  z.values = Eigen::MatrixXd::Zero(family.dim, family.dim);
  z.theta_nodes = static_cast<int>(quad.theta_nodes.front().size());
  for_each_theta_node(family, quad, [&](const Eigen::VectorXd& theta, double wt) {
    const Eigen::VectorXd r = family.amplitude(theta);
    z.values += wt * (r * r.transpose());
  });
  return z;
}

double sync_measure(const CoherentFamily& family, const ZMatrix& z,
                    const DensityMatrix& rho, const Eigen::VectorXd& phases) {
  require_state_dim(family, rho);
  if (phases.size() != family.n_phases) {
    throw std::invalid_argument("sync_measure: wrong number of phases");
  }
  double total = 0.0;
  for (int j = 0; j < family.dim; ++j) {
    for (int k = j + 1; k < family.dim; ++k) {
      const Eigen::VectorXd diff =
          family.phase_coeffs.row(j) - family.phase_coeffs.row(k);
      const double angle = diff.dot(phases);
      total += z.values(j, k) *
               std::real(rho.entries()(j, k) * std::exp(Complex(0.0, angle)));
    }
  }
  return 2.0 * family.norm_const * total;
}

double sync_measure_direct(const CoherentFamily& family, const DensityMatrix& rho,
                           const Eigen::VectorXd& phases, const Quadrature& quad) {
  require_state_dim(family, rho);
  double integral = 0.0;
  for_each_theta_node(family, quad, [&](const Eigen::VectorXd& theta, double wt) {
    integral += wt * q_function(family, rho, theta, phases);
  });
  return integral - std::pow(1.0 / (2.0 * kPi), family.n_phases);
}

SyncResult sync_max(const CoherentFamily& family, const ZMatrix& z,
                    const DensityMatrix& rho, int phase_grid_size) {
  require_state_dim(family, rho);
  const int minimum = min_phase_grid(family);
  if (phase_grid_size < minimum) {
    throw std::invalid_argument("sync_max: phase grid " +
                                std::to_string(phase_grid_size) +
                                " below the resolution minimum " +
                                std::to_string(minimum));
  }
  const std::vector<Harmonic> terms = harmonics(family, z, rho);
  const double scale = 2.0 * family.norm_const;

  SyncResult result;
  result.constant = std::pow(1.0 / (2.0 * kPi), family.n_phases);
  result.argmax = Eigen::VectorXd::Zero(family.n_phases);

  const int n = family.n_phases;
  std::vector<int> index(n, 0);
  Eigen::VectorXd phi(n);
  Eigen::VectorXd best_phi = Eigen::VectorXd::Zero(n);
  double best = -1.0;
  // Grid scan; ties resolve to the lowest grid index for determinism.
  while (true) {
    for (int p = 0; p < n; ++p) {
      phi(p) = 2.0 * kPi * index[p] / phase_grid_size;
    }
    const double value = std::abs(eval_harmonics(terms, scale, phi));
    if (value > best) {
      best = value;
      best_phi = phi;
    }
    int axis = n - 1;
    while (axis >= 0) {
      if (++index[axis] < phase_grid_size) {
        break;
      }
      index[axis] = 0;
      --axis;
    }
    if (axis < 0) {
      break;
    }
  }

  // Local per-coordinate golden-section refinement around the grid maximum.
  const double spacing = 2.0 * kPi / phase_grid_size;
  phi = best_phi;
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double before = best;
    for (int p = 0; p < n; ++p) {
      double arg = phi(p);
      const double value = golden_max(
          [&](double t) {
            Eigen::VectorXd probe = phi;
            probe(p) = t;
            return std::abs(eval_harmonics(terms, scale, probe));
          },
          phi(p) - spacing, phi(p) + spacing, 1e-12, &arg);
      if (value > best) {
        best = value;
        phi(p) = arg;
      }
    }
    if (best - before <= 1e-16 + 1e-12 * best) {
      break;
    }
  }

  result.max_abs = best;
  result.argmax = phi;
  result.value = eval_harmonics(terms, scale, phi);
  return result;
}

double l1_coherence(const DensityMatrix& rho) {
  double total = 0.0;
  for (int j = 0; j < rho.dim(); ++j) {
    for (int k = 0; k < rho.dim(); ++k) {
      if (j != k) {
        total += std::abs(rho.entries()(j, k));
      }
    }
  }
  return total;
}

RelEntropySync rel_entropy_sync(const DensityMatrix& rho) {
  constexpr double kFloor = 1e-14;
  const Eigen::MatrixXcd hermitized =
      0.5 * (rho.entries() + rho.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitized);

  double entropy_full = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = std::max(solver.eigenvalues()(i), kFloor);
    entropy_full -= lambda * std::log(lambda);
  }
  double entropy_diag = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    const double p = std::max(std::real(rho.entries()(i, i)), kFloor);
    entropy_diag -= p * std::log(p);
  }

  RelEntropySync result;
  result.value = std::max(0.0, entropy_diag - entropy_full);
  result.minimizer = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  result.minimizer.diagonal() = rho.entries().diagonal().real().cast<Complex>();
  return result;
}

double trace_distance_sync(const DensityMatrix& rho, double tol) {
  const int dim = rho.dim();
  Eigen::VectorXd s = rho.entries().diagonal().real().cwiseMax(0.0);
  if (s.sum() <= 0.0) {
    s = Eigen::VectorXd::Constant(dim, 1.0);
  }
  s /= s.sum();

  const auto distance = [&](const Eigen::VectorXd& diag) {
    Eigen::MatrixXcd delta = rho.entries();
    delta.diagonal() -= diag.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        Eigen::MatrixXcd(0.5 * (delta + delta.adjoint())));
    return solver.eigenvalues().cwiseAbs().sum();
  };

  double current = distance(s);
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double before = current;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i == j) {
          continue;
        }
        // Move mass t from component i to component j; the objective is
        // convex along the segment, so golden-section works.
        double arg = 0.0;
        const double value = golden_max(
            [&](double t) {
              Eigen::VectorXd probe = s;
              probe(i) -= t;
              probe(j) += t;
              return -distance(probe);
            },
            0.0, s(i), 1e-12, &arg);
        if (-value < current) {
          current = -value;
          s(i) -= arg;
          s(j) += arg;
        }
      }
    }
    if (before - current < tol * 0.01) {
      break;
    }
  }
  return current;
}

std::vector<GroupResidual> blockade_residual(const CoherentFamily& family,
                                             const ZMatrix& z,
                                             const DensityMatrix& rho) {
  require_state_dim(family, rho);
  std::vector<GroupResidual> residuals;
  for (const PhaseGroup& group : phase_groups(family)) {
    Complex amplitude = 0.0;
    for (const auto& [j, k] : group.pairs) {
      amplitude += z.values(j - 1, k - 1) * rho.entries()(j - 1, k - 1);
    }
    residuals.push_back(GroupResidual{group.diff, group.pairs, std::abs(amplitude)});
  }
  return residuals;
}

double composite_sync(const std::vector<CompositeBlock>& blocks,
                      const std::vector<Eigen::VectorXd>& phases) {
  if (blocks.size() != phases.size()) {
    throw std::invalid_argument("composite_sync: one phase vector per block required");
  }
  double weight_sum = 0.0;
  for (const auto& block : blocks) {
    weight_sum += block.weight;
  }
  if (std::abs(weight_sum - 1.0) > 1e-10) {
    throw std::invalid_argument("composite_sync: block weights must sum to 1, got " +
                                std::to_string(weight_sum));
  }
  double total = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    total += blocks[b].weight *
             sync_measure(blocks[b].family, blocks[b].z, blocks[b].state, phases[b]);
  }
  return total;
}

double composite_sync_max(const std::vector<CompositeBlock>& blocks,
                          int phase_grid_size) {
  double weight_sum = 0.0;
  for (const auto& block : blocks) {
    weight_sum += block.weight;
  }
  if (std::abs(weight_sum - 1.0) > 1e-10) {
    throw std::invalid_argument("composite_sync_max: block weights must sum to 1");
  }
  double total = 0.0;
  for (const auto& block : blocks) {
    const int grid = std::max(phase_grid_size, min_phase_grid(block.family));
    total += block.weight *
             sync_max(block.family, block.z, block.state, grid).max_abs;
  }
  return total;
}

Eigen::MatrixXd harmonic_gram(const CoherentFamily& family,
                              const std::vector<double>& group_phases,
                              int grid_per_phase) {
  std::vector<Eigen::VectorXd> diffs;
  for (const PhaseGroup& group : phase_groups(family)) {
    if (group.diff.cwiseAbs().maxCoeff() > 1e-9) {
      diffs.push_back(group.diff);
    }
  }
  if (group_phases.size() != diffs.size()) {
    throw std::invalid_argument("harmonic_gram: one phase offset per nonzero group");
  }
  const int m = static_cast<int>(diffs.size());
  const int n = family.n_phases;

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  std::vector<int> index(n, 0);
  Eigen::VectorXd phi(n);
  Eigen::VectorXd values(m);
  long count = 0;
  while (true) {
    for (int p = 0; p < n; ++p) {
      phi(p) = 2.0 * kPi * index[p] / grid_per_phase;
    }
    for (int a = 0; a < m; ++a) {
      values(a) = std::cos(diffs[a].dot(phi) - group_phases[a]);
    }
    gram += values * values.transpose();
    ++count;
    int axis = n - 1;
    while (axis >= 0) {
      if (++index[axis] < grid_per_phase) {
        break;
      }
      index[axis] = 0;
      --axis;
    }
    if (axis < 0) {
      break;
    }
  }
  return gram / static_cast<double>(count);
}

}  // namespace qsync
