#include "qsync/coherent.hpp"

#include "qsync/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsync {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 0; i < k; ++i) {
    result *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return result;
}

void require_family_dim(const CoherentFamily& family, const DensityMatrix& rho) {
  if (family.dim != rho.dim()) {
    throw std::invalid_argument("family dimension " + std::to_string(family.dim) +
                                " does not match state dimension " +
                                std::to_string(rho.dim()));
  }
}

double q_value(const CoherentFamily& family, const Eigen::MatrixXcd& rho,
               const Eigen::VectorXd& theta, const Eigen::VectorXd& phi) {
  const Eigen::VectorXcd alpha = coherent_vector(family, theta, phi);
  const Complex value = alpha.dot(rho * alpha);  // <alpha|rho|alpha>
  return family.norm_const * value.real();
}

}  // namespace

CoherentFamily make_spin_family(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("make_spin_family: dim must be >= 2");
  }
  CoherentFamily family;
  family.dim = dim;
  family.n_theta = 1;
  family.n_phases = 1;
  family.name = "spin";
  const double j = 0.5 * (dim - 1);
  family.amplitude = [dim](const Eigen::VectorXd& theta) {
    const double half = 0.5 * theta(0);
    const double c = std::cos(half);
    const double s = std::sin(half);
    Eigen::VectorXd r(dim);
    for (int k = 1; k <= dim; ++k) {
      r(k - 1) = std::sqrt(binomial(dim - 1, k - 1)) *
                 std::pow(c, dim - k) * std::pow(s, k - 1);
    }
    return r;
  };
  family.phase_coeffs = Eigen::MatrixXd(dim, 1);
  for (int k = 1; k <= dim; ++k) {
    family.phase_coeffs(k - 1, 0) = j - (k - 1);
  }
  family.theta_domain = {{0.0, kPi}};
  family.measure_weight = [](const Eigen::VectorXd& theta) {
    return std::sin(theta(0));
  };
  family.norm_const = dim / (4.0 * kPi);
  return family;
}

CoherentFamily make_su3_family() {
  CoherentFamily family;
  family.dim = 3;
  family.n_theta = 2;
  family.n_phases = 2;
  family.name = "su3";
  family.amplitude = [](const Eigen::VectorXd& theta) {
    Eigen::VectorXd r(3);
    r(0) = std::cos(theta(0));
    r(1) = std::cos(theta(1)) * std::sin(theta(0));
    r(2) = std::sin(theta(1)) * std::sin(theta(0));
    return r;
  };
  family.phase_coeffs = Eigen::MatrixXd(3, 2);
  family.phase_coeffs << 0, 0, 1, 0, 0, 1;
  family.theta_domain = {{0.0, 0.5 * kPi}, {0.0, 0.5 * kPi}};
  family.measure_weight = [](const Eigen::VectorXd& theta) {
    const double s1 = std::sin(theta(0));
    return s1 * s1 * s1 * std::cos(theta(0)) * std::sin(theta(1)) *
           std::cos(theta(1));
  };
  family.norm_const = 6.0 / (kPi * kPi);
  return family;
}

int min_phase_grid(const CoherentFamily& family) {
  double max_diff = 0.0;
  for (int j = 0; j < family.dim; ++j) {
    for (int k = j + 1; k < family.dim; ++k) {
      for (int p = 0; p < family.n_phases; ++p) {
        max_diff = std::max(max_diff, std::abs(family.phase_coeffs(j, p) -
                                               family.phase_coeffs(k, p)));
      }
    }
  }
  return 2 * static_cast<int>(std::ceil(max_diff)) + 1;
}

Quadrature make_quadrature(const CoherentFamily& family, int theta_nodes,
                           int phase_grid) {
  if (theta_nodes < 1) {
    throw std::invalid_argument("make_quadrature: need at least one theta node");
  }
  const int minimum = min_phase_grid(family);
  if (phase_grid == 0) {
    phase_grid = std::max(4 * family.dim, minimum);
  }
  if (phase_grid < minimum) {
    throw std::invalid_argument("make_quadrature: phase grid " +
                                std::to_string(phase_grid) +
                                " below the exactness minimum " +
                                std::to_string(minimum));
  }
  Quadrature quad;
  quad.phase_grid = phase_grid;
  for (const auto& [lo, hi] : family.theta_domain) {
    auto [nodes, weights] = gauss_legendre(theta_nodes, lo, hi);
    quad.theta_nodes.push_back(std::move(nodes));
    quad.theta_weights.push_back(std::move(weights));
  }
  return quad;
}

Eigen::VectorXcd coherent_vector(const CoherentFamily& family,
                                 const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& phi) {
  if (theta.size() != family.n_theta || phi.size() != family.n_phases) {
    throw std::invalid_argument("coherent_vector: wrong number of angles");
  }
  const Eigen::VectorXd r = family.amplitude(theta);
  Eigen::VectorXcd alpha(family.dim);
  for (int j = 0; j < family.dim; ++j) {
    const double angle = family.phase_coeffs.row(j).dot(phi);
    alpha(j) = r(j) * std::exp(Complex(0.0, -angle));
  }
  return alpha;
}

double q_function(const CoherentFamily& family, const DensityMatrix& rho,
                  const Eigen::VectorXd& theta, const Eigen::VectorXd& phi) {
  require_family_dim(family, rho);
  return q_value(family, rho.entries(), theta, phi);
}

double q_function_offdiag(const CoherentFamily& family, const DensityMatrix& rho,
                          const Eigen::VectorXd& theta, const Eigen::VectorXd& phi) {
  require_family_dim(family, rho);
  Eigen::MatrixXcd offdiag = rho.entries();
  offdiag.diagonal().setZero();
  return q_value(family, offdiag, theta, phi);
}

void for_each_theta_node(const CoherentFamily& family, const Quadrature& quad,
                         const std::function<void(const Eigen::VectorXd&, double)>& fn) {
  if (static_cast<int>(quad.theta_nodes.size()) != family.n_theta) {
    throw std::invalid_argument("quadrature does not match the family's angle count");
  }
  std::vector<int> index(family.n_theta, 0);
  Eigen::VectorXd theta(family.n_theta);
  while (true) {
    double weight = 1.0;
    for (int a = 0; a < family.n_theta; ++a) {
      theta(a) = quad.theta_nodes[a](index[a]);
      weight *= quad.theta_weights[a](index[a]);
    }
    fn(theta, weight * family.measure_weight(theta));

    int axis = family.n_theta - 1;
    while (axis >= 0) {
      if (++index[axis] < quad.theta_nodes[axis].size()) {
        break;
      }
      index[axis] = 0;
      --axis;
    }
    if (axis < 0) {
      return;
    }
  }
}

double verify_completeness(const CoherentFamily& family, const Quadrature& quad) {
  const int min_grid = min_phase_grid(family);
  if (quad.phase_grid < min_grid) {
    throw std::invalid_argument("verify_completeness: phase grid below minimum");
  }
  const int grid = quad.phase_grid;
  const double phase_weight =
      std::pow(2.0 * kPi / grid, family.n_phases);

  Eigen::MatrixXcd accum = Eigen::MatrixXcd::Zero(family.dim, family.dim);
  std::vector<int> pidx(family.n_phases, 0);
  Eigen::VectorXd phi(family.n_phases);
  for_each_theta_node(family, quad, [&](const Eigen::VectorXd& theta, double wt) {
    std::fill(pidx.begin(), pidx.end(), 0);
    while (true) {
      for (int p = 0; p < family.n_phases; ++p) {
        phi(p) = 2.0 * kPi * pidx[p] / grid;
      }
      const Eigen::VectorXcd alpha = coherent_vector(family, theta, phi);
      accum += (wt * phase_weight) * (alpha * alpha.adjoint());

      int axis = family.n_phases - 1;
      while (axis >= 0) {
        if (++pidx[axis] < grid) {
          break;
        }
        pidx[axis] = 0;
        --axis;
      }
      if (axis < 0) {
        break;
      }
    }
  });

  const Eigen::MatrixXcd deviation =
      family.norm_const * accum - Eigen::MatrixXcd::Identity(family.dim, family.dim);
  return deviation.cwiseAbs().maxCoeff();
}

std::vector<PhaseGroup> phase_groups(const CoherentFamily& family) {
  std::vector<PhaseGroup> groups;
  const double tol = 1e-9;
  for (int j = 0; j < family.dim; ++j) {
    for (int k = j + 1; k < family.dim; ++k) {
      Eigen::VectorXd diff =
          family.phase_coeffs.row(j) - family.phase_coeffs.row(k);
      std::pair<int, int> pair{j + 1, k + 1};
      // Canonical sign: first nonzero component positive. cos is even, so a
      // pair and its reverse share the same harmonic.
      for (int p = 0; p < diff.size(); ++p) {
        if (std::abs(diff(p)) > tol) {
          if (diff(p) < 0.0) {
            diff = -diff;
            pair = {k + 1, j + 1};
          }
          break;
        }
      }
      bool placed = false;
      for (auto& group : groups) {
        if ((group.diff - diff).cwiseAbs().maxCoeff() <= tol) {
          group.pairs.push_back(pair);
          placed = true;
          break;
        }
      }
      if (!placed) {
        groups.push_back(PhaseGroup{diff, {pair}});
      }
    }
  }
  return groups;
}

}  // namespace qsync
