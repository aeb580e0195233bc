#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qsync {

/// Gauss-Legendre nodes and weights mapped to [a, b].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n, double a, double b);

/// Quadrature grid for integration over a coherent-state family: one
/// Gauss-Legendre rule per population angle plus a uniform grid per free
/// phase. Uniform phase grids of size >= 2*max|c_j - c_k| + 1 integrate the
/// occurring trigonometric polynomials exactly.
struct Quadrature {
  std::vector<Eigen::VectorXd> theta_nodes;
  std::vector<Eigen::VectorXd> theta_weights;
  int phase_grid = 0;
};

}  // namespace qsync
