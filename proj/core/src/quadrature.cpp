#include "qsync/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsync {

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n, double a, double b) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one node");
  }
  Eigen::VectorXd nodes(n);
  Eigen::VectorXd weights(n);
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    // Newton iteration on P_n(x) using the three-term recurrence.
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes(i) = -x;
    nodes(n - 1 - i) = x;
    weights(i) = w;
    weights(n - 1 - i) = w;
  }
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    nodes(i) = center + half * nodes(i);
    weights(i) *= half;
  }
  return {nodes, weights};
}

}  // namespace qsync
