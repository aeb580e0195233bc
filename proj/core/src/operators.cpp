#include "qsync/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsync {

namespace {

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(what) + ": operator is not square");
  }
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.rows()) + " vs " +
                                std::to_string(b.rows()) + ")");
  }
}

}  // namespace

SpinOperators spin_operators(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("spin_operators: dim must be >= 2, got " +
                                std::to_string(dim));
  }
  const double j = 0.5 * (dim - 1);
  SpinOperators ops;
  ops.sz = Operator::Zero(dim, dim);
  ops.plus = Operator::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    ops.sz(k, k) = j - k;
  }
  for (int k = 0; k < dim - 1; ++k) {
    // <m+1|S+|m> = sqrt(j(j+1) - m(m+1)) with m the lower-row eigenvalue.
    const double m = j - k - 1;
    ops.plus(k, k + 1) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  ops.minus = ops.plus.adjoint();
  ops.sx = 0.5 * (ops.plus + ops.minus);
  ops.sy = Complex(0, -0.5) * (ops.plus - ops.minus);
  return ops;
}

Operator transition_op(int dim, int j, int k) {
  if (dim < 1) {
    throw std::invalid_argument("transition_op: dim must be positive");
  }
  if (j < 1 || j > dim || k < 1 || k > dim) {
    throw std::invalid_argument("transition_op: index out of range for dim " +
                                std::to_string(dim));
  }
  Operator op = Operator::Zero(dim, dim);
  op(j - 1, k - 1) = 1.0;
  return op;
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

Complex frobenius_inner(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "frobenius_inner");
  return (a.adjoint() * b).trace();
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) {
    return false;
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<Operator> hermitian_orthonormalize(const std::vector<Operator>& set,
                                               double tol) {
  std::vector<Operator> basis;
  if (set.empty()) {
    return basis;
  }
  const Eigen::Index dim = set.front().rows();
  for (const Operator& candidate : set) {
    require_square(candidate, "hermitian_orthonormalize");
    if (candidate.rows() != dim) {
      throw std::invalid_argument("hermitian_orthonormalize: dimension mismatch");
    }
    if (!is_hermitian(candidate, 1e-10)) {
      throw std::invalid_argument("hermitian_orthonormalize: input is not Hermitian");
    }
    Operator v = candidate;
    // Modified Gram-Schmidt with a second pass keeps the output Gram matrix
    // at the identity even for nearly dependent inputs.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Operator& b : basis) {
        v -= std::real(frobenius_inner(b, v)) * b;
      }
    }
    const double norm = v.norm();
    if (norm >= tol) {
      basis.push_back(v / norm);
    }
  }
  return basis;
}

}  // namespace qsync
