#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qsync {

using Complex = std::complex<double>;

/// Dense complex square matrix, the common currency for Hamiltonians, jump
/// operators and algebra generators. The dimension is entries().rows().
using Operator = Eigen::MatrixXcd;

/// Angular-momentum matrices for spin j = (dim-1)/2 in the basis ordered by
/// descending magnetic quantum number, so level 1 carries the largest sz
/// eigenvalue and sz = diag(j, j-1, ..., -j).
struct SpinOperators {
  Operator sx;
  Operator sy;
  Operator sz;
  Operator plus;
  Operator minus;
};

/// Standard spin matrices for a dim-level system (dim >= 2).
SpinOperators spin_operators(int dim);

/// |j><k| with 1-based level indices. Level indices are 1-based throughout
/// the public API, matching the usual labelling of multi-level systems.
Operator transition_op(int dim, int j, int k);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Frobenius inner product Tr(a^dagger b).
Complex frobenius_inner(const Operator& a, const Operator& b);

bool is_hermitian(const Operator& a, double tol = 1e-12);

/// Frobenius-orthonormal spanning set of the real linear span of `set`
/// (all elements Hermitian, equal dimensions). Candidate directions whose
/// residual norm after projection falls below `tol` are discarded, so the
/// output size equals the rank of the span and its Gram matrix is the
/// identity. An empty input yields an empty output.
std::vector<Operator> hermitian_orthonormalize(const std::vector<Operator>& set,
                                               double tol = 1e-9);

}  // namespace qsync
