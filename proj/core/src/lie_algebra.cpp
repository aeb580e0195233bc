#include "qsync/lie_algebra.hpp"

#include "qsync/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsync {

namespace {

constexpr double kEdgeTol = 1e-12;
constexpr double kResidualTol = 1e-9;

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

Operator remove_trace(const Operator& a) {
  const Eigen::Index dim = a.rows();
  return a - (a.trace() / static_cast<double>(dim)) *
                 Operator::Identity(dim, dim);
}

Operator restrict_to(const Operator& a, const std::vector<int>& levels) {
  Operator out(levels.size(), levels.size());
  for (std::size_t r = 0; r < levels.size(); ++r) {
    for (std::size_t c = 0; c < levels.size(); ++c) {
      out(r, c) = a(levels[r] - 1, levels[c] - 1);
    }
  }
  return out;
}

PhaseIndependence phase_independence_from_coeffs(const Eigen::MatrixXd& coeffs) {
  CoherentFamily probe;
  probe.dim = static_cast<int>(coeffs.rows());
  probe.n_phases = static_cast<int>(coeffs.cols());
  probe.phase_coeffs = coeffs;
  const auto groups = phase_groups(probe);

  PhaseIndependence result;
  result.n_terms = probe.dim * (probe.dim - 1) / 2;
  for (const auto& group : groups) {
    const bool nonzero = group.diff.size() > 0 &&
                         group.diff.cwiseAbs().maxCoeff() > 1e-9;
    if (nonzero) {
      ++result.n_independent;
    }
    if (group.pairs.size() >= 2) {
      result.feasible = true;
    }
  }
  return result;
}

}  // namespace

std::vector<std::vector<int>> connectivity_blocks(int dim,
                                                  const std::vector<Operator>& generators) {
  if (dim < 1) {
    throw std::invalid_argument("connectivity_blocks: dim must be positive");
  }
  std::vector<int> parent(dim);
  std::iota(parent.begin(), parent.end(), 0);
  for (const Operator& g : generators) {
    if (g.rows() != dim || g.cols() != dim) {
      throw std::invalid_argument("connectivity_blocks: generator dimension mismatch");
    }
    for (int j = 0; j < dim; ++j) {
      for (int k = j + 1; k < dim; ++k) {
        if (std::abs(g(j, k)) > kEdgeTol || std::abs(g(k, j)) > kEdgeTol) {
          parent[find_root(parent, j)] = find_root(parent, k);
        }
      }
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(dim, -1);
  for (int i = 0; i < dim; ++i) {
    const int root = find_root(parent, i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(i + 1);
  }
  return blocks;
}

LieClosure lie_closure(const std::vector<Operator>& generators, int max_dim) {
  std::vector<Operator> seed;
  seed.reserve(generators.size());
  for (const Operator& g : generators) {
    if (!is_hermitian(g, 1e-10)) {
      throw std::invalid_argument("lie_closure: generators must be Hermitian");
    }
    seed.push_back(remove_trace(g));
  }
  std::vector<Operator> basis = hermitian_orthonormalize(seed, kResidualTol);

  std::size_t fresh_from = 0;
  while (fresh_from < basis.size()) {
    const std::size_t old_size = basis.size();
    for (std::size_t i = 0; i < old_size; ++i) {
      // Only pairs touching an element added in the previous round can
      // produce new directions.
      const std::size_t j_start = std::max(i + 1, fresh_from);
      for (std::size_t j = j_start; j < old_size; ++j) {
        Operator candidate = Complex(0, 1) * commutator(basis[i], basis[j]);
        for (int pass = 0; pass < 2; ++pass) {
          for (const Operator& b : basis) {
            candidate -= std::real(frobenius_inner(b, candidate)) * b;
          }
        }
        const double norm = candidate.norm();
        if (norm >= kResidualTol) {
          basis.push_back(candidate / norm);
          if (static_cast<int>(basis.size()) > max_dim) {
            throw ClosureOverflowError(
                "lie_closure: basis exceeded max_dim = " + std::to_string(max_dim));
          }
        }
      }
    }
    fresh_from = old_size;
  }
  return LieClosure{static_cast<int>(basis.size()), std::move(basis)};
}

PhaseIndependence phase_independence(const CoherentFamily& family) {
  return phase_independence_from_coeffs(family.phase_coeffs);
}

std::string algebra_label(int closure_dim, int block_dim) {
  if (block_dim == 1) {
    return "u(1)";
  }
  if (closure_dim == block_dim * block_dim - 1) {
    return "full su(" + std::to_string(block_dim) + ")";
  }
  if (closure_dim == 3) {
    return "su(2) in dim " + std::to_string(block_dim);
  }
  return "subalgebra dim " + std::to_string(closure_dim);
}

AlgebraReport analyze(const LindbladModel& model, const CoherentFamily* family,
                      const AnalyzeOptions& options) {
  model.validate();
  if (family != nullptr && family->dim != model.dim) {
    throw std::invalid_argument("analyze: family dimension does not match model");
  }

  std::vector<Operator> connectivity;
  for (const auto& term : model.hamiltonian) {
    if (term.coeff != 0.0) {
      connectivity.push_back(term.op);
    }
  }
  for (const auto& d : model.dissipators) {
    if (d.rate > 0.0) {
      connectivity.push_back(d.jump);
    }
  }

  std::vector<Operator> closure_generators;
  for (const auto& term : model.hamiltonian) {
    if (term.coeff == 0.0) {
      continue;
    }
    if (!term.drive || options.include_drives) {
      closure_generators.push_back(term.op);
    }
  }
  if (options.include_dissipators) {
    for (const auto& d : model.dissipators) {
      if (d.rate <= 0.0) {
        continue;
      }
      const Operator real_part = d.jump + d.jump.adjoint();
      const Operator imag_part = Complex(0, 1) * (d.jump - d.jump.adjoint());
      if (real_part.norm() > kEdgeTol) {
        closure_generators.push_back(real_part);
      }
      if (imag_part.norm() > kEdgeTol) {
        closure_generators.push_back(imag_part);
      }
    }
  }

  AlgebraReport report;
  report.blocks = connectivity_blocks(model.dim, connectivity);
  for (const auto& block : report.blocks) {
    const int block_dim = static_cast<int>(block.size());
    std::vector<Operator> restricted;
    for (const Operator& g : closure_generators) {
      Operator sub = restrict_to(g, block);
      if (sub.norm() > kEdgeTol) {
        restricted.push_back(std::move(sub));
      }
    }
    const LieClosure closure = lie_closure(restricted, block_dim * block_dim - 1);
    const bool algebraic_feasible =
        closure.dimension < block_dim * block_dim - 1;
    bool feasible = algebraic_feasible;
    if (family != nullptr) {
      Eigen::MatrixXd coeffs(block_dim, family->n_phases);
      for (int r = 0; r < block_dim; ++r) {
        coeffs.row(r) = family->phase_coeffs.row(block[r] - 1);
      }
      feasible = phase_independence_from_coeffs(coeffs).feasible;
    }
    report.block_dims.push_back(block_dim);
    report.closure_dims.push_back(closure.dimension);
    report.labels.push_back(algebra_label(closure.dimension, block_dim));
    report.blockade_feasible.push_back(feasible);
  }
  return report;
}

}  // namespace qsync
