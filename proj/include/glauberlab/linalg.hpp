#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace glab {

struct SymmetricEigen {
  std::size_t n = 0;
  /// Ascending.
  std::vector<double> values;
  /// Column j (row-major n x n, entry [i*n + j]) is the eigenvector of values[j];
  /// empty unless requested.
  std::vector<double> vectors;
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `tol` or `max_sweeps` is reached. `a` is row-major and must be symmetric.
SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, bool want_vectors = false, double tol = 1e-12,
                            int max_sweeps = 100);

/// y = A x for a symmetric operator of dimension n.
using SymmetricOperator = std::function<void(const std::vector<double>& x, std::vector<double>& y)>;

struct PowerResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a positive semidefinite operator restricted to the
/// orthogonal complement of `deflate` (may be empty). Rayleigh quotient with
/// relative stopping tolerance `tol`.
PowerResult power_iteration(const SymmetricOperator& op, std::size_t n, const std::vector<std::vector<double>>& deflate,
                            std::size_t max_iterations, double tol, unsigned long long seed = 1);

}  // namespace glab
