// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace thinlayer {

/// Symmetric tridiagonal pencil K - lambda M with a positive diagonal M.
struct TridiagPencil {
  std::vector<double> diag;  // K diagonal
  std::vector<double> off;   // K off-diagonal, size n-1
  std::vector<double> mass;  // M diagonal
  /// Optional split diag[i] = own[i] - off[i-1] - off[i] for a Laplacian-type
  /// K; when present the Rayleigh quotient is summed in difference form,
  /// which avoids cancellation on fine meshes.
  std::vector<double> own;

  std::size_t size() const { return diag.size(); }

  /// Number of eigenvalues strictly below lambda (inertia of K - lambda M).
  std::size_t count_below(double lambda) const;

  /// Gershgorin enclosure of the whole spectrum.
  std::pair<double, double> bounds() const;

  /// k-th eigenvalue (0-based, ascending) by Sturm bisection.
  double eigenvalue(std::size_t k) const;

  /// Eigenvalues in [lo, hi), ascending.
  std::vector<double> eigenvalues_in(double lo, double hi) const;

  /// Inverse iteration at the given eigenvalue; M-normalized (v^T M v = 1).
  std::vector<double> eigenvector(double lambda) const;

  double rayleigh_quotient(const std::vector<double>& v) const;

  /// Bisection followed by a Rayleigh-quotient correction from the eigenvector.
  double refined_eigenvalue(std::size_t k) const;

  /// Solves (K - sigma M) x = rhs by Gaussian elimination with partial pivoting.
  std::vector<double> solve(double sigma, std::vector<double> rhs) const;

  /// (K - sigma M) v
  std::vector<double> apply(double sigma, const std::vector<double>& v) const;
};

}  // namespace thinlayer
