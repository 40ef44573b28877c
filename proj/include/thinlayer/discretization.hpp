// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "thinlayer/tridiag.hpp"

namespace thinlayer {

enum class EndCondition { Natural, Dirichlet };

/// Vertex-centred (box) discretization of
///   -(w u')' + (nu^2 / x) u + w a u = lambda w rho u,   w = x or w = 1,
/// on the given nodes. Stiffness is exact for piecewise-linear u, mass and
/// potential are lumped onto dual cells and integrated by Gauss rules on each
/// half cell, so coefficient jumps located at nodes are resolved exactly.
struct BoxProblem {
  std::vector<double> nodes;
  bool cylindrical = true;  // weight w = x, else w = 1
  int nu = 0;
  std::function<double(double)> density;
  std::function<double(double)> potential;  // may be empty
  EndCondition left = EndCondition::Natural;
  EndCondition right = EndCondition::Dirichlet;
  /// Added to the last diagonal entry when the right end is natural
  /// (w(x_N) * sigma for a Robin condition u' + sigma u = 0).
  double right_robin = 0.0;
};

struct BoxSystem {
  TridiagPencil pencil;
  std::size_t first = 0;  // node index of the first unknown
};

BoxSystem assemble(const BoxProblem& problem);

/// Inserts the midpoint of every cell.
std::vector<double> bisect_cells(const std::vector<double>& nodes);

/// Uniform nodes lo..hi.
std::vector<double> uniform_nodes(double lo, double hi, std::size_t count);

struct Extrapolated {
  double value = 0;
  double error = 0;  // difference between the two best table entries
};

/// Romberg table for values computed on meshes refined by halving, with an
/// error expansion in even powers of h.
Extrapolated romberg(const std::vector<double>& levels);

/// Derivative at the first (or last) node of a mesh from a 3-point one-sided
/// stencil on possibly non-uniform spacing.
double one_sided_derivative(const double* x, const double* u, bool at_right_end);

}  // namespace thinlayer
