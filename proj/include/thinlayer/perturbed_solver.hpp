// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "thinlayer/model.hpp"

namespace thinlayer {

struct MeshParams {
  int layer_min = 64;        // nodes strictly inside the layer
  double bulk_cells = 4000;  // bulk spacing is r2 / bulk_cells
  double grading = 1.2;      // neighbour spacing ratio in the transition, at most 1.3
  int refinements = 2;       // extra meshes, each with halved spacing
};

struct LayerMesh {
  std::vector<double> nodes;
  int layer_nodes = 0;
  double layer_spacing = 0;
  double bulk_spacing = 0;
  double max_ratio = 1;  // largest neighbour spacing ratio
  std::string grading;
};

LayerMesh build_mesh(double eps, const Geometry& geometry, const MeshParams& params = {});

struct PerturbedEigenvalue {
  double value = 0;
  ModeIndex mode;
  double eps = 0;
  std::pair<double, double> window;
  bool refined = false;
  double error = 0;
  std::size_t index = 0;  // position in the mode spectrum
};

struct PerturbedSolve {
  std::vector<PerturbedEigenvalue> eigenvalues;
  std::size_t sturm_count = 0;  // eigenvalues in the window on the finest mesh
  std::vector<std::string> warnings;
};

/// rho_eps = q((r1 - x)/eps) / eps^2 inside the layer, rho outside.
double perturbed_density(double x, double eps, const Geometry& geometry, const CoefficientModel& model);

/// Eigenvalues of the radial pencil with the heavy layer inside [lo, hi).
PerturbedSolve solve_mode_eps(const ModeIndex& mode, double eps, const Geometry& geometry,
                              const CoefficientModel& model, std::pair<double, double> window, double tol,
                              const MeshParams& params = {});

}  // namespace thinlayer
