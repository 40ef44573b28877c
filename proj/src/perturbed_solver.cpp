// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/perturbed_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radial_common.hpp"
#include "thinlayer/discretization.hpp"
#include "thinlayer/errors.hpp"

namespace thinlayer {

namespace {

// Spacings covering `length`, starting from `start` next to the layer and
// relaxing geometrically to `bulk`.
std::vector<double> transition(double length, double start, double bulk, double g) {
  std::vector<double> out;
  double s = start, used = 0;
  while (std::abs(s - bulk) > 1e-12 * bulk) {
    s = s < bulk ? std::min(s * g, bulk) : std::max(s / g, bulk);
    if (used + s > length - bulk) break;
    out.push_back(s);
    used += s;
  }
  const double rest = length - used;
  const auto n = std::max<long>(1, std::lround(rest / bulk));
  for (long i = 0; i < n; ++i) out.push_back(rest / double(n));
  return out;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

LayerMesh build_mesh(double eps, const Geometry& geometry, const MeshParams& params) {
  geometry.validate();
  if (!(eps > 0) || !(eps < 0.5 * (geometry.r2 - geometry.r1)) || !(eps < 0.5 * geometry.r1))
    fail(ErrorKind::Precondition, "eps = " + fmt(eps) + " must satisfy 0 < eps < (r2 - r1)/2 and eps < r1/2");
  if (params.layer_min < 1) fail(ErrorKind::Precondition, "layer_min must be positive");
  if (!(params.grading > 1.0 && params.grading <= 1.3)) fail(ErrorKind::Precondition, "grading must lie in (1, 1.3]");
  if (!(params.bulk_cells >= 10)) fail(ErrorKind::Precondition, "bulk_cells must be at least 10");

  LayerMesh mesh;
  const double a = geometry.r1 - eps, b = geometry.r1 + eps;
  mesh.layer_spacing = (b - a) / double(params.layer_min + 1);
  mesh.bulk_spacing = geometry.r2 / params.bulk_cells;

  const auto inner = transition(a, mesh.layer_spacing, mesh.bulk_spacing, params.grading);
  const auto outer = transition(geometry.r2 - b, mesh.layer_spacing, mesh.bulk_spacing, params.grading);

  std::vector<double> x;
  // inner spacings run outward from the layer, so walk them backwards from the axis
  double pos = 0;
  x.push_back(0.0);
  for (auto it = inner.rbegin(); it != inner.rend(); ++it) x.push_back(pos += *it);
  x.back() = a;
  for (int i = 1; i <= params.layer_min; ++i) x.push_back(a + double(i) * mesh.layer_spacing);
  x.push_back(b);
  pos = b;
  for (double s : outer) x.push_back(pos += s);
  x.back() = geometry.r2;

  mesh.nodes = std::move(x);
  mesh.layer_nodes = params.layer_min;
  for (std::size_t i = 1; i + 1 < mesh.nodes.size(); ++i) {
    const double h0 = mesh.nodes[i] - mesh.nodes[i - 1], h1 = mesh.nodes[i + 1] - mesh.nodes[i];
    mesh.max_ratio = std::max(mesh.max_ratio, std::max(h0 / h1, h1 / h0));
  }
  std::ostringstream g;
  g << "geometric " << params.grading << " from layer spacing " << mesh.layer_spacing << " to bulk spacing "
    << mesh.bulk_spacing << " (" << inner.size() << " inner and " << outer.size() << " outer cells)";
  mesh.grading = g.str();
  return mesh;
}

double perturbed_density(double x, double eps, const Geometry& geometry, const CoefficientModel& model) {
  const double n = geometry.layer_coordinate(x, eps);
  if (std::abs(n) < 1.0) return model.q(n) / (eps * eps);
  return model.rho(x);
}

PerturbedSolve solve_mode_eps(const ModeIndex& mode, double eps, const Geometry& geometry,
                              const CoefficientModel& model, std::pair<double, double> window, double tol,
                              const MeshParams& params) {
  mode.validate();
  auto [lo, hi] = window;
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) fail(ErrorKind::Precondition, "window must be finite with lo < hi");
  if (!(tol > 0)) fail(ErrorKind::Precondition, "tolerance must be positive");

  std::vector<std::vector<double>> meshes{build_mesh(eps, geometry, params).nodes};
  for (int r = 0; r < params.refinements; ++r) meshes.push_back(bisect_cells(meshes.back()));

  std::vector<TridiagPencil> pencils;
  for (const auto& nodes : meshes) {
    BoxProblem p;
    p.nodes = nodes;
    p.cylindrical = true;
    p.nu = mode.nu;
    p.density = [&](double x) { return perturbed_density(x, eps, geometry, model); };
    p.potential = [&](double x) { return model.a(x); };
    p.left = mode.nu == 0 ? EndCondition::Natural : EndCondition::Dirichlet;
    apply_outer_condition(p, geometry);
    pencils.push_back(assemble(p).pencil);
  }

  PerturbedSolve out;
  const auto& finest = pencils.back();
  const std::size_t first = finest.count_below(lo), last = finest.count_below(hi);
  out.sturm_count = last - first;
  for (std::size_t i = 0; i + 1 < pencils.size(); ++i) {
    if (pencils[i].count_below(lo) != first || pencils[i].count_below(hi) != last)
      out.warnings.push_back("eigenvalue count in [" + fmt(lo) + ", " + fmt(hi) + ") changes under mesh refinement");
  }
  for (std::size_t k = first; k < last; ++k) {
    std::vector<double> levels;
    for (const auto& p : pencils) levels.push_back(p.refined_eigenvalue(k));
    const auto ex = romberg(levels);
    PerturbedEigenvalue e;
    e.value = ex.value;
    e.error = ex.error;
    e.mode = mode;
    e.eps = eps;
    e.window = window;
    e.refined = pencils.size() > 1;
    e.index = k;
    if (std::min(std::abs(e.value - lo), std::abs(e.value - hi)) <= tol)
      out.warnings.push_back("eigenvalue " + fmt(e.value) + " sits within tol of the window edge; widen the window");
    if (e.value < lo || e.value >= hi) {
      out.warnings.push_back("extrapolated eigenvalue " + fmt(e.value) + " left the window");
      continue;
    }
    out.eigenvalues.push_back(e);
  }
  return out;
}

}  // namespace thinlayer
