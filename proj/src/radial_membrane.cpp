// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/radial_membrane.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radial_common.hpp"
#include "thinlayer/discretization.hpp"
#include "thinlayer/errors.hpp"

namespace thinlayer {

const char* to_string(Side side) { return side == Side::Inner ? "inner" : "outer"; }

double radial_norm_target(const ModeIndex& mode) { return mode.nu == 0 ? 0.5 / M_PI : 1.0 / M_PI; }

BoxProblem side_problem(Side side, const ModeIndex& mode, const Geometry& geometry, const CoefficientModel& model,
                        std::vector<double> nodes) {
  BoxProblem p;
  p.nodes = std::move(nodes);
  p.cylindrical = true;
  p.nu = mode.nu;
  p.density = [&model](double x) { return model.rho(x); };
  p.potential = [&model](double x) { return model.a(x); };
  if (side == Side::Inner) {
    p.left = mode.nu == 0 ? EndCondition::Natural : EndCondition::Dirichlet;
    p.right = EndCondition::Dirichlet;
  } else {
    p.left = EndCondition::Dirichlet;
    apply_outer_condition(p, geometry);
  }
  return p;
}

void apply_outer_condition(BoxProblem& p, const Geometry& geometry) {
  switch (geometry.outer_bc) {
    case OuterBc::Dirichlet: p.right = EndCondition::Dirichlet; break;
    case OuterBc::Neumann:
      p.right = EndCondition::Natural;
      p.right_robin = 0;
      break;
    case OuterBc::Robin:
      p.right = EndCondition::Natural;
      p.right_robin = geometry.r2 * geometry.robin_sigma;
      break;
  }
}

std::vector<double> full_vector(const BoxSystem& sys, std::size_t node_count, const std::vector<double>& v) {
  std::vector<double> u(node_count, 0.0);
  std::copy(v.begin(), v.end(), u.begin() + long(sys.first));
  return u;
}

namespace {

double simpson(const std::vector<double>& x, const std::vector<double>& f) {
  // composite Simpson on a uniform mesh with an even number of cells
  const std::size_t n = x.size();
  const double h = (x.back() - x.front()) / double(n - 1);
  double s = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
  return s * h / 3.0;
}

struct LevelPair {
  double lambda;
  double trace;
  std::vector<double> profile;  // on the coarsest nodes
};

}  // namespace

std::vector<ModeEigenpair> mode_spectrum(Side side, const ModeIndex& mode, const Geometry& geometry,
                                         const CoefficientModel& model, double lambda_max, double tol,
                                         const MembraneOptions& options) {
  mode.validate();
  geometry.validate();
  if (!std::isfinite(lambda_max)) fail(ErrorKind::Precondition, "lambda_max must be finite");
  if (!(tol > 0)) fail(ErrorKind::Precondition, "tolerance must be positive");
  if (options.nodes < 5 || options.nodes % 2 == 0)
    fail(ErrorKind::Resolution, "membrane mesh needs an odd node count of at least 5");

  const double lo = side == Side::Inner ? 0.0 : geometry.r1;
  const double hi = side == Side::Inner ? geometry.r1 : geometry.r2;
  std::vector<std::vector<double>> meshes{uniform_nodes(lo, hi, options.nodes)};
  for (int r = 0; r < options.refinements; ++r) meshes.push_back(bisect_cells(meshes.back()));

  const double target = radial_norm_target(mode);
  const bool curve_at_right = side == Side::Inner;

  std::vector<std::vector<LevelPair>> per_mesh;
  std::size_t count = 0;
  for (std::size_t level = 0; level < meshes.size(); ++level) {
    const auto& nodes = meshes[level];
    const BoxSystem sys = assemble(side_problem(side, mode, geometry, model, nodes));
    if (level == 0) {
      const double pad = 1e-3 * std::max(1.0, std::abs(lambda_max));
      count = sys.pencil.count_below(lambda_max + pad);
      if (count * 16 > sys.pencil.size()) {
        std::ostringstream msg;
        msg << "mode " << to_string(mode) << " on the " << to_string(side) << " side has " << count
            << " eigenvalues below " << lambda_max << "; the " << options.nodes << "-node mesh cannot resolve them";
        fail(ErrorKind::Resolution, msg.str());
      }
    }
    const std::size_t stride = std::size_t(1) << level;
    std::vector<LevelPair> row;
    for (std::size_t k = 0; k < count; ++k) {
      LevelPair lp;
      lp.lambda = sys.pencil.refined_eigenvalue(k);
      auto u = full_vector(sys, nodes.size(), sys.pencil.eigenvector(lp.lambda));
      const std::size_t e = curve_at_right ? nodes.size() - 1 : 0;
      const double du = one_sided_derivative(nodes.data() + e, u.data() + e, curve_at_right);
      const double scale = std::sqrt(target) * (-du > 0 ? 1.0 : -1.0);
      for (double& v : u) v *= scale;
      lp.trace = -du * scale;
      for (std::size_t i = 0; i < nodes.size(); i += stride) lp.profile.push_back(u[i]);
      row.push_back(std::move(lp));
    }
    per_mesh.push_back(std::move(row));
  }

  std::vector<ModeEigenpair> out;
  const auto& coarse = meshes.front();
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> lam, tr;
    for (const auto& row : per_mesh) {
      lam.push_back(row[k].lambda);
      tr.push_back(row[k].trace);
    }
    const auto l = romberg(lam);
    if (l.value > lambda_max) continue;
    ModeEigenpair e;
    e.lambda = l.value;
    e.error = l.error;
    e.side = side;
    e.mode = mode;
    e.index = int(k);
    e.trace_dr = romberg(tr).value;
    e.norm_factor = target;
    if (!(std::abs(e.trace_dr) > 1e-12)) fail(ErrorKind::Resolution, "eigenfunction trace on the curve vanished");
    if (e.error > tol && per_mesh.size() > 1) {
      std::ostringstream msg;
      msg << "mode " << to_string(mode) << " " << to_string(side) << " eigenvalue " << e.lambda
          << " not resolved to " << tol << " (estimate " << e.error << "); increase membrane nodes";
      fail(ErrorKind::Resolution, msg.str());
    }
    // recompute the norm from the extrapolated profile with an independent rule
    std::vector<double> f(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      std::vector<double> vals;
      for (const auto& row : per_mesh) vals.push_back(row[k].profile[i]);
      const double u = romberg(vals).value;
      f[i] = model.rho(coarse[i]) * u * u * coarse[i];
    }
    e.norm_check = std::abs(simpson(coarse, f) / target - 1.0);
    if (!out.empty() && e.lambda - out.back().lambda < 1e-10) {
      std::ostringstream msg;
      msg << "mode " << to_string(mode) << " " << to_string(side) << " has a near-degenerate pair at " << e.lambda;
      fail(ErrorKind::Degeneracy, msg.str());
    }
    out.push_back(e);
  }
  return out;
}

PsiVector psi_vector(double lambda0, const CrossSectionLevel& level, const std::vector<ModeEigenpair>& eigenpairs) {
  PsiVector psi;
  psi.lambda0 = lambda0;
  const double tol = 1e-7 * std::max(1.0, std::abs(lambda0));
  for (const auto& e : eigenpairs) {
    if (std::abs(e.lambda - lambda0) > tol) {
      std::ostringstream msg;
      msg << "eigenvalue " << e.lambda << " does not match lambda0 = " << lambda0;
      fail(ErrorKind::Precondition, msg.str());
    }
    PsiEntry entry;
    entry.pair = e;
    entry.psi_rad = e.side == Side::Inner ? level.y_plus * e.trace_dr : -level.y_minus * e.trace_dr;
    psi.entries.push_back(entry);
  }
  return psi;
}

}  // namespace thinlayer
