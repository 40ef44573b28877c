// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "thinlayer/discretization.hpp"
#include "thinlayer/errors.hpp"

namespace thinlayer {

namespace {

BoxSystem cross_section_system(const CoefficientModel& model, const std::vector<double>& nodes) {
  BoxProblem p;
  p.nodes = nodes;
  p.cylindrical = false;
  p.density = [&model](double n) { return model.q(n); };
  p.left = EndCondition::Natural;
  p.right = EndCondition::Natural;
  return assemble(p);
}

struct LevelSample {
  double lambda, y_minus, y_plus, dy_minus, dy_plus;
};

LevelSample sample_level(const BoxSystem& sys, const std::vector<double>& nodes, std::size_t k) {
  const double lambda = sys.pencil.refined_eigenvalue(k);
  auto v = sys.pencil.eigenvector(lambda);
  const std::size_t n = v.size();
  const double sign = std::abs(v[n - 1]) > 1e-300 ? (v[n - 1] > 0 ? 1.0 : -1.0) : (v[0] > 0 ? 1.0 : -1.0);
  for (double& x : v) x *= sign;
  LevelSample s;
  s.lambda = lambda;
  s.y_minus = v[0];
  s.y_plus = v[n - 1];
  s.dy_minus = one_sided_derivative(nodes.data(), v.data(), false);
  s.dy_plus = one_sided_derivative(nodes.data() + n - 1, v.data() + n - 1, true);
  return s;
}

std::vector<std::vector<double>> mesh_levels(const CrossSectionOptions& options) {
  if (options.nodes < 5) fail(ErrorKind::Resolution, "cross-section mesh needs at least 5 nodes");
  std::vector<std::vector<double>> meshes{uniform_nodes(-1.0, 1.0, options.nodes)};
  for (int r = 0; r < options.refinements; ++r) meshes.push_back(bisect_cells(meshes.back()));
  return meshes;
}

}  // namespace

CrossSectionSpectrum solve_cross_section(const CoefficientModel& model, int m_max, double tol,
                                         const CrossSectionOptions& options) {
  if (m_max < 0) fail(ErrorKind::Precondition, "m_max must be nonnegative");
  if (!(tol > 0)) fail(ErrorKind::Precondition, "tolerance must be positive");
  const auto meshes = mesh_levels(options);
  // resolving level m needs several nodes per half wavelength
  if (std::size_t(m_max + 1) * 8 > options.nodes) {
    std::ostringstream msg;
    msg << "cannot resolve " << m_max + 1 << " cross-section levels on " << options.nodes
        << " nodes; use at least " << 8 * (m_max + 1) + 1 << " nodes";
    fail(ErrorKind::Resolution, msg.str());
  }

  std::vector<std::vector<LevelSample>> per_mesh;
  for (const auto& nodes : meshes) {
    const BoxSystem sys = cross_section_system(model, nodes);
    std::vector<LevelSample> row;
    for (int m = 0; m <= m_max; ++m) row.push_back(sample_level(sys, nodes, std::size_t(m)));
    per_mesh.push_back(std::move(row));
  }

  CrossSectionSpectrum out;
  out.nodes = options.nodes;
  for (int m = 0; m <= m_max; ++m) {
    auto column = [&](double LevelSample::*field) {
      std::vector<double> v;
      for (const auto& row : per_mesh) v.push_back(row[std::size_t(m)].*field);
      return romberg(v);
    };
    CrossSectionLevel level;
    level.index = m;
    const auto lam = column(&LevelSample::lambda);
    level.lambda = m == 0 ? 0.0 : lam.value;  // constants are exact eigenfunctions
    level.error = lam.error;
    level.y_minus = column(&LevelSample::y_minus).value;
    level.y_plus = column(&LevelSample::y_plus).value;
    level.theta_minus = level.y_minus * level.y_minus;
    level.theta_plus = level.y_plus * level.y_plus;
    level.neumann_residual =
        std::max(std::abs(column(&LevelSample::dy_minus).value), std::abs(column(&LevelSample::dy_plus).value));
    if (level.error > tol && meshes.size() > 1) {
      std::ostringstream msg;
      msg << "cross-section level " << m << " not resolved to " << tol << " (estimate " << level.error
          << "); increase the cross-section node count";
      fail(ErrorKind::Resolution, msg.str());
    }
    if (!out.levels.empty() && level.lambda - out.levels.back().lambda < 1e-10) {
      std::ostringstream msg;
      msg << "cross-section levels " << m - 1 << " and " << m << " are numerically degenerate";
      fail(ErrorKind::Degeneracy, msg.str());
    }
    out.levels.push_back(level);
  }
  return out;
}

CrossSectionSpectrum cross_section_below(const CoefficientModel& model, double lambda_max, double tol,
                                         const CrossSectionOptions& options) {
  if (lambda_max < 0) return {{}, options.nodes};
  const auto nodes = uniform_nodes(-1.0, 1.0, options.nodes);
  const BoxSystem sys = cross_section_system(model, nodes);
  // the discrete levels sit above the true ones; pad so none near the cutoff is lost
  const std::size_t count = sys.pencil.count_below(lambda_max * (1 + 1e-3) + 1e-6);
  auto spectrum = solve_cross_section(model, int(std::max<std::size_t>(count, 1)) - 1, tol, options);
  while (!spectrum.levels.empty() && spectrum.levels.back().lambda > lambda_max) spectrum.levels.pop_back();
  return spectrum;
}

CrossSectionFunction cross_section_function(const CoefficientModel& model, int m, std::size_t nodes) {
  CrossSectionFunction f;
  f.n = uniform_nodes(-1.0, 1.0, nodes);
  const BoxSystem sys = cross_section_system(model, f.n);
  f.lambda = sys.pencil.refined_eigenvalue(std::size_t(m));
  f.y = sys.pencil.eigenvector(f.lambda);
  const double sign = f.y.back() > 0 ? 1.0 : -1.0;
  for (double& v : f.y) v *= sign;
  return f;
}

CauchyStar cauchy_star(const CoefficientModel& model, double lambda0) {
  using State = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;
  State s{0.0, 1.0};
  auto rhs = [&](const State& u, State& du, double n) {
    du[0] = u[1];
    du[1] = -lambda0 * model.q(n) * u[0];
  };
  auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
  ode::integrate_adaptive(stepper, rhs, s, -1.0, 1.0, 1e-3);
  if (!std::isfinite(s[0]) || !std::isfinite(s[1])) fail(ErrorKind::Resolution, "Cauchy integration failed");
  return {s[0], s[1]};
}

NeumannResponse neumann_response(const CoefficientModel& model, double lambda0, const CrossSectionOptions& options) {
  const auto meshes = mesh_levels(options);
  std::array<std::array<std::vector<double>, 2>, 2> samples;
  for (const auto& nodes : meshes) {
    const BoxSystem sys = cross_section_system(model, nodes);
    const std::size_t n = sys.pencil.size();
    for (int col = 0; col < 2; ++col) {
      // weak form: the boundary flux w'(1) enters the last row, -w'(-1) the first
      std::vector<double> rhs(n, 0.0);
      if (col == 0)
        rhs[0] = -1.0;
      else
        rhs[n - 1] = 1.0;
      const auto w = sys.pencil.solve(lambda0, rhs);
      samples[0][col].push_back(w[0]);
      samples[1][col].push_back(w[n - 1]);
    }
  }
  NeumannResponse out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      out[r][c] = romberg(samples[r][c]).value;
      if (!std::isfinite(out[r][c]))
        fail(ErrorKind::InvalidCase, "cross-section Neumann problem is singular at this lambda");
    }
  return out;
}

}  // namespace thinlayer
