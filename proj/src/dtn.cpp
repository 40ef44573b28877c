// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/dtn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radial_common.hpp"
#include "thinlayer/discretization.hpp"
#include "thinlayer/errors.hpp"

namespace thinlayer {

const char* to_string(DtnSide side) { return side == DtnSide::Minus ? "minus" : "plus"; }

namespace {

double membrane_gap(Side side, const ModeIndex& mode, double lambda, const Geometry& geometry,
                    const CoefficientModel& model, double* nearest) {
  const auto pairs = mode_spectrum(side, mode, geometry, model, lambda + std::max(1.0, 0.1 * std::abs(lambda)), 1e-5);
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& p : pairs)
    if (std::abs(p.lambda - lambda) < gap) {
      gap = std::abs(p.lambda - lambda);
      if (nearest) *nearest = p.lambda;
    }
  return gap;
}

double dtn_on_mesh(DtnSide side, const ModeIndex& mode, double lambda, const Geometry& geometry,
                   const CoefficientModel& model, const std::vector<double>& nodes) {
  const Side domain = domain_of(side);
  BoxProblem p = side_problem(domain, mode, geometry, model, nodes);
  // keep the curve node in the system, then eliminate it with z = 1 there
  if (domain == Side::Inner)
    p.right = EndCondition::Natural;
  else
    p.left = EndCondition::Natural;
  const BoxSystem full = assemble(p);
  const auto& P = full.pencil;
  const std::size_t n = P.size();
  // Condense everything onto the curve node. Carrying the row excess
  // t = pivot - |coupling toward the curve| keeps the O(h^2) part intact
  // instead of recovering it from a difference of O(1/h) numbers.
  auto excess = [&](std::size_t i) { return P.own[i] - lambda * P.mass[i]; };
  double t = 0.0;
  if (domain == Side::Inner) {
    t = excess(0);
    for (std::size_t i = 1; i < n; ++i) {
      const double c = -P.off[i - 1];
      t = excess(i) + c * t / (t + c);
    }
    return t / nodes.back();
  }
  t = excess(n - 1);
  for (std::size_t i = n - 1; i-- > 0;) {
    const double c = -P.off[i];
    t = excess(i) + c * t / (t + c);
  }
  return t / nodes.front();
}

}  // namespace

DtnValue dtn_value(DtnSide side, const ModeIndex& mode, double lambda, const Geometry& geometry,
                   const CoefficientModel& model, const DtnOptions& options) {
  mode.validate();
  geometry.validate();
  double nearest = 0;
  if (membrane_gap(domain_of(side), mode, lambda, geometry, model, &nearest) <= options.pole_guard) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "lambda = " << lambda << " hits the " << to_string(domain_of(side)) << " eigenvalue " << nearest
        << " of mode " << to_string(mode);
    fail(ErrorKind::Resonance, msg.str());
  }
  const double lo = side == DtnSide::Plus ? 0.0 : geometry.r1;
  const double hi = side == DtnSide::Plus ? geometry.r1 : geometry.r2;
  std::vector<double> mesh = uniform_nodes(lo, hi, options.nodes);
  std::vector<double> levels;
  for (int r = 0; r <= options.refinements; ++r) {
    if (r > 0) mesh = bisect_cells(mesh);
    levels.push_back(dtn_on_mesh(side, mode, lambda, geometry, model, mesh));
  }
  const auto ex = romberg(levels);
  DtnValue v;
  v.side = side;
  v.mode = mode;
  v.lambda = lambda;
  v.value = ex.value;
  v.error = ex.error;
  return v;
}

CorrectorValue n_lambda(const ModeIndex& mode, double lambda0, const CrossSectionLevel& level,
                        const Geometry& geometry, const CoefficientModel& model, const DtnOptions& options) {
  CorrectorValue c;
  c.mode = mode;
  c.lambda0 = lambda0;
  c.n_minus = dtn_value(DtnSide::Minus, mode, lambda0, geometry, model, options).value;
  c.n_plus = dtn_value(DtnSide::Plus, mode, lambda0, geometry, model, options).value;
  c.n_value = level.theta_minus * c.n_minus + level.theta_plus * c.n_plus;
  // skip the curvature term outright when the weights coincide
  if (level.theta_plus != level.theta_minus)
    c.n_value += 0.5 * (level.theta_plus - level.theta_minus) * geometry.curvature();
  return c;
}

bool mode_resonant(const ModeIndex& mode, double lambda0, const Geometry& geometry, const CoefficientModel& model,
                   double tol) {
  for (Side s : {Side::Inner, Side::Outer})
    if (membrane_gap(s, mode, lambda0, geometry, model, nullptr) <= tol) return true;
  return false;
}

CorrectorValue m_lambda(const ModeIndex& mode, double lambda0, const CrossSectionLevel& level,
                        const Geometry& geometry, const CoefficientModel& model, const DtnOptions& options) {
  const double tol = options.intersection_rel_tol * std::max(1.0, std::abs(lambda0));
  if (mode_resonant(mode, lambda0, geometry, model, tol)) {
    CorrectorValue c;
    c.mode = mode;
    c.lambda0 = lambda0;
    c.projected = true;
    return c;
  }
  return n_lambda(mode, lambda0, level, geometry, model, options);
}

}  // namespace thinlayer
