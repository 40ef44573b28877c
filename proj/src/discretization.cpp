// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/discretization.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "thinlayer/errors.hpp"

namespace thinlayer {

BoxSystem assemble(const BoxProblem& p) {
  using Rule = boost::math::quadrature::gauss<double, 5>;
  const std::size_t nn = p.nodes.size();
  if (nn < 3) fail(ErrorKind::Resolution, "mesh needs at least 3 nodes");
  std::vector<double> kd(nn, 0.0), ke(nn - 1, 0.0), m(nn, 0.0), own(nn, 0.0);
  const double nu2 = double(p.nu) * double(p.nu);

  auto weight = [&](double x) { return p.cylindrical ? x : 1.0; };
  auto half_cell = [&](double lo, double hi, std::size_t node) {
    m[node] += Rule::integrate([&](double x) { return weight(x) * p.density(x); }, lo, hi);
    if (p.potential) own[node] += Rule::integrate([&](double x) { return weight(x) * p.potential(x); }, lo, hi);
    // midpoint form: the discrete operator then annihilates x and x^2 on uniform meshes
    if (p.cylindrical && nu2 > 0 && p.nodes[node] > 0) own[node] += nu2 * (hi - lo) / p.nodes[node];
  };

  for (std::size_t i = 0; i + 1 < nn; ++i) {
    const double a = p.nodes[i], b = p.nodes[i + 1];
    const double h = b - a;
    if (!(h > 0)) fail(ErrorKind::Resolution, "mesh nodes must increase strictly");
    const double mid = 0.5 * (a + b);
    const double flux = (p.cylindrical ? mid : 1.0) / h;
    kd[i] += flux;
    kd[i + 1] += flux;
    ke[i] = -flux;
    half_cell(a, mid, i);
    half_cell(mid, b, i + 1);
  }
  if (p.right == EndCondition::Natural) own[nn - 1] += p.right_robin;

  if (p.cylindrical && p.nu > 0 && p.left == EndCondition::Natural && p.nodes.front() <= 0)
    fail(ErrorKind::Precondition, "nonzero mode at the axis needs a Dirichlet left end");

  const std::size_t first = p.left == EndCondition::Dirichlet ? 1 : 0;
  const std::size_t last = p.right == EndCondition::Dirichlet ? nn - 2 : nn - 1;
  for (std::size_t i = 0; i < nn; ++i) kd[i] += own[i];
  // cells reaching an eliminated node keep their flux on the diagonal only
  if (first > 0) own[first] -= ke[first - 1];
  if (last + 1 < nn) own[last] -= ke[last];
  BoxSystem sys;
  sys.first = first;
  sys.pencil.own.assign(own.begin() + first, own.begin() + last + 1);
  sys.pencil.diag.assign(kd.begin() + first, kd.begin() + last + 1);
  sys.pencil.mass.assign(m.begin() + first, m.begin() + last + 1);
  sys.pencil.off.assign(ke.begin() + first, ke.begin() + last);
  return sys;
}

std::vector<double> bisect_cells(const std::vector<double>& nodes) {
  std::vector<double> out;
  out.reserve(2 * nodes.size());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    out.push_back(nodes[i]);
    out.push_back(0.5 * (nodes[i] + nodes[i + 1]));
  }
  out.push_back(nodes.back());
  return out;
}

std::vector<double> uniform_nodes(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + (hi - lo) * double(i) / double(count - 1);
  out.back() = hi;
  return out;
}

Extrapolated romberg(const std::vector<double>& levels) {
  if (levels.empty()) return {};
  if (levels.size() == 1) return {levels[0], 0.0};
  std::vector<double> row(levels);
  double previous_best = row[row.size() - 2];
  double factor = 4.0;
  while (row.size() > 1) {
    std::vector<double> next(row.size() - 1);
    for (std::size_t i = 0; i + 1 < row.size(); ++i) next[i] = row[i + 1] + (row[i + 1] - row[i]) / (factor - 1.0);
    if (next.size() == 1) previous_best = row.back();
    row = std::move(next);
    factor *= 4.0;
  }
  return {row[0], std::abs(row[0] - previous_best)};
}

double one_sided_derivative(const double* x, const double* u, bool at_right_end) {
  // Lagrange derivative through three consecutive nodes, evaluated at the end node
  double x0, x1, x2, u0, u1, u2;
  if (at_right_end) {
    x0 = x[0], x1 = x[-1], x2 = x[-2];
    u0 = u[0], u1 = u[-1], u2 = u[-2];
  } else {
    x0 = x[0], x1 = x[1], x2 = x[2];
    u0 = u[0], u1 = u[1], u2 = u[2];
  }
  const double h1 = x1 - x0, h2 = x2 - x0;
  const double c1 = h2 / (h1 * (h2 - h1));
  const double c2 = -h1 / (h2 * (h2 - h1));
  return -(c1 + c2) * u0 + c1 * u1 + c2 * u2;
}

}  // namespace thinlayer
