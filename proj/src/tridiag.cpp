// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thinlayer/errors.hpp"

namespace thinlayer {

std::size_t TridiagPencil::count_below(double lambda) const {
  const std::size_t n = size();
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  double p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = diag[i] - lambda * mass[i];
    if (i > 0) d -= off[i - 1] * off[i - 1] / p;
    if (std::abs(d) < tiny) d = -tiny;
    if (d < 0) ++count;
    p = d;
  }
  return count;
}

std::pair<double, double> TridiagPencil::bounds() const {
  const std::size_t n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = 1.0 / std::sqrt(mass[i]);
    double r = 0;
    if (i > 0) r += std::abs(off[i - 1]) * s / std::sqrt(mass[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]) * s / std::sqrt(mass[i + 1]);
    const double c = diag[i] * s * s;
    lo = std::min(lo, c - r);
    hi = std::max(hi, c + r);
  }
  const double pad = 1e-12 * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
  return {lo - pad, hi + pad};
}

double TridiagPencil::eigenvalue(std::size_t k) const {
  if (k >= size()) fail(ErrorKind::Resolution, "eigenvalue index beyond the discrete spectrum");
  auto [lo, hi] = bounds();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> TridiagPencil::eigenvalues_in(double lo, double hi) const {
  std::vector<double> out;
  if (!(hi > lo)) return out;
  const std::size_t a = count_below(lo), b = count_below(hi);
  for (std::size_t k = a; k < b; ++k) out.push_back(eigenvalue(k));
  return out;
}

std::vector<double> TridiagPencil::apply(double sigma, const std::vector<double>& v) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = (diag[i] - sigma * mass[i]) * v[i];
    if (i > 0) s += off[i - 1] * v[i - 1];
    if (i + 1 < n) s += off[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

double TridiagPencil::rayleigh_quotient(const std::vector<double>& v) const {
  const std::size_t n = size();
  double num = 0, den = 0;
  if (own.size() == n) {
    for (std::size_t i = 0; i < n; ++i) num += own[i] * v[i] * v[i];
    for (std::size_t i = 0; i + 1 < n; ++i) num -= off[i] * (v[i + 1] - v[i]) * (v[i + 1] - v[i]);
  } else {
    const auto kv = apply(0.0, v);
    for (std::size_t i = 0; i < n; ++i) num += v[i] * kv[i];
  }
  for (std::size_t i = 0; i < n; ++i) den += v[i] * v[i] * mass[i];
  return num / den;
}

double TridiagPencil::refined_eigenvalue(std::size_t k) const {
  const double lambda = eigenvalue(k);
  return rayleigh_quotient(eigenvector(lambda));
}

std::vector<double> TridiagPencil::solve(double sigma, std::vector<double> rhs) const {
  // LAPACK gtsv-style elimination; du2 holds the fill-in from row swaps
  const std::size_t n = size();
  if (n == 0) return rhs;
  std::vector<double> dl(off), d(n), du(off), du2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - sigma * mass[i];
  const double floor = std::numeric_limits<double>::epsilon() *
                       std::max(1e-300, *std::max_element(d.begin(), d.end(), [](double x, double y) {
                         return std::abs(x) < std::abs(y);
                       }));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < floor) d[i] = d[i] < 0 ? -floor : floor;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      rhs[i + 1] -= f * rhs[i];
      dl[i] = 0;
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      du[i] = tmp;
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= f * rhs[i];
    }
  }
  if (std::abs(d[n - 1]) < floor) d[n - 1] = d[n - 1] < 0 ? -floor : floor;
  rhs[n - 1] /= d[n - 1];
  if (n > 1) rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
  if (n >= 3)
    for (std::size_t k = n - 2; k-- > 0;) rhs[k] = (rhs[k] - du[k] * rhs[k + 1] - du2[k] * rhs[k + 2]) / d[k];
  return rhs;
}

std::vector<double> TridiagPencil::eigenvector(double lambda) const {
  const std::size_t n = size();
  std::vector<double> v(n);
  // deterministic, non-symmetric start so no eigenvector is orthogonal to it
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 0.7 * double(i));
  const double shift = lambda + 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lambda));
  for (int it = 0; it < 3; ++it) {
    for (std::size_t i = 0; i < n; ++i) v[i] *= mass[i];
    v = solve(shift, std::move(v));
    double nrm = 0;
    for (std::size_t i = 0; i < n; ++i) nrm += v[i] * v[i] * mass[i];
    nrm = std::sqrt(nrm);
    if (!(nrm > 0) || !std::isfinite(nrm)) fail(ErrorKind::Resolution, "inverse iteration broke down");
    for (double& x : v) x /= nrm;
  }
  return v;
}

}  // namespace thinlayer
