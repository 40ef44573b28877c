// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

OrderFit fit_order(const std::vector<std::pair<double, double>>& samples, double noise_floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [eps, residual] : samples) {
    if (!(eps > 0) || !(std::abs(residual) > noise_floor) || !std::isfinite(residual)) continue;
    const double x = std::log(eps), y = std::log(std::abs(residual));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  OrderFit fit;
  fit.used = n;
  if (n < 2) return fit;
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0)) return fit;
  fit.order = (n * sxy - sx * sy) / den;
  fit.coefficient = std::exp((sy - fit.order * sx) / n);
  fit.ok = true;
  return fit;
}

double window_half_width(const Prediction& p, double eps, const SweepOptions& options) {
  double half = std::max(options.window_constant * std::pow(eps, p.expected_order - 0.5), 10 * options.tol);
  // keep the two members of a half-integer pair in separate windows
  if (p.branch == Branch::HalfInteger) half = std::min(half, p.coefficient * std::sqrt(eps));
  return half;
}

Verdict decide(const SweepResult& r, double order_tol) {
  if (r.used_samples < 2) return Verdict::Inconclusive;
  const bool all_matched =
      std::all_of(r.samples.begin(), r.samples.end(), [](const Sample& s) { return s.matched; });
  if (all_matched && std::abs(r.fitted_order - r.prediction.expected_order) <= order_tol) return Verdict::Pass;
  return Verdict::Fail;
}

SweepResult sweep(const Prediction& prediction, const std::vector<double>& eps_list, const Geometry& geometry,
                  const CoefficientModel& model, const SweepOptions& options) {
  if (eps_list.size() < 3) fail(ErrorKind::Precondition, "a sweep needs at least 3 eps values");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1])) fail(ErrorKind::Precondition, "eps values must decrease strictly");

  SweepResult r;
  r.prediction = prediction;
  std::vector<std::pair<double, double>> points;
  for (double eps : eps_list) {
    Sample s;
    s.eps = eps;
    const double center = prediction.at(eps);
    const double half = window_half_width(prediction, eps, options);
    s.window = {center - half, center + half};
    try {
      const auto solved = solve_mode_eps(prediction.mode, eps, geometry, model, s.window, options.tol, options.mesh);
      for (const auto& w : solved.warnings) r.notes.push_back("eps " + std::to_string(eps) + ": " + w);
      if (solved.eigenvalues.size() == 1) {
        s.matched = true;
        s.measured = solved.eigenvalues[0].value;
        s.error = solved.eigenvalues[0].error;
        s.residual = s.measured - center;
        const double floor = 10 * std::max(s.error, options.tol);
        s.usable = std::abs(s.residual) > floor;
        // the noise floor is per sample, so filter here and fit the survivors
        if (s.usable)
          points.emplace_back(eps, s.residual);
        else
          s.note = "residual below noise floor";
      } else {
        std::ostringstream msg;
        msg << "ambiguous window: " << solved.eigenvalues.size() << " eigenvalues";
        s.note = msg.str();
      }
    } catch (const Error& e) {
      s.note = std::string("solver error: ") + e.what();
    }
    r.samples.push_back(s);
  }
  const auto fit = fit_order(points);
  r.used_samples = fit.used;
  r.fitted_order = fit.order;
  r.fitted_coefficient = fit.coefficient;
  r.verdict = decide(r, options.order_tol);
  return r;
}

std::optional<double> symmetric_sqrt_coefficient(const SweepResult& plus, const SweepResult& minus, double eps) {
  const Sample* a = nullptr;
  const Sample* b = nullptr;
  for (const auto& s : plus.samples)
    if (s.eps == eps && s.matched) a = &s;
  for (const auto& s : minus.samples)
    if (s.eps == eps && s.matched) b = &s;
  if (!a || !b) return std::nullopt;
  return (a->measured - b->measured) / (2 * std::sqrt(eps));
}

}  // namespace thinlayer
