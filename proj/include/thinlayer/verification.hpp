// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thinlayer/perturbed_solver.hpp"
#include "thinlayer/predictor.hpp"

namespace thinlayer {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict verdict);

struct OrderFit {
  double order = 0;
  double coefficient = 0;
  int used = 0;
  bool ok = false;  // at least two usable samples
};

/// Least squares of log|residual| against log eps over samples above the noise floor.
OrderFit fit_order(const std::vector<std::pair<double, double>>& samples, double noise_floor = 0.0);

struct Sample {
  double eps = 0;
  bool matched = false;
  double measured = 0;
  double residual = 0;  // measured - predicted
  double error = 0;     // solver error estimate
  std::pair<double, double> window;
  bool usable = false;  // residual above the noise floor
  std::string note;
};

struct SweepOptions {
  double window_constant = 5.0;
  double order_tol = 0.25;
  double tol = 1e-8;
  MeshParams mesh;
};

struct SweepResult {
  Prediction prediction;
  std::vector<Sample> samples;
  double fitted_order = 0;
  double fitted_coefficient = 0;
  int used_samples = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;
};

/// Half-width of the search window around the prediction at eps.
double window_half_width(const Prediction& prediction, double eps, const SweepOptions& options);

Verdict decide(const SweepResult& result, double order_tol);

SweepResult sweep(const Prediction& prediction, const std::vector<double>& eps_list, const Geometry& geometry,
                  const CoefficientModel& model, const SweepOptions& options = {});

/// (mu+ - mu-) / (2 sqrt(eps)) from the two branches of a half-integer pair.
std::optional<double> symmetric_sqrt_coefficient(const SweepResult& plus, const SweepResult& minus, double eps);

}  // namespace thinlayer
