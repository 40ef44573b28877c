// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "thinlayer/model.hpp"

namespace thinlayer {

/// One level of -y'' = lambda q y on (-1, 1), y'(-1) = y'(1) = 0,
/// normalized by the q-weighted norm and signed so y(1) > 0.
struct CrossSectionLevel {
  int index = 0;
  double lambda = 0;
  double theta_minus = 0;  // y(-1)^2
  double theta_plus = 0;   // y(1)^2
  double y_minus = 0;
  double y_plus = 0;
  double error = 0;            // extrapolation estimate for lambda
  double neumann_residual = 0; // max |y'(+-1)| after extrapolation
};

struct CrossSectionSpectrum {
  std::vector<CrossSectionLevel> levels;
  std::size_t nodes = 0;
};

struct CrossSectionOptions {
  std::size_t nodes = 2001;
  int refinements = 2;  // extra meshes, each with halved spacing
};

CrossSectionSpectrum solve_cross_section(const CoefficientModel& model, int m_max, double tol,
                                         const CrossSectionOptions& options = {});

/// All levels with lambda <= lambda_max.
CrossSectionSpectrum cross_section_below(const CoefficientModel& model, double lambda_max, double tol,
                                         const CrossSectionOptions& options = {});

/// Normalized, sign-fixed discrete eigenfunction on a single uniform mesh.
struct CrossSectionFunction {
  std::vector<double> n;
  std::vector<double> y;
  double lambda = 0;
};

CrossSectionFunction cross_section_function(const CoefficientModel& model, int m, std::size_t nodes = 2001);

/// Values at n = 1 of the Cauchy solution -y'' = lambda0 q y, y(-1) = 0, y'(-1) = 1.
struct CauchyStar {
  double y_star_1 = 0;
  double dy_star_1 = 0;
};

CauchyStar cauchy_star(const CoefficientModel& model, double lambda0);

/// Boundary values of w solving -w'' = lambda0 q w, w'(-1) = g_minus, w'(1) = g_plus.
/// Row 0 is w(-1), row 1 is w(1); column 0 is the response to g_minus = 1,
/// column 1 to g_plus = 1. Requires lambda0 outside the cross-section spectrum.
using NeumannResponse = std::array<std::array<double, 2>, 2>;

NeumannResponse neumann_response(const CoefficientModel& model, double lambda0,
                                 const CrossSectionOptions& options = {});

}  // namespace thinlayer
