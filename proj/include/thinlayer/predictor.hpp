// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "thinlayer/dtn.hpp"
#include "thinlayer/limit_spectrum.hpp"

namespace thinlayer {

/// IntegerSeries: lambda0 + eps*c.  HalfInteger: lambda0 + sign*c*sqrt(eps).
/// MatrixSeries: lambda0 + eps*c with c an eigenvalue of R or of compressed L.
/// SmallSeries: eps*c from the curve-supported mass problem.
enum class Branch { IntegerSeries, HalfInteger, MatrixSeries, SmallSeries };

const char* to_string(Branch branch);

struct Prediction {
  double lambda0 = 0;
  EigenKind kind = EigenKind::TypeB;
  Branch branch = Branch::IntegerSeries;
  ModeIndex mode;
  double coefficient = 0;
  int sign = 1;
  double expected_order = 2.0;
  std::string provenance;

  /// Predicted eigenvalue at this eps.
  double at(double eps) const;
};

struct PredictOptions {
  DtnOptions dtn;
  CrossSectionOptions cross_section;
  /// Compressed L eigenvalues below this size are treated as zero and dropped.
  double l_zero_tol = 1e-8;
};

/// Predictions for one classified point, restricted to the requested modes.
std::vector<Prediction> predict(const LimitEigenvalue& limit_eig, const std::vector<ModeIndex>& modes,
                                const Geometry& geometry, const CoefficientModel& model,
                                const PredictOptions& options = {});

/// Integer series from the corrector spectrum; the point must be TypeB.
std::vector<Prediction> type_b_predictions(const LimitEigenvalue& limit_eig, const std::vector<ModeIndex>& modes,
                                           const Geometry& geometry, const CoefficientModel& model,
                                           const PredictOptions& options = {});

/// nu = (N-(0) + N+(0)) / q0 per mode; fails if 0 is a membrane eigenvalue.
std::vector<Prediction> small_eigenvalue_series(const Geometry& geometry, const CoefficientModel& model,
                                                const std::vector<ModeIndex>& modes,
                                                const PredictOptions& options = {});

}  // namespace thinlayer
