// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "thinlayer/model.hpp"
#include "thinlayer/radial_membrane.hpp"
#include "thinlayer/sturm_liouville.hpp"

namespace thinlayer {

/// Minus: extension into the annulus, value dz/dr = -dz/dx on the curve.
/// Plus: extension into the inner disk, value -dz/dr = dz/dx on the curve.
enum class DtnSide { Minus, Plus };

const char* to_string(DtnSide side);

inline Side domain_of(DtnSide side) { return side == DtnSide::Plus ? Side::Inner : Side::Outer; }

struct DtnOptions {
  std::size_t nodes = 4001;
  int refinements = 2;
  double pole_guard = 1e-8;
  double intersection_rel_tol = 1e-7;
};

struct DtnValue {
  DtnSide side = DtnSide::Minus;
  ModeIndex mode;
  double lambda = 0;
  double value = 0;
  double error = 0;
};

/// Solves the radial problem with unit Dirichlet data on the curve.
DtnValue dtn_value(DtnSide side, const ModeIndex& mode, double lambda, const Geometry& geometry,
                   const CoefficientModel& model, const DtnOptions& options = {});

struct CorrectorValue {
  ModeIndex mode;
  double lambda0 = 0;
  double n_value = 0;
  double n_minus = 0;
  double n_plus = 0;
  bool projected = false;
};

/// theta- N- + theta+ N+ + (theta+ - theta-) kappa / 2 for one mode.
CorrectorValue n_lambda(const ModeIndex& mode, double lambda0, const CrossSectionLevel& level,
                        const Geometry& geometry, const CoefficientModel& model, const DtnOptions& options = {});

/// As n_lambda, except that a mode resonant with the membrane spectrum at lambda0
/// is flagged as projected and carries no value.
CorrectorValue m_lambda(const ModeIndex& mode, double lambda0, const CrossSectionLevel& level,
                        const Geometry& geometry, const CoefficientModel& model, const DtnOptions& options = {});

/// True if lambda0 lies in the membrane spectrum of this mode (either side).
bool mode_resonant(const ModeIndex& mode, double lambda0, const Geometry& geometry, const CoefficientModel& model,
                   double tol);

}  // namespace thinlayer
