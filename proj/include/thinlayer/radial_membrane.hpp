// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "thinlayer/model.hpp"
#include "thinlayer/sturm_liouville.hpp"

namespace thinlayer {

/// Inner: the disk |x| < r1. Outer: the annulus r1 < |x| < r2.
/// Both carry a Dirichlet condition on the curve.
enum class Side { Inner, Outer };

const char* to_string(Side side);

struct ModeEigenpair {
  double lambda = 0;
  Side side = Side::Inner;
  ModeIndex mode;
  int index = 0;          // position within this side and mode
  double trace_dr = 0;    // -u'(r1), made positive by the sign choice
  double norm_factor = 0; // target of the weighted radial norm
  double error = 0;       // extrapolation estimate for lambda
  double norm_check = 0;  // relative deviation of the recomputed norm
};

struct MembraneOptions {
  std::size_t nodes = 4001;
  int refinements = 2;
};

/// Weighted radial norm making the 2D eigenfunction unit in L2(rho).
double radial_norm_target(const ModeIndex& mode);

/// Eigenpairs of -(x u')' + (nu^2/x) u + x a u = lambda x rho u on one side, lambda <= lambda_max.
std::vector<ModeEigenpair> mode_spectrum(Side side, const ModeIndex& mode, const Geometry& geometry,
                                         const CoefficientModel& model, double lambda_max, double tol,
                                         const MembraneOptions& options = {});

struct PsiEntry {
  ModeEigenpair pair;
  double psi_rad = 0;
};

struct PsiVector {
  double lambda0 = 0;
  std::vector<PsiEntry> entries;
};

/// psi_rad = y(1) dV+ - y(-1) dV- for every eigenfunction, using the signed
/// traces of the cross-section level.
PsiVector psi_vector(double lambda0, const CrossSectionLevel& level, const std::vector<ModeEigenpair>& eigenpairs);

}  // namespace thinlayer
