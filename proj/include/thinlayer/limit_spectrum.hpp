// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thinlayer/model.hpp"
#include "thinlayer/radial_membrane.hpp"
#include "thinlayer/sturm_liouville.hpp"

namespace thinlayer {

/// TypeA: membrane only. TypeB: cross-section only. TypeC: both.
enum class EigenKind { TypeA, TypeB, TypeC };

const char* to_string(EigenKind kind);

struct LimitEigenvalue {
  double value = 0;
  EigenKind kind = EigenKind::TypeB;
  int K = 0;        // membrane multiplicity over the listed modes and sectors
  int d = 0;        // rank of the Gram matrix, TypeC only
  int k_minus = 0;  // annulus contributors
  int k_plus = 0;   // inner disk contributors
  std::vector<ModeEigenpair> membrane;
  std::optional<CrossSectionLevel> level;
  std::vector<std::string> warnings;
};

struct ClassifyOptions {
  int nu_max = 3;
  std::vector<Sector> sectors{Sector::Cos};
  double intersection_rel_tol = 1e-7;
  double tol = 1e-7;
  MembraneOptions membrane;
  CrossSectionOptions cross_section;
};

struct LimitSpectrum {
  std::vector<LimitEigenvalue> points;
  std::vector<std::string> warnings;
};

double intersection_tol(double lambda, double rel_tol);

/// Merged spectrum of the membrane and the cross-section up to lambda_max.
LimitSpectrum classify(const Geometry& geometry, const CoefficientModel& model, double lambda_max,
                       const ClassifyOptions& options = {});

struct OmegaEntry {
  double omega = 0;
  ModeIndex mode;
};

struct GramData {
  double lambda0 = 0;
  std::vector<OmegaEntry> omegas;  // ascending
  int rank = 0;
  Eigen::MatrixXd G;
};

GramData gram_matrix(const PsiVector& psi, const Geometry& geometry);

/// Eigenpairs sharing one angular harmonic; all integrals over the curve in a
/// block reduce to the block's angular factor times products of radial traces.
struct CouplingBlock {
  ModeIndex mode;
  std::vector<int> members;  // indices into the eigenpair list
  Eigen::MatrixXd R;
  Eigen::MatrixXd L;
  Eigen::MatrixXd C;
  Eigen::MatrixXd kernel;        // orthonormal basis of {alpha : alpha . Psi = 0}
  Eigen::MatrixXd L_compressed;  // kernel^T L kernel
};

struct CouplingMatrices {
  Eigen::MatrixXd R;  // empty unless requested for a TypeA point
  Eigen::MatrixXd L;  // empty unless requested for a TypeC point
  Eigen::MatrixXd C;
  std::vector<CouplingBlock> blocks;
};

/// Groups eigenpairs by (mode, sector) preserving first appearance order.
std::vector<std::vector<int>> harmonic_blocks(const std::vector<ModeEigenpair>& eigenpairs);

/// Type (a) matrix for the given eigenpairs at lambda0. Fails with an
/// invalid-case error when lambda0 lies in the cross-section spectrum.
Eigen::MatrixXd r_matrix(const std::vector<ModeEigenpair>& eigenpairs, double lambda0, const Geometry& geometry,
                         const CoefficientModel& model, const CrossSectionOptions& cross_section = {});

/// R needs lambda0 outside the cross-section spectrum (pass no level);
/// L needs a cross-section level at lambda0 and its Cauchy solution.
CouplingMatrices coupling_matrices(const LimitEigenvalue& limit_eig, const Geometry& geometry,
                                   const CoefficientModel& model, const std::optional<CauchyStar>& star,
                                   const CrossSectionOptions& cross_section = {});

}  // namespace thinlayer
