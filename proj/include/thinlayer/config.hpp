// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thinlayer/limit_spectrum.hpp"
#include "thinlayer/model.hpp"
#include "thinlayer/perturbed_solver.hpp"
#include "thinlayer/verification.hpp"

namespace thinlayer {

/// Which predictions a run keeps.
enum class KindFilter { All, TypeA, TypeB, TypeC, Small };

const char* to_string(KindFilter filter);
KindFilter parse_filter(const std::string& text);

/// Fully resolved run settings. Parsed from an INI-style file:
///
///   [geometry]      r1, r2, outer_bc (dirichlet|neumann|robin), robin_sigma
///   [coefficients]  rho, a, q  ("const c" | "poly c0 c1 ..." | "table lo hi v0 v1 ...")
///   [sweep]         modes, sectors (cos|sin|both), eps, lambda_max, targets, filter
///   [tolerances]    intersection_rel, solver, order, window_constant, pole_guard,
///                   cross_section, membrane
///   [mesh]          layer_min, bulk_cells, grading, refinements, membrane_nodes,
///                   cross_section_nodes, dtn_nodes
///   [output]        dir, name, jobs
///
/// The Robin condition reads u' + robin_sigma u = 0 at |x| = r2, outward derivative.
/// Lines starting with '#' or ';' are comments. Unknown sections or keys are errors.
struct RunConfig {
  Geometry geometry;
  CoefficientModel model;

  std::vector<int> modes{0, 1, 2, 3};
  std::vector<Sector> sectors{Sector::Cos};
  std::vector<double> eps{0.08, 0.04, 0.02, 0.01};
  double lambda_max = 10.0;
  std::vector<double> targets;  // empty: every point of the limit spectrum
  KindFilter filter = KindFilter::All;

  double intersection_rel = 1e-7;
  double solver_tol = 1e-8;
  double order_tol = 0.25;
  double window_constant = 5.0;
  double pole_guard = 1e-8;
  double cross_section_tol = 1e-9;
  double membrane_tol = 1e-7;

  MeshParams mesh;
  std::size_t membrane_nodes = 4001;
  std::size_t cross_section_nodes = 2001;
  std::size_t dtn_nodes = 4001;

  std::string out_dir = "out";
  std::string name = "thinlayer";
  int jobs = 1;

  /// Applies one "section.key = value" setting; line is used in messages.
  void set(const std::string& section, const std::string& key, const std::string& value, int line = 0);
  void validate() const;

  /// Every mode index over the configured sectors.
  std::vector<ModeIndex> mode_list() const;

  /// Canonical text form; parsing it reproduces this config.
  std::string to_text() const;

  ClassifyOptions classify_options() const;
  PredictOptions predict_options() const;
  SweepOptions sweep_options() const;
};

RunConfig parse_config(const std::string& text, const std::string& origin = "config");
RunConfig load_config(const std::string& path);

/// "0-3", "0,2,5" or a mix.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace thinlayer
