// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "thinlayer/errors.hpp"

namespace thinlayer {

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::IntegerSeries: return "IntegerSeries";
    case Branch::HalfInteger: return "HalfInteger";
    case Branch::MatrixSeries: return "MatrixSeries";
    case Branch::SmallSeries: return "SmallSeries";
  }
  return "?";
}

double Prediction::at(double eps) const {
  if (branch == Branch::HalfInteger) return lambda0 + sign * coefficient * std::sqrt(eps);
  return lambda0 + eps * coefficient;
}

namespace {

bool wanted(const std::vector<ModeIndex>& modes, const ModeIndex& m) {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

Prediction make(const LimitEigenvalue& e, Branch branch, const ModeIndex& mode, double coefficient,
                double order, std::string provenance, int sign = 1) {
  Prediction p;
  p.lambda0 = e.value;
  p.kind = e.kind;
  p.branch = branch;
  p.mode = mode;
  p.coefficient = coefficient;
  p.sign = sign;
  p.expected_order = order;
  p.provenance = std::move(provenance);
  return p;
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  if (m.size() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace

std::vector<Prediction> type_b_predictions(const LimitEigenvalue& e, const std::vector<ModeIndex>& modes,
                                           const Geometry& geometry, const CoefficientModel& model,
                                           const PredictOptions& options) {
  if (e.kind != EigenKind::TypeB)
    fail(ErrorKind::InvalidCase, std::string("the corrector series applies to TypeB points, this one is ") +
                                     to_string(e.kind));
  std::vector<Prediction> out;
  for (const auto& mode : modes) {
    const auto c = n_lambda(mode, e.value, *e.level, geometry, model, options.dtn);
    out.push_back(make(e, Branch::IntegerSeries, mode, c.n_value, 2.0, "type b: corrector operator N"));
  }
  return out;
}

std::vector<Prediction> predict(const LimitEigenvalue& e, const std::vector<ModeIndex>& modes,
                                const Geometry& geometry, const CoefficientModel& model,
                                const PredictOptions& options) {
  switch (e.kind) {
    case EigenKind::TypeB: return type_b_predictions(e, modes, geometry, model, options);

    case EigenKind::TypeA: {
      std::vector<Prediction> out;
      const auto cm = coupling_matrices(e, geometry, model, std::nullopt, options.cross_section);
      for (const auto& b : cm.blocks) {
        if (!wanted(modes, b.mode)) continue;
        for (double r : sorted_eigenvalues(b.R))
          out.push_back(make(e, Branch::MatrixSeries, b.mode, r, 2.0, "type a: eigenvalue of R"));
      }
      return out;
    }

    case EigenKind::TypeC: {
      std::vector<Prediction> out;
      for (const auto& mode : modes) {
        const auto c = m_lambda(mode, e.value, *e.level, geometry, model, options.dtn);
        if (c.projected) continue;
        out.push_back(make(e, Branch::IntegerSeries, mode, c.n_value, 2.0, "type c: projected corrector M"));
      }
      const auto gram = gram_matrix(psi_vector(e.value, *e.level, e.membrane), geometry);
      for (const auto& w : gram.omegas) {
        if (!wanted(modes, w.mode)) continue;
        for (int sign : {-1, 1})
          out.push_back(make(e, Branch::HalfInteger, w.mode, w.omega, 1.0, "type c: Gram matrix frequency", sign));
      }
      const auto star = cauchy_star(model, e.value);
      const auto cm = coupling_matrices(e, geometry, model, star, options.cross_section);
      for (const auto& b : cm.blocks) {
        if (!wanted(modes, b.mode)) continue;
        for (double nu : sorted_eigenvalues(b.L_compressed)) {
          if (std::abs(nu) <= options.l_zero_tol) continue;
          out.push_back(make(e, Branch::MatrixSeries, b.mode, nu, 2.0, "type c: compressed L candidate"));
        }
      }
      return out;
    }
  }
  return {};
}

std::vector<Prediction> small_eigenvalue_series(const Geometry& geometry, const CoefficientModel& model,
                                                const std::vector<ModeIndex>& modes, const PredictOptions& options) {
  const double q0 = q_mass(model);
  std::vector<Prediction> out;
  for (const auto& mode : modes) {
    if (mode_resonant(mode, 0.0, geometry, model, options.dtn.intersection_rel_tol))
      fail(ErrorKind::InvalidCase, "0 is a membrane eigenvalue of mode " + to_string(mode) +
                                       "; the small series goes through the TypeC path");
    const double nm = dtn_value(DtnSide::Minus, mode, 0.0, geometry, model, options.dtn).value;
    const double np = dtn_value(DtnSide::Plus, mode, 0.0, geometry, model, options.dtn).value;
    Prediction p;
    p.lambda0 = 0;
    p.kind = EigenKind::TypeB;
    p.branch = Branch::SmallSeries;
    p.mode = mode;
    p.coefficient = (nm + np) / q0;
    p.expected_order = 2.0;
    p.provenance = "small series: mass concentrated on the curve";
    out.push_back(p);
  }
  return out;
}

}  // namespace thinlayer
