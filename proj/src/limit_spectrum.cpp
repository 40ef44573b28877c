// SPDX-License-Identifier: Apache-2.0
#include "thinlayer/limit_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thinlayer/errors.hpp"

namespace thinlayer {

const char* to_string(EigenKind kind) {
  switch (kind) {
    case EigenKind::TypeA: return "TypeA";
    case EigenKind::TypeB: return "TypeB";
    case EigenKind::TypeC: return "TypeC";
  }
  return "?";
}

double intersection_tol(double lambda, double rel_tol) { return rel_tol * std::max(1.0, std::abs(lambda)); }

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

LimitSpectrum classify(const Geometry& geometry, const CoefficientModel& model, double lambda_max,
                       const ClassifyOptions& options) {
  geometry.validate();
  model.validate(geometry);
  LimitSpectrum out;
  if (lambda_max < 0) {
    out.warnings.push_back("lambda_max = " + fmt(lambda_max) + " is negative; the spectrum below it is empty");
    return out;
  }

  const auto cross = cross_section_below(model, lambda_max, options.tol, options.cross_section);

  std::vector<ModeEigenpair> membrane;
  for (int nu = 0; nu <= options.nu_max; ++nu) {
    for (Side side : {Side::Inner, Side::Outer}) {
      const auto pairs = mode_spectrum(side, ModeIndex{nu, Sector::Cos}, geometry, model, lambda_max, options.tol,
                                       options.membrane);
      // the sin sector has the same radial problem
      for (Sector sector : options.sectors) {
        if (nu == 0 && sector == Sector::Sin) continue;
        for (auto p : pairs) {
          p.mode.sector = sector;
          membrane.push_back(p);
        }
      }
    }
  }
  std::stable_sort(membrane.begin(), membrane.end(),
                   [](const ModeEigenpair& a, const ModeEigenpair& b) { return a.lambda < b.lambda; });

  // cluster membrane eigenvalues that coincide within the intersection tolerance
  std::vector<std::vector<ModeEigenpair>> clusters;
  std::vector<std::string> cluster_warnings;
  for (const auto& p : membrane) {
    const double tol = intersection_tol(p.lambda, options.intersection_rel_tol);
    if (!clusters.empty()) {
      const double gap = p.lambda - clusters.back().back().lambda;
      if (gap <= tol) {
        clusters.back().push_back(p);
        continue;
      }
      if (gap <= 10 * tol)
        out.warnings.push_back("membrane eigenvalues " + fmt(clusters.back().back().lambda) + " and " +
                               fmt(p.lambda) + " are separated by only " + fmt(gap));
    }
    clusters.push_back({p});
  }

  std::vector<bool> level_used(cross.levels.size(), false);
  for (auto& cluster : clusters) {
    LimitEigenvalue e;
    double sum = 0;
    for (const auto& p : cluster) {
      sum += p.lambda;
      (p.side == Side::Inner ? e.k_plus : e.k_minus) += 1;
    }
    e.value = sum / double(cluster.size());
    e.K = int(cluster.size());
    e.membrane = cluster;
    e.kind = EigenKind::TypeA;
    const double tol = intersection_tol(e.value, options.intersection_rel_tol);
    for (std::size_t i = 0; i < cross.levels.size(); ++i) {
      const double gap = std::abs(cross.levels[i].lambda - e.value);
      if (gap <= tol) {
        e.kind = EigenKind::TypeC;
        e.level = cross.levels[i];
        e.value = cross.levels[i].lambda;
        level_used[i] = true;
      } else if (gap <= 10 * tol) {
        e.warnings.push_back("cross-section level " + std::to_string(i) + " at " + fmt(cross.levels[i].lambda) +
                             " lies just outside the intersection tolerance");
      }
    }
    if (e.kind == EigenKind::TypeC) {
      const auto gram = gram_matrix(psi_vector(e.value, *e.level, e.membrane), geometry);
      e.d = gram.rank;
    }
    out.points.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < cross.levels.size(); ++i) {
    if (level_used[i]) continue;
    LimitEigenvalue e;
    e.value = cross.levels[i].lambda;
    e.kind = EigenKind::TypeB;
    e.level = cross.levels[i];
    const double tol = intersection_tol(e.value, options.intersection_rel_tol);
    for (const auto& p : membrane) {
      const double gap = std::abs(p.lambda - e.value);
      if (gap > tol && gap <= 10 * tol)
        e.warnings.push_back("membrane eigenvalue " + fmt(p.lambda) + " of mode " + to_string(p.mode) +
                             " lies just outside the intersection tolerance");
    }
    out.points.push_back(std::move(e));
  }
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const LimitEigenvalue& a, const LimitEigenvalue& b) { return a.value < b.value; });
  return out;
}

std::vector<std::vector<int>> harmonic_blocks(const std::vector<ModeEigenpair>& eigenpairs) {
  std::vector<std::vector<int>> blocks;
  std::vector<ModeIndex> keys;
  for (int i = 0; i < int(eigenpairs.size()); ++i) {
    const auto& m = eigenpairs[std::size_t(i)].mode;
    auto it = std::find(keys.begin(), keys.end(), m);
    if (it == keys.end()) {
      keys.push_back(m);
      blocks.push_back({i});
    } else {
      blocks[std::size_t(it - keys.begin())].push_back(i);
    }
  }
  return blocks;
}

GramData gram_matrix(const PsiVector& psi, const Geometry& geometry) {
  const int k = int(psi.entries.size());
  GramData g;
  g.lambda0 = psi.lambda0;
  g.G = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const auto& a = psi.entries[std::size_t(i)];
      const auto& b = psi.entries[std::size_t(j)];
      if (!(a.pair.mode == b.pair.mode)) continue;  // distinct harmonics are orthogonal on the circle
      g.G(i, j) = angular_factor(a.pair.mode, geometry.r1) * a.psi_rad * b.psi_rad;
    }
  if (k == 0) return g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.G);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < k; ++i) {
    const double w2 = es.eigenvalues()(i);
    if (w2 <= 1e-10 * scale) continue;
    OmegaEntry o;
    o.omega = std::sqrt(w2);
    Eigen::Index arg = 0;
    es.eigenvectors().col(i).cwiseAbs().maxCoeff(&arg);
    o.mode = psi.entries[std::size_t(arg)].pair.mode;
    g.omegas.push_back(o);
  }
  g.rank = int(g.omegas.size());
  return g;
}

namespace {

struct Traces {
  Eigen::VectorXd minus, plus;  // normal derivatives on each side, oriented toward the center
};

Traces block_traces(const std::vector<ModeEigenpair>& pairs, const std::vector<int>& members) {
  const auto n = Eigen::Index(members.size());
  Traces t{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = pairs[std::size_t(members[std::size_t(i)])];
    (p.side == Side::Inner ? t.plus : t.minus)(i) = p.trace_dr;
  }
  return t;
}

Eigen::MatrixXd scatter(const std::vector<CouplingBlock>& blocks, Eigen::Index k,
                        Eigen::MatrixXd CouplingBlock::*field) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
  for (const auto& b : blocks) {
    const auto& m = b.*field;
    if (m.size() == 0) return {};
    for (std::size_t i = 0; i < b.members.size(); ++i)
      for (std::size_t j = 0; j < b.members.size(); ++j) out(b.members[i], b.members[j]) = m(Eigen::Index(i), Eigen::Index(j));
  }
  return out;
}

void check_outside_cross_section(double lambda0, const CoefficientModel& model, const CrossSectionOptions& options) {
  const auto cross = cross_section_below(model, lambda0 + 1.0, 1e-6, options);
  for (const auto& l : cross.levels)
    if (std::abs(l.lambda - lambda0) <= intersection_tol(lambda0, 1e-7))
      fail(ErrorKind::InvalidCase, "R is undefined at " + fmt(lambda0) + ": it is cross-section level " +
                                       std::to_string(l.index) + "; use the TypeC path");
}

Eigen::MatrixXd r_block(const Traces& t, double factor, const NeumannResponse& resp) {
  const Eigen::Index n = t.plus.size();
  Eigen::VectorXd w_minus = resp[0][0] * t.minus + resp[0][1] * t.plus;
  Eigen::VectorXd w_plus = resp[1][0] * t.minus + resp[1][1] * t.plus;
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      r(i, j) = factor * ((t.plus(j) - w_plus(j)) * t.plus(i) + (w_minus(j) + t.minus(j)) * t.minus(i));
  return r;
}

}  // namespace

Eigen::MatrixXd r_matrix(const std::vector<ModeEigenpair>& eigenpairs, double lambda0, const Geometry& geometry,
                         const CoefficientModel& model, const CrossSectionOptions& cross_section) {
  check_outside_cross_section(lambda0, model, cross_section);
  const auto resp = neumann_response(model, lambda0, cross_section);
  const auto k = Eigen::Index(eigenpairs.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
  for (const auto& members : harmonic_blocks(eigenpairs)) {
    const auto t = block_traces(eigenpairs, members);
    const double factor = angular_factor(eigenpairs[std::size_t(members[0])].mode, geometry.r1);
    const auto r = r_block(t, factor, resp);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j < members.size(); ++j) out(members[i], members[j]) = r(Eigen::Index(i), Eigen::Index(j));
  }
  return out;
}

CouplingMatrices coupling_matrices(const LimitEigenvalue& limit_eig, const Geometry& geometry,
                                   const CoefficientModel& model, const std::optional<CauchyStar>& star,
                                   const CrossSectionOptions& cross_section) {
  if (limit_eig.K < 1 || limit_eig.membrane.empty())
    fail(ErrorKind::InvalidCase, "coupling matrices need a membrane eigenvalue (K >= 1)");
  const auto& pairs = limit_eig.membrane;
  const bool type_a = limit_eig.kind == EigenKind::TypeA;
  if (!type_a && (!limit_eig.level || !star))
    fail(ErrorKind::InvalidCase, "the L matrix needs the cross-section level and its Cauchy solution");

  NeumannResponse resp{};
  if (type_a) {
    check_outside_cross_section(limit_eig.value, model, cross_section);
    resp = neumann_response(model, limit_eig.value, cross_section);
  }

  CouplingMatrices out;
  for (const auto& members : harmonic_blocks(pairs)) {
    CouplingBlock b;
    b.mode = pairs[std::size_t(members[0])].mode;
    b.members = members;
    const double factor = angular_factor(b.mode, geometry.r1);
    const auto t = block_traces(pairs, members);
    b.C = factor * (t.plus * t.plus.transpose() + t.minus * t.minus.transpose());
    if (type_a) {
      b.R = r_block(t, factor, resp);
    } else {
      const double coef = 1.0 - star->y_star_1 / star->dy_star_1;
      b.L = factor * (coef * t.plus * t.plus.transpose() + t.minus * t.minus.transpose());
      const Eigen::VectorXd psi = limit_eig.level->y_plus * t.plus - limit_eig.level->y_minus * t.minus;
      const Eigen::Index n = psi.size();
      if (psi.norm() == 0) {
        b.kernel = Eigen::MatrixXd::Identity(n, n);
      } else {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(psi);
        const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
        b.kernel = q.rightCols(n - 1);
      }
      b.L_compressed = b.kernel.transpose() * b.L * b.kernel;
    }
    out.blocks.push_back(std::move(b));
  }
  const auto k = Eigen::Index(pairs.size());
  out.C = scatter(out.blocks, k, &CouplingBlock::C);
  if (type_a)
    out.R = scatter(out.blocks, k, &CouplingBlock::R);
  else
    out.L = scatter(out.blocks, k, &CouplingBlock::L);
  return out;
}

}  // namespace thinlayer
