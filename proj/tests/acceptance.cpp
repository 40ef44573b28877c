// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. With an argument, runs that criterion only.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "properties.hpp"
#include "thinlayer/config.hpp"
#include "thinlayer/dtn.hpp"
#include "thinlayer/limit_spectrum.hpp"
#include "thinlayer/perturbed_solver.hpp"
#include "thinlayer/predictor.hpp"
#include "thinlayer/radial_membrane.hpp"
#include "thinlayer/sturm_liouville.hpp"
#include "thinlayer/verification.hpp"

using namespace thinlayer;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  bool ok = true;
  std::ostringstream note;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << "[" << what << "] ";
    }
  }
};

RunConfig baseline() {
  return parse_config(
      "[geometry]\nr1 = 1\nr2 = 2\nouter_bc = dirichlet\n"
      "[coefficients]\nrho = const 1\nq = const 1\n"
      "[sweep]\neps = 0.08, 0.04, 0.02, 0.01\nlambda_max = 10\nmodes = 0-5\n");
}

const LimitEigenvalue* point_near(const LimitSpectrum& s, double value) {
  for (const auto& p : s.points)
    if (std::abs(p.value - value) < 1e-6 * std::max(1.0, value)) return &p;
  return nullptr;
}

std::vector<ModeIndex> cos_modes(int lo, int hi) {
  std::vector<ModeIndex> out;
  for (int nu = lo; nu <= hi; ++nu) out.push_back({nu, Sector::Cos});
  return out;
}

void cross_section(Check& c) {
  CoefficientModel m;
  const auto s = solve_cross_section(m, 5, 1e-10);
  for (int k = 0; k <= 5; ++k) {
    const auto& l = s.levels[std::size_t(k)];
    const double exact = std::pow(k * kPi / 2, 2);
    const double theta = k == 0 ? 0.5 : 1.0;  // cos(k pi (n+1)/2) has unit q-norm for k >= 1
    c.note << "l" << k << " err " << std::abs(l.lambda - exact) << "; ";
    c.expect(std::abs(l.lambda - exact) <= 1e-9, "lambda_" + std::to_string(k));
    c.expect(std::abs(l.theta_plus - theta) <= 1e-8 && std::abs(l.theta_minus - theta) <= 1e-8,
             "theta_" + std::to_string(k));
  }
}

void membrane(Check& c) {
  Geometry g;
  CoefficientModel m;
  const ModeIndex mode{0, Sector::Cos};
  const double j = oracle::bessel_zero(0, 1), ann = oracle::annulus_root(0, 1, 2, 1);
  const auto inner = mode_spectrum(Side::Inner, mode, g, m, 10, 1e-9).front().lambda;
  const auto outer = mode_spectrum(Side::Outer, mode, g, m, 12, 1e-9).front().lambda;
  c.note << "disk err " << std::abs(inner - j * j) << ", annulus err " << std::abs(outer - ann * ann);
  c.expect(std::abs(inner - j * j) <= 1e-7, "disk");
  c.expect(std::abs(outer - ann * ann) <= 1e-6, "annulus");
}

// Order window for every sweep of the given predictions, also reporting the fitted orders.
void order_window(Check& c, const std::vector<Prediction>& preds, const RunConfig& cfg, double lo, double hi) {
  for (const auto& p : preds) {
    const auto r = sweep(p, cfg.eps, cfg.geometry, cfg.model, cfg.sweep_options());
    const bool in = r.used_samples >= 2 && r.fitted_order >= lo && r.fitted_order <= hi;
    bool matched = true;
    for (const auto& s : r.samples) matched &= s.matched;
    c.note << to_string(p.mode) << (p.sign < 0 ? "-" : "") << " p=" << r.fitted_order << " " << to_string(r.verdict)
           << "; ";
    c.expect(in && matched, "order " + to_string(p.mode));
  }
}

std::vector<Prediction> type_b_at(const RunConfig& cfg, double lambda0, const std::vector<ModeIndex>& modes) {
  auto opts = cfg.classify_options();
  opts.nu_max = 5;
  const auto spec = classify(cfg.geometry, cfg.model, cfg.lambda_max, opts);
  const auto* pt = point_near(spec, lambda0);
  if (!pt) throw std::runtime_error("limit point missing");
  return type_b_predictions(*pt, modes, cfg.geometry, cfg.model, cfg.predict_options());
}

void type_b_zero(Check& c) {
  const auto cfg = baseline();
  const auto preds = type_b_at(cfg, 0.0, cos_modes(0, 3));
  const double mode0 = 1 / (2 * std::log(2.0));
  c.expect(std::abs(preds[0].coefficient - mode0) <= 1e-6, "lambda1(0)");
  c.expect(std::abs(preds[1].coefficient - 4.0 / 3) <= 1e-6, "lambda1(1)");
  c.note << "lambda1(0) err " << std::abs(preds[0].coefficient - mode0) << ", lambda1(1) err "
         << std::abs(preds[1].coefficient - 4.0 / 3) << "; ";
  order_window(c, preds, cfg, 1.8, 2.2);
}

void type_b_quarter(Check& c) {
  const auto cfg = baseline();
  const double lambda0 = kPi * kPi / 4;
  const auto preds = type_b_at(cfg, lambda0, cos_modes(0, 2));
  for (const auto& p : preds) {
    // level 1 of q = 1 has theta = 1 on both sides, so the curvature term drops out
    const double ref = oracle::shoot_dtn(false, p.mode.nu, lambda0, cfg.geometry, cfg.model) +
                       oracle::shoot_dtn(true, p.mode.nu, lambda0, cfg.geometry, cfg.model);
    c.expect(std::abs(p.coefficient - ref) <= 1e-7 * std::max(1.0, std::abs(ref)), "n_lambda " + to_string(p.mode));
  }
  order_window(c, preds, cfg, 1.8, 2.2);
}

RunConfig tuned() {
  const double j = oracle::bessel_zero(0, 1);
  auto cfg = baseline();
  cfg.model.a = Profile::constant(kPi * kPi / 4 - j * j);
  cfg.lambda_max = 3;
  cfg.modes = {0};
  return cfg;
}

void type_c(Check& c) {
  const auto cfg = tuned();
  const double lambda0 = kPi * kPi / 4;
  auto opts = cfg.classify_options();
  opts.nu_max = 0;
  const auto spec = classify(cfg.geometry, cfg.model, cfg.lambda_max, opts);
  const auto* pt = point_near(spec, lambda0);
  c.expect(pt && pt->kind == EigenKind::TypeC && pt->K == 1 && pt->d == 1, "TypeC K=d=1");
  if (!pt) return;
  const auto preds = predict(*pt, {{0, Sector::Cos}}, cfg.geometry, cfg.model, cfg.predict_options());
  std::vector<Prediction> half;
  for (const auto& p : preds)
    if (p.branch == Branch::HalfInteger) half.push_back(p);
  c.expect(half.size() == 2, "two half-integer branches");
  if (half.size() != 2) return;
  const double omega = half[0].coefficient;
  c.note << "omega " << omega << "; ";

  const double eps = 0.01;
  const double reach = 2 * omega * std::sqrt(eps);
  const auto near = solve_mode_eps({0, Sector::Cos}, eps, cfg.geometry, cfg.model, {lambda0 - reach, lambda0 + reach},
                                   cfg.sweep_options().tol, cfg.sweep_options().mesh);
  c.note << "eigenvalues within 2 omega sqrt(eps): " << near.sturm_count << "; ";
  c.expect(near.sturm_count == 2, "exactly two near lambda0");

  const auto up = sweep(half[0].sign > 0 ? half[0] : half[1], cfg.eps, cfg.geometry, cfg.model, cfg.sweep_options());
  const auto down = sweep(half[0].sign > 0 ? half[1] : half[0], cfg.eps, cfg.geometry, cfg.model, cfg.sweep_options());
  const auto measured = symmetric_sqrt_coefficient(up, down, eps);
  c.expect(measured && std::abs(*measured - omega) <= 0.05 * omega, "sqrt(eps) coefficient within 5%");
  if (measured) c.note << "measured " << *measured << " (" << 100 * std::abs(*measured / omega - 1) << "%); ";
  for (const auto* r : {&up, &down}) {
    c.note << (r->prediction.sign > 0 ? "+" : "-") << " p=" << r->fitted_order << "; ";
    c.expect(r->used_samples >= 2 && r->fitted_order >= 0.75 && r->fitted_order <= 1.25, "residual order");
  }
}

void type_a(Check& c) {
  const auto cfg = baseline();
  const double j = oracle::bessel_zero(0, 1);
  auto opts = cfg.classify_options();
  opts.nu_max = 0;
  const auto spec = classify(cfg.geometry, cfg.model, cfg.lambda_max, opts);
  const auto* pt = point_near(spec, j * j);
  c.expect(pt && pt->kind == EigenKind::TypeA && pt->K == 1, "TypeA K=1");
  if (!pt) return;
  const auto preds = predict(*pt, {{0, Sector::Cos}}, cfg.geometry, cfg.model, cfg.predict_options());
  const auto R = coupling_matrices(*pt, cfg.geometry, cfg.model, std::nullopt).R;
  c.expect(preds.size() == 1 && R.size() == 1, "one prediction");
  if (preds.size() != 1 || R.size() != 1) return;
  c.note << "R " << R(0, 0) << "; ";
  c.expect(std::abs(preds[0].coefficient - R(0, 0)) <= 1e-12 * std::abs(R(0, 0)), "coefficient is R");
  order_window(c, preds, cfg, 1.8, 2.2);
}

void small_series(Check& c) {
  const auto cfg = baseline();
  const auto modes = cos_modes(0, 5);
  const auto small = small_eigenvalue_series(cfg.geometry, cfg.model, modes, cfg.predict_options());
  const auto zero = type_b_at(cfg, 0.0, modes);
  const auto level = solve_cross_section(cfg.model, 0, 1e-10).levels[0];
  const double q0 = q_mass(cfg.model);
  double worst = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto n = n_lambda(modes[i], 0.0, level, cfg.geometry, cfg.model, cfg.predict_options().dtn);
    const double identity = (n.n_minus + n.n_plus) / q0;
    worst = std::max({worst, std::abs(small[i].coefficient - identity), std::abs(small[i].coefficient - zero[i].coefficient)});
  }
  const double closed = 1 / (2 * cfg.geometry.r1 * std::log(cfg.geometry.r2 / cfg.geometry.r1));
  c.note << "worst identity gap " << worst << ", mode 0 err " << std::abs(small[0].coefficient - closed);
  c.expect(worst <= 1e-10, "identity");
  c.expect(std::abs(small[0].coefficient - closed) <= 1e-10, "mode 0 closed form");
}

void structure(Check& c) {
  const auto cfg = baseline();
  const auto base = classify(cfg.geometry, cfg.model, cfg.lambda_max, cfg.classify_options());
  const auto* zero = point_near(base, 0.0);
  c.expect(zero && zero->kind == EigenKind::TypeB, "0 is TypeB");
  const auto t = tuned();
  auto opts = t.classify_options();
  opts.nu_max = 0;
  const auto spec = classify(t.geometry, t.model, t.lambda_max, opts);
  const auto* pt = point_near(spec, kPi * kPi / 4);
  c.expect(pt && pt->kind == EigenKind::TypeC && pt->K == 1 && pt->d == 1, "tuned TypeC (1, 1)");
  if (pt && pt->level) {
    const auto g = gram_matrix(psi_vector(pt->value, *pt->level, pt->membrane), t.geometry);
    c.note << "rank(G) " << g.rank << ", d " << pt->d;
    c.expect(g.rank == pt->d, "rank(G) = d");
  }
}

void properties(Check& c) {
  int failed = 0;
  for (unsigned seed = 0; seed < props::kCases; ++seed) {
    const auto cs = props::random_case(seed);
    for (const auto& [name, fn] : {std::pair{"lagrange", &props::lagrange}, std::pair{"trace", &props::trace_identity},
                                   std::pair{"sign-flip", &props::sign_flip}, std::pair{"sturm", &props::sturm_counts},
                                   std::pair{"mesh", &props::mesh_doubling}}) {
      const auto r = fn(cs);
      if (!r.ok) {
        ++failed;
        c.expect(false, std::string(name) + " seed " + std::to_string(seed) + ": " + r.detail);
      }
    }
  }
  c.note << props::kCases << " models x 5 properties, " << failed << " failed";
}

struct Criterion {
  int id;
  const char* title;
  double budget;  // seconds
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "cross-section oracle", 1, cross_section},
      {2, "membrane oracle", 5, membrane},
      {3, "type b at 0, modes 0-3", 60, type_b_zero},
      {4, "type b at pi^2/4, modes 0-2", 60, type_b_quarter},
      {5, "type c half-integer pair", 120, type_c},
      {6, "type a at j01^2", 60, type_a},
      {7, "small-eigenvalue identity", 60, small_series},
      {8, "structural counts", 60, structure},
      {9, "property suites", 600, properties},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const auto& cr : all) {
    if (only && cr.id != only) continue;
    Check c;
    c.note.precision(4);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < cr.budget, "over time budget");
    if (!c.ok) ++failures;
    std::printf("%s %d %s (%.2f s): %s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.title, secs, c.note.str().c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
