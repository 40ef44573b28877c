// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thinlayer/errors.hpp"
#include "thinlayer/sturm_liouville.hpp"

using namespace thinlayer;
using std::numbers::pi;

TEST(CrossSection, ConstantDensityClosedForm) {
  CoefficientModel m;
  const auto s = solve_cross_section(m, 5, 1e-9);
  ASSERT_EQ(s.levels.size(), 6u);
  for (int k = 0; k <= 5; ++k) {
    const auto& l = s.levels[std::size_t(k)];
    EXPECT_EQ(l.index, k);
    EXPECT_NEAR(l.lambda, std::pow(k * pi / 2, 2), 1e-9);
    // y = cos(k pi (n + 1) / 2), or 1/sqrt(2) at k = 0
    const double t = k == 0 ? 0.5 : 1.0;
    EXPECT_NEAR(l.theta_minus, t, 1e-8);
    EXPECT_NEAR(l.theta_plus, t, 1e-8);
    EXPECT_GT(l.y_plus, 0);
    EXPECT_NEAR(l.y_minus, k % 2 ? -std::sqrt(t) : std::sqrt(t), 1e-8);
  }
  EXPECT_EQ(s.levels[0].lambda, 0.0);
}

TEST(CrossSection, ScaledDensity) {
  // q = 4 shrinks every eigenvalue by 4 and every theta by 4
  CoefficientModel m;
  m.q = Profile::constant(4);
  const auto s = solve_cross_section(m, 3, 1e-9);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_NEAR(s.levels[std::size_t(k)].lambda, std::pow(k * pi / 2, 2) / 4, 1e-9);
    EXPECT_NEAR(s.levels[std::size_t(k)].theta_plus, 0.25, 1e-8);
  }
}

TEST(CrossSection, PolynomialDensityAgainstShooting) {
  CoefficientModel m;
  m.q = Profile::parse("poly 1.2 0.3 -0.4");
  const auto s = solve_cross_section(m, 4, 1e-9);
  for (int k = 1; k <= 4; ++k) {
    const auto& l = s.levels[std::size_t(k)];
    const double ref = oracle::cross_section_eigenvalue(m.q, k, 40);
    EXPECT_NEAR(l.lambda, ref, 1e-8 * ref) << "level " << k;
    const auto [ym, yp] = oracle::cross_section_ends(m.q, ref);
    EXPECT_NEAR(l.y_minus, ym, 1e-7);
    EXPECT_NEAR(l.y_plus, yp, 1e-7);
  }
}

TEST(CrossSection, BelowAndResolutionErrors) {
  CoefficientModel m;
  const auto s = cross_section_below(m, 10.0, 1e-9);
  ASSERT_EQ(s.levels.size(), 3u);  // 0, pi^2/4, pi^2
  EXPECT_NEAR(s.levels.back().lambda, pi * pi, 1e-9);
  CrossSectionOptions tiny;
  tiny.nodes = 41;
  try {
    solve_cross_section(m, 20, 1e-9, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resolution);
  }
}

TEST(CrossSection, DiscreteFunctionIsNormalized) {
  CoefficientModel m;
  m.q = Profile::parse("poly 1 0.5");
  const auto f = cross_section_function(m, 2, 2001);
  double norm = 0;
  for (std::size_t i = 0; i + 1 < f.n.size(); ++i) {
    const double h = f.n[i + 1] - f.n[i];
    norm += 0.5 * h * (m.q(f.n[i]) * f.y[i] * f.y[i] + m.q(f.n[i + 1]) * f.y[i + 1] * f.y[i + 1]);
  }
  EXPECT_NEAR(norm, 1.0, 1e-5);
  EXPECT_GT(f.y.back(), 0);
}

TEST(CauchyStar, ConstantDensity) {
  CoefficientModel m;
  for (double l : {0.7, pi * pi / 4, 5.0}) {
    const double k = std::sqrt(l);
    const auto c = cauchy_star(m, l);
    EXPECT_NEAR(c.y_star_1, std::sin(2 * k) / k, 1e-11);
    EXPECT_NEAR(c.dy_star_1, std::cos(2 * k), 1e-11);
  }
}

TEST(CauchyStar, PolynomialAgainstRk4) {
  CoefficientModel m;
  m.q = Profile::parse("poly 1 -0.3 0.2");
  const double l = 3.1;
  const auto ref = oracle::rk4([&](double t, double y) { return -l * m.q(t) * y; }, -1, 1, {0, 1}, 20000);
  const auto c = cauchy_star(m, l);
  EXPECT_NEAR(c.y_star_1, ref.y, 1e-10);
  EXPECT_NEAR(c.dy_star_1, ref.dy, 1e-10);
}

TEST(NeumannResponse, ConstantDensity) {
  // w = A cos(k(n+1)) + B sin(k(n+1)); w'(-1) = g-, w'(1) = g+
  CoefficientModel m;
  const double l = 1.3, k = std::sqrt(l);
  const auto r = neumann_response(m, l);
  for (int col = 0; col < 2; ++col) {
    const double gm = col == 0 ? 1 : 0, gp = col == 1 ? 1 : 0;
    const double B = gm / k;
    const double A = (B * k * std::cos(2 * k) - gp) / (k * std::sin(2 * k));
    EXPECT_NEAR(r[0][std::size_t(col)], A, 1e-9);
    EXPECT_NEAR(r[1][std::size_t(col)], A * std::cos(2 * k) + B * std::sin(2 * k), 1e-9);
  }
  // reciprocity up to the orientation of the outward normals
  EXPECT_NEAR(r[1][0], -r[0][1], 1e-9);
}
