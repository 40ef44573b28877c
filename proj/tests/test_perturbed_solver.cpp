// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thinlayer/errors.hpp"
#include "thinlayer/perturbed_solver.hpp"

using namespace thinlayer;

namespace {

// exact eigenvalue of the three-region problem (rho = 1 outside, q / eps^2 inside)
double layered_eigenvalue(int nu, double eps, double q, double lo, double hi) {
  return oracle::bisect(
      [&](double l) { return oracle::layered_residual(l, nu, 1 - eps, 1 + eps, 2, 1, q / (eps * eps), 1); }, lo, hi);
}

}  // namespace

TEST(LayerMesh, ResolvesLayerAndGradesSmoothly) {
  Geometry g;
  for (double eps : {0.08, 0.01}) {
    const auto mesh = build_mesh(eps, g);
    EXPECT_GE(mesh.layer_nodes, 64);
    EXPECT_LE(mesh.max_ratio, 1.2 + 1e-9);
    EXPECT_DOUBLE_EQ(mesh.nodes.front(), 0.0);
    EXPECT_DOUBLE_EQ(mesh.nodes.back(), 2.0);
    // both layer edges are mesh nodes, so the density jump sits on a node
    auto has = [&](double x) {
      for (double n : mesh.nodes)
        if (std::abs(n - x) < 1e-14) return true;
      return false;
    };
    EXPECT_TRUE(has(1 - eps));
    EXPECT_TRUE(has(1 + eps));
    for (std::size_t i = 1; i < mesh.nodes.size(); ++i) ASSERT_GT(mesh.nodes[i], mesh.nodes[i - 1]);
  }
}

TEST(LayerMesh, Preconditions) {
  Geometry g;
  EXPECT_THROW(build_mesh(0.6, g), Error);
  EXPECT_THROW(build_mesh(-0.1, g), Error);
  MeshParams bad;
  bad.grading = 1.5;
  EXPECT_THROW(build_mesh(0.02, g, bad), Error);
}

TEST(PerturbedDensity, HeavyInsideTheLayer) {
  Geometry g;
  CoefficientModel m;
  m.q = Profile::parse("poly 1 0.5");
  EXPECT_DOUBLE_EQ(perturbed_density(0.5, 0.1, g, m), 1.0);
  // x = 0.95 is n = 0.5 in the layer variable
  EXPECT_NEAR(perturbed_density(0.95, 0.1, g, m), 1.25 / 0.01, 1e-10);
}

TEST(PerturbedSolver, SmallEigenvalueAgainstBesselMatching) {
  Geometry g;
  CoefficientModel m;
  const double eps = 0.02;
  const auto solved = solve_mode_eps({0, Sector::Cos}, eps, g, m, {0, 1}, 1e-9);
  ASSERT_EQ(solved.eigenvalues.size(), 1u);
  EXPECT_EQ(solved.sturm_count, 1u);
  const double ref = layered_eigenvalue(0, eps, 1, 0.001, 0.05);
  EXPECT_NEAR(solved.eigenvalues[0].value, ref, 1e-9);
  EXPECT_NEAR(solved.eigenvalues[0].value, eps / (2 * std::log(2.0)), 0.15 * eps / (2 * std::log(2.0)));
  EXPECT_EQ(solved.eigenvalues[0].index, 0u);
}

TEST(PerturbedSolver, HigherModesAgainstBesselMatching) {
  Geometry g;
  CoefficientModel m;
  m.q = Profile::constant(2);
  const double eps = 0.04;
  for (int nu : {1, 3}) {
    const auto solved = solve_mode_eps({nu, Sector::Sin}, eps, g, m, {0.5, 1.5}, 1e-9);
    ASSERT_EQ(solved.eigenvalues.size(), 1u) << nu;
    const double v = solved.eigenvalues[0].value;
    EXPECT_NEAR(v, layered_eigenvalue(nu, eps, 2, v - 1e-3, v + 1e-3), 1e-8) << nu;
  }
}

TEST(PerturbedSolver, CountShrinksWithWindow) {
  Geometry g;
  CoefficientModel m;
  std::size_t last = 1000;
  for (double hi : {3.0, 2.6, 2.0, 1.0, 0.1}) {
    const auto s = solve_mode_eps({1, Sector::Cos}, 0.04, g, m, {0, hi}, 1e-8);
    EXPECT_LE(s.sturm_count, last);
    EXPECT_EQ(s.sturm_count, s.eigenvalues.size());
    last = s.sturm_count;
  }
}

TEST(PerturbedSolver, RejectsBadWindow) {
  Geometry g;
  CoefficientModel m;
  EXPECT_THROW(solve_mode_eps({0, Sector::Cos}, 0.04, g, m, {1, 1}, 1e-8), Error);
  EXPECT_THROW(solve_mode_eps({0, Sector::Cos}, 0.04, g, m, {0, INFINITY}, 1e-8), Error);
  EXPECT_THROW(solve_mode_eps({0, Sector::Cos}, 0.04, g, m, {0, 1}, 0), Error);
}
