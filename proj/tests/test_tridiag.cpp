// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "thinlayer/discretization.hpp"
#include "thinlayer/tridiag.hpp"

using namespace thinlayer;

namespace {

TridiagPencil random_pencil(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  TridiagPencil p;
  for (std::size_t i = 0; i < n; ++i) {
    p.diag.push_back(4 * u(rng));
    p.mass.push_back(u(rng));
    if (i + 1 < n) p.off.push_back(-u(rng));
  }
  return p;
}

// dense reference: eigenvalues of M^-1/2 K M^-1/2
Eigen::VectorXd dense_eigs(const TridiagPencil& p) {
  const auto n = Eigen::Index(p.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = p.diag[i] / p.mass[i];
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = p.off[i] / std::sqrt(p.mass[i] * p.mass[i + 1]);
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues();
}

}  // namespace

TEST(Tridiag, MatchesDenseSolver) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_pencil(rng, 5 + trial * 7);
    const auto ref = dense_eigs(p);
    for (std::size_t k = 0; k < p.size(); ++k) {
      EXPECT_NEAR(p.eigenvalue(k), ref(Eigen::Index(k)), 1e-11 * std::max(1.0, std::abs(ref(Eigen::Index(k)))));
      EXPECT_NEAR(p.refined_eigenvalue(k), ref(Eigen::Index(k)), 1e-11 * std::max(1.0, std::abs(ref(Eigen::Index(k)))));
    }
    EXPECT_EQ(p.count_below(ref(2) + 1e-9), 3u);
    EXPECT_EQ(p.count_below(ref(2) - 1e-9), 2u);
    const auto [lo, hi] = p.bounds();
    EXPECT_LE(lo, ref(0));
    EXPECT_GE(hi, ref(ref.size() - 1));
  }
}

TEST(Tridiag, EigenvectorIsMNormalizedResidualFree) {
  std::mt19937_64 rng(11);
  const auto p = random_pencil(rng, 40);
  const double lambda = p.eigenvalue(5);
  const auto v = p.eigenvector(lambda);
  double norm = 0;
  for (std::size_t i = 0; i < v.size(); ++i) norm += p.mass[i] * v[i] * v[i];
  EXPECT_NEAR(norm, 1.0, 1e-12);
  const auto r = p.apply(lambda, v);
  for (double x : r) EXPECT_NEAR(x, 0.0, 1e-9);
  EXPECT_NEAR(p.rayleigh_quotient(v), lambda, 1e-11);
}

TEST(Tridiag, SolveInvertsApply) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 3u, 17u}) {
    const auto p = random_pencil(rng, n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.0 + double(i));
    const double sigma = 0.37;
    const auto b = p.apply(sigma, x);
    const auto y = p.solve(sigma, b);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], x[i], 1e-10);
  }
}

TEST(Tridiag, EigenvaluesInWindow) {
  std::mt19937_64 rng(5);
  const auto p = random_pencil(rng, 30);
  const auto ref = dense_eigs(p);
  const auto in = p.eigenvalues_in(ref(3) - 1e-8, ref(7) + 1e-8);
  ASSERT_EQ(in.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(in[std::size_t(i)], ref(3 + i), 1e-10);
}

TEST(Discretization, SlabDirichletEigenvalues) {
  // -u'' = lambda u on (0, pi), u = 0 at both ends: lambda = k^2
  std::vector<double> levels;
  auto nodes = uniform_nodes(0, std::numbers::pi, 201);
  for (int r = 0; r < 3; ++r) {
    if (r) nodes = bisect_cells(nodes);
    BoxProblem bp;
    bp.nodes = nodes;
    bp.cylindrical = false;
    bp.density = [](double) { return 1.0; };
    bp.left = EndCondition::Dirichlet;
    bp.right = EndCondition::Dirichlet;
    const auto sys = assemble(bp);
    EXPECT_EQ(sys.first, 1u);
    EXPECT_EQ(sys.pencil.size(), nodes.size() - 2);
    levels.push_back(sys.pencil.refined_eigenvalue(2));
  }
  const auto ex = romberg(levels);
  EXPECT_NEAR(ex.value, 9.0, 1e-10);
  EXPECT_LT(ex.error, 1e-8);
}

TEST(Discretization, RombergOnPolynomialError) {
  // f(h) = 2 + 3h^2 - h^4 is extrapolated exactly
  std::vector<double> levels;
  for (double h : {0.1, 0.05, 0.025}) levels.push_back(2 + 3 * h * h - h * h * h * h);
  EXPECT_NEAR(romberg(levels).value, 2.0, 1e-14);
}

TEST(Discretization, OneSidedDerivative) {
  const double x[] = {0.0, 0.1, 0.3};
  const double u[] = {1.0, 1.0 + 0.2 + 0.01, 1.0 + 0.6 + 0.09};  // 1 + 2x + x^2
  EXPECT_NEAR(one_sided_derivative(x, u, false), 2.0, 1e-12);
  const double xr[] = {0.7, 0.9, 1.0};
  const double ur[] = {0.49, 0.81, 1.0};
  EXPECT_NEAR(one_sided_derivative(xr + 2, ur + 2, true), 2.0, 1e-12);
}

TEST(Discretization, BisectCells) {
  const auto n = bisect_cells({0.0, 1.0, 3.0});
  ASSERT_EQ(n.size(), 5u);
  EXPECT_DOUBLE_EQ(n[1], 0.5);
  EXPECT_DOUBLE_EQ(n[3], 2.0);
}
