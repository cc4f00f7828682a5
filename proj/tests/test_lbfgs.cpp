#include <gtest/gtest.h>

#include <cmath>

#include "payner/lbfgs.hpp"

using namespace payner;

TEST(Lbfgs, Quadratic) {
  // f = sum_i (i+1) (x_i - i)^2
  auto f = [](const std::vector<double>& x, std::vector<double>& g) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - static_cast<double>(i);
      s += static_cast<double>(i + 1) * d * d;
      g[i] = 2.0 * static_cast<double>(i + 1) * d;
    }
    return s;
  };
  LbfgsParams p;
  p.convergence_tol = 0;
  p.max_iterations = 100;
  auto r = lbfgs_minimize(f, std::vector<double>(8, 0.0), p);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(r.x[i], static_cast<double>(i), 1e-6);
}

TEST(Lbfgs, RosenbrockMonotone) {
  auto f = [](const std::vector<double>& x, std::vector<double>& g) {
    const double a = 1 - x[0], b = x[1] - x[0] * x[0];
    g[0] = -2 * a - 400 * x[0] * b;
    g[1] = 200 * b;
    return a * a + 100 * b * b;
  };
  LbfgsParams p;
  p.max_iterations = 500;
  p.convergence_tol = 1e-14;
  double last = INFINITY;
  bool monotone = true;
  auto r = lbfgs_minimize(f, {-1.2, 1.0}, p, [&](std::size_t, double obj, double, const std::vector<double>&) {
    monotone &= obj <= last;
    last = obj;
    return true;
  });
  EXPECT_TRUE(monotone);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(Lbfgs, StopsAtMaxIterationsAndOnCallback) {
  auto f = [](const std::vector<double>& x, std::vector<double>& g) {
    g[0] = 2 * (x[0] - 3);
    return (x[0] - 3) * (x[0] - 3) + std::cos(x[0]);
  };
  LbfgsParams p;
  p.max_iterations = 1;
  p.convergence_tol = 0;
  EXPECT_EQ(lbfgs_minimize(f, {0.0}, p).iterations, 1u);
  p.max_iterations = 50;
  auto r = lbfgs_minimize(f, {0.0}, p, [](std::size_t, double, double, const std::vector<double>&) { return false; });
  EXPECT_EQ(r.stop_reason, "callback");
}

TEST(Lbfgs, ZeroGradientAtStart) {
  auto f = [](const std::vector<double>& x, std::vector<double>& g) {
    g[0] = 2 * x[0];
    return x[0] * x[0];
  };
  auto r = lbfgs_minimize(f, {0.0}, {});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.stop_reason, "gradient");
  EXPECT_EQ(r.iterations, 0u);
}
