#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rnm/log_scaled.hpp"
#include "rnm/quadrature.hpp"

using namespace rnm;
using cplx = std::complex<double>;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const GaussRule& r = gauss_legendre(8);
  double s = 0.0;
  for (Eigen::Index k = 0; k < r.nodes.size(); ++k) s += r.weights[k] * std::pow(r.nodes[k], 14);
  EXPECT_NEAR(s, 2.0 / 15.0, 1e-15);
}

TEST(Integrate, SmoothAndPeaked) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0).value, std::sqrt(std::numbers::pi),
              1e-14);
  const double w = 1e-3;
  const auto r = integrate([&](double x) { return std::exp(-0.5 * x * x / (w * w)); }, -1.0, 1.0);
  EXPECT_NEAR(r.value / (w * std::sqrt(2.0 * std::numbers::pi)), 1.0, 1e-12);
}

TEST(Integrate, SingularEndpoint) {
  // int_0^1 x^{-1/2} dx = 2 and int_0^1 x^{-0.9} log x dx = -100
  EXPECT_NEAR(integrate_singular_end([](double x) { return std::pow(x, -0.5); }, 1.0, -0.5).value, 2.0, 1e-12);
  EXPECT_NEAR(integrate_singular_end([](double x) { return std::pow(x, -0.9) * std::log(x); }, 1.0, -0.9).value,
              -100.0, 1e-9);
}

TEST(CompensatedSum, RecoversCancellation) {
  CompensatedSum<double> s;
  s.add(1e16);
  for (int k = 0; k < 1000; ++k) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}

TEST(LogScaled, Log1pExp) {
  EXPECT_NEAR(std::abs(log1p_exp(cplx(-800.0))), 0.0, 1e-300);
  EXPECT_NEAR(std::abs(log1p_exp(cplx(800.0)) - 800.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(log1p_exp(cplx(0.0)) - std::log(2.0)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(log1p_exp(cplx(0.0, 3.0)) - std::log(1.0 + std::exp(cplx(0.0, 3.0)))), 0.0, 1e-15);
}
