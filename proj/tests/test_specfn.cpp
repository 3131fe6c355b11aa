#include <gtest/gtest.h>

#include <cmath>

#include "rnm/errors.hpp"
#include "rnm/specfn.hpp"

using namespace rnm;

namespace {

SingularWeightParams weight(double u, double a) {
  SingularWeightParams p;
  p.u = u;
  p.a = a;
  return p;
}

}  // namespace

TEST(Elementary, ErfcAndLogGamma) {
  EXPECT_NEAR(erfc_eval(3.5) / 7.4309837234141274552e-7, 1.0, 1e-13);
  EXPECT_NEAR(log_erfc(30.0), -903.97411711064387808, 1e-11);
  EXPECT_NEAR(log_gamma(0.3), 1.0957979948180755606, 1e-14);
  EXPECT_NEAR(log_gamma(17.5), 32.081114895947349487, 1e-13);
}

TEST(Charlier, ZeroJumpVanishes) {
  for (double t : {-3.0, 0.0, 2.5}) {
    EXPECT_EQ(std::abs(f_charlier(t, 1.0)), 0.0);
    EXPECT_EQ(std::abs(g_charlier(t, 1.0)), 0.0);
  }
}

TEST(Pcf, MatchesHighPrecisionValues) {
  struct Case {
    double a, x, want;
  };
  for (const Case& c : {Case{0.3, 1.7, 0.086637504435287378206}, Case{1.25, -2.5, 7.1445762041686874751},
                        Case{-0.5, 4.0, 0.00016423498459196949348}, Case{3.0, -6.0, 97.758502710618227006},
                        Case{2.0, 0.0, 0.6266570686577501256}})
    EXPECT_NEAR(scaled_pcf(c.a, c.x).value() / c.want, 1.0, 1e-12) << c.a << " " << c.x;
}

TEST(Pcf, ThreeTermRecurrence) {
  for (double a : {-0.5, 0.3, 1.25, 3.0})
    for (double y = -8.0; y <= 8.0; y += 0.5) {
      const double d2 = scaled_pcf(a + 1.0, y).value();
      const double d1 = scaled_pcf(a, y).value();
      const double d0 = scaled_pcf_shift(a, y).value();
      const double scale = std::max({std::abs((a + 1.0) * d2), std::abs(y * d1), std::abs(d0)});
      EXPECT_LE(std::abs((a + 1.0) * d2 + y * d1 - d0) / scale, 1e-10) << a << " " << y;
    }
}

TEST(LogH, HighPrecisionValues) {
  EXPECT_NEAR(log_h_au(weight(1.56, 1.25), 0.7).real(), 0.45805043751564343597, 1e-12);
  EXPECT_NEAR(log_h_au(weight(-1.0, -0.5), -1.3).real(), -0.53082896820469098399, 1e-12);
  EXPECT_NEAR(log_h_au(weight(0.5, 3.0), 2.2).real(), 2.8481321608300061638, 1e-12);
}

TEST(LogH, TrivialWeightIsZero) {
  for (double x : {-5.0, -0.3, 0.0, 1.0, 7.0}) EXPECT_NEAR(std::abs(log_h_au(weight(0.0, 0.0), x)), 0.0, 1e-13);
}

TEST(LogH, ReflectionSymmetry) {
  // H_{a,u}(-x) = e^u H_{a,-u}(x)
  for (double x : {0.4, 2.0, 5.5}) {
    const cplx lhs = log_h_au(weight(1.56, 1.25), -x);
    const cplx rhs = 1.56 + log_h_au(weight(-1.56, 1.25), x);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(LogH, DerivativeMatchesFiniteDifference) {
  for (double a : {-0.5, 0.3, 1.25, 3.0})
    for (double y = -8.0; y <= 8.0; y += 0.5) {
      const auto p = weight(1.56, a);
      const double h = 1e-5;
      const cplx num = (log_h_au(p, y + h) - log_h_au(p, y - h)) / (2.0 * h);
      EXPECT_LE(std::abs(num - dlog_h_au(p, y)), 1e-6) << a << " " << y;
    }
}

TEST(LogH, TailExpansion) {
  for (double a : {1.25, 2.5})
    for (double x : {-20.0, 20.0}) {
      const auto p = weight(1.56, a);
      EXPECT_LE(std::abs(log_h_au(p, x) - log_h_tail(p, x)), 1e-6);
    }
}

TEST(LogH, TailSeriesLeadingTerms) {
  const double a = 1.25;
  const auto d = tail_series(a, 3);
  EXPECT_NEAR(d[0], a * (a - 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(d[1], -a * (a - 1.0) * (2.0 * a - 3.0) / 4.0, 1e-15);
}

TEST(LogH, ComplexJumpStaysFinite) {
  SingularWeightParams p = weight(0.0, 0.7);
  p.u = cplx(0.4, 0.45);
  for (double x = -10.0; x <= 10.0; x += 0.5) {
    const cplx v = log_h_au(p, x);
    EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
  }
}

TEST(AssociatedHermite, BridgeToKernel) {
  for (int a = 1; a <= 4; ++a)
    for (double u : {0.0, 1.56})
      for (double y = -6.0; y <= 6.0; y += 0.25) {
        const cplx h = std::exp(log_h_au(weight(u, a), y));
        EXPECT_LE(std::abs(g0_integer(a, u, y / std::sqrt(2.0)) - h) / std::abs(h), 1e-10) << a << " " << u << " " << y;
      }
}

TEST(AssociatedHermite, Recurrence) {
  EXPECT_NEAR(std::abs(assoc_hermite(0.0, 2, 1.5) - cplx(1.5 * 1.5 - 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(assoc_hermite(0.5, 3, 2.0) - (2.0 * (4.0 - 1.5) - 2.5 * 2.0)), 0.0, 1e-14);
}

TEST(Params, Validation) {
  EXPECT_THROW(weight(0.0, -1.0).validate(), DomainError);
  SingularWeightParams p;
  p.u = cplx(0.0, 0.8);
  EXPECT_THROW(p.validate(), BranchError);
  p.u = 0.0;
  p.rho = 0.0;
  EXPECT_THROW(p.validate(), DomainError);
}
