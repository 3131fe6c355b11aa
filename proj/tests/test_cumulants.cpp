#include <gtest/gtest.h>

#include <cmath>

#include "rnm/cumulants.hpp"
#include "rnm/errors.hpp"

using namespace rnm;

TEST(Contour, Polynomials) {
  const auto k1 = contour_cumulants([](cplx u) { return u; }, 4);
  EXPECT_NEAR(std::abs(k1[0] - 1.0), 0.0, 1e-12);
  for (int j = 1; j < 4; ++j) EXPECT_NEAR(std::abs(k1[j]), 0.0, 1e-12);
  const auto k2 = contour_cumulants([](cplx u) { return 0.5 * u * u; }, 4);
  EXPECT_NEAR(std::abs(k2[1] - 1.0), 0.0, 1e-12);
  for (int j : {0, 2, 3}) EXPECT_NEAR(std::abs(k2[j]), 0.0, 1e-12);
}

TEST(Contour, RejectsTooFewNodes) {
  ContourOptions o;
  o.nodes = 6;
  EXPECT_THROW(contour_cumulants([](cplx u) { return u; }, 4, o), DomainError);
}

TEST(Bernoulli, DeterministicCount) {
  Eigen::VectorXd p(4);
  p << 1.0, 1.0, 0.0, 0.0;
  const auto k = bernoulli_cumulants(p, 4);
  EXPECT_EQ(k[0], 2.0);
  EXPECT_EQ(k[1], 0.0);
}

TEST(Bernoulli, SingleGinibreParticle) {
  const double rho = 0.6, p = 1.0 - std::exp(-rho * rho);
  const auto c = cumulants_exact(PotentialModel::ginibre(), 1, rho, 0.0, 2);
  EXPECT_NEAR(c.exact[0], p, 1e-12);
  EXPECT_NEAR(c.exact[1], p * std::exp(-rho * rho), 1e-12);
}

TEST(Bernoulli, ContourAgreesWithClosedForms) {
  const Eigen::VectorXd p = counting_probs(PotentialModel::figure1(), 60, 0.8, 0.667);
  const auto closed = bernoulli_cumulants(p, 4);
  const auto contour = contour_cumulants([&](cplx u) { return bernoulli_log_mgf(p, u); }, 4);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(contour[j].real(), closed[j], 1e-9) << j + 1;
}

TEST(Bernoulli, ContourOfExactLogMgf) {
  const PotentialModel g = PotentialModel::ginibre();
  const auto c = cumulants_exact(g, 20, 0.7, 0.0, 4);
  ContourOptions o;
  o.threads = 0;
  const auto k = contour_cumulants(
      [&](cplx u) {
        SingularWeightParams p;
        p.u = u;
        p.rho = 0.7;
        return log_mgf_exact(g, 20, p, 0.0).log_mgf;
      },
      4, o);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(k[j].real(), c.exact[j], 1e-9) << j + 1;
}

TEST(Contour, RadiusRobustness) {
  const Eigen::VectorXd p = counting_probs(PotentialModel::ginibre(), 100, 0.7, 0.0);
  auto f = [&](cplx u) { return bernoulli_log_mgf(p, u); };
  ContourOptions half;
  half.radius = 0.1;
  const auto a = contour_cumulants(f, 4), b = contour_cumulants(f, 4, half);
  for (int j = 0; j < 4; ++j) EXPECT_LE(std::abs(a[j] - b[j]), 1e-8) << j + 1;
}

TEST(Asymptotic, GinibreStructure) {
  const PotentialModel g = PotentialModel::ginibre();
  const auto d = counting_coefficient_derivatives(g, 0.7, 0.0, 4);
  EXPECT_NEAR(d.c1[0].real(), 0.49, 1e-12);
  EXPECT_GT(cumulant_prediction(d, 100, 2).real(), 0.0);
  // odd orders above one do not depend on n
  EXPECT_EQ(cumulant_prediction(d, 100, 3), cumulant_prediction(d, 500, 3));
  EXPECT_NEAR(std::abs(cumulant_prediction(d, 500, 1) - cumulants_asymptotic(g, 0.7, 0.0, 500, 1)), 0.0, 1e-12);
}

TEST(Asymptotic, FirstCumulantAgainstExact) {
  const PotentialModel g = PotentialModel::ginibre();
  const double exact = cumulants_exact(g, 500, 0.7, 0.0, 1).exact[0];
  const double asym = cumulants_asymptotic(g, 0.7, 0.0, 500, 1).real();
  EXPECT_LT(std::abs(exact - asym) / exact, 0.01);
}

TEST(Asymptotic, VarianceRatioApproachesOne) {
  const PotentialModel g = PotentialModel::ginibre();
  const auto d = counting_coefficient_derivatives(g, 0.7, 0.0, 2);
  double prev = 0.0;
  for (int n : {100, 500}) {
    const double r = cumulants_exact(g, n, 0.7, 0.0, 2).exact[1] / cumulant_prediction(d, n, 2).real();
    EXPECT_GT(r, 0.8);
    EXPECT_LT(r, 1.2);
    if (prev != 0.0) EXPECT_LT(std::abs(r - 1.0), std::abs(prev - 1.0));
    prev = r;
  }
}
