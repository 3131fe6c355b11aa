#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "rnm/errors.hpp"
#include "rnm/exact.hpp"

using namespace rnm;

namespace {

SingularWeightParams weight(cplx u, double a, double rho) {
  SingularWeightParams p;
  p.u = u;
  p.a = a;
  p.rho = rho;
  return p;
}

}  // namespace

TEST(Exact, TrivialWeight) {
  for (const auto& m : {PotentialModel::ginibre(), PotentialModel::figure1()})
    for (int n : {1, 10, 100}) {
      const auto ev = log_mgf_exact(m, n, weight(0.0, 0.0, 0.5), 0.0);
      EXPECT_LE(std::abs(ev.log_mgf), 1e-9) << m.label() << " n=" << n;
    }
}

TEST(Exact, OneParticleClosedForm) {
  const PotentialModel g = PotentialModel::ginibre();
  for (double u : {-1.0, 0.5, 2.0})
    for (double rho : {0.4, 0.8, 0.9}) {
      const double want = std::log(1.0 + (std::exp(u) - 1.0) * (1.0 - std::exp(-rho * rho)));
      EXPECT_NEAR(log_mgf_exact(g, 1, weight(u, 0.0, rho), 0.0).log_mgf.real(), want, 1e-10);
      const IndexRatio r = h_ratio(g, 1, 0, weight(u, 0.0, rho), 0.0);
      EXPECT_NEAR(r.r_in.value(), 1.0 - std::exp(-rho * rho), 1e-12);
    }
}

TEST(Exact, SplitAdditivity) {
  const PotentialModel f = PotentialModel::figure1();
  const auto ev = log_mgf_exact(f, 40, weight(0.7, 0.0, 0.6), 0.667);
  for (const auto& r : ev.per_index) EXPECT_NEAR(r.r_in.value() + r.r_out.value(), 1.0, 1e-10) << r.j;
}

TEST(Exact, FigureOneHighPrecision) {
  // n = 8, alpha = 0.667, u = 1.56, rho = 0.71 r1, independent arbitrary-precision quadrature
  const PotentialModel f = PotentialModel::figure1();
  const double rho = 0.71 * r1_solve(f).r1;
  struct Case {
    double a, want;
  };
  for (const Case& c : {Case{-0.5, 14.939408285946849}, Case{0.3, 1.5354404314835101},
                        Case{1.25, -8.6468815113415597}, Case{3.0, -22.106744273702223}})
    EXPECT_NEAR(log_mgf_exact(f, 8, weight(1.56, c.a, rho), 0.667).log_mgf.real(), c.want, 1e-10) << c.a;
}

TEST(Exact, GinibreLogZ) {
  const PotentialModel g = PotentialModel::ginibre();
  for (int n : {1, 10, 200})
    for (double alpha : {0.0, 0.667, -0.7}) {
      double want = 0.0;
      for (int j = 0; j < n; ++j) want += std::lgamma(j + alpha + 1.0) - (j + alpha + 1.0) * std::log(n);
      const LogZ z = log_z(g, n, alpha);
      EXPECT_NEAR(z.sum_log_h, want, 1e-9 * std::max(1.0, std::abs(want)));
      EXPECT_NEAR(z.value() - z.sum_log_h, std::lgamma(n + 1.0), 1e-12);
    }
}

TEST(Exact, WeightedLogZReducesAtTrivialWeight) {
  const PotentialModel f = PotentialModel::figure1();
  const cplx zw = log_z_weighted(f, 30, weight(0.0, 0.0, 0.5), 0.667);
  EXPECT_NEAR(std::abs(zw - log_z(f, 30, 0.667).value()), 0.0, 1e-9);
}

TEST(Exact, NoOverflowAtModerateN) {
  const PotentialModel f = PotentialModel::figure1();
  for (int n : {50, 51}) EXPECT_TRUE(std::isfinite(log_z(f, n, 0.0).value()));
}

TEST(Exact, GinibreOutsideProbabilities) {
  // n v^2 ~ Gamma(j + 1), so R_out = Q(j + 1, n rho^2)
  const PotentialModel g = PotentialModel::ginibre();
  const int n = 200;
  const double rho = 0.7, tau = rho * rho;
  for (int j = 0; j < n; ++j) {
    const double want = boost::math::gamma_q(j + 1.0, n * rho * rho);
    const double got = h_ratio(g, n, j, weight(1.0, 0.0, rho), 0.0).r_out.value();
    EXPECT_NEAR(got / want, 1.0, 1e-8) << j;
  }
  // exponential smallness below tau_rho / 2
  EXPECT_LT(h_ratio(g, n, 40, weight(1.0, 0.0, rho), 0.0).r_out.value(), 1e-10);
  EXPECT_LT(h_ratio(g, n, static_cast<int>(n * tau / 2), weight(1.0, 0.0, rho), 0.0).r_out.value(), 2e-8);
}

TEST(Exact, CountingProbabilities) {
  const PotentialModel g = PotentialModel::ginibre();
  const Eigen::VectorXd p1 = counting_probs(g, 1, 0.6, 0.0);
  EXPECT_NEAR(p1[0], 1.0 - std::exp(-0.36), 1e-12);
  const Eigen::VectorXd p = counting_probs(PotentialModel::figure1(), 500, 0.8, 0.667);
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    EXPECT_GE(p[j], 0.0);
    EXPECT_LE(p[j], 1.0);
    if (j > 0) EXPECT_LE(p[j], p[j - 1] + 1e-12);
  }
  const double tau = tau_rho(PotentialModel::figure1(), 0.8);
  EXPECT_LT(std::abs(p.sum() - 500 * tau) / (500 * tau), 0.02);
}

TEST(Exact, ConvexInU) {
  const PotentialModel f = PotentialModel::figure1();
  std::vector<double> v;
  for (double u : {-1.0, -0.5, 0.0, 0.5, 1.0}) v.push_back(log_mgf_exact(f, 20, weight(u, 0.0, 0.7), 0.0).log_mgf.real());
  for (size_t k = 1; k < v.size(); ++k) EXPECT_GE(v[k], v[k - 1]);
  for (size_t k = 1; k + 1 < v.size(); ++k) EXPECT_GE(v[k + 1] - 2 * v[k] + v[k - 1], -1e-9);
}

TEST(Exact, ComplexJump) {
  // conjugate symmetry: log E(conj u) = conj log E(u)
  const PotentialModel f = PotentialModel::figure1();
  const cplx a = log_mgf_exact(f, 12, weight(cplx(0.3, 0.4), 0.8, 0.7), 0.0).log_mgf;
  const cplx b = log_mgf_exact(f, 12, weight(cplx(0.3, -0.4), 0.8, 0.7), 0.0).log_mgf;
  EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12);
}

TEST(Exact, DeterministicAcrossThreadCounts) {
  const PotentialModel f = PotentialModel::figure1();
  ExactConfig one, many;
  one.threads = 1;
  many.threads = 4;
  const auto p = weight(1.56, 1.25, 0.8);
  EXPECT_EQ(log_mgf_exact(f, 60, p, 0.667, one).log_mgf, log_mgf_exact(f, 60, p, 0.667, many).log_mgf);
}

TEST(Exact, RejectsBadInputs) {
  const PotentialModel g = PotentialModel::ginibre();
  EXPECT_THROW(log_mgf_exact(g, 0, weight(0.0, 0.0, 0.5), 0.0), DomainError);
  EXPECT_THROW(log_mgf_exact(g, 5, weight(0.0, -1.0, 0.5), 0.0), DomainError);
  EXPECT_THROW(log_mgf_exact(g, 5, weight(0.0, 0.0, 0.5), -1.0), DomainError);
  EXPECT_THROW(h_ratio(g, 5, 5, weight(0.0, 0.0, 0.5), 0.0), DomainError);
  ExactConfig bad;
  bad.quad_rel_tol = 1e-3;
  EXPECT_THROW(log_mgf_exact(g, 5, weight(0.0, 0.0, 0.5), 0.0, bad), DomainError);
}
