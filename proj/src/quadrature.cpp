#include "rnm/quadrature.hpp"

#include <map>
#include <mutex>

namespace rnm {

namespace {

GaussRule golub_welsch(int order) {
  // Jacobi matrix of the Legendre recurrence: off-diagonal k / sqrt(4k^2 - 1)
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = 2.0 * es.eigenvectors().row(0).array().square().transpose();

  // one Newton polish per node on P_n for full double accuracy
  for (int i = 0; i < order; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 2; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = order * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
      if (it == 1) rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    rule.nodes[i] = x;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, golub_welsch(order)).first;
  return it->second;
}

}  // namespace rnm
