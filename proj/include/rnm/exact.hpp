#pragma once

// Exact finite-n moment generating function through the Andreief product:
// each index j contributes log(e^u R_in + R_out), R = h^{(in/out)}_{n,j} / h_{n,j}.

#include <Eigen/Dense>

#include <vector>

#include "rnm/log_scaled.hpp"
#include "rnm/potential.hpp"
#include "rnm/specfn.hpp"

namespace rnm {

struct ExactConfig {
  double quad_rel_tol = 1e-11;
  /// Half-width of the endpoint panels at rho; 0 selects 8 / sqrt(n V''), capped at rho/4.
  double split_epsilon = 0.0;
  int max_panels = 4000;
  /// Integration window: log-integrand drop below its maximum.
  double window_drop = 100.0;
  /// Worker threads over indices; 0 uses hardware concurrency.
  int threads = 0;

  void validate() const;
};

struct IndexRatio {
  int j = 0;
  LogScaled<double> r_in, r_out;
  /// log h_{n,j} without any normalization.
  double log_h = 0.0;
  double rel_error = 0.0;
};

struct ExactEvaluation {
  cplx log_mgf{0.0, 0.0};
  std::vector<IndexRatio> per_index;
  double error_estimate = 0.0;
};

/// R_in and R_out for one index.
IndexRatio h_ratio(const PotentialModel& model, int n, int j, const SingularWeightParams& params, double alpha,
                   const ExactConfig& cfg = {});

/// log E_{n,u,a} = sum_j log(e^u R_in + R_out), compensated ordered sum.
ExactEvaluation log_mgf_exact(const PotentialModel& model, int n, const SingularWeightParams& params,
                              double alpha, const ExactConfig& cfg = {});

struct LogZ {
  /// sum_j log h_{n,j}
  double sum_log_h = 0.0;
  /// log n!, the permutation count of the n-fold integral
  double log_n_factorial = 0.0;
  std::vector<double> log_h;
  /// log of the n-fold integral Z_n = n! prod_j h_{n,j}
  double value() const { return sum_log_h + log_n_factorial; }
};

LogZ log_z(const PotentialModel& model, int n, double alpha, const ExactConfig& cfg = {});

/// log Z_{n,u,a} = log Z_n + log E_{n,u,a}, n-fold normalization.
cplx log_z_weighted(const PotentialModel& model, int n, const SingularWeightParams& params, double alpha,
                    const ExactConfig& cfg = {});

/// p_j = P(|z_j| < rho) for the independent moduli, j = 0..n-1.
Eigen::VectorXd counting_probs(const PotentialModel& model, int n, double rho, double alpha,
                               const ExactConfig& cfg = {});

}  // namespace rnm
