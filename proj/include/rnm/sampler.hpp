#pragma once

// Monte Carlo oracle for E[e^{u N_rho} prod_j |v_j - rho|^a]. Under rotation
// invariance the moduli are independent, index j having density proportional
// to v^{2j + 2 alpha + 1} e^{-n q(v)}.

#include <cstdint>

#include <Eigen/Dense>

#include "rnm/potential.hpp"
#include "rnm/specfn.hpp"

namespace rnm {

/// Tabulated CDF of one index density. Between nodes the CDF is the cubic
/// Hermite interpolant of (CDF, density); the first panel uses the local power
/// law when the table starts at the origin.
class InverseCdf {
 public:
  double cdf(double v) const;
  double quantile(double p) const;

  const Eigen::VectorXd& nodes() const { return v_; }
  const Eigen::VectorXd& values() const { return c_; }
  double leaked_mass() const { return leak_; }

 private:
  friend InverseCdf build_inverse_cdf(const PotentialModel&, int, int, double, int);
  double panel_cdf(Eigen::Index i, double v) const;

  Eigen::VectorXd v_, c_, dens_;
  double power_ = 0.0;  // exponent m of v^m near the origin
  double leak_ = 0.0;
};

/// Throws QuadratureError if more than 1e-10 of the mass lies outside the table.
InverseCdf build_inverse_cdf(const PotentialModel& model, int n, int j, double alpha, int grid_size = 2048);

struct SampleBatch {
  std::uint64_t seed = 0;
  int n = 0;
  int reps = 0;
  double alpha = 0.0;
  /// reps x n
  Eigen::MatrixXd moduli;
};

struct SamplerOptions {
  int grid_size = 2048;
  int threads = 0;
};

/// Rep r draws its n uniforms from an mt19937_64 seeded with (seed, r), so the
/// batch does not depend on how reps are spread over threads.
SampleBatch sample_batch(const PotentialModel& model, int n, double alpha, int reps, std::uint64_t seed,
                         const SamplerOptions& opt = {});

struct MgfEstimate {
  cplx mean{0.0, 0.0};
  double stderr_re = 0.0, stderr_im = 0.0;
  /// heavy-tailed estimator (a <= -0.5)
  bool unreliable = false;
  /// fraction of sampled moduli with ||z| - rho| < 1e-8
  double near_rho_fraction = 0.0;

  double stderr_abs() const;
};

MgfEstimate estimate_mgf(const SampleBatch& batch, const SingularWeightParams& params);

}  // namespace rnm
