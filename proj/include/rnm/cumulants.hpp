#pragma once

// Cumulants of the disk-counting statistic N_rho.

#include <functional>
#include <vector>

#include "rnm/asymptotics.hpp"
#include "rnm/exact.hpp"

namespace rnm {

struct CumulantSet {
  int n = 0;
  double rho = 0.0;
  /// exact[j-1] = kappa_j
  std::vector<double> exact;
  /// asymptotic[j-1] = leading-order prediction for kappa_j (empty unless requested)
  std::vector<cplx> asymptotic;
};

/// Bernoulli-sum cumulants kappa_1..kappa_jmax, jmax in 1..4.
CumulantSet cumulants_exact(const PotentialModel& model, int n, double rho, double alpha, int jmax = 4,
                            const ExactConfig& cfg = {});

/// Closed forms from success probabilities p_j.
std::vector<double> bernoulli_cumulants(const Eigen::VectorXd& p, int jmax);

/// log prod_j (1 + (e^u - 1) p_j)
cplx bernoulli_log_mgf(const Eigen::VectorXd& p, cplx u);

struct ContourOptions {
  double radius = 0.2;
  int nodes = 64;
  int threads = 1;
};

/// kappa_j = j!/(2 pi i) oint logf(z) z^{-j-1} dz on |z| = radius, j = 1..jmax,
/// by the trapezoidal rule. Returned vector is indexed j-1.
std::vector<cplx> contour_cumulants(const std::function<cplx(cplx)>& logf, int jmax, const ContourOptions& opt = {});

/// Derivatives d^j/du^j at u = 0 of the counting coefficients C1, C2, C3, j = 1..jmax.
struct CoefficientDerivatives {
  std::vector<cplx> c1, c2, c3;
};

CoefficientDerivatives counting_coefficient_derivatives(const PotentialModel& model, double rho, double alpha, int jmax,
                                                        const RegularizationConfig& reg = {},
                                                        const ContourOptions& opt = {});

/// j = 1: C1'(0) n + C3'(0); odd j >= 3: C3^{(j)}(0); even j: C2^{(j)}(0) sqrt(n).
cplx cumulants_asymptotic(const PotentialModel& model, double rho, double alpha, int n, int j,
                          const RegularizationConfig& reg = {}, const ContourOptions& opt = {});

/// Same, from precomputed derivatives.
cplx cumulant_prediction(const CoefficientDerivatives& d, int n, int j);

}  // namespace rnm
