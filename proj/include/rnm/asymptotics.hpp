#pragma once

// Coefficients of log E_{n,u,a} = C1 n + C2 sqrt(n) + C3 + o(1).
//
// Two independent code paths: the counting formulas (a = 0) built on the
// erfc functional F, and the general formulas built on log H_{a,u}.

#include <string>

#include "rnm/potential.hpp"
#include "rnm/specfn.hpp"

namespace rnm {

enum class TheoremTag { counting, general, mittag_leffler };

std::string to_string(TheoremTag t);

struct ExpansionCoefficients {
  cplx c1{0.0, 0.0}, c2{0.0, 0.0}, c3{0.0, 0.0};
  TheoremTag tag = TheoremTag::general;
  SingularWeightParams params;
  double alpha = 0.0;
  std::string potential;
};

struct RegularizationConfig {
  /// Truncation point X of the x-integrals over [-X, X].
  double x_cutoff = 30.0;
  /// Number of terms of the large-|x| series of log H used for the C2 tail correction.
  int tail_order = 4;
  double rel_tol = 1e-12;
  /// Floor for the x-integrals; log H itself carries ~1e-14 quadrature noise.
  double abs_tol = 1e-12;
  /// Floor for the x-weighted integral of the constant term (the weight x amplifies that noise).
  double moment_abs_tol = 1e-10;
  double pcf_rel_tol = 1e-13;
  /// Half-width of the Taylor fallback around rho in the C3 radial integral.
  double taylor_radius = 1e-3;

  void validate() const;
};

/// u tau_rho + a int_0^{r1} log|r - rho| 2 r Delta Q(r) dr
cplx c1_general(const PotentialModel& model, const SingularWeightParams& params);

/// rho sqrt(Delta Q(rho)) [int_{-X}^{X} (log H - a log|x| - u 1{x<0}) dx + tail(X)]
cplx c2_general(const PotentialModel& model, const SingularWeightParams& params, const RegularizationConfig& reg = {});

/// All terms of the general constant coefficient.
cplx c3_general(const PotentialModel& model, const SingularWeightParams& params, double alpha,
                const RegularizationConfig& reg = {});

ExpansionCoefficients general_coeffs(const PotentialModel& model, const SingularWeightParams& params, double alpha,
                                     const RegularizationConfig& reg = {});

/// Counting coefficients (a = 0) from the erfc functional F only.
ExpansionCoefficients counting_coeffs(const PotentialModel& model, cplx u, double rho, double alpha,
                                      const RegularizationConfig& reg = {});

/// int_0^inf t (F(t, e^u) - F(t, e^{-u})) dt
cplx counting_moment_integral(cplx u, const RegularizationConfig& reg = {});

/// -(1/2 + alpha) u + (b/3) u + (2b/3) int_0^inf t (F(t, e^u) - F(t, e^{-u})) dt
cplx mittag_leffler_c3(cplx u, double b, double alpha, const RegularizationConfig& reg = {});

struct IdentityResidual {
  cplx lhs, rhs;
  double residual;
};

/// int G(t, e^u) (5t^2 - 1)/3 dt  vs  u/3 - (10/3) int_0^inf t (F(t, e^u) - F(t, e^{-u})) dt
IdentityResidual appendix_a_identity_check(cplx u, const RegularizationConfig& reg = {});

/// The removable-singularity integrand (g(x) - g(rho)) / (x - rho), g = x Delta Q'/Delta Q,
/// with the Taylor fallback inside reg.taylor_radius.
double c3_radial_integrand(const PotentialModel& model, double rho, double x, const RegularizationConfig& reg = {});

/// C1 n + C2 sqrt(n) + C3
cplx expansion_eval(const ExpansionCoefficients& c, double n);

}  // namespace rnm
