#pragma once

// Rotation-invariant potentials Q(z) = q(|z|) and their droplet geometry.
//
// Laplacian convention: Delta Q(r) = (q''(r) + q'(r)/r) / 4, which makes
// sigma_Q = Delta Q 1_S d^2z/pi a probability measure on the disk of radius r1.

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace rnm {

struct MonomialTerm {
  double coeff;
  double power;
};

/// Callback profile for q; derivs[k] evaluates q^{(k)}, k = 0..4.
struct RadialProfile {
  std::array<std::function<double(double)>, 5> derivs;
  /// lim_{r->0} Delta Q(r); leave NaN to use q''(0)/2.
  double delta_q_at_zero = std::numeric_limits<double>::quiet_NaN();
};

class PotentialModel {
 public:
  /// q(r) = sum_k c_k r^{p_k}, c_k >= 0, p_k in {1} or [2, inf).
  static PotentialModel monomials(std::vector<MonomialTerm> terms, std::string label = "monomial");
  static PotentialModel callbacks(RadialProfile profile, std::string label = "callback");

  static PotentialModel ginibre() { return monomials({{1.0, 2.0}}, "ginibre"); }
  /// q(r) = 0.2 r^2 + 0.2345 r^3.
  static PotentialModel figure1() { return monomials({{0.2, 2.0}, {0.2345, 3.0}}, "figure1"); }

  bool is_monomial() const { return !terms_.empty(); }
  const std::vector<MonomialTerm>& terms() const { return terms_; }
  const std::string& label() const { return label_; }

  /// k-th derivative of q, k = 0..4.
  double q(double r, int k = 0) const;

  double delta_q(double r) const;
  /// k-th radial derivative of Delta Q, k = 0..4 (k >= 3 by finite differences for callbacks).
  double delta_q_deriv(double r, int k) const;
  double d_delta_q(double r) const { return delta_q_deriv(r, 1); }
  /// lim_{r->0} Delta Q(r); +inf when it blows up.
  double delta_q_at_zero() const;

  /// r q'(r) / 2: the sigma_Q mass of the disk of radius r (for r inside the droplet).
  double mass_function(double r) const { return 0.5 * r * q(r, 1); }

 private:
  std::vector<MonomialTerm> terms_;
  RadialProfile profile_;
  std::string label_;
};

class DropletGeometry {
 public:
  double r1 = 0.0;
  /// Monotone (tau, r_tau) samples on [0, 1], used to seed root solves.
  std::vector<std::pair<double, double>> table;

  /// Linear interpolation in the table (seed only).
  double seed(double tau) const;
};

/// Delta Q(r) = (r q'(r))' / (4r).
double delta_q(const PotentialModel& m, double r);
double d_delta_q(const PotentialModel& m, double r);

/// Smallest positive root of r q'(r) = 2; residual <= 1e-12.
DropletGeometry r1_solve(const PotentialModel& m);

/// Root of r q'(r) = 2 tau. Any tau >= 0 is accepted; tau in [0, 1] maps into [0, r1].
double r_tau(const DropletGeometry& g, const PotentialModel& m, double tau);

/// rho q'(rho) / 2 for rho in (0, r1).
double tau_rho(const PotentialModel& m, double rho);
double tau_rho(const PotentialModel& m, const DropletGeometry& g, double rho);

struct VTauDerivs {
  double d1, d2, d3, d4;
};

/// Derivatives of V_tau(r) = q(r) - 2 tau log r.
VTauDerivs v_tau_derivs(const PotentialModel& m, double tau, double r);

struct AssumptionCheck {
  std::string name;
  bool pass = false;
  double offending_r = std::numeric_limits<double>::quiet_NaN();
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  bool all_pass() const;
};

struct ValidationOptions {
  int grid_size = 512;
  double margin = 0.1;     // fraction of r1 added beyond the droplet
  double growth_probe = 1e3;  // large-R probe, in units of r1
};

AssumptionReport validate_assumptions(const PotentialModel& m, const ValidationOptions& opt = {});

}  // namespace rnm
