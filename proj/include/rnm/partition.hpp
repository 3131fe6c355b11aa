#pragma once

// Large-n expansion of log Z_{n,u,a}:
//   tc1 n^2 + tc2 n log n + tc3 n + tc4 sqrt(n) + tc5 log n + tc6.
//
// Conventions: Delta is the quarter-Laplacian, dA = d^2z / pi, and Z is the
// full n-fold integral (it carries the n! of the Andreief factorization).

#include "rnm/asymptotics.hpp"
#include "rnm/potential.hpp"
#include "rnm/specfn.hpp"

namespace rnm {

/// q(r1) - log r1 - (1/4) int_0^{r1} r q'(r)^2 dr
double iq_energy(const PotentialModel& model);

/// 2 int_0^{r1} log(Delta Q) Delta Q r dr
double eq_entropy(const PotentialModel& model);

/// (1/12) log(1/(r1^2 Delta Q(r1))) - (1/16) r1 Delta Q'(r1)/Delta Q(r1) + (1/24) int (Delta Q'/Delta Q)^2 r dr
double fq_functional(const PotentialModel& model);

struct ELAlphaOptions {
  /// Coefficient c of the boundary term -c alpha log r1 r1 Delta Q'(r1)/Delta Q(r1).
  /// 1/2 follows from the arc-length boundary integral of l_alpha = 2 alpha log|z|.
  double boundary_coeff = 0.5;
  /// Whether free_energy_expansion adds the normal-derivative term alpha/2 to the constant.
  /// The exact Gamma-product log Z for Ginibre with alpha != 0 is matched only without it,
  /// and smooth radial potentials show the same alpha/2 offset when it is kept.
  bool normal_term_in_expansion = false;
};

struct ELAlphaTerms {
  double bulk = 0.0, normal = 0.0, boundary = 0.0;
  double total() const { return bulk + normal + boundary; }
};

ELAlphaTerms e_ell_alpha_terms(const PotentialModel& model, double alpha, const ELAlphaOptions& opt = {});
double e_ell_alpha(const PotentialModel& model, double alpha, const ELAlphaOptions& opt = {});

/// 2 alpha int_0^{r1} log r 2 r Delta Q(r) dr
double ell_alpha_moment(const PotentialModel& model, double alpha);

/// zeta'(-1) = 1/12 - log A (Glaisher-Kinkelin), stored value.
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;

/// Recompute zeta'(-1) from sum_{k<=N} k log k with Euler-Maclaurin corrections.
/// Small N is deliberate: the tail terms through B_12 are exact to 1e-20 there, and large N
/// loses digits to the N^2 log N cancellation.
double zeta_prime_minus1_series(int terms = 64);

/// log G(1 + z), z > -1, Barnes G.
double log_barnes_g1p(double z);

struct SpecialConstants {
  double zeta_prime_m1;
  double log_barnes_g;  // log G(1 + alpha)
};

SpecialConstants special_constants(double alpha);

struct FreeEnergyExpansion {
  cplx tc1, tc2, tc3, tc4, tc5, tc6;
  double i_q = 0.0, e_q = 0.0, f_q = 0.0, ell_moment = 0.0;
  ELAlphaTerms e_ell;
  SpecialConstants constants{};
  ExpansionCoefficients coeffs;

  cplx eval(double n) const;
};

FreeEnergyExpansion free_energy_expansion(const PotentialModel& model, const SingularWeightParams& params,
                                          double alpha, const RegularizationConfig& reg = {},
                                          const ELAlphaOptions& el = {});

/// Ginibre closed form: log n! + sum_j [log Gamma(j + alpha + 1) - (j + alpha + 1) log n].
double log_z_ginibre(int n, double alpha);

}  // namespace rnm
