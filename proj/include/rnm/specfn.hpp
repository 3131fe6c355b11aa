#pragma once

// Special functions behind the expansion coefficients: erfc, log-Gamma,
// the Charlier functionals F and G, log-scaled parabolic cylinder functions
// D_{-a-1}, the kernel H_{a,u} and associated Hermite polynomials.

#include <complex>
#include <vector>

#include "rnm/log_scaled.hpp"
#include "rnm/quadrature.hpp"

namespace rnm {

using cplx = std::complex<double>;

/// Parameters of the circular weight |r - rho|^a * (e^u inside, 1 outside).
struct SingularWeightParams {
  cplx u{0.0, 0.0};
  double a = 0.0;
  double rho = 0.5;
  /// Largest admissible |Im u|.
  double delta = 0.5;

  /// Throws DomainError unless a > -1, rho > 0 and |Im u| <= delta.
  void validate() const;
};

double erfc_eval(double t);

/// log(erfc(t)); finite for every real t (asymptotic continued fraction for large t).
double log_erfc(double t);

/// log Gamma(x) for x > 0; Stirling series with upward recursion below 8.
double log_gamma(double x);

/// F(t, s) = log(1 + (s - 1) erfc(t) / 2), principal branch.
cplx f_charlier(double t, cplx s);

/// G(t, s) = dF/dt = (1 - s) / (1 + (s - 1) erfc(t) / 2) * exp(-t^2) / sqrt(pi).
cplx g_charlier(double t, cplx s);

struct PcfOptions {
  double rel_tol = 1e-13;
};

/// exp(-x^2/4) D_{-a-1}(x) = (1/Gamma(a+1)) int_0^inf t^a exp(-(t+x)^2/2) dt, a > -1.
LogScaled<double> scaled_pcf(double a, double x, const PcfOptions& opt = {});

/// exp(-x^2/4) D_{-a}(x), a > -1, through
/// D_{-a}(x) = (a+1) D_{-a-2}(x) + x D_{-a-1}(x).
LogScaled<double> scaled_pcf_shift(double a, double x, const PcfOptions& opt = {});

/// log H_{a,u}(x), H_{a,u}(x) = Gamma(a+1)/sqrt(2 pi) e^{-x^2/4} (e^u D_{-a-1}(x) + D_{-a-1}(-x)).
/// The branch is the one continuous in x from x = +inf.
cplx log_h_au(const SingularWeightParams& p, double x, const PcfOptions& opt = {});

/// d/dx log H_{a,u}(x) = -(e^u D_{-a}(x) - D_{-a}(-x)) / (e^u D_{-a-1}(x) + D_{-a-1}(-x)).
cplx dlog_h_au(const SingularWeightParams& p, double x, const PcfOptions& opt = {});

/// Two-term large-|x| expansion a log|x| + u 1{x<0} + a(a-1)/(2x^2) - a(a-1)(2a-3)/(4x^4).
cplx log_h_tail(const SingularWeightParams& p, double x, double crossover = 10.0);

/// Coefficients d_1..d_order of log H_{a,u}(x) - a log|x| - u 1{x<0} ~ sum_k d_k x^{-2k}.
/// Generated from the Gaussian moments of E[(x+Z)^a]; d_1, d_2 are the two terms of log_h_tail.
std::vector<double> tail_series(double a, int order);

/// He_k^{(nu)}(z): He_0 = 1, He_1 = z, He_{k+1} = z He_k - (k + nu) He_{k-1}.
cplx assoc_hermite(double nu, int k, cplx z);

/// The associated-Hermite form G_0(y; u, a) of the kernel, for integer a >= 1.
/// G_0(y / sqrt 2; u, a) = H_{a,u}(y).
cplx g0_integer(int a, cplx u, double y);

/// Same as g0_integer with the jump factor s = e^u passed directly, so that
/// the one-sided limit s = 0 is reachable.
cplx g0_integer_s(int a, cplx s, double y);

}  // namespace rnm
