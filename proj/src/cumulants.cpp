#include "rnm/cumulants.hpp"

#include <cmath>
#include <numbers>

#include "rnm/detail/parallel.hpp"
#include "rnm/errors.hpp"
#include "rnm/quadrature.hpp"

namespace rnm {

std::vector<double> bernoulli_cumulants(const Eigen::VectorXd& p, int jmax) {
  if (jmax < 1 || jmax > 4) throw DomainError("closed-form cumulants need jmax in 1..4");
  const Eigen::ArrayXd q = p.array();
  const Eigen::ArrayXd v = q * (1.0 - q);
  std::vector<double> k(jmax);
  k[0] = q.sum();
  if (jmax >= 2) k[1] = v.sum();
  if (jmax >= 3) k[2] = (v * (1.0 - 2.0 * q)).sum();
  if (jmax >= 4) k[3] = (v * (1.0 - 6.0 * q + 6.0 * q.square())).sum();
  return k;
}

cplx bernoulli_log_mgf(const Eigen::VectorXd& p, cplx u) {
  const cplx em1 = std::exp(u) - 1.0;
  CompensatedSum<cplx> s;
  for (Eigen::Index j = 0; j < p.size(); ++j) s.add(log1p_complex(em1 * p[j]));
  return s.value();
}

CumulantSet cumulants_exact(const PotentialModel& model, int n, double rho, double alpha, int jmax,
                            const ExactConfig& cfg) {
  if (jmax < 1 || jmax > 4) throw DomainError("cumulants_exact needs jmax in 1..4");
  CumulantSet out;
  out.n = n;
  out.rho = rho;
  out.exact = bernoulli_cumulants(counting_probs(model, n, rho, alpha, cfg), jmax);
  return out;
}

std::vector<cplx> contour_cumulants(const std::function<cplx(cplx)>& logf, int jmax, const ContourOptions& opt) {
  if (jmax < 1) throw DomainError("jmax must be positive");
  if (!(opt.radius > 0.0)) throw DomainError("contour radius must be positive");
  if (opt.nodes < 2 * jmax + 2) throw DomainError("too few contour nodes for the requested order");
  const int m = opt.nodes;
  std::vector<cplx> vals(m);
  const cplx f0 = logf(cplx(0.0, 0.0));
  detail::parallel_for(m, opt.threads, [&](int k) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    vals[k] = logf(opt.radius * w) - f0;
    if (!std::isfinite(vals[k].real()) || !std::isfinite(vals[k].imag()))
      throw BranchError("log f is not finite on the contour");
  });
  std::vector<cplx> kappa(jmax);
  double fact = 1.0;
  for (int j = 1; j <= jmax; ++j) {
    fact *= j;
    CompensatedSum<cplx> s;
    for (int k = 0; k < m; ++k) s.add(vals[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / m));
    kappa[j - 1] = fact / (m * std::pow(opt.radius, j)) * s.value();
  }
  return kappa;
}

CoefficientDerivatives counting_coefficient_derivatives(const PotentialModel& model, double rho, double alpha, int jmax,
                                                        const RegularizationConfig& reg, const ContourOptions& opt) {
  const int m = opt.nodes;
  std::vector<ExpansionCoefficients> at(m + 1);
  ContourOptions serial = opt;
  serial.threads = 1;
  // evaluate every node once, then read each coefficient off the cache
  std::vector<cplx> nodes(m);
  for (int k = 0; k < m; ++k) nodes[k] = opt.radius * std::polar(1.0, 2.0 * std::numbers::pi * k / m);
  detail::parallel_for(m + 1, opt.threads, [&](int k) {
    at[k] = counting_coeffs(model, k < m ? nodes[k] : cplx(0.0, 0.0), rho, alpha, reg);
  });
  auto lookup = [&](cplx u, cplx ExpansionCoefficients::*field) {
    if (u == cplx(0.0, 0.0)) return at[m].*field;
    for (int k = 0; k < m; ++k)
      if (nodes[k] == u) return at[k].*field;
    throw DomainError("contour node lookup failed");
  };
  CoefficientDerivatives d;
  d.c1 = contour_cumulants([&](cplx u) { return lookup(u, &ExpansionCoefficients::c1); }, jmax, serial);
  d.c2 = contour_cumulants([&](cplx u) { return lookup(u, &ExpansionCoefficients::c2); }, jmax, serial);
  d.c3 = contour_cumulants([&](cplx u) { return lookup(u, &ExpansionCoefficients::c3); }, jmax, serial);
  return d;
}

cplx cumulant_prediction(const CoefficientDerivatives& d, int n, int j) {
  if (j < 1 || j > static_cast<int>(d.c1.size())) throw DomainError("cumulant order out of range");
  if (j == 1) return d.c1[0] * static_cast<double>(n) + d.c3[0];
  if (j % 2 == 1) return d.c3[j - 1];
  return d.c2[j - 1] * std::sqrt(static_cast<double>(n));
}

cplx cumulants_asymptotic(const PotentialModel& model, double rho, double alpha, int n, int j,
                          const RegularizationConfig& reg, const ContourOptions& opt) {
  if (j < 1) throw DomainError("cumulant order must be positive");
  if (n < 1) throw DomainError("n must be positive");
  return cumulant_prediction(counting_coefficient_derivatives(model, rho, alpha, j, reg, opt), n, j);
}

}  // namespace rnm
