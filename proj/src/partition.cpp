#include "rnm/partition.hpp"

#include <array>
#include <cmath>

#include "rnm/errors.hpp"
#include "rnm/quadrature.hpp"

namespace rnm {

namespace {

constexpr double kLog2Pi = 1.83787706640934548356;

QuadOptions radial_quad() {
  QuadOptions q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-15;
  return q;
}

std::vector<double> radial_breaks(double r1) {
  std::vector<double> bp;
  for (int k = 0; k <= 8; ++k) bp.push_back(r1 * k / 8.0);
  return bp;
}

void require_positive_density(const PotentialModel& m, double r1) {
  for (int k = 0; k <= 256; ++k) {
    const double r = r1 * std::max(k, 1) / 256.0;
    if (!(m.delta_q(r) > 0.0)) throw DomainError("Delta Q is not positive on the droplet at r = " + std::to_string(r));
  }
}

}  // namespace

double iq_energy(const PotentialModel& model) {
  const double r1 = r1_solve(model).r1;
  const auto bp = radial_breaks(r1);
  const double v = integrate([&](double r) {
                     const double d = model.q(r, 1);
                     return r * d * d;
                   },
                   std::span<const double>(bp), radial_quad())
                       .value;
  return model.q(r1, 0) - std::log(r1) - 0.25 * v;
}

double eq_entropy(const PotentialModel& model) {
  const double r1 = r1_solve(model).r1;
  require_positive_density(model, r1);
  const auto bp = radial_breaks(r1);
  return 2.0 * integrate([&](double r) {
                 const double d = model.delta_q(r);
                 return std::log(d) * d * r;
               },
               std::span<const double>(bp), radial_quad())
                   .value;
}

double fq_functional(const PotentialModel& model) {
  const double r1 = r1_solve(model).r1;
  require_positive_density(model, r1);
  const double d1 = model.delta_q(r1);
  const auto bp = radial_breaks(r1);
  const double v = integrate([&](double r) {
                     const double l = model.d_delta_q(r) / model.delta_q(r);
                     return l * l * r;
                   },
                   std::span<const double>(bp), radial_quad())
                       .value;
  return std::log(1.0 / (r1 * r1 * d1)) / 12.0 - r1 * model.d_delta_q(r1) / d1 / 16.0 + v / 24.0;
}

ELAlphaTerms e_ell_alpha_terms(const PotentialModel& model, double alpha, const ELAlphaOptions& opt) {
  ELAlphaTerms t;
  if (alpha == 0.0) return t;
  const double r1 = r1_solve(model).r1;
  require_positive_density(model, r1);
  // (1/2) int 2 alpha log r (1/(4r)) (r L')' 2r dr = (alpha/2) int log r (L' + r L'') dr, L = log Delta Q
  auto body = [&](double r) {
    const double d = model.delta_q(r);
    const double l1 = model.d_delta_q(r) / d;
    const double l2 = model.delta_q_deriv(r, 2) / d - l1 * l1;
    return std::log(r) * (l1 + r * l2);
  };
  const QuadOptions q = radial_quad();
  const double head = 0.125 * r1;
  CompensatedSum<double> s;
  s.add(integrate_singular_end(body, head, 0.0, q).value);
  std::vector<double> bp{head};
  for (int k = 2; k <= 8; ++k) bp.push_back(r1 * k / 8.0);
  s.add(integrate(body, std::span<const double>(bp), q).value);
  t.bulk = 0.5 * alpha * s.value();
  // (1/8 pi) int d_n l_alpha |dz| = (1/8 pi) (2 alpha / r1) 2 pi r1
  t.normal = 0.5 * alpha;
  t.boundary = -opt.boundary_coeff * alpha * std::log(r1) * r1 * model.d_delta_q(r1) / model.delta_q(r1);
  return t;
}

double e_ell_alpha(const PotentialModel& model, double alpha, const ELAlphaOptions& opt) {
  return e_ell_alpha_terms(model, alpha, opt).total();
}

double ell_alpha_moment(const PotentialModel& model, double alpha) {
  if (alpha == 0.0) return 0.0;
  const double r1 = r1_solve(model).r1;
  auto body = [&](double r) { return std::log(r) * 2.0 * r * model.delta_q(r); };
  const QuadOptions q = radial_quad();
  const double head = 0.125 * r1;
  CompensatedSum<double> s;
  s.add(integrate_singular_end(body, head, 0.0, q).value);
  std::vector<double> bp{head};
  for (int k = 2; k <= 8; ++k) bp.push_back(r1 * k / 8.0);
  s.add(integrate(body, std::span<const double>(bp), q).value);
  return 2.0 * alpha * s.value();
}

double zeta_prime_minus1_series(int terms) {
  if (terms < 10) throw DomainError("zeta_prime_minus1_series needs at least 10 terms");
  // log A = sum_{k<=N} k log k - (N^2/2 + N/2 + 1/12) log N + N^2/4
  //         + sum_{j>=2} B_{2j} / ((2j)(2j-1)(2j-2) N^{2j-2})
  long double sum = 0.0L, comp = 0.0L;
  for (int k = 2; k <= terms; ++k) {
    const long double y = static_cast<long double>(k) * std::log(static_cast<long double>(k)) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const long double N = terms;
  long double log_a = sum - (N * N / 2.0L + N / 2.0L + 1.0L / 12.0L) * std::log(N) + N * N / 4.0L;
  static constexpr std::array<long double, 5> bern{-1.0L / 30.0L, 1.0L / 42.0L, -1.0L / 30.0L, 5.0L / 66.0L,
                                                   -691.0L / 2730.0L};
  for (int j = 2; j <= 6; ++j) {
    const long double b = bern[j - 2];
    log_a += b / ((2.0L * j) * (2.0L * j - 1.0L) * (2.0L * j - 2.0L) * std::pow(N, 2.0L * j - 2.0L));
  }
  return static_cast<double>(1.0L / 12.0L - log_a);
}

namespace {

// log G(1 + z) on the window z in [0, 1]:
// (z/2) log 2 pi - z(z+1)/2 + z log Gamma(1+z) - int_0^z log Gamma(1+t) dt
double log_barnes_window(double z) {
  if (z == 0.0) return 0.0;
  QuadOptions q;
  q.rel_tol = 1e-14;
  q.abs_tol = 1e-16;
  const double integral = integrate([](double t) { return log_gamma(1.0 + t); }, 0.0, z, q).value;
  return 0.5 * z * kLog2Pi - 0.5 * z * (z + 1.0) + z * log_gamma(1.0 + z) - integral;
}

}  // namespace

double log_barnes_g1p(double z) {
  if (!(z > -1.0)) throw DomainError("log Barnes G(1 + z) needs z > -1");
  if (z < 0.0) return log_barnes_window(z + 1.0) - log_gamma(1.0 + z);  // G(1+z) = G(2+z) / Gamma(1+z)
  double acc = 0.0;
  while (z > 1.0) {
    z -= 1.0;
    acc += log_gamma(1.0 + z);  // G(2+z) = Gamma(1+z) G(1+z)
  }
  return acc + log_barnes_window(z);
}

SpecialConstants special_constants(double alpha) {
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
  return {kZetaPrimeMinus1, log_barnes_g1p(alpha)};
}

cplx FreeEnergyExpansion::eval(double n) const {
  if (!(n >= 1.0)) throw DomainError("expansion needs n >= 1");
  const double ln = std::log(n);
  return tc1 * n * n + tc2 * n * ln + tc3 * n + tc4 * std::sqrt(n) + tc5 * ln + tc6;
}

FreeEnergyExpansion free_energy_expansion(const PotentialModel& model, const SingularWeightParams& params,
                                          double alpha, const RegularizationConfig& reg, const ELAlphaOptions& el) {
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
  const DropletGeometry g = r1_solve(model);
  FreeEnergyExpansion f;
  f.i_q = iq_energy(model);
  f.e_q = eq_entropy(model);
  f.f_q = fq_functional(model);
  f.e_ell = e_ell_alpha_terms(model, alpha, el);
  f.ell_moment = ell_alpha_moment(model, alpha);
  f.constants = special_constants(alpha);

  if (params.u == cplx(0.0) && params.a == 0.0) {
    f.coeffs.params = params;
    f.coeffs.alpha = alpha;
    f.coeffs.potential = model.label();
  } else {
    f.coeffs = general_coeffs(model, params, alpha, reg);
  }

  const double dq0 = model.delta_q_at_zero();
  if (!(dq0 > 0.0 && std::isfinite(dq0)))
    throw DomainError("the constant term needs 0 < Delta Q(0) < inf");

  f.tc1 = -f.i_q;
  f.tc2 = 0.5;
  f.tc3 = 0.5 * kLog2Pi - 1.0 - 0.5 * f.e_q + f.ell_moment + f.coeffs.c1;
  f.tc4 = f.coeffs.c2;
  f.tc5 = 5.0 / 12.0 + 0.5 * alpha * alpha;
  f.tc6 = f.constants.zeta_prime_m1 - f.constants.log_barnes_g + f.f_q + 0.5 * (1.0 + alpha) * kLog2Pi + f.e_ell.total() -
          (el.normal_term_in_expansion ? 0.0 : f.e_ell.normal) +
          0.5 * alpha * alpha * std::log(g.r1 * g.r1 * dq0) + f.coeffs.c3;
  return f;
}

double log_z_ginibre(int n, double alpha) {
  if (n < 1) throw DomainError("n must be positive");
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
  CompensatedSum<double> s;
  const double ln = std::log(static_cast<double>(n));
  for (int j = 0; j < n; ++j) s.add(log_gamma(j + alpha + 1.0) - (j + alpha + 1.0) * ln);
  s.add(log_gamma(n + 1.0));
  return s.value();
}

}  // namespace rnm
