#include "rnm/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "rnm/errors.hpp"
#include "rnm/quadrature.hpp"

namespace rnm {

std::string to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::counting:
      return "counting";
    case TheoremTag::general:
      return "general";
    case TheoremTag::mittag_leffler:
      return "mittag_leffler";
  }
  return "unknown";
}

void RegularizationConfig::validate() const {
  if (!(x_cutoff >= 10.0)) throw DomainError("x_cutoff must be at least 10");
  if (tail_order < 0 || tail_order > 8) throw DomainError("tail_order must lie in 0..8");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(taylor_radius > 0.0)) throw DomainError("taylor_radius must be positive");
}

namespace {

// erfc(t) < 1e-40 beyond this point
constexpr double kErfcCut = 9.5;

QuadOptions quad_options(const RegularizationConfig& reg) {
  QuadOptions q;
  q.rel_tol = reg.rel_tol;
  q.abs_tol = reg.abs_tol;
  q.max_panels = 4000;
  return q;
}

std::vector<double> breakpoints(std::initializer_list<double> pts, double lo, double hi) {
  std::vector<double> bp{lo};
  for (double p : pts)
    if (p > lo && p < hi) bp.push_back(p);
  bp.push_back(hi);
  return bp;
}

void check_rho(double rho, double r1) {
  if (!(rho > 0.0 && rho < r1))
    throw DomainError("rho must lie in (0, r1) = (0, " + std::to_string(r1) + "), got " + std::to_string(rho));
}

// int_0^{r1} log|r - rho| 2 r Delta Q(r) dr
double log_moment(const PotentialModel& m, double rho, double r1, const QuadOptions& q) {
  auto dens = [&](double r) { return 2.0 * r * m.delta_q(r); };
  CompensatedSum<double> s;
  // [0, rho]: singular end at rho
  const double el = 0.5 * rho;
  s.add(integrate_singular_end([&](double d) { return std::log(d) * dens(rho - d); }, el, 0.0, q).value);
  s.add(integrate([&](double r) { return std::log(rho - r) * dens(r); }, 0.0, rho - el, q).value);
  const double er = 0.5 * (r1 - rho);
  s.add(integrate_singular_end([&](double d) { return std::log(d) * dens(rho + d); }, er, 0.0, q).value);
  s.add(integrate([&](double r) { return std::log(r - rho) * dens(r); }, rho + er, r1, q).value);
  return s.value();
}

// Derivatives of g(x) = x Delta Q'(x) / Delta Q(x) at x, orders 0..3.
std::array<double, 4> g_derivs(const PotentialModel& m, double x) {
  const double D = m.delta_q_deriv(x, 0);
  const double D1 = m.delta_q_deriv(x, 1) / D;
  const double D2 = m.delta_q_deriv(x, 2) / D;
  const double D3 = m.delta_q_deriv(x, 3) / D;
  const double D4 = m.delta_q_deriv(x, 4) / D;
  // derivatives of L = log Delta Q
  const double L1 = D1;
  const double L2 = D2 - L1 * L1;
  const double L3 = D3 - 3.0 * L1 * L2 - L1 * L1 * L1;
  const double L4 = D4 - 4.0 * L1 * L3 - 3.0 * L2 * L2 - 6.0 * L1 * L1 * L2 - L1 * L1 * L1 * L1;
  return {x * L1, L1 + x * L2, 2.0 * L2 + x * L3, 3.0 * L3 + x * L4};
}

double kappa_at(const PotentialModel& m, double rho) { return rho * m.d_delta_q(rho) / m.delta_q(rho); }

}  // namespace

cplx c1_general(const PotentialModel& model, const SingularWeightParams& params) {
  params.validate();
  const DropletGeometry g = r1_solve(model);
  check_rho(params.rho, g.r1);
  cplx c1 = params.u * tau_rho(model, g, params.rho);
  if (params.a != 0.0) {
    QuadOptions q;
    q.rel_tol = 1e-13;
    q.abs_tol = 1e-15;
    c1 += params.a * log_moment(model, params.rho, g.r1, q);
  }
  return c1;
}

cplx c2_general(const PotentialModel& model, const SingularWeightParams& params, const RegularizationConfig& reg) {
  params.validate();
  reg.validate();
  const DropletGeometry g = r1_solve(model);
  check_rho(params.rho, g.r1);
  const double X = reg.x_cutoff;
  const double a = params.a;
  const cplx u = params.u;
  const PcfOptions pcf{reg.pcf_rel_tol};
  const QuadOptions q = quad_options(reg);

  auto shifted = [&](double x) { return log_h_au(params, x, pcf) - (x < 0.0 ? u : cplx(0.0)); };

  CompensatedSum<cplx> total;
  // |x| <= 1: a log|x| integrated analytically, int_{-1}^{1} log|x| dx = -2
  const auto inner = breakpoints({0.0}, -1.0, 1.0);
  total.add(integrate(shifted, std::span<const double>(inner), q).value);
  total.add(2.0 * a);
  auto outer_fn = [&](double x) { return shifted(x) - a * std::log(std::abs(x)); };
  const auto left = breakpoints({-16.0, -8.0, -4.0, -2.0}, -X, -1.0);
  const auto right = breakpoints({2.0, 4.0, 8.0, 16.0}, 1.0, X);
  total.add(integrate(outer_fn, std::span<const double>(left), q).value);
  total.add(integrate(outer_fn, std::span<const double>(right), q).value);

  // both tails: 2 sum_k d_k X^{1-2k} / (2k - 1)
  if (reg.tail_order > 0) {
    const auto d = tail_series(a, reg.tail_order);
    double tail = 0.0;
    for (int k = 1; k <= reg.tail_order; ++k) tail += d[k - 1] * std::pow(X, 1.0 - 2.0 * k) / (2.0 * k - 1.0);
    total.add(2.0 * tail);
  }
  return params.rho * std::sqrt(model.delta_q(params.rho)) * total.value();
}

double c3_radial_integrand(const PotentialModel& model, double rho, double x, const RegularizationConfig& reg) {
  const double d = x - rho;
  if (std::abs(d) < reg.taylor_radius) {
    const auto gd = g_derivs(model, rho);
    return gd[1] + d * (gd[2] / 2.0 + d * gd[3] / 6.0);
  }
  const double gx = x * model.d_delta_q(x) / model.delta_q(x);
  return (gx - kappa_at(model, rho)) / d;
}

cplx c3_general(const PotentialModel& model, const SingularWeightParams& params, double alpha,
                const RegularizationConfig& reg) {
  params.validate();
  reg.validate();
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
  const DropletGeometry g = r1_solve(model);
  const double r1 = g.r1, rho = params.rho;
  check_rho(rho, r1);
  const double a = params.a;
  const cplx u = params.u;
  const double kappa = kappa_at(model, rho);
  const double lg = std::log(r1 / rho - 1.0);
  const QuadOptions q = quad_options(reg);

  CompensatedSum<cplx> c3;
  if (a != 0.0) {
    c3.add(-0.5 * a * lg);
    c3.add(-0.25 * a * (a - 1.0) * r1 / (r1 - rho));
    const double tr = reg.taylor_radius;
    const auto bp = breakpoints({rho - tr, rho, rho + tr}, 0.0, r1);
    QuadOptions qr = q;
    qr.rel_tol = 1e-13;
    const double radial =
        integrate([&](double x) { return c3_radial_integrand(model, rho, x, reg); }, std::span<const double>(bp), qr)
            .value;
    c3.add(-0.25 * a * radial);
    c3.add(0.25 * a * (4.0 * alpha + a + 2.0 - kappa) * lg);
    c3.add(-(a / 12.0) * (1.0 - kappa) * u);
  }
  c3.add(-(alpha + 0.5) * u);
  c3.add((2.0 + kappa) / 6.0 * u);

  const double X = reg.x_cutoff;
  const double d1 = 0.5 * a * (a - 1.0);
  const PcfOptions pcf{reg.pcf_rel_tol};
  QuadOptions qm = q;
  qm.abs_tol = std::max(reg.abs_tol, reg.moment_abs_tol);
  auto core = [&](double x) {
    return x * (log_h_au(params, x, pcf) - (x < 0.0 ? u : cplx(0.0))) - d1 * x / (x * x + 1.0);
  };
  CompensatedSum<cplx> xint;
  // x log|x| is odd, so its integral over [-1, 1] vanishes
  const auto inner = breakpoints({0.0}, -1.0, 1.0);
  xint.add(integrate(core, std::span<const double>(inner), qm).value);
  auto outer_fn = [&](double x) { return core(x) - a * x * std::log(std::abs(x)); };
  const auto left = breakpoints({-16.0, -8.0, -4.0, -2.0}, -X, -1.0);
  const auto right = breakpoints({2.0, 4.0, 8.0, 16.0}, 1.0, X);
  xint.add(integrate(outer_fn, std::span<const double>(left), qm).value);
  xint.add(integrate(outer_fn, std::span<const double>(right), qm).value);
  // the two tails beyond +-X have the same power series with opposite signs
  // and cancel; the remainder is exponentially small in X
  c3.add((2.0 + kappa) / 6.0 * xint.value());
  return c3.value();
}

ExpansionCoefficients general_coeffs(const PotentialModel& model, const SingularWeightParams& params, double alpha,
                                     const RegularizationConfig& reg) {
  ExpansionCoefficients c;
  c.c1 = c1_general(model, params);
  c.c2 = c2_general(model, params, reg);
  c.c3 = c3_general(model, params, alpha, reg);
  c.tag = TheoremTag::general;
  c.params = params;
  c.alpha = alpha;
  c.potential = model.label();
  return c;
}

cplx counting_moment_integral(cplx u, const RegularizationConfig& reg) {
  const cplx s = std::exp(u), si = std::exp(-u);
  const auto bp = breakpoints({0.5, 1.0, 2.0, 3.0, 4.0, 6.0}, 0.0, kErfcCut);
  return integrate([&](double t) { return t * (f_charlier(t, s) - f_charlier(t, si)); }, std::span<const double>(bp),
                   quad_options(reg))
      .value;
}

ExpansionCoefficients counting_coeffs(const PotentialModel& model, cplx u, double rho, double alpha,
                                      const RegularizationConfig& reg) {
  reg.validate();
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
  const DropletGeometry g = r1_solve(model);
  check_rho(rho, g.r1);
  ExpansionCoefficients c;
  c.tag = TheoremTag::counting;
  c.params.u = u;
  c.params.a = 0.0;
  c.params.rho = rho;
  c.alpha = alpha;
  c.potential = model.label();

  const double dq = model.delta_q(rho);
  const double kappa = kappa_at(model, rho);
  const cplx s = std::exp(u), si = std::exp(-u);

  c.c1 = u * tau_rho(model, g, rho);
  const auto bp = breakpoints({0.5, 1.0, 2.0, 3.0, 4.0, 6.0}, 0.0, kErfcCut);
  const cplx i2 = integrate([&](double t) { return f_charlier(t, s) + f_charlier(t, si); },
                            std::span<const double>(bp), quad_options(reg))
                      .value;
  c.c2 = rho * std::sqrt(2.0 * dq) * i2;
  c.c3 = -(alpha + 0.5) * u + (2.0 + kappa) / 6.0 * u + (2.0 + kappa) / 3.0 * counting_moment_integral(u, reg);
  return c;
}

cplx mittag_leffler_c3(cplx u, double b, double alpha, const RegularizationConfig& reg) {
  if (!(b > 0.0)) throw DomainError("Mittag-Leffler exponent b must be positive");
  return -(0.5 + alpha) * u + b / 3.0 * u + 2.0 * b / 3.0 * counting_moment_integral(u, reg);
}

IdentityResidual appendix_a_identity_check(cplx u, const RegularizationConfig& reg) {
  const cplx s = std::exp(u);
  const auto bp = breakpoints({-6.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 6.0}, -kErfcCut, kErfcCut);
  IdentityResidual r;
  r.lhs = integrate([&](double t) { return g_charlier(t, s) * ((5.0 * t * t - 1.0) / 3.0); },
                    std::span<const double>(bp), quad_options(reg))
              .value;
  r.rhs = u / 3.0 - 10.0 / 3.0 * counting_moment_integral(u, reg);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

cplx expansion_eval(const ExpansionCoefficients& c, double n) {
  if (!(n >= 1.0)) throw DomainError("expansion_eval needs n >= 1");
  return c.c1 * n + c.c2 * std::sqrt(n) + c.c3;
}

}  // namespace rnm
