#include "rnm/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rnm/errors.hpp"

namespace rnm {

namespace {

// p (p-1) ... (p-k+1)
double falling(double p, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= (p - i);
  return f;
}

double power_term(double c, double p, int k, double r) {
  const double f = falling(p, k);
  if (f == 0.0 || c == 0.0) return 0.0;
  return c * f * std::pow(r, p - k);
}

}  // namespace

PotentialModel PotentialModel::monomials(std::vector<MonomialTerm> terms, std::string label) {
  if (terms.empty()) throw DomainError("monomial potential needs at least one term");
  for (const auto& t : terms) {
    if (!(t.coeff >= 0.0) || !std::isfinite(t.coeff))
      throw DomainError("monomial coefficients must be finite and nonnegative");
    if (!(t.power == 1.0 || t.power >= 2.0))
      throw DomainError("monomial exponents must be 1 or at least 2, got " + std::to_string(t.power));
  }
  PotentialModel m;
  m.terms_ = std::move(terms);
  m.label_ = std::move(label);
  return m;
}

PotentialModel PotentialModel::callbacks(RadialProfile profile, std::string label) {
  for (const auto& d : profile.derivs)
    if (!d) throw DomainError("callback potential needs q and its first four derivatives");
  PotentialModel m;
  m.profile_ = std::move(profile);
  m.label_ = std::move(label);
  return m;
}

double PotentialModel::q(double r, int k) const {
  if (k < 0 || k > 4) throw DomainError("q derivative order must be in 0..4");
  if (!is_monomial()) return profile_.derivs[k](r);
  double s = 0.0;
  for (const auto& t : terms_) s += power_term(t.coeff, t.power, k, r);
  return s;
}

double PotentialModel::delta_q(double r) const { return delta_q_deriv(r, 0); }

double PotentialModel::delta_q_deriv(double r, int k) const {
  if (k < 0 || k > 4) throw DomainError("Delta Q derivative order must be in 0..4");
  if (r == 0.0 && k == 0) return delta_q_at_zero();
  if (!(r > 0.0)) throw DomainError("Delta Q needs r > 0");
  if (is_monomial()) {
    // Delta Q = sum c p^2 r^{p-2} / 4
    double s = 0.0;
    for (const auto& t : terms_) s += power_term(0.25 * t.coeff * t.power * t.power, t.power - 2.0, k, r);
    return s;
  }
  const double q1 = q(r, 1), q2 = q(r, 2), q3 = q(r, 3), q4 = q(r, 4);
  switch (k) {
    case 0:
      return 0.25 * (q2 + q1 / r);
    case 1:
      return 0.25 * (q3 + q2 / r - q1 / (r * r));
    case 2:
      return 0.25 * (q4 + q3 / r - 2.0 * q2 / (r * r) + 2.0 * q1 / (r * r * r));
    default: {
      const double h = 1e-3 * r;
      const double up = delta_q_deriv(r + h, 2), mid = delta_q_deriv(r, 2), dn = delta_q_deriv(r - h, 2);
      if (k == 3) return (up - dn) / (2.0 * h);
      return (up - 2.0 * mid + dn) / (h * h);
    }
  }
}

double PotentialModel::delta_q_at_zero() const {
  if (is_monomial()) {
    double s = 0.0;
    for (const auto& t : terms_) {
      if (t.coeff == 0.0) continue;
      if (t.power < 2.0) return std::numeric_limits<double>::infinity();
      if (t.power == 2.0) s += t.coeff;
    }
    return s;
  }
  if (!std::isnan(profile_.delta_q_at_zero)) return profile_.delta_q_at_zero;
  if (q(0.0, 1) != 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * q(0.0, 2);
}

double delta_q(const PotentialModel& m, double r) {
  if (r < 0.0) throw DomainError("delta_q needs r >= 0");
  const double v = m.delta_q(r);
  if (r == 0.0 && !std::isfinite(v)) throw DomainError("Delta Q has no finite limit at r = 0");
  return v;
}

double d_delta_q(const PotentialModel& m, double r) { return m.d_delta_q(r); }

double DropletGeometry::seed(double tau) const {
  if (table.empty()) return r1 * std::sqrt(std::clamp(tau, 0.0, 1.0));
  if (tau <= table.front().first) return table.front().second;
  if (tau >= table.back().first) return table.back().second;
  auto it = std::lower_bound(table.begin(), table.end(), tau,
                             [](const auto& e, double t) { return e.first < t; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (tau - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

namespace {

// Safeguarded Newton for f(r) = r q'(r) - target on [lo, hi] with f(lo) <= 0 <= f(hi).
double bracketed_root(const PotentialModel& m, double target, double lo, double hi, double guess) {
  auto f = [&](double r) { return r * m.q(r, 1) - target; };
  double flo = f(lo), fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream os;
    os << "root of r q'(r) = " << target << " not bracketed in [" << lo << ", " << hi << "]";
    throw ConvergenceError(os.str());
  }
  double r = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double fr = f(r);
    const double df = m.q(r, 1) + r * m.q(r, 2);
    if (std::abs(fr) <= 1e-14 * std::max(1.0, target)) {
      // one more Newton step to reach the last bits
      const double polished = df > 0.0 && std::isfinite(df) ? r - fr / df : r;
      return std::abs(f(polished)) <= std::abs(fr) ? polished : r;
    }
    if (fr < 0.0) lo = r; else hi = r;
    double next = (df > 0.0 && std::isfinite(df)) ? r - fr / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * hi) return next;
    r = next;
  }
  if (std::abs(f(r)) <= 1e-12) return r;
  std::ostringstream os;
  os << "r q'(r) = " << target << " did not converge; bracket [" << lo << ", " << hi << "]";
  throw ConvergenceError(os.str());
}

// Smallest root of r q'(r) = target found by an ascending scan.
double smallest_root(const PotentialModel& m, double target) {
  auto f = [&](double r) { return r * m.q(r, 1) - target; };
  double upper = 1.0;
  int guard = 0;
  while (f(upper) < 0.0) {
    upper *= 2.0;
    if (++guard > 200) throw ConvergenceError("r q'(r) never reaches " + std::to_string(target));
  }
  while (upper > 1e-300 && f(0.5 * upper) >= 0.0) upper *= 0.5;
  const double step = upper / 64.0;
  double lo = 0.0;
  for (int k = 1; k <= 64; ++k) {
    const double r = k * step;
    if (f(r) >= 0.0) return bracketed_root(m, target, lo, r, r - 0.5 * step);
    lo = r;
  }
  return bracketed_root(m, target, lo, upper, upper);
}

}  // namespace

DropletGeometry r1_solve(const PotentialModel& m) {
  DropletGeometry g;
  g.r1 = smallest_root(m, 2.0);
  const double res = g.r1 * m.q(g.r1, 1) - 2.0;
  if (!(std::abs(res) <= 1e-12)) throw ConvergenceError("droplet radius residual " + std::to_string(res));
  constexpr int kTable = 64;
  g.table.reserve(kTable + 1);
  g.table.emplace_back(0.0, 0.0);
  double lo = 0.0;
  for (int k = 1; k < kTable; ++k) {
    const double tau = static_cast<double>(k) / kTable;
    const double r = bracketed_root(m, 2.0 * tau, lo, g.r1, g.r1 * std::sqrt(tau));
    g.table.emplace_back(tau, r);
    lo = r;
  }
  g.table.emplace_back(1.0, g.r1);
  return g;
}

double r_tau(const DropletGeometry& g, const PotentialModel& m, double tau) {
  if (!(tau >= 0.0)) throw DomainError("r_tau needs tau >= 0");
  if (tau == 0.0) return 0.0;
  if (tau == 1.0) return g.r1;
  if (tau < 1.0 && g.table.size() >= 2) {
    auto it = std::lower_bound(g.table.begin(), g.table.end(), tau,
                               [](const auto& e, double t) { return e.first < t; });
    if (it->first == tau) return it->second;
    return bracketed_root(m, 2.0 * tau, (it - 1)->second, it->second, g.seed(tau));
  }
  double hi = std::max(g.r1, 1e-3);
  int guard = 0;
  while (hi * m.q(hi, 1) < 2.0 * tau) {
    hi *= 1.5;
    if (++guard > 400) throw ConvergenceError("r_tau: no bracket for tau = " + std::to_string(tau));
  }
  const double lo = tau > 1.0 ? g.r1 : 0.0;
  return bracketed_root(m, 2.0 * tau, lo, hi, 0.5 * (lo + hi));
}

double tau_rho(const PotentialModel& m, double rho) { return tau_rho(m, r1_solve(m), rho); }

double tau_rho(const PotentialModel& m, const DropletGeometry& g, double rho) {
  if (!(rho > 0.0 && rho < g.r1))
    throw DomainError("tau_rho needs rho in (0, r1) = (0, " + std::to_string(g.r1) + "), got " +
                      std::to_string(rho));
  return 0.5 * rho * m.q(rho, 1);
}

VTauDerivs v_tau_derivs(const PotentialModel& m, double tau, double r) {
  if (!(r > 0.0)) throw DomainError("v_tau_derivs needs r > 0");
  const double dq = m.delta_q_deriv(r, 0);
  const double dq1 = m.delta_q_deriv(r, 1);
  const double dq2 = m.delta_q_deriv(r, 2);
  VTauDerivs d;
  d.d1 = m.q(r, 1) - 2.0 * tau / r;
  d.d2 = 4.0 * dq - d.d1 / r;
  d.d3 = 4.0 * dq1 - 4.0 * dq / r + 2.0 * d.d1 / (r * r);
  d.d4 = 4.0 * dq2 + 12.0 * dq / (r * r) - 4.0 * dq1 / r - 6.0 * d.d1 / (r * r * r);
  return d;
}

bool AssumptionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

AssumptionReport validate_assumptions(const PotentialModel& m, const ValidationOptions& opt) {
  AssumptionReport rep;
  DropletGeometry g;
  bool have_droplet = true;
  try {
    g = r1_solve(m);
  } catch (const std::exception& e) {
    have_droplet = false;
    rep.checks.push_back({"droplet", false, std::numeric_limits<double>::quiet_NaN(), e.what()});
  }
  const double scale = have_droplet ? g.r1 : 1.0;

  {
    AssumptionCheck c;
    c.name = "growth";
    const double R = std::max(opt.growth_probe * scale, 10.0);
    const double ratio = m.q(R, 0) / (2.0 * std::log(R));
    c.pass = ratio > 1.0;
    c.detail = "q(R)/(2 log R) = " + std::to_string(ratio);
    if (!c.pass) c.offending_r = R;
    rep.checks.push_back(c);
  }
  {
    AssumptionCheck c;
    c.name = "subharmonic";
    c.pass = true;
    const double top = (1.0 + opt.margin) * scale;
    for (int i = 1; i <= opt.grid_size; ++i) {
      const double r = top * i / opt.grid_size;
      const double v = m.delta_q(r);
      if (!(v > 0.0) || !std::isfinite(v)) {
        c.pass = false;
        c.offending_r = r;
        c.detail = "Delta Q = " + std::to_string(v);
        break;
      }
    }
    if (c.pass) c.detail = "Delta Q > 0 on (0, " + std::to_string(top) + "]";
    rep.checks.push_back(c);
  }
  {
    AssumptionCheck c;
    c.name = "origin";
    const double v = m.delta_q_at_zero();
    c.pass = v > 0.0 && std::isfinite(v);
    c.detail = "lim Delta Q(r) at r = 0 is " + std::to_string(v);
    if (!c.pass) c.offending_r = 0.0;
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace rnm
