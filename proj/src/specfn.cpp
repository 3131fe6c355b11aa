#include "rnm/specfn.hpp"

#include <array>
#include <cmath>
#include <string>

#include "rnm/errors.hpp"

namespace rnm {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kInvSqrtPi = 0.56418958354775628695;

}  // namespace

void SingularWeightParams::validate() const {
  if (!(a > -1.0)) throw DomainError("root exponent a must exceed -1, got " + std::to_string(a));
  if (!(rho > 0.0)) throw DomainError("singularity radius rho must be positive");
  if (!(delta > 0.0 && delta < M_PI)) throw DomainError("analyticity radius delta must lie in (0, pi)");
  if (std::abs(u.imag()) > delta)
    throw BranchError("|Im u| = " + std::to_string(std::abs(u.imag())) + " exceeds delta = " +
                      std::to_string(delta));
}

double erfc_eval(double t) { return std::erfc(t); }

double log_erfc(double t) {
  if (t < 5.0) return std::log(std::erfc(t));
  // erfc(t) = exp(-t^2)/sqrt(pi) * 1/(t + (1/2)/(t + 1/(t + (3/2)/(t + ...))))
  double f = t;
  for (int k = 80; k >= 1; --k) f = t + 0.5 * k / f;
  return -t * t + std::log(kInvSqrtPi / f);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  double shift = 0.0;
  if (x < 8.0) {
    double prod = 1.0;
    while (x < 8.0) {
      prod *= x;
      x += 1.0;
    }
    shift = std::log(prod);
  }
  // Stirling series, Bernoulli terms B_{2k} / (2k (2k-1) x^{2k-1})
  static constexpr std::array<double, 7> c{1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0,
                                           -1.0 / 1680.0,      1.0 / 1188.0,       -691.0 / 360360.0,
                                           1.0 / 156.0};
  const double ix = 1.0 / x;
  const double ix2 = ix * ix;
  double series = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) series = series * ix2 + c[k];
  series *= ix;
  return (x - 0.5) * std::log(x) - x + kLogSqrt2Pi + series - shift;
}

cplx f_charlier(double t, cplx s) {
  const cplx w = 0.5 * (s - 1.0) * std::erfc(t);
  const cplx arg = 1.0 + w;
  if (arg.imag() == 0.0 && arg.real() <= 0.0)
    throw BranchError("f_charlier: 1 + (s-1) erfc(t)/2 lies on the branch cut");
  return log1p_complex(w);
}

cplx g_charlier(double t, cplx s) {
  const cplx den = 1.0 + 0.5 * (s - 1.0) * std::erfc(t);
  if (den.imag() == 0.0 && den.real() <= 0.0)
    throw BranchError("g_charlier: 1 + (s-1) erfc(t)/2 lies on the branch cut");
  return (1.0 - s) / den * std::exp(-t * t) * kInvSqrtPi;
}

LogScaled<double> scaled_pcf(double a, double x, const PcfOptions& opt) {
  if (!(a > -1.0)) throw DomainError("scaled_pcf requires a > -1");
  if (!std::isfinite(x)) throw DomainError("scaled_pcf requires finite x");

  auto phi = [a, x](double t) { return a * std::log(t) - 0.5 * (t + x) * (t + x); };

  // locate the interior maximum of t^a exp(-(t+x)^2/2), if any
  double peak = 0.0;
  bool interior = false;
  if (a > 0.0) {
    const double disc = std::sqrt(x * x + 4.0 * a);
    peak = x >= 0.0 ? 2.0 * a / (x + disc) : 0.5 * (-x + disc);
    interior = true;
  } else if (a == 0.0) {
    if (x < 0.0) {
      peak = -x;
      interior = true;
    }
  } else if (x < 0.0 && x * x + 4.0 * a > 0.0) {
    peak = 0.5 * (-x + std::sqrt(x * x + 4.0 * a));
    interior = true;
  }

  double ref = -0.5 * x * x;
  double width, sigma;
  if (interior) {
    ref = std::max(ref, phi(peak));
    sigma = 1.0 / std::sqrt(std::max(1.0 + a / (peak * peak), 1e-12));
    width = std::min(0.5 * peak, sigma);
  } else {
    sigma = 1.0 / (std::max(x, 0.0) + 1.0);
    width = sigma;
  }

  QuadOptions q;
  q.rel_tol = opt.rel_tol;

  auto end_integrand = [&](double d) { return std::exp(a * std::log(d) - 0.5 * (d + x) * (d + x) - ref); };
  const auto head = integrate_singular_end(end_integrand, width, a, q);

  std::vector<double> bp{width};
  auto push = [&](double t) {
    if (t > bp.back()) bp.push_back(t);
  };
  if (interior) {
    for (double k : {-16.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) push(peak + k * sigma);
  }
  double t = std::max(bp.back(), interior ? peak : width);
  double step = std::max(sigma, 0.25);
  while (phi(t) - ref > -90.0) {
    t += step;
    step *= 1.5;
    push(t);
  }
  push(t);

  auto body = [&](double s) { return std::exp(phi(s) - ref); };
  const auto tail = integrate(body, std::span<const double>(bp), q);

  const double total = head.value + tail.value;
  return LogScaled<double>::from_log(ref + std::log(total) - log_gamma(a + 1.0), 1.0);
}

LogScaled<double> scaled_pcf_shift(double a, double x, const PcfOptions& opt) {
  if (!(a > -1.0)) throw DomainError("scaled_pcf_shift requires a > -1");
  const auto upper = scale(scaled_pcf(a + 1.0, x, opt), a + 1.0);
  const auto lower = scale(scaled_pcf(a, x, opt), x);
  return upper + lower;
}

cplx log_h_au(const SingularWeightParams& p, double x, const PcfOptions& opt) {
  p.validate();
  const double l1 = scaled_pcf(p.a, x, opt).log_mag;
  const double l2 = scaled_pcf(p.a, -x, opt).log_mag;
  return log_gamma(p.a + 1.0) - kLogSqrt2Pi + l2 + log1p_exp(p.u + (l1 - l2));
}

namespace {

LogScaled<cplx> to_complex(const LogScaled<double>& v) {
  if (v.is_zero()) return {};
  return {v.log_mag, cplx(v.phase, 0.0)};
}

LogScaled<cplx> times_exp(const LogScaled<cplx>& v, cplx u) {
  if (v.is_zero()) return v;
  return {v.log_mag + u.real(), v.phase * std::polar(1.0, u.imag())};
}

}  // namespace

cplx dlog_h_au(const SingularWeightParams& p, double x, const PcfOptions& opt) {
  p.validate();
  const auto num = times_exp(to_complex(scaled_pcf_shift(p.a, x, opt)), p.u) -
                   to_complex(scaled_pcf_shift(p.a, -x, opt));
  const auto den = times_exp(to_complex(scaled_pcf(p.a, x, opt)), p.u) + to_complex(scaled_pcf(p.a, -x, opt));
  return -(num / den).value();
}

std::vector<double> tail_series(double a, int order) {
  // moments m_k = a(a-1)...(a-2k+1) / (2^k k!)
  std::vector<double> m(order + 1, 0.0), d(order + 1, 0.0);
  double falling = 1.0, denom = 1.0;
  for (int k = 1; k <= order; ++k) {
    falling *= (a - (2 * k - 2)) * (a - (2 * k - 1));
    denom *= 2.0 * k;
    m[k] = falling / denom;
  }
  for (int k = 1; k <= order; ++k) {
    double acc = m[k];
    for (int i = 1; i < k; ++i) acc -= static_cast<double>(i) / k * d[i] * m[k - i];
    d[k] = acc;
  }
  return {d.begin() + 1, d.end()};
}

cplx log_h_tail(const SingularWeightParams& p, double x, double crossover) {
  if (!(std::abs(x) >= crossover))
    throw DomainError("log_h_tail: |x| = " + std::to_string(std::abs(x)) + " is below the crossover " +
                      std::to_string(crossover));
  const double a = p.a;
  const double x2 = x * x;
  cplx v = a * std::log(std::abs(x)) + a * (a - 1.0) / (2.0 * x2) - a * (a - 1.0) * (2.0 * a - 3.0) / (4.0 * x2 * x2);
  if (x < 0.0) v += p.u;
  return v;
}

cplx assoc_hermite(double nu, int k, cplx z) {
  if (k < 0) throw DomainError("assoc_hermite: k must be nonnegative");
  if (k == 0) return 1.0;
  cplx prev = 1.0, cur = z;
  for (int m = 1; m < k; ++m) {
    const cplx next = z * cur - (m + nu) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx g0_integer_s(int a, cplx s, double y) {
  if (a < 1) throw DomainError("g0_integer requires a positive integer a");
  const cplx i(0.0, 1.0);
  const double sign = (a % 2 == 0) ? 1.0 : -1.0;
  const cplx arg = i * (-M_SQRT2 * y);
  const cplx p0 = std::pow(-i, a) * assoc_hermite(0.0, a, arg);
  const cplx q0 = std::pow(-i, a - 1) * assoc_hermite(1.0, a - 1, arg);
  return p0 * (sign + 0.5 * (s - sign) * std::erfc(y)) + q0 * (s - sign) * std::exp(-y * y) / std::sqrt(2.0 * M_PI);
}

cplx g0_integer(int a, cplx u, double y) { return g0_integer_s(a, std::exp(u), y); }

}  // namespace rnm
