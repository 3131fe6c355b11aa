#include "rnm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rnm/detail/parallel.hpp"
#include "rnm/errors.hpp"
#include "rnm/quadrature.hpp"

namespace rnm {

namespace {

constexpr double kLeakTol = 1e-10;
constexpr double kEdgeDrop = 40.0;

double uniform_open(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 0.5) * 0x1p-53; }

}  // namespace

double InverseCdf::panel_cdf(Eigen::Index i, double v) const {
  const double a = v_[i], b = v_[i + 1];
  if (i == 0 && a == 0.0) return c_[1] * std::pow(v / b, power_ + 1.0);
  const double h = b - a, t = (v - a) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * c_[i] + (t3 - 2 * t2 + t) * h * dens_[i] + (-2 * t3 + 3 * t2) * c_[i + 1] +
         (t3 - t2) * h * dens_[i + 1];
}

double InverseCdf::cdf(double v) const {
  if (v <= v_[0]) return 0.0;
  const Eigen::Index last = v_.size() - 1;
  if (v >= v_[last]) return 1.0;
  const auto it = std::upper_bound(v_.data(), v_.data() + v_.size(), v);
  const Eigen::Index i = (it - v_.data()) - 1;
  return std::clamp(panel_cdf(i, v), c_[i], c_[i + 1]);
}

double InverseCdf::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile needs p in [0, 1]");
  const Eigen::Index last = v_.size() - 1;
  if (p <= 0.0) return v_[0];
  if (p >= 1.0) return v_[last];
  const auto it = std::upper_bound(c_.data(), c_.data() + c_.size(), p);
  const Eigen::Index i = std::min<Eigen::Index>((it - c_.data()) - 1, last - 1);
  double lo = v_[i], hi = v_[i + 1];
  if (i == 0 && lo == 0.0) return hi * std::pow(p / c_[1], 1.0 / (power_ + 1.0));
  double x = lo + (hi - lo) * (p - c_[i]) / std::max(c_[i + 1] - c_[i], 1e-300);
  // safeguarded Newton on the Hermite panel
  for (int it_n = 0; it_n < 60; ++it_n) {
    const double f = panel_cdf(i, x) - p;
    if (f > 0.0) hi = x; else lo = x;
    const double h = v_[i + 1] - v_[i], t = (x - v_[i]) / h;
    const double d = (6 * t * t - 6 * t) / h * c_[i] + (3 * t * t - 4 * t + 1) * dens_[i] +
                     (-6 * t * t + 6 * t) / h * c_[i + 1] + (3 * t * t - 2 * t) * dens_[i + 1];
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

InverseCdf build_inverse_cdf(const PotentialModel& model, int n, int j, double alpha, int grid_size) {
  if (n < 1 || j < 0 || j >= n) throw DomainError("need n >= 1 and 0 <= j < n");
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
  if (grid_size < 16) throw DomainError("grid_size must be at least 16");
  const DropletGeometry geom = r1_solve(model);
  const double m = 2.0 * j + 2.0 * alpha + 1.0;
  const double nn = n;

  double peak = 0.0, d2;
  if (m > 0.0) {
    peak = r_tau(geom, model, 0.5 * m / nn);
    d2 = 4.0 * model.delta_q(peak);
  } else {
    d2 = model.delta_q_at_zero();
    if (!std::isfinite(d2)) d2 = model.delta_q(1e-3 * geom.r1);
    d2 *= 4.0;
  }
  auto logf = [&](double v) { return m * std::log(v) - nn * model.q(v, 0); };
  const double ref = peak > 0.0 ? logf(peak) : logf(1e-300 + 0.0);

  const double half = 12.0 / std::sqrt(nn * d2);
  double lo = std::max(0.0, peak - half), hi = peak + half;
  const double ref_max = peak > 0.0 ? ref : logf(std::min(half, geom.r1) * 1e-3);
  while (lo > 0.0 && logf(lo) - ref_max > -kEdgeDrop) lo = std::max(0.0, lo - half);
  while (logf(hi) - ref_max > -kEdgeDrop) hi += half;

  InverseCdf t;
  t.power_ = m;
  t.v_ = Eigen::VectorXd::LinSpaced(grid_size, lo, hi);
  const Eigen::Index N = t.v_.size();
  Eigen::VectorXd dens(N);
  for (Eigen::Index i = 0; i < N; ++i) dens[i] = t.v_[i] > 0.0 ? std::exp(logf(t.v_[i]) - ref_max) : 0.0;

  const GaussRule& rule = gauss_legendre(kDefaultGaussOrder);
  auto body = [&](double v) { return std::exp(logf(v) - ref_max); };
  Eigen::VectorXd c(N);
  c[0] = 0.0;
  CompensatedSum<double> acc;
  for (Eigen::Index i = 0; i + 1 < N; ++i) {
    const double a = t.v_[i], b = t.v_[i + 1];
    double piece = 0.0;
    if (a == 0.0) {
      QuadOptions q;
      q.rel_tol = 1e-13;
      piece = integrate_singular_end(body, b, m, q).value;
    } else {
      const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
      for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) piece += rule.weights[k] * body(mid + hw * rule.nodes[k]);
      piece *= hw;
    }
    acc.add(piece);
    c[i + 1] = acc.value();
  }
  const double inside = c[N - 1];

  QuadOptions tail_q;
  tail_q.rel_tol = 1e-8;
  tail_q.abs_tol = 1e-14 * inside;
  double outside = integrate(body, hi, hi + 8.0 * half, tail_q).value;
  if (lo > 0.0) outside += integrate_singular_end(body, lo, m, tail_q).value;
  t.leak_ = outside / (inside + outside);
  if (!(inside > 0.0) || !std::isfinite(inside) || t.leak_ > kLeakTol)
    throw QuadratureError("inverse CDF table leaks mass outside its window", t.leak_);

  t.c_ = c / inside;
  t.c_[N - 1] = 1.0;
  t.dens_ = dens / inside;
  for (Eigen::Index i = 1; i < N; ++i)
    if (!(t.c_[i] >= t.c_[i - 1])) throw QuadratureError("inverse CDF table is not monotone", 0.0);
  return t;
}

SampleBatch sample_batch(const PotentialModel& model, int n, double alpha, int reps, std::uint64_t seed,
                         const SamplerOptions& opt) {
  if (reps < 1) throw DomainError("reps must be positive");
  std::vector<InverseCdf> tables(n);
  detail::parallel_for(n, opt.threads, [&](int j) { tables[j] = build_inverse_cdf(model, n, j, alpha, opt.grid_size); });

  SampleBatch b;
  b.seed = seed;
  b.n = n;
  b.reps = reps;
  b.alpha = alpha;
  b.moduli.resize(reps, n);
  detail::parallel_for(reps, opt.threads, [&](int r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 gen(seq);
    for (int j = 0; j < n; ++j) b.moduli(r, j) = tables[j].quantile(uniform_open(gen));
  });
  return b;
}

double MgfEstimate::stderr_abs() const { return std::hypot(stderr_re, stderr_im); }

MgfEstimate estimate_mgf(const SampleBatch& batch, const SingularWeightParams& params) {
  params.validate();
  const Eigen::Index R = batch.moduli.rows();
  if (R < 2) throw DomainError("estimate_mgf needs at least two reps");
  Eigen::VectorXcd x(R);
  Eigen::Index near = 0;
  for (Eigen::Index r = 0; r < R; ++r) {
    cplx logw{0.0, 0.0};
    for (Eigen::Index j = 0; j < batch.moduli.cols(); ++j) {
      const double v = batch.moduli(r, j);
      const double d = std::abs(v - params.rho);
      if (d < 1e-8) ++near;
      if (v < params.rho) logw += params.u;
      if (params.a != 0.0) logw += params.a * std::log(d);
    }
    x[r] = std::exp(logw);
  }
  MgfEstimate e;
  e.mean = x.mean();
  // jackknife: leave-one-out means theta_i = (S - x_i)/(R - 1)
  const cplx sum = x.sum();
  const double rr = static_cast<double>(R);
  const Eigen::VectorXcd loo = (Eigen::VectorXcd::Constant(R, sum) - x) / (rr - 1.0);
  const cplx loo_mean = loo.mean();
  const Eigen::VectorXcd dev = loo.array() - loo_mean;
  e.stderr_re = std::sqrt((rr - 1.0) / rr * dev.real().squaredNorm());
  e.stderr_im = std::sqrt((rr - 1.0) / rr * dev.imag().squaredNorm());
  e.unreliable = params.a <= -0.5;
  e.near_rho_fraction = static_cast<double>(near) / static_cast<double>(batch.moduli.size());
  return e;
}

}  // namespace rnm
