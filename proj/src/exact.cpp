#include "rnm/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rnm/detail/parallel.hpp"
#include "rnm/errors.hpp"
#include "rnm/quadrature.hpp"

namespace rnm {

void ExactConfig::validate() const {
  if (!(quad_rel_tol > 0.0 && quad_rel_tol <= 1e-6)) throw DomainError("quad_rel_tol must lie in (0, 1e-6]");
  if (max_panels < 64) throw DomainError("max_panels must be at least 64");
  if (split_epsilon < 0.0) throw DomainError("split_epsilon must be nonnegative");
  if (!(window_drop >= 40.0)) throw DomainError("window_drop must be at least 40");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2 = 0.69314718055994530942;

// 2 v^m e^{-n q(v)} |v - rho|^a on one side of rho, handled in log scale.
struct Radial {
  const PotentialModel* model;
  double n;
  double m;  // 2j + 2 alpha + 1
  double a = 0.0;
  double rho = 0.0;
  bool weighted = false;

  double base(double v) const { return m * std::log(v) - n * model->q(v, 0); }
  double full(double v) const { return weighted ? base(v) + a * std::log(std::abs(v - rho)) : base(v); }
};

struct Piece {
  double log_value = -kInf;
  double rel_err = 0.0;
};

// End of a region: position, whether the integrand is algebraically singular
// there, and its local power.
struct End {
  double x;
  bool special;
  double power;
  double edge;  // preferred endpoint panel width
};

Piece region_integral(const Radial& f, End lo, End hi, double peak, double w, const ExactConfig& cfg) {
  const double A = lo.x, B = hi.x;
  const bool rho_at_a = f.weighted && A == f.rho;
  const bool rho_at_b = f.weighted && B == f.rho;

  // locate the maximum of the full log-integrand on a grid around the clipped peak
  const double pc = std::clamp(peak, A, std::isfinite(B) ? B : peak);
  double ref = -kInf, vmax = pc;
  for (int k = -64; k <= 64; ++k) {
    double v = pc + 0.5 * k * w;
    if (v <= A || v >= B) continue;
    const double val = f.full(v);
    if (val > ref) {
      ref = val;
      vmax = v;
    }
  }
  if (!std::isfinite(ref)) {
    // region narrower than the grid spacing
    vmax = std::isfinite(B) ? 0.5 * (A + B) : A + w;
    ref = f.full(vmax);
  }

  auto psi = [&](double v) { return f.full(v) - ref; };

  double L = vmax, U = vmax;
  bool reach_a = false, reach_b = false;
  for (double s = w;; s *= 2.0) {
    const double v = vmax - s;
    if (v <= A) {
      L = A;
      reach_a = true;
      break;
    }
    L = v;
    if (psi(v) < -cfg.window_drop) break;
  }
  for (double s = w;; s *= 2.0) {
    const double v = vmax + s;
    if (v >= B) {
      U = B;
      reach_b = true;
      break;
    }
    U = v;
    if (psi(v) < -cfg.window_drop) break;
  }

  QuadOptions q;
  q.rel_tol = cfg.quad_rel_tol;
  q.max_panels = cfg.max_panels;

  CompensatedSum<double> total;
  double err = 0.0;

  double ea = 0.0, eb = 0.0;
  const bool sing_a = reach_a && lo.special;
  const bool sing_b = reach_b && hi.special && std::isfinite(B);
  if (sing_a) ea = std::min(lo.edge, 0.5 * (U - A));
  if (sing_b) eb = std::min(hi.edge, 0.5 * (B - L));
  if (sing_a && sing_b) {
    ea = std::min(ea, 0.5 * (B - A));
    eb = std::min(eb, 0.5 * (B - A));
  }

  if (sing_a) {
    auto g = [&](double d) {
      const double v = A + d;
      double val = f.base(v) - ref;
      if (f.weighted) val += f.a * (rho_at_a ? std::log(d) : std::log(std::abs(v - f.rho)));
      return std::exp(val);
    };
    const auto r = integrate_singular_end(g, ea, lo.power, q);
    total.add(r.value);
    err += r.error;
  }
  if (sing_b) {
    auto g = [&](double d) {
      const double v = B - d;
      double val = f.base(v) - ref;
      if (f.weighted) val += f.a * (rho_at_b ? std::log(d) : std::log(std::abs(v - f.rho)));
      return std::exp(val);
    };
    const auto r = integrate_singular_end(g, eb, hi.power, q);
    total.add(r.value);
    err += r.error;
  }

  const double mid_lo = sing_a ? A + ea : L;
  const double mid_hi = sing_b ? B - eb : U;
  if (mid_hi > mid_lo) {
    std::vector<double> bp{mid_lo};
    std::vector<double> inner;
    for (double k = 1.0; k <= 1024.0; k *= 2.0) {
      inner.push_back(vmax - k * w);
      inner.push_back(vmax + k * w);
    }
    inner.push_back(vmax);
    std::sort(inner.begin(), inner.end());
    for (double t : inner)
      if (t > bp.back() && t < mid_hi) bp.push_back(t);
    bp.push_back(mid_hi);
    auto body = [&](double v) { return std::exp(psi(v)); };
    const auto r = integrate(body, std::span<const double>(bp), q);
    total.add(r.value);
    err += r.error;
  }

  const double v = total.value();
  if (!(v > 0.0) || !std::isfinite(v)) throw QuadratureError("radial integral is not positive and finite", err);
  return {ref + std::log(v) + kLog2, err / v};
}

struct IndexSetup {
  Radial f;
  double peak, w;
};

IndexSetup setup_index(const PotentialModel& model, const DropletGeometry& geom, int n, int j, double alpha) {
  IndexSetup s;
  s.f.model = &model;
  s.f.n = n;
  s.f.m = 2.0 * j + 2.0 * alpha + 1.0;
  // for m <= 0 the density is maximal at the origin
  s.peak = s.f.m > 0.0 ? r_tau(geom, model, 0.5 * s.f.m / n) : 0.0;
  double dq = s.peak > 0.0 ? model.delta_q(s.peak) : model.delta_q_at_zero();
  if (!std::isfinite(dq)) dq = model.delta_q(1e-3 * geom.r1);
  s.w = 1.0 / std::sqrt(4.0 * n * std::max(dq, 1e-300));
  if (s.peak > 0.0) s.w = std::min(s.w, s.peak);
  return s;
}

double origin_edge(const IndexSetup& s) { return s.peak > 0.0 ? std::min(0.5 * s.peak, s.w) : s.w; }

double log_h_unweighted(const IndexSetup& s, const ExactConfig& cfg, double& rel_err) {
  const End lo{0.0, true, s.f.m, origin_edge(s)};
  const End hi{kInf, false, 0.0, 0.0};
  const Piece p = region_integral(s.f, lo, hi, s.peak, s.w, cfg);
  rel_err = p.rel_err;
  return p.log_value;
}

IndexRatio ratio_with_geometry(const PotentialModel& model, const DropletGeometry& geom, int n, int j,
                               const SingularWeightParams& params, double alpha, const ExactConfig& cfg) {
  IndexSetup s = setup_index(model, geom, n, j, alpha);
  IndexRatio out;
  out.j = j;
  double err_h = 0.0;
  out.log_h = log_h_unweighted(s, cfg, err_h);

  Radial fw = s.f;
  fw.weighted = true;
  fw.a = params.a;
  fw.rho = params.rho;
  const double rho_edge = cfg.split_epsilon > 0.0
                              ? std::min(cfg.split_epsilon, 0.25 * params.rho)
                              : std::min(8.0 * s.w, 0.25 * params.rho);
  const End origin{0.0, true, s.f.m, std::min(origin_edge(s), 0.25 * params.rho)};
  const End at_rho{params.rho, true, params.a, rho_edge};
  const End infinity{kInf, false, 0.0, 0.0};

  const Piece in = region_integral(fw, origin, at_rho, s.peak, s.w, cfg);
  const Piece outp = region_integral(fw, at_rho, infinity, s.peak, s.w, cfg);

  out.r_in = LogScaled<double>::from_log(in.log_value - out.log_h, 1.0);
  out.r_out = LogScaled<double>::from_log(outp.log_value - out.log_h, 1.0);
  out.rel_error = err_h + in.rel_err + outp.rel_err;
  return out;
}

void check_inputs(int n, double alpha) {
  if (n < 1) throw DomainError("n must be a positive integer");
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
}

// log(e^u R_in + R_out) on the principal branch
cplx index_term(const IndexRatio& r, cplx u) {
  if (r.r_out.is_zero()) return u + r.r_in.log_mag;
  if (r.r_in.is_zero()) return r.r_out.log_mag;
  return r.r_out.log_mag + log1p_exp(u + (r.r_in.log_mag - r.r_out.log_mag));
}

}  // namespace

IndexRatio h_ratio(const PotentialModel& model, int n, int j, const SingularWeightParams& params, double alpha,
                   const ExactConfig& cfg) {
  check_inputs(n, alpha);
  if (j < 0 || j >= n) throw DomainError("index j must lie in 0..n-1");
  params.validate();
  cfg.validate();
  return ratio_with_geometry(model, r1_solve(model), n, j, params, alpha, cfg);
}

ExactEvaluation log_mgf_exact(const PotentialModel& model, int n, const SingularWeightParams& params, double alpha,
                              const ExactConfig& cfg) {
  check_inputs(n, alpha);
  params.validate();
  cfg.validate();
  const DropletGeometry geom = r1_solve(model);
  ExactEvaluation ev;
  ev.per_index.resize(n);
  detail::parallel_for(n, cfg.threads, [&](int j) {
    ev.per_index[j] = ratio_with_geometry(model, geom, n, j, params, alpha, cfg);
  });
  CompensatedSum<cplx> sum;
  double err = 0.0;
  for (const auto& r : ev.per_index) {
    const cplx t = index_term(r, params.u);
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
      throw BranchError("index " + std::to_string(r.j) + " summand is not finite");
    sum.add(t);
    err += r.rel_error;
  }
  ev.log_mgf = sum.value();
  ev.error_estimate = err;
  return ev;
}

LogZ log_z(const PotentialModel& model, int n, double alpha, const ExactConfig& cfg) {
  check_inputs(n, alpha);
  cfg.validate();
  const DropletGeometry geom = r1_solve(model);
  LogZ z;
  z.log_h.resize(n);
  detail::parallel_for(n, cfg.threads, [&](int j) {
    const IndexSetup s = setup_index(model, geom, n, j, alpha);
    double err = 0.0;
    z.log_h[j] = log_h_unweighted(s, cfg, err);
  });
  CompensatedSum<double> sum;
  for (double v : z.log_h) sum.add(v);
  z.sum_log_h = sum.value();
  z.log_n_factorial = log_gamma(n + 1.0);
  return z;
}

cplx log_z_weighted(const PotentialModel& model, int n, const SingularWeightParams& params, double alpha,
                    const ExactConfig& cfg) {
  const ExactEvaluation ev = log_mgf_exact(model, n, params, alpha, cfg);
  CompensatedSum<double> sum;
  for (const auto& r : ev.per_index) sum.add(r.log_h);
  return sum.value() + log_gamma(n + 1.0) + ev.log_mgf;
}

Eigen::VectorXd counting_probs(const PotentialModel& model, int n, double rho, double alpha, const ExactConfig& cfg) {
  SingularWeightParams p;
  p.rho = rho;
  const ExactEvaluation ev = log_mgf_exact(model, n, p, alpha, cfg);
  Eigen::VectorXd probs(n);
  for (int j = 0; j < n; ++j) probs[j] = std::clamp(ev.per_index[j].r_in.value(), 0.0, 1.0);
  return probs;
}

}  // namespace rnm
