#include "commands.hpp"

#include <cmath>

#include "rnm/asymptotics.hpp"
#include "rnm/cumulants.hpp"
#include "rnm/exact.hpp"
#include "rnm/partition.hpp"
#include "rnm/sampler.hpp"

namespace rnm::cli {

namespace {

// Parameter points of a run: the configured point, or one per grid value.
std::vector<SingularWeightParams> sweep_points(const RunConfig& c, const PotentialModel& m) {
  const SingularWeightParams base = c.params(m);
  if (c.sweep == Sweep::none) return {base};
  const double r1 = r1_solve(m).r1;
  std::vector<SingularWeightParams> out;
  for (double g : c.grid.points()) {
    SingularWeightParams p = base;
    if (c.sweep == Sweep::a) p.a = g;
    else p.rho = g * r1;
    p.validate();
    out.push_back(p);
  }
  return out;
}

}  // namespace

Table cmd_coeffs(const RunConfig& c) {
  const PotentialModel m = c.model();
  Table t{{"tag", "u_re", "u_im", "a", "rho", "c1_re", "c1_im", "c2_re", "c2_im", "c3_re", "c3_im"}, {}};
  auto emit = [&](const ExpansionCoefficients& e) {
    t.add({to_string(e.tag), e.params.u.real(), e.params.u.imag(), e.params.a, e.params.rho, e.c1.real(), e.c1.imag(),
           e.c2.real(), e.c2.imag(), e.c3.real(), e.c3.imag()});
  };
  for (const auto& p : sweep_points(c, m)) {
    emit(general_coeffs(m, p, c.alpha, c.reg));
    if (p.a == 0.0) emit(counting_coeffs(m, p.u, p.rho, c.alpha, c.reg));
  }
  return t;
}

Table cmd_exact(const RunConfig& c) {
  const PotentialModel m = c.model();
  Table t{{"n", "u_re", "u_im", "a", "rho", "log_mgf_re", "log_mgf_im", "err_est"}, {}};
  for (const auto& p : sweep_points(c, m))
    for (int n : c.n_list) {
      const ExactEvaluation ev = log_mgf_exact(m, n, p, c.alpha, c.exact);
      t.add({static_cast<long long>(n), p.u.real(), p.u.imag(), p.a, p.rho, ev.log_mgf.real(), ev.log_mgf.imag(),
             ev.error_estimate});
    }
  return t;
}

Table cmd_compare(const RunConfig& c) {
  const PotentialModel m = c.model();
  Table t{{"n", "u", "a", "rho", "log_mgf_re", "log_mgf_im", "c1", "c2", "c3", "residual_re", "residual_im",
           "err_est"},
          {}};
  for (const auto& p : sweep_points(c, m)) {
    const ExpansionCoefficients e = general_coeffs(m, p, c.alpha, c.reg);
    for (int n : c.n_list) {
      const ExactEvaluation ev = log_mgf_exact(m, n, p, c.alpha, c.exact);
      const cplx res = ev.log_mgf - expansion_eval(e, n);
      t.add({static_cast<long long>(n), p.u.real(), p.a, p.rho, ev.log_mgf.real(), ev.log_mgf.imag(), e.c1.real(),
             e.c2.real(), e.c3.real(), res.real(), res.imag(), ev.error_estimate});
    }
  }
  return t;
}

Table cmd_cumulants(const RunConfig& c) {
  const PotentialModel m = c.model();
  const double rho = c.resolve_rho(m);
  Table t{{"n", "rho", "j", "kappa_exact", "kappa_asym_re", "kappa_asym_im"}, {}};
  const CoefficientDerivatives d = counting_coefficient_derivatives(m, rho, c.alpha, c.jmax, c.reg);
  for (int n : c.n_list) {
    const Eigen::VectorXd p = counting_probs(m, n, rho, c.alpha, c.exact);
    std::vector<double> exact;
    if (c.jmax <= 4) {
      exact = bernoulli_cumulants(p, c.jmax);
    } else {
      for (const cplx k : contour_cumulants([&](cplx u) { return bernoulli_log_mgf(p, u); }, c.jmax))
        exact.push_back(k.real());
    }
    for (int j = 1; j <= c.jmax; ++j) {
      const cplx a = cumulant_prediction(d, n, j);
      t.add({static_cast<long long>(n), rho, static_cast<long long>(j), exact[j - 1], a.real(), a.imag()});
    }
  }
  return t;
}

Table cmd_partition(const RunConfig& c) {
  const PotentialModel m = c.model();
  const SingularWeightParams p = c.params(m);
  const FreeEnergyExpansion f = free_energy_expansion(m, p, c.alpha, c.reg);
  Table t{{"n", "u", "a", "rho", "log_z_re", "log_z_im", "expansion_re", "expansion_im", "residual"}, {}};
  for (int n : c.n_list) {
    const cplx z = log_z_weighted(m, n, p, c.alpha, c.exact);
    const cplx e = f.eval(n);
    t.add({static_cast<long long>(n), p.u.real(), p.a, p.rho, z.real(), z.imag(), e.real(), e.imag(),
           std::abs(z - e)});
  }
  return t;
}

Table cmd_sample(const RunConfig& c) {
  const PotentialModel m = c.model();
  Table t{{"n", "u", "a", "rho", "reps", "seed", "mc_re", "mc_im", "stderr_re", "stderr_im", "exact_re", "exact_im",
           "unreliable", "near_rho_fraction"},
          {}};
  SamplerOptions so;
  so.grid_size = c.mc_grid;
  so.threads = c.exact.threads;
  for (int n : c.n_list) {
    const SampleBatch b = sample_batch(m, n, c.alpha, c.reps, c.seed, so);
    for (const auto& p : sweep_points(c, m)) {
      const MgfEstimate e = estimate_mgf(b, p);
      const cplx ex = std::exp(log_mgf_exact(m, n, p, c.alpha, c.exact).log_mgf);
      t.add({static_cast<long long>(n), p.u.real(), p.a, p.rho, static_cast<long long>(c.reps),
             static_cast<long long>(c.seed), e.mean.real(), e.mean.imag(), e.stderr_re, e.stderr_im, ex.real(),
             ex.imag(), e.unreliable, e.near_rho_fraction});
    }
  }
  return t;
}

Table cmd_selfcheck(const RunConfig& c) {
  const PotentialModel m = c.model();
  const double r1 = r1_solve(m).r1;
  Table t{{"check", "value", "tolerance", "pass"}, {}};
  auto check = [&](const std::string& name, double value, double tol) {
    t.add({name, value, tol, std::isfinite(value) && value <= tol});
  };

  for (double u : {-2.0, 0.5, 1.56}) {
    const IdentityResidual r = appendix_a_identity_check(u, c.reg);
    check("integration-by-parts identity u=" + format_cell(u), r.residual, 1e-8);
  }

  double bridge = 0.0;
  for (int a = 1; a <= 4; ++a)
    for (double u : {0.0, 1.56})
      for (double y = -6.0; y <= 6.0; y += 0.25) {
        SingularWeightParams p;
        p.u = u;
        p.a = a;
        const cplx h = std::exp(log_h_au(p, y));
        bridge = std::max(bridge, std::abs(g0_integer(a, u, y / std::sqrt(2.0)) - h) / std::abs(h));
      }
  check("associated-Hermite kernel bridge", bridge, 1e-10);

  double rec = 0.0, fd = 0.0;
  for (double a : {-0.5, 0.3, 1.25, 3.0})
    for (double y = -8.0; y <= 8.0; y += 0.5) {
      // e^{-y^2/4} [(a+1) D_{-a-2} + y D_{-a-1} - D_{-a}] relative to the largest term
      const double d2 = scaled_pcf(a + 1.0, y).value();
      const double d1 = scaled_pcf(a, y).value();
      const double d0 = scaled_pcf_shift(a, y).value();
      const double scale = std::max({std::abs((a + 1.0) * d2), std::abs(y * d1), std::abs(d0)});
      rec = std::max(rec, std::abs((a + 1.0) * d2 + y * d1 - d0) / scale);
      SingularWeightParams p;
      p.u = 1.56;
      p.a = a;
      const double h = 1e-5;
      const cplx num = (log_h_au(p, y + h) - log_h_au(p, y - h)) / (2.0 * h);
      fd = std::max(fd, std::abs(num - dlog_h_au(p, y)));
    }
  check("parabolic-cylinder recurrence", rec, 1e-10);
  check("log H derivative vs finite difference", fd, 1e-6);

  double tail = 0.0;
  for (double a : {1.25, 2.5})
    for (double x : {-20.0, 20.0}) {
      SingularWeightParams p;
      p.u = 1.56;
      p.a = a;
      tail = std::max(tail, std::abs(log_h_au(p, x) - log_h_tail(p, x)));
    }
  check("large-x expansion of log H", tail, 1e-6);

  double dual = 0.0;
  for (double u : {-1.0, 0.5, 1.56})
    for (double f : {0.3, 0.5, 0.71}) {
      SingularWeightParams p;
      p.u = u;
      p.rho = f * r1;
      const ExpansionCoefficients g = general_coeffs(m, p, c.alpha, c.reg);
      const ExpansionCoefficients k = counting_coeffs(m, u, p.rho, c.alpha, c.reg);
      dual = std::max({dual, std::abs(g.c1 - k.c1), std::abs(g.c2 - k.c2), std::abs(g.c3 - k.c3)});
    }
  check("general vs counting coefficients at a=0", dual, 1e-8);

  double trivial = 0.0;
  for (int n : {1, 10, 100}) {
    SingularWeightParams p;
    p.rho = 0.5 * r1;
    trivial = std::max(trivial, std::abs(log_mgf_exact(m, n, p, c.alpha, c.exact).log_mgf));
  }
  check("trivial weight log-MGF", trivial, 1e-9);

  double one = 0.0;
  const PotentialModel g = PotentialModel::ginibre();
  for (double u : {-1.0, 0.5, 2.0})
    for (double rho : {0.4, 0.9}) {
      SingularWeightParams p;
      p.u = u;
      p.rho = rho;
      const double want = std::log(1.0 + (std::exp(u) - 1.0) * (1.0 - std::exp(-rho * rho)));
      one = std::max(one, std::abs(log_mgf_exact(g, 1, p, 0.0).log_mgf - want));
    }
  check("one-particle closed form", one, 1e-10);
  return t;
}

}  // namespace rnm::cli
