// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rnm/asymptotics.hpp"
#include "rnm/cumulants.hpp"
#include "rnm/exact.hpp"
#include "rnm/partition.hpp"
#include "rnm/sampler.hpp"

using namespace rnm;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

SingularWeightParams weight(cplx u, double a, double rho) {
  SingularWeightParams p;
  p.u = u;
  p.a = a;
  p.rho = rho;
  return p;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const PotentialModel kGinibre = PotentialModel::ginibre();
const PotentialModel kFigure = PotentialModel::figure1();
const double kFigureR1 = r1_solve(kFigure).r1;
constexpr double kAlpha = 0.667, kU = 1.56, kRhoFrac = 0.71;

Outcome trivial_weight() {
  double worst = 0.0;
  for (const auto* m : {&kGinibre, &kFigure})
    for (int n : {1, 10, 100, 400})
      worst = std::max(worst, std::abs(log_mgf_exact(*m, n, weight(0.0, 0.0, 0.5), 0.0).log_mgf));
  return {worst <= 1e-9, "max |log E| = " + fmt("%.2e", worst) + " (tol 1e-9)"};
}

Outcome one_particle() {
  double worst = 0.0;
  for (double u : {-1.0, 0.5, 2.0})
    for (double rho : {0.4, 0.9}) {
      const double want = 1.0 + (std::exp(u) - 1.0) * (1.0 - std::exp(-rho * rho));
      const double got = std::exp(log_mgf_exact(kGinibre, 1, weight(u, 0.0, rho), 0.0).log_mgf.real());
      worst = std::max(worst, std::abs(got - want));
    }
  return {worst <= 1e-10, "max error " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome hermite_bridge() {
  double worst = 0.0;
  for (int a = 1; a <= 4; ++a)
    for (double u : {0.0, 1.56})
      for (int k = -24; k <= 24; ++k) {
        const double y = 0.25 * k;
        const cplx h = std::exp(log_h_au(weight(u, a, 0.5), y));
        worst = std::max(worst, std::abs(g0_integer(a, u, y / std::sqrt(2.0)) - h) / std::abs(h));
      }
  return {worst <= 1e-10, "max relative error " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome pcf_recurrence() {
  double worst = 0.0;
  for (double a : {-0.5, 0.3, 1.25, 3.0})
    for (int k = -32; k <= 32; ++k) {
      const double y = 0.25 * k;
      const double d2 = scaled_pcf(a + 1.0, y).value();
      const double d1 = scaled_pcf(a, y).value();
      const double d0 = scaled_pcf_shift(a, y).value();
      const double scale = std::max({std::abs((a + 1.0) * d2), std::abs(y * d1), std::abs(d0)});
      worst = std::max(worst, std::abs((a + 1.0) * d2 + y * d1 - d0) / scale);
    }
  return {worst <= 1e-10, "max scaled residual " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome derivative_identity() {
  double worst = 0.0;
  for (double a : {-0.5, 0.3, 1.25, 3.0})
    for (double u : {0.0, 1.56})
      for (int k = -32; k <= 32; ++k) {
        const double y = 0.25 * k, h = 1e-5;
        const auto p = weight(u, a, 0.5);
        const cplx num = (log_h_au(p, y + h) - log_h_au(p, y - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(num - dlog_h_au(p, y)));
      }
  return {worst <= 1e-6, "max abs error " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Outcome tail_expansion() {
  double worst = 0.0;
  for (double a : {1.25, 2.5})
    for (double x : {-20.0, 20.0}) {
      const auto p = weight(kU, a, 0.5);
      worst = std::max(worst, std::abs(log_h_au(p, x) - log_h_tail(p, x)));
    }
  return {worst <= 1e-6, "max |log H - tail| at |x|=20: " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Outcome theorem_specialization() {
  double worst = 0.0;
  for (const auto* m : {&kGinibre, &kFigure}) {
    const double r1 = r1_solve(*m).r1;
    for (double u : {-1.0, 0.5, 1.56})
      for (double f : {0.3, 0.5, 0.71}) {
        const auto g = general_coeffs(*m, weight(u, 0.0, f * r1), kAlpha);
        const auto c = counting_coeffs(*m, u, f * r1, kAlpha);
        worst = std::max({worst, std::abs(g.c1 - c.c1), std::abs(g.c2 - c.c2), std::abs(g.c3 - c.c3)});
      }
  }
  return {worst <= 1e-8, "max |general - counting| over 18 points " + fmt("%.2e", worst) + " (tol 1e-8)"};
}

Outcome integration_by_parts() {
  double worst = 0.0;
  for (double u : {-2.0, 0.5, 1.56}) worst = std::max(worst, appendix_a_identity_check(u).residual);
  return {worst <= 1e-8, "max residual " + fmt("%.2e", worst) + " (tol 1e-8)"};
}

Outcome monte_carlo() {
  const auto p = weight(kU, 1.25, kRhoFrac * kFigureR1);
  const SampleBatch b = sample_batch(kFigure, 8, kAlpha, 100000, 20240601);
  const MgfEstimate e = estimate_mgf(b, p);
  const double exact = std::exp(log_mgf_exact(kFigure, 8, p, kAlpha).log_mgf.real());
  const double z = std::abs(e.mean.real() - exact) / e.stderr_re;
  return {z <= 3.0, "exact " + fmt("%.6e", exact) + ", MC " + fmt("%.6e", e.mean.real()) + " +- " +
                        fmt("%.1e", e.stderr_re) + ", |z| = " + fmt("%.2f", z) + " (tol 3)"};
}

Outcome figure_reproduction() {
  std::vector<double> worst(3, 0.0);
  const int ns[] = {10, 40, 160};
  for (int k = 0; k <= 14; ++k) {
    const double a = -0.5 + 3.5 * k / 14.0;
    const auto p = weight(kU, a, kRhoFrac * kFigureR1);
    const auto c = general_coeffs(kFigure, p, kAlpha);
    for (int i = 0; i < 3; ++i) {
      const cplx res = log_mgf_exact(kFigure, ns[i], p, kAlpha).log_mgf - expansion_eval(c, ns[i]);
      worst[i] = std::max(worst[i], std::abs(res));
    }
  }
  return {worst[2] < worst[0], "max_a |residual - C3| at n=10,40,160: " + fmt("%.3e", worst[0]) + ", " +
                                   fmt("%.3e", worst[1]) + ", " + fmt("%.3e", worst[2]) + " (n=160 must be < n=10)"};
}

Outcome cumulants() {
  const double rho = 0.7;
  const auto d = counting_coefficient_derivatives(kGinibre, rho, 0.0, 2);
  const auto c500 = cumulants_exact(kGinibre, 500, rho, 0.0, 2);
  const auto c100 = cumulants_exact(kGinibre, 100, rho, 0.0, 2);
  const double k1 = c500.exact[0];
  const double rel = std::abs(k1 - cumulant_prediction(d, 500, 1).real()) / k1;
  const double r100 = c100.exact[1] / cumulant_prediction(d, 100, 2).real();
  const double r500 = c500.exact[1] / cumulant_prediction(d, 500, 2).real();
  const bool pass = rel <= 0.01 && r500 >= 0.8 && r500 <= 1.2 && std::abs(r500 - 1.0) < std::abs(r100 - 1.0);
  return {pass, "kappa1 rel err " + fmt("%.2e", rel) + " (tol 1e-2); kappa2 ratio n=100 " + fmt("%.5f", r100) +
                    ", n=500 " + fmt("%.5f", r500) + " (in [0.8,1.2], toward 1)"};
}

Outcome partition() {
  const auto f0 = free_energy_expansion(kGinibre, {}, 0.0);
  const double g50 = std::abs(log_z_ginibre(50, 0.0) - f0.eval(50).real());
  const double g200 = std::abs(log_z_ginibre(200, 0.0) - f0.eval(200).real());
  const auto p = weight(kU, 1.25, kRhoFrac);
  const auto fw = free_energy_expansion(kGinibre, p, 0.0);
  const double w50 = std::abs(log_z_weighted(kGinibre, 50, p, 0.0) - fw.eval(50));
  const double w200 = std::abs(log_z_weighted(kGinibre, 200, p, 0.0) - fw.eval(200));
  return {g200 < g50 && w200 < w50, "Gamma-product residual n=50 " + fmt("%.3e", g50) + ", n=200 " +
                                        fmt("%.3e", g200) + "; (u,a)=(1.56,1.25) n=50 " + fmt("%.3e", w50) +
                                        ", n=200 " + fmt("%.3e", w200)};
}

Outcome cutoff_robustness() {
  RegularizationConfig wide;
  wide.x_cutoff = 60.0;
  double dc2 = 0.0, dc3 = 0.0;
  for (double a : {-0.5, 0.3, 1.25, 3.0}) {
    const auto p = weight(kU, a, kRhoFrac * kFigureR1);
    const auto c30 = general_coeffs(kFigure, p, kAlpha);
    const auto c60 = general_coeffs(kFigure, p, kAlpha, wide);
    dc2 = std::max(dc2, std::abs(c30.c2 - c60.c2));
    dc3 = std::max(dc3, std::abs(c30.c3 - c60.c3));
  }
  return {dc2 <= 1e-8 && dc3 <= 1e-8,
          "max |dC2| " + fmt("%.2e", dc2) + ", max |dC3| " + fmt("%.2e", dc3) + " (tol 1e-8)"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "trivial-weight identity", 10.0, trivial_weight},
      {2, "one-particle closed form", 0.0, one_particle},
      {3, "associated-Hermite kernel bridge", 0.0, hermite_bridge},
      {4, "parabolic-cylinder recurrence", 0.0, pcf_recurrence},
      {5, "log H derivative identity", 0.0, derivative_identity},
      {6, "large-x expansion of log H", 0.0, tail_expansion},
      {7, "general vs counting coefficients at a=0", 0.0, theorem_specialization},
      {8, "integration-by-parts identity", 0.0, integration_by_parts},
      {9, "Monte Carlo oracle, n=8", 60.0, monte_carlo},
      {10, "Figure 1(a) residual approach", 900.0, figure_reproduction},
      {11, "counting cumulants, Ginibre rho=0.7", 0.0, cumulants},
      {12, "partition function expansion", 300.0, partition},
      {13, "x-cutoff doubling", 0.0, cutoff_robustness},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over time budget " + fmt("%.0f", c.budget_s) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s [%2d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
