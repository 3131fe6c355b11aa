#pragma once

// Panel-adaptive Gauss-Legendre quadrature.
//
// A panel is integrated with an N-point rule on the whole interval and on
// its two halves; the halves give the value and the difference gives the
// error estimate. The panel with the largest error is split until the total
// error meets max(abs_tol, rel_tol * |total|).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <tuple>
#include <span>
#include <type_traits>
#include <vector>

#include "rnm/errors.hpp"

namespace rnm {

struct QuadOptions {
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  int max_panels = 4000;
  bool throw_on_failure = false;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int panels = 0;
  bool converged = true;
};

struct GaussRule {
  Eigen::VectorXd nodes;    // on [-1, 1]
  Eigen::VectorXd weights;
};

/// N-point Gauss-Legendre rule from the Golub-Welsch eigenproblem.
/// Rules are cached per order; safe for concurrent use after first call.
const GaussRule& gauss_legendre(int order);

inline constexpr int kDefaultGaussOrder = 16;

/// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      const T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
      sum_ = t;
    } else {
      re_.add(x.real());
      im_.add(x.imag());
    }
  }
  T value() const {
    if constexpr (std::is_floating_point_v<T>)
      return sum_ + comp_;
    else
      return T(re_.value(), im_.value());
  }

 private:
  struct Empty {};
  T sum_{};
  T comp_{};
  std::conditional_t<std::is_floating_point_v<T>, Empty, CompensatedSum<double>> re_{}, im_{};
};

namespace detail {

template <class F>
auto gauss_panel(F& f, double lo, double hi, const GaussRule& rule) {
  using T = std::invoke_result_t<F&, double>;
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  T acc{};
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(c + h * rule.nodes[i]);
  return T(acc * h);
}

template <class T>
struct Panel {
  double lo, hi;
  T whole;  // single-rule value on [lo, hi]
  T left, right;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

/// Integrate f over consecutive intervals delimited by `breakpoints`
/// (at least two, increasing).
template <class F>
auto integrate(F&& f, std::span<const double> breakpoints, const QuadOptions& opt = {})
    -> QuadResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  const GaussRule& rule = gauss_legendre(kDefaultGaussOrder);
  std::vector<detail::Panel<T>> heap;

  auto make = [&](double lo, double hi, T whole) {
    const double mid = 0.5 * (lo + hi);
    detail::Panel<T> p{lo, hi, whole, detail::gauss_panel(f, lo, mid, rule),
                       detail::gauss_panel(f, mid, hi, rule), 0.0};
    p.err = std::abs(p.whole - (p.left + p.right));
    return p;
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    if (!(hi > lo)) continue;
    heap.push_back(make(lo, hi, detail::gauss_panel(f, lo, hi, rule)));
  }
  std::make_heap(heap.begin(), heap.end());

  auto totals = [&]() {
    CompensatedSum<T> v;
    double e = 0.0;
    for (const auto& p : heap) {
      v.add(p.left + p.right);
      e += p.err;
    }
    return std::pair<T, double>{v.value(), e};
  };

  QuadResult<T> res;
  auto [value, err] = totals();
  while (true) {
    res.value = value;
    res.error = err;
    res.panels = static_cast<int>(heap.size());
    if (heap.empty() || !std::isfinite(err)) break;
    if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
      // incremental totals drift; confirm with a fresh sum
      std::tie(value, err) = totals();
      res.value = value;
      res.error = err;
      if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) break;
    }
    if (res.panels >= opt.max_panels) {
      res.converged = false;
      if (opt.throw_on_failure) throw QuadratureError("adaptive quadrature hit the panel limit", err);
      break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const detail::Panel<T> worst = heap.back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      res.converged = false;
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    heap.pop_back();
    auto left = make(worst.lo, mid, worst.left);
    auto right = make(mid, worst.hi, worst.right);
    value += (left.left + left.right + right.left + right.right) - (worst.left + worst.right);
    err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }
  return res;
}

template <class F>
auto integrate(F&& f, double lo, double hi, const QuadOptions& opt = {}) {
  const double bp[2] = {lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(bp, 2), opt);
}

/// Integrate g(d) for d in (0, width], where g may carry an integrable
/// algebraic or logarithmic singularity at d = 0 and behaves like
/// d^power near it (power > -1).
///
/// The substitution d = width * exp(-y) turns the integrand into
/// g(d) * d, smooth in y and decaying like exp(-(power+1) y). The part of
/// the y-range beyond the truncation point is added from the leading
/// power law.
template <class G>
auto integrate_singular_end(G&& g, double width, double power, const QuadOptions& opt = {})
    -> QuadResult<std::invoke_result_t<G&, double>> {
  using T = std::invoke_result_t<G&, double>;
  const double rate = power + 1.0;
  if (!(rate > 0.0)) throw DomainError("integrate_singular_end: power must exceed -1");
  const double target = std::log(1.0 / std::max(opt.rel_tol, 1e-300)) + 12.0;
  const double y_max = std::min(target / rate, 700.0);

  auto h = [&](double y) -> T {
    const double d = width * std::exp(-y);
    return T(g(d) * d);
  };
  std::vector<double> bp{0.0};
  for (double y = 0.5; y < y_max; y *= 2.0) bp.push_back(y);
  bp.push_back(y_max);
  auto res = integrate(h, std::span<const double>(bp), opt);
  // analytic remainder: integrand ~ C exp(-rate y)
  res.value += h(y_max) / rate;
  return res;
}

}  // namespace rnm
