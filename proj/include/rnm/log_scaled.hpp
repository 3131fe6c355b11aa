#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

namespace rnm {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// A value stored as phase * exp(log_mag).
///
/// For Scalar = double the phase is -1, 0 or +1; for complex scalars it is a
/// unit-modulus number. Zero is represented by log_mag = -inf and phase 0.
template <class Scalar>
struct LogScaled {
  double log_mag = -std::numeric_limits<double>::infinity();
  Scalar phase = Scalar(0);

  static LogScaled zero() { return {}; }

  static LogScaled from_log(double log_mag, Scalar phase = Scalar(1)) {
    if (!std::isfinite(log_mag) && log_mag < 0) return {};
    return {log_mag, phase};
  }

  static LogScaled from_value(Scalar v) {
    const double m = std::abs(v);
    if (m == 0.0) return {};
    return {std::log(m), v / m};
  }

  bool is_zero() const { return phase == Scalar(0); }

  Scalar value() const { return is_zero() ? Scalar(0) : phase * std::exp(log_mag); }

  /// Natural logarithm on the principal branch.
  std::complex<double> log() const {
    if constexpr (is_complex_v<Scalar>) {
      return {log_mag, std::arg(phase)};
    } else {
      return {log_mag, phase < 0 ? M_PI : 0.0};
    }
  }

  LogScaled operator-() const { return {log_mag, -phase}; }
};

template <class S>
LogScaled<S> operator*(const LogScaled<S>& x, const LogScaled<S>& y) {
  if (x.is_zero() || y.is_zero()) return {};
  S ph = x.phase * y.phase;
  if constexpr (is_complex_v<S>) ph /= std::abs(ph);
  return {x.log_mag + y.log_mag, ph};
}

template <class S>
LogScaled<S> operator/(const LogScaled<S>& x, const LogScaled<S>& y) {
  if (x.is_zero()) return {};
  S ph = x.phase / y.phase;
  if constexpr (is_complex_v<S>) ph /= std::abs(ph);
  return {x.log_mag - y.log_mag, ph};
}

/// Multiply by a plain scalar factor.
template <class S>
LogScaled<S> scale(const LogScaled<S>& x, S factor) {
  return x * LogScaled<S>::from_value(factor);
}

/// Max-shifted addition; never overflows for finite log magnitudes.
template <class S>
LogScaled<S> operator+(const LogScaled<S>& x, const LogScaled<S>& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const double m = std::max(x.log_mag, y.log_mag);
  const S s = x.phase * std::exp(x.log_mag - m) + y.phase * std::exp(y.log_mag - m);
  const double am = std::abs(s);
  if (am == 0.0) return {};
  return {m + std::log(am), s / am};
}

template <class S>
LogScaled<S> operator-(const LogScaled<S>& x, const LogScaled<S>& y) {
  return x + (-y);
}

/// log(1 + exp(z)) on the principal branch, stable for large |Re z|.
/// Continuous in z as long as |Im z| < pi.
inline std::complex<double> log1p_exp(std::complex<double> z) {
  if (z.real() > 0.0) {
    const std::complex<double> e = std::exp(-z);
    // z + log(1 + e^{-z})
    const double re = 0.5 * std::log1p(2.0 * e.real() + std::norm(e));
    const double im = std::atan2(e.imag(), 1.0 + e.real());
    return z + std::complex<double>(re, im);
  }
  const std::complex<double> e = std::exp(z);
  const double re = 0.5 * std::log1p(2.0 * e.real() + std::norm(e));
  const double im = std::atan2(e.imag(), 1.0 + e.real());
  return {re, im};
}

/// Principal log(1 + w), accurate for small |w|.
inline std::complex<double> log1p_complex(std::complex<double> w) {
  const double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
  const double im = std::atan2(w.imag(), 1.0 + w.real());
  return {re, im};
}

}  // namespace rnm
