// Numbers stored by (log-magnitude, sign or phase). The quantities in this
// library routinely look like exp(a * exp(w)) or exp(-2 exp(T)), which no
// fixed-width real can hold directly.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace lfun {

/// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar wrap_phase(Scalar phase) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar two_pi = 2 * pi;
  phase = std::fmod(phase, two_pi);
  if (phase <= -pi) phase += two_pi;
  if (phase > pi) phase -= two_pi;
  return phase;
}

/// A real number as sign * exp(log_abs). Zero is sign 0 with log_abs = -inf.
template <typename Scalar = double>
struct SignedLogReal {
  Scalar log_abs = -std::numeric_limits<Scalar>::infinity();
  int sign = 0;

  static SignedLogReal from_value(Scalar v) {
    if (v == 0) return {};
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
  }
  static SignedLogReal from_log(Scalar log_abs, int sign = 1) {
    if (sign == 0) return {};
    return {log_abs, sign > 0 ? 1 : -1};
  }

  Scalar value() const { return sign == 0 ? Scalar(0) : sign * std::exp(log_abs); }
  Scalar log10_abs() const { return log_abs / std::numbers::ln10_v<Scalar>; }

  friend SignedLogReal operator*(const SignedLogReal& x, const SignedLogReal& y) {
    if (x.sign == 0 || y.sign == 0) return {};
    return {x.log_abs + y.log_abs, x.sign * y.sign};
  }
  friend SignedLogReal operator/(const SignedLogReal& x, const SignedLogReal& y) {
    if (x.sign == 0) return {};
    return {x.log_abs - y.log_abs, x.sign * y.sign};
  }
};

/// A complex number as exp(log_abs) * (cos phase + i sin phase), phase in (-pi, pi].
template <typename Scalar = double>
struct LogComplex {
  Scalar log_abs = -std::numeric_limits<Scalar>::infinity();
  Scalar phase = 0;

  LogComplex() = default;
  LogComplex(Scalar log_abs_, Scalar phase_) : log_abs(log_abs_), phase(wrap_phase(phase_)) {}

  /// exp(w) for a complex exponent w.
  static LogComplex exp_of(std::complex<Scalar> w) { return {w.real(), w.imag()}; }

  static LogComplex from_value(std::complex<Scalar> v) {
    if (v == std::complex<Scalar>(0)) return {};
    return {std::log(std::abs(v)), std::arg(v)};
  }

  /// The complex logarithm (principal branch of the stored phase).
  std::complex<Scalar> log() const { return {log_abs, phase}; }

  std::complex<Scalar> value() const { return std::polar(std::exp(log_abs), phase); }

  template <typename Other>
  LogComplex<Other> cast() const {
    LogComplex<Other> r;
    r.log_abs = static_cast<Other>(log_abs);
    r.phase = static_cast<Other>(phase);
    return r;
  }

  bool is_zero() const { return log_abs == -std::numeric_limits<Scalar>::infinity(); }

  friend LogComplex operator*(const LogComplex& x, const LogComplex& y) {
    if (x.is_zero() || y.is_zero()) return {};
    return {x.log_abs + y.log_abs, x.phase + y.phase};
  }
  friend LogComplex operator/(const LogComplex& x, const LogComplex& y) {
    if (x.is_zero()) return {};
    return {x.log_abs - y.log_abs, x.phase - y.phase};
  }
};

/// x / y - 1, evaluated without leaving log space until the ratio is O(1).
template <typename Scalar>
std::complex<Scalar> ratio_minus_one(const LogComplex<Scalar>& x, const LogComplex<Scalar>& y) {
  const Scalar dl = x.log_abs - y.log_abs;
  const Scalar dp = wrap_phase(x.phase - y.phase);
  // exp(dl + i dp) - 1 = expm1(dl) cos dp + (cos dp - 1) + i exp(dl) sin dp
  const Scalar cos_m1 = -2 * std::sin(dp / 2) * std::sin(dp / 2);
  return {std::expm1(dl) * std::cos(dp) + cos_m1, std::exp(dl) * std::sin(dp)};
}

/// |x/y - 1|
template <typename Scalar>
Scalar relative_error(const LogComplex<Scalar>& x, const LogComplex<Scalar>& y) {
  return std::abs(ratio_minus_one(x, y));
}

}  // namespace lfun
