// Complex log-gamma, Gamma and real digamma, templated on the real scalar.
//
// log_gamma uses the Stirling series on |z| >= 15, an upward recurrence to
// reach that region, and reflection for Re z < 1/2. Relative accuracy of
// Gamma is ~1e-15 (double) in the box |z| <= 50, |Im z| <= 200.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "lfun/errors.hpp"

namespace lfun {

namespace detail {

// B_{2k} / (2k (2k-1)), k = 1..10
template <typename Scalar>
inline constexpr std::array<Scalar, 10> kStirling = {
    Scalar(1) / 12,       Scalar(-1) / 360,         Scalar(1) / 1260,     Scalar(-1) / 1680,
    Scalar(1) / 1188,     Scalar(-691) / 360360,    Scalar(1) / 156,      Scalar(-3617) / 122400,
    Scalar(43867) / 244188, Scalar(-174611) / 125400};

template <typename Scalar>
constexpr Scalar kStirlingRadius = 15;

/// The correction sum of the Stirling series at z (|z| >= 15, Re z > 0).
template <typename Scalar>
std::complex<Scalar> stirling_tail(std::complex<Scalar> z) {
  const std::complex<Scalar> inv = Scalar(1) / z;
  const std::complex<Scalar> inv2 = inv * inv;
  std::complex<Scalar> acc = kStirling<Scalar>.back();
  for (int k = static_cast<int>(kStirling<Scalar>.size()) - 2; k >= 0; --k) {
    acc = acc * inv2 + kStirling<Scalar>[k];
  }
  return acc * inv;
}

template <typename Scalar>
std::complex<Scalar> stirling(std::complex<Scalar> z) {
  const Scalar half_log_2pi = std::log(2 * std::numbers::pi_v<Scalar>) / 2;
  return (z - Scalar(0.5)) * std::log(z) - z + half_log_2pi + stirling_tail(z);
}

/// log(sin(pi z)), stable for large |Im z|.
template <typename Scalar>
std::complex<Scalar> log_sin_pi(std::complex<Scalar> z) {
  using C = std::complex<Scalar>;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const C i(0, 1);
  if (std::abs(z.imag()) < 20) return std::log(std::sin(pi * z));
  if (z.imag() > 0) {
    return -i * pi * z + std::log(C(1) - std::exp(Scalar(2) * i * pi * z)) - std::log(C(0, -2));
  }
  return i * pi * z + std::log(C(1) - std::exp(Scalar(-2) * i * pi * z)) - std::log(C(0, 2));
}

}  // namespace detail

/// log(1 + w) for complex w, accurate when |w| is small.
template <typename Scalar>
std::complex<Scalar> log1p(std::complex<Scalar> w) {
  const Scalar u = w.real();
  const Scalar v = w.imag();
  return {std::log1p(2 * u + u * u + v * v) / 2, std::atan2(v, 1 + u)};
}

inline bool is_gamma_pole(double re, double im) {
  return im == 0 && re <= 0 && re == std::floor(re);
}

/// log Gamma(z). The imaginary part is a valid logarithm's phase but not
/// necessarily the continuous branch; use it only inside exp or mod 2 pi.
template <typename Scalar>
std::complex<Scalar> log_gamma(std::complex<Scalar> z) {
  using C = std::complex<Scalar>;
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real())) {
    throw PoleError("Gamma has a pole at nonpositive integer " + std::to_string(double(z.real())));
  }
  if (z.real() < Scalar(0.5)) {
    const Scalar log_pi = std::log(std::numbers::pi_v<Scalar>);
    return log_pi - detail::log_sin_pi(z) - log_gamma(C(1) - z);
  }
  const Scalar r = detail::kStirlingRadius<Scalar>;
  if (std::abs(z) >= r) return detail::stirling(z);
  // Re z >= 1/2 and |z| < 15: shift right until outside the disc.
  const Scalar need = std::sqrt(r * r - z.imag() * z.imag()) - z.real();
  const int shift = static_cast<int>(std::ceil(need)) + 1;
  C prod(1);
  for (int k = 0; k < shift; ++k) prod *= z + Scalar(k);
  return detail::stirling(z + Scalar(shift)) - std::log(prod);
}

/// Gamma(z) for complex z; throws PoleError at nonpositive integers.
template <typename Scalar>
std::complex<Scalar> complex_gamma(std::complex<Scalar> z) {
  return std::exp(log_gamma(z));
}

inline std::complex<double> complex_gamma(std::complex<double> z) { return complex_gamma<double>(z); }

/// log Gamma(z0 + h) - log Gamma(z0). When Re z0 is large and Re(z0 + h) > 0
/// the Stirling terms are differenced analytically, so the result keeps full
/// absolute accuracy even though each log Gamma is huge.
template <typename Scalar>
std::complex<Scalar> log_gamma_difference(std::complex<Scalar> z0, std::complex<Scalar> h) {
  const std::complex<Scalar> z1 = z0 + h;
  if (z0.real() >= detail::kStirlingRadius<Scalar> && z1.real() >= detail::kStirlingRadius<Scalar>) {
    return (z0 - Scalar(0.5)) * log1p(h / z0) + h * (std::log(z1) - Scalar(1)) +
           (detail::stirling_tail(z1) - detail::stirling_tail(z0));
  }
  return log_gamma(z1) - log_gamma(z0);
}

/// Real digamma psi(x) for x > 0.
template <typename Scalar>
Scalar digamma(Scalar x) {
  Scalar acc = 0;
  while (x < 20) {
    acc -= 1 / x;
    x += 1;
  }
  const Scalar inv2 = 1 / (x * x);
  const Scalar series =
      inv2 * (Scalar(1) / 12 -
              inv2 * (Scalar(1) / 120 - inv2 * (Scalar(1) / 252 - inv2 * (Scalar(1) / 240 - inv2 / 132))));
  return acc + std::log(x) - 1 / (2 * x) - series;
}

}  // namespace lfun
