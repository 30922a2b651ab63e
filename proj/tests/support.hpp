// Shared test helpers: seeded generators for property tests and oracles
// that do not share code with the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lfun/selberg.hpp"

namespace testing {

/// Deterministic generator; every property test seeds its own.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::complex<double> complex_in(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }

  /// Random valid data: 1..3 factors, Re(mu) >= 0, list coefficients with a_1 = 1.
  lfun::SelbergData selberg_data() {
    lfun::SelbergData d;
    d.m = static_cast<int>(integer(0, 2));
    const double phase = uniform(-std::numbers::pi, std::numbers::pi);
    d.epsilon = std::polar(1.0, phase);
    d.Q = log_uniform(0.05, 20);
    const long k = integer(1, 3);
    for (long j = 0; j < k; ++j) d.factors.push_back({log_uniform(0.1, 3), complex_in(0, 6, -2, 2)});
    std::vector<std::complex<double>> a{1.0};
    const long count = integer(1, 30);
    for (long n = 2; n <= count; ++n) a.push_back(complex_in(-1, 1, -1, 1));
    d.coefficients = lfun::CoefficientSource::list(std::move(a));
    return d;
  }

 private:
  std::mt19937_64 rng_;
};

/// Lanczos (g = 7, n = 9) complex Gamma, about 1e-15 relative on Re z > 0.5.
inline std::complex<double> lanczos_gamma(std::complex<double> z) {
  static const double g = 7;
  static const double c[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
  z -= 1.0;
  std::complex<double> x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
  const std::complex<double> t = z + g + 0.5;
  return std::sqrt(2 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

/// Trapezoid rule on [lo, hi] with `steps` intervals; spectrally accurate for
/// smooth integrands that decay to nothing at both ends.
template <typename F>
auto trapezoid(const F& f, double lo, double hi, int steps) {
  const double h = (hi - lo) / steps;
  auto sum = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < steps; ++i) sum += f(lo + i * h);
  return sum * h;
}

}  // namespace testing
