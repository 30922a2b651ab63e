// Fourier transforms of products of Gamma functions,
//
//   I(T) = \int (1/4 + z^2)^m prod_j Gamma(alpha_j + i lambda_j z) e^{-iTz} dz,
//
// in three forms: the exact single-Gamma transform, the large-T leading
// term for k factors, and a quadrature oracle that integrates the product
// directly. All results are LogComplex since I(T) ~ exp(-Lambda e^{T/Lambda}).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lfun/gamma.hpp"
#include "lfun/log_number.hpp"
#include "lfun/quadrature.hpp"

namespace lfun {

template <typename Scalar = double>
struct GammaTerm {
  Scalar lambda;
  std::complex<Scalar> alpha;
};

template <typename Scalar = double>
struct GammaProductSpec {
  std::vector<GammaTerm<Scalar>> factors;
  int poly_power = 0;  // m in (1/4 + z^2)^m

  int k() const { return static_cast<int>(factors.size()); }

  Scalar Lambda() const {
    Scalar s = 0;
    for (const auto& f : factors) s += f.lambda;
    return s;
  }

  std::complex<Scalar> A() const {
    std::complex<Scalar> s = 0;
    for (const auto& f : factors) s += f.alpha;
    return s;
  }

  void validate() const {
    if (factors.empty()) throw std::invalid_argument("gamma product needs at least one factor");
    if (poly_power < 0) throw std::invalid_argument("poly_power must be nonnegative");
    for (const auto& f : factors) {
      if (!(f.lambda > 0)) throw std::invalid_argument("lambda must be positive");
      if (!(f.alpha.real() > 0)) throw std::invalid_argument("Re(alpha) must be positive");
    }
  }

  template <typename Other>
  GammaProductSpec<Other> cast() const {
    GammaProductSpec<Other> r;
    r.poly_power = poly_power;
    for (const auto& f : factors) {
      r.factors.push_back({static_cast<Other>(f.lambda), std::complex<Other>(f.alpha)});
    }
    return r;
  }
};

/// Exact transform of one Gamma: (2 pi / lambda) exp(-e^{T/lambda} + T alpha / lambda).
template <typename Scalar>
LogComplex<Scalar> ft_single_gamma(Scalar lambda, std::complex<Scalar> alpha, Scalar T) {
  if (!(lambda > 0) || !(alpha.real() > 0)) {
    throw std::invalid_argument("ft_single_gamma needs lambda > 0 and Re(alpha) > 0");
  }
  const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  const std::complex<Scalar> exponent =
      std::log(two_pi) - std::log(lambda) - std::exp(T / lambda) + T * alpha / lambda;
  return LogComplex<Scalar>::exp_of(exponent);
}

namespace detail {

/// sum_j (lambda_j / Lambda) log lambda_j
template <typename Scalar>
Scalar weighted_log_lambda(const GammaProductSpec<Scalar>& spec) {
  const Scalar L = spec.Lambda();
  Scalar s = 0;
  for (const auto& f : spec.factors) s += (f.lambda / L) * std::log(f.lambda);
  return s;
}

/// log of the prefactor with the polynomial factor (1/4+z^2)^m:
///   (-1)^m (2 pi)^{(k+1)/2} Lambda^{-1/2}
///     prod lambda_j^{-1/2 + alpha_j + (lambda_j/Lambda)((k-1)/2 - A - 2m)}.
template <typename Scalar>
std::complex<Scalar> log_prefactor(const GammaProductSpec<Scalar>& spec) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int k = spec.k();
  const int m = spec.poly_power;
  const Scalar L = spec.Lambda();
  const std::complex<Scalar> shift = Scalar(k - 1) / 2 - spec.A() - Scalar(2 * m);
  std::complex<Scalar> acc = Scalar(k + 1) / 2 * std::log(2 * pi) - std::log(L) / 2;
  for (const auto& f : spec.factors) {
    acc += (Scalar(-0.5) + f.alpha + (f.lambda / L) * shift) * std::log(f.lambda);
  }
  if (m % 2 == 1) acc += std::complex<Scalar>(0, pi);
  return acc;
}

/// -Lambda e^{T/Lambda} prod lambda_j^{-lambda_j/Lambda} + T (2m + A - (k-1)/2) / Lambda
template <typename Scalar>
std::complex<Scalar> leading_exponent(const GammaProductSpec<Scalar>& spec, Scalar T) {
  const Scalar L = spec.Lambda();
  const Scalar scale = std::exp(std::log(L) - weighted_log_lambda(spec));
  const std::complex<Scalar> drift = Scalar(2 * spec.poly_power) + spec.A() - Scalar(spec.k() - 1) / 2;
  return -scale * std::exp(T / L) + T * drift / L;
}

}  // namespace detail

/// C_{k,m}. For m = 0 this is C_k of the k-factor asymptotic.
template <typename Scalar>
LogComplex<Scalar> prefactor_Ckm(const GammaProductSpec<Scalar>& spec) {
  spec.validate();
  return LogComplex<Scalar>::exp_of(detail::log_prefactor(spec));
}

/// C_k = (2 pi)^{(k+1)/2} / sqrt(Lambda) prod lambda_j^{-1/2 + alpha_j + lambda_j((k-1)/2 - A)/Lambda}
template <typename Scalar>
LogComplex<Scalar> prefactor_Ck(const GammaProductSpec<Scalar>& spec) {
  if (spec.poly_power != 0) throw std::invalid_argument("prefactor_Ck takes a spec with m = 0");
  return prefactor_Ckm(spec);
}

/// Leading large-T term of the transform of (1/4+z^2)^m prod Gamma(alpha_j + i lambda_j z).
/// Relative error O(e^{-T/Lambda}); no error estimate is attached.
template <typename Scalar>
LogComplex<Scalar> ft_product_poly_asymptotic(const GammaProductSpec<Scalar>& spec, Scalar T) {
  spec.validate();
  return LogComplex<Scalar>::exp_of(detail::log_prefactor(spec) + detail::leading_exponent(spec, T));
}

template <typename Scalar>
LogComplex<Scalar> ft_product_asymptotic(const GammaProductSpec<Scalar>& spec, Scalar T) {
  if (spec.poly_power != 0) throw std::invalid_argument("ft_product_asymptotic takes a spec with m = 0");
  return ft_product_poly_asymptotic(spec, T);
}

/// Vertical offset y of the horizontal contour Im z = -y that passes near
/// the saddle of the integrand: sum_j lambda_j psi(Re alpha_j + lambda_j y) = T.
/// Shifting down never crosses a pole (they sit at Im z = (alpha_j + n)/lambda_j > 0),
/// and y is kept above -min_j Re(alpha_j)/lambda_j.
template <typename Scalar>
Scalar contour_shift(const GammaProductSpec<Scalar>& spec, Scalar T) {
  auto h = [&](Scalar y) {
    Scalar s = -T;
    for (const auto& f : spec.factors) s += f.lambda * digamma(f.alpha.real() + f.lambda * y);
    return s;
  };
  Scalar lowest = std::numeric_limits<Scalar>::infinity();
  for (const auto& f : spec.factors) lowest = std::min(lowest, f.alpha.real() / f.lambda);
  Scalar lo = -lowest * Scalar(0.999);
  Scalar hi = std::max(Scalar(1), lo + 1);
  if (h(lo) >= 0) return lo;
  while (h(hi) < 0) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > std::abs(hi) * 8 * std::numeric_limits<Scalar>::epsilon(); ++it) {
    const Scalar mid = (lo + hi) / 2;
    (h(mid) < 0 ? lo : hi) = mid;
  }
  Scalar y = (lo + hi) / 2;
  if (spec.poly_power > 0 && std::abs(y * y - Scalar(0.25)) < Scalar(0.05)) y += Scalar(0.25);
  return y;
}

/// The transform by direct quadrature of the product along Im z = -y (see
/// contour_shift). The integrand is evaluated relative to its value at x = 0
/// so nothing overflows; `tol` is the relative tolerance of the adaptive
/// Gauss-Legendre refinement. Throws NonConvergence if refinement gives up.
template <typename Scalar>
LogComplex<Scalar> ft_quadrature_oracle(const GammaProductSpec<Scalar>& spec, Scalar T, Scalar tol) {
  using C = std::complex<Scalar>;
  spec.validate();
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  const int m = spec.poly_power;
  const Scalar y = contour_shift(spec, T);

  std::vector<C> centre;
  centre.reserve(spec.factors.size());
  C log_peak = -T * y;
  for (const auto& f : spec.factors) {
    centre.push_back(f.alpha + f.lambda * y);
    log_peak += log_gamma(centre.back());
  }
  const Scalar poly_centre = Scalar(0.25) - y * y;
  if (m > 0) log_peak += Scalar(m) * std::log(C(poly_centre));

  auto log_relative = [&](Scalar x) {
    C acc(0, -T * x);
    for (std::size_t j = 0; j < centre.size(); ++j) {
      acc += log_gamma_difference(centre[j], C(0, spec.factors[j].lambda * x));
    }
    if (m > 0) acc += Scalar(m) * log1p(C(x * x, -2 * x * y) / poly_centre);
    return acc;
  };

  // the window ends where the integrand is `drop` nats below its largest value
  const Scalar drop = std::max(Scalar(45), -std::log(tol) + 20);
  auto reach = [&](Scalar direction) {
    Scalar best = log_relative(0).real();
    Scalar x = Scalar(0.01);
    for (int it = 0; it < 200; ++it, x *= 2) {
      const Scalar v = log_relative(direction * x).real();
      best = std::max(best, v);
      if (v < best - drop) return x;
    }
    throw NonConvergence("gamma product integrand does not decay", {double(x)});
  };
  const Scalar left = reach(-1);
  const Scalar right = reach(1);

  AdaptiveOptions opt;
  opt.rel_tol = static_cast<double>(tol);
  opt.initial_panels = 16;
  const C integral = integrate_adaptive([&](Scalar x) { return std::exp(log_relative(x)); }, -left, right, opt);
  if (integral == C(0)) return {};
  return LogComplex<Scalar>(log_peak.real() + std::log(std::abs(integral)), log_peak.imag() + std::arg(integral));
}

struct DecayRow {
  double T = 0;
  LogComplex<double> oracle;
  LogComplex<double> asymptotic;
  double rel_error = 0;  // |oracle/asymptotic - 1|
};

struct DecaySweep {
  std::vector<DecayRow> rows;
  double noise_floor = 0;  // rel_errors below this are indistinguishable from the oracle's own error
  bool exact = false;      // every rel_error is below the noise floor
  bool holds = false;      // consecutive ratios within a factor 3 of e^{-dT/Lambda}, or exact
};

/// R(T) = |oracle/asymptotic - 1| over increasing Ts, computed in long double.
/// Throws NonConvergence from the oracle.
template <typename Scalar>
DecaySweep decay_sweep(const GammaProductSpec<Scalar>& input, const std::vector<double>& Ts, double tol) {
  using LD = long double;
  const GammaProductSpec<LD> spec = input.template cast<LD>();
  spec.validate();
  for (std::size_t i = 1; i < Ts.size(); ++i) {
    if (!(Ts[i] > Ts[i - 1])) throw std::invalid_argument("T values must be strictly increasing");
  }
  DecaySweep sweep;
  sweep.noise_floor = std::max(100 * tol, 1e-15);
  for (double T : Ts) {
    const LogComplex<LD> oracle = ft_quadrature_oracle(spec, LD(T), LD(tol));
    const LogComplex<LD> asym = ft_product_poly_asymptotic(spec, LD(T));
    sweep.rows.push_back(
        {T, oracle.template cast<double>(), asym.template cast<double>(), double(relative_error(oracle, asym))});
  }
  sweep.exact = std::all_of(sweep.rows.begin(), sweep.rows.end(),
                            [&](const DecayRow& r) { return r.rel_error < sweep.noise_floor; });
  sweep.holds = true;
  const double Lambda = double(spec.Lambda());
  for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
    const DecayRow& p = sweep.rows[i - 1];
    const DecayRow& q = sweep.rows[i];
    const double expected = std::exp(-(q.T - p.T) / Lambda);
    if (p.rel_error < sweep.noise_floor && q.rel_error < sweep.noise_floor) continue;
    // an error that drops into the noise is consistent only if the law predicted that
    if (q.rel_error < sweep.noise_floor && p.rel_error * expected < 3 * sweep.noise_floor) continue;
    const double ratio = q.rel_error / p.rel_error;
    if (!(ratio >= expected / 3 && ratio <= 3 * expected)) sweep.holds = false;
  }
  return sweep;
}

}  // namespace lfun
