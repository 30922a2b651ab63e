#include "lfun/kernel.hpp"

#include <cmath>
#include <numbers>

#include "lfun/errors.hpp"
#include "lfun/gamma_ft.hpp"

namespace lfun {

namespace {

constexpr double kPi = std::numbers::pi;

// below this the direct theta sum loses more than ~1e-13 to cancellation
constexpr double kThetaDirectLimit = -0.75;

}  // namespace

std::string to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::Asymptotic:
      return "asym";
    case KernelVariant::ZetaTheta:
      return "theta";
    case KernelVariant::NumericSeries:
      return "series";
  }
  return "?";
}

std::optional<KernelVariant> parse_kernel_variant(const std::string& name) {
  if (name == "asym") return KernelVariant::Asymptotic;
  if (name == "theta") return KernelVariant::ZetaTheta;
  if (name == "series") return KernelVariant::NumericSeries;
  return std::nullopt;
}

KernelSpec KernelSpec::asymptotic(const DerivedConstants& c) {
  KernelSpec s;
  s.variant = KernelVariant::Asymptotic;
  s.constants = c;
  return s;
}

KernelSpec KernelSpec::zeta_theta(const SelbergData& zeta_data) {
  KernelSpec s;
  s.variant = KernelVariant::ZetaTheta;
  s.constants = derive_constants(zeta_data);
  s.data = zeta_data;
  s.check();
  return s;
}

KernelSpec KernelSpec::numeric_series(const SelbergData& data, double tol) {
  KernelSpec s;
  s.variant = KernelVariant::NumericSeries;
  s.constants = derive_constants(data);
  s.data = data;
  s.series_tol = tol;
  s.check();
  return s;
}

void KernelSpec::check() const {
  switch (variant) {
    case KernelVariant::Asymptotic:
      return;
    case KernelVariant::ZetaTheta:
      if (!data || data->coefficients.rule() != BuiltinCoefficients::Zeta || data->m != 1 ||
          data->factors.size() != 1) {
        throw KernelError("theta kernel is only available for the built-in zeta data");
      }
      return;
    case KernelVariant::NumericSeries:
      if (!data) throw KernelError("series kernel needs L-function data with coefficients");
      if (!(series_tol > 0)) throw KernelError("series tolerance must be positive");
      return;
  }
}

SignedLogReal<double> asym_kernel(const DerivedConstants& c, double x) {
  return SignedLogReal<double>::from_log(-c.a * std::exp(x) + c.b * x, 1);
}

double zeta_theta_direct_log_kernel(double x, double tol) {
  const double u = kPi * std::exp(2 * x);  // pi e^{2x}
  const double c2 = 3 / (2 * kPi) * std::exp(-2 * x);
  // phi = 4 pi^2 e^{9x/2} e^{-u} S,  S = sum (n^4 - c2 n^2) e^{-(n^2-1) u}
  double sum = 0;
  for (long n = 1;; ++n) {
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    sum += (nn * nn - c2 * nn) * std::exp(-(nn - 1) * u);
    const double next = static_cast<double>(n + 1);
    const double next_sq = next * next;
    const double bound = 2 * next_sq * next_sq * std::exp(-(next_sq - 1) * u);
    if (next_sq * u > 2 && bound < tol * std::abs(sum)) break;
    if (n > 1000000) throw NonConvergence("theta series did not converge", {x, sum});
  }
  return std::log(4 * kPi * kPi) + 4.5 * x - u + std::log(sum);
}

double zeta_theta_log_kernel(double x, double tol) {
  return zeta_theta_direct_log_kernel(x < kThetaDirectLimit ? -x : x, tol);
}

double zeta_theta_kernel(double x, double tol) { return std::exp(zeta_theta_log_kernel(x, tol)); }

LogComplex<double> xihat_series(const SelbergData& input, double x, double tol) {
  using LD = long double;
  if (auto report = validate(input); !report.ok()) throw ValidationError(std::move(report));
  const SelbergData data = normalized(input);

  GammaProductSpec<LD> spec;
  spec.poly_power = data.m;
  for (const auto& f : data.factors) {
    spec.factors.push_back({static_cast<LD>(f.lambda), std::complex<LD>(f.mu) + static_cast<LD>(f.lambda) / 2});
  }
  const LD log_Q = std::log(static_cast<LD>(data.Q));
  const LD oracle_tol = std::max<LD>(tol, 1e-13L);
  auto T_of = [&](std::size_t n) { return static_cast<LD>(x) + std::log(static_cast<LD>(n)) - log_Q; };

  // n = 1 term sets the reference scale; a_1 = 1 by validation
  const LogComplex<LD> first = ft_quadrature_oracle(spec, T_of(1), oracle_tol);
  std::complex<LD> ratio_sum = 1;

  // estimated log-size of term n relative to the first, with |a_n| <= n
  auto tail_estimate = [&](std::size_t n) {
    const LD nl = static_cast<LD>(n);
    return std::log(nl) - std::log(nl) / 2 + ft_product_poly_asymptotic(spec, T_of(n)).log_abs - first.log_abs;
  };
  const LD threshold = std::log(static_cast<LD>(tol) / 10);

  const std::size_t available = data.coefficients.size();
  for (std::size_t n = 2;; ++n) {
    if (tail_estimate(n) - std::log(std::abs(ratio_sum)) < threshold) break;
    if (n > available) {
      std::size_t required = n;
      while (tail_estimate(required) - std::log(std::abs(ratio_sum)) >= threshold) {
        if (required > 100000000) break;
        required = required < 1024 ? required + 1 : required + required / 8;
      }
      throw InsufficientCoefficients(available, required);
    }
    const cplx an = data.coefficients[n];
    if (an == cplx(0)) continue;
    const LogComplex<LD> term = ft_quadrature_oracle(spec, T_of(n), oracle_tol);
    const LD log_scale = std::log(std::abs(std::complex<LD>(an))) - std::log(static_cast<LD>(n)) / 2;
    ratio_sum += std::polar(std::exp(term.log_abs - first.log_abs + log_scale),
                            term.phase - first.phase + std::arg(std::complex<LD>(an)));
  }

  const std::complex<LD> log_value = std::log(std::complex<LD>(data.epsilon)) + log_Q / 2 + first.log() +
                                     std::log(ratio_sum);
  return LogComplex<LD>::exp_of(log_value).cast<double>();
}

LogComplex<double> canonical_kernel(const KernelSpec& spec, double x) {
  spec.check();
  const DerivedConstants& c = spec.constants;
  switch (spec.variant) {
    case KernelVariant::Asymptotic:
      return {asym_kernel(c, x).log_abs, 0.0};
    case KernelVariant::ZetaTheta:
      // Xi_F(2z) = -\int phi(u/2) e^{iuz} du, so kappa = -phi(x/2) / B
      return {zeta_theta_log_kernel(x / 2) - c.B.log_abs, kPi - c.theta};
    case KernelVariant::NumericSeries: {
      if (x < 0) throw KernelError("series kernel is not available for negative x; use the symmetry relation");
      const LogComplex<double> xh = xihat_series(*spec.data, c.Lambda * x, spec.series_tol);
      return {xh.log_abs + std::log(c.Lambda) - std::log(2 * kPi) - c.B.log_abs,
              xh.phase - x * c.Mprime - c.theta};
    }
  }
  throw KernelError("unknown kernel variant");
}

}  // namespace lfun
