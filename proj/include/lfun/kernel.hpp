// Fourier kernels kappa of the Xi-function in canonical coordinates,
//
//   Xi_F((z - M')/Lambda) = B \int kappa(x) e^{ixz} dx,  kappa(x) e^{a e^x - b x} -> 1,
//
// built three ways: the leading asymptotic term, the exact theta series
// (zeta only), and numerically from the Dirichlet series of Xi-hat.
#pragma once

#include <optional>
#include <string>

#include "lfun/log_number.hpp"
#include "lfun/selberg.hpp"

namespace lfun {

enum class KernelVariant { Asymptotic, ZetaTheta, NumericSeries };

std::string to_string(KernelVariant v);
/// "asym" | "theta" | "series"; std::nullopt otherwise.
std::optional<KernelVariant> parse_kernel_variant(const std::string& name);

struct KernelSpec {
  KernelVariant variant = KernelVariant::Asymptotic;
  DerivedConstants constants;
  std::optional<SelbergData> data;  // needed by ZetaTheta and NumericSeries
  double series_tol = 1e-12;

  static KernelSpec asymptotic(const DerivedConstants& c);
  static KernelSpec zeta_theta(const SelbergData& zeta_data);
  static KernelSpec numeric_series(const SelbergData& data, double tol = 1e-12);

  /// Throws KernelError when the variant cannot be served by `data`.
  void check() const;
};

/// log kappa_asym(x) = -a e^x + b x, sign +1.
SignedLogReal<double> asym_kernel(const DerivedConstants& c, double x);

/// phi(x) = 2 sum_n (2 n^4 pi^2 e^{9x/2} - 3 n^2 pi e^{5x/2}) e^{-n^2 pi e^{2x}}.
/// Summed directly for x >= -0.75 and through phi(x) = phi(-x) below that.
double zeta_theta_kernel(double x, double tol = 1e-15);
/// log phi(x), usable where phi itself underflows.
double zeta_theta_log_kernel(double x, double tol = 1e-15);
/// log phi(x) from the series alone, without the symmetry; it degrades
/// (about 1e-9 relative at x = -1, 1e-4 at x = -1.2) as x goes negative.
double zeta_theta_direct_log_kernel(double x, double tol = 1e-15);

/// Xi-hat(x) = eps Q^{1/2} sum_n a_n n^{-1/2} \int (1/4+z^2)^m prod Gamma(i lambda_j z + mu_j + lambda_j/2)
///             (n e^x / Q)^{-iz} dz, each integral by ft_quadrature_oracle.
/// Throws InsufficientCoefficients when the list ends before the tail bound.
LogComplex<double> xihat_series(const SelbergData& data, double x, double tol = 1e-12);

/// kappa(x) for the chosen variant. NumericSeries refuses x < 0.
LogComplex<double> canonical_kernel(const KernelSpec& spec, double x);

}  // namespace lfun
