// High derivatives of the Xi-function through its Fourier kernel.
//
// With w_n the root of a w e^w = b w + 2n, the normalized 2n-th derivative
//
//   D_n(z) = A_n Xi_F^{(2n)}(C_n z - M'/Lambda) = Re(e^{i theta} K_n(z)),
//   K_n(z) = \int_0^inf v_n kappa(w_n x) x^{2n} e^{ixz} dx,
//
// tends to cos(z + theta). A_n and Xi^{(2n)} are astronomically large/small
// and are only ever formed in log space; D_n is computed directly.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "lfun/kernel.hpp"
#include "lfun/log_number.hpp"
#include "lfun/selberg.hpp"

namespace lfun {

/// Root of a w e^w - b w - 2n = 0 on (0, inf) by safeguarded Newton.
/// Throws NonConvergence (with the iterate history) after 100 steps.
double solve_wn(double a, double b, long n);

struct ScalingSequence {
  long n = 0;
  double w = 0;
  SignedLogReal<double> A;  // (-1)^n exp(a e^w - b w) sqrt(n) / (2|B| Lambda^{2n} w^{2n+1/2} sqrt(pi))
  double C = 0;             // 1 / (Lambda w)
  SignedLogReal<double> v;  // sqrt(n w / pi) exp(a e^w - b w)
  double residual = 0;      // a w e^w - b w - 2n at the returned root
};

ScalingSequence scaling_sequence(const DerivedConstants& c, long n);

/// 2n(1 - log Lambda - log w_n) - a e^{w_n}(w_n - 1) + (1/2) log n - (1/2) log w_n
double log_An_asymptotic(const DerivedConstants& c, long n);

using KernelFn = std::function<LogComplex<double>(double)>;

/// kappa as a plain callable for the chosen variant.
KernelFn kernel_function(const KernelSpec& spec);

struct KiOptions {
  double window_nats = 45;  // the x-window ends where the integrand is this far below its peak
  int min_panels = 16;      // 32-point Gauss-Legendre panels
};

struct KiWindow {
  double lo = 0;
  double hi = 0;
  double peak = 1;  // argmax of the log-integrand, which should sit at x = 1
};

KiWindow ki_window(const KernelFn& kappa, const ScalingSequence& seq, const KiOptions& opt = {});

std::complex<double> ki_integral(const KernelFn& kappa, const ScalingSequence& seq, std::complex<double> z,
                                 const KiOptions& opt = {});
std::complex<double> ki_integral(const KernelSpec& spec, long n, std::complex<double> z, const KiOptions& opt = {});

/// D_n(z) = Re(e^{i theta} K_n(z)), theta taken from `c`.
double normalized_derivative(const KernelFn& kappa, const DerivedConstants& c, const ScalingSequence& seq, double z,
                             const KiOptions& opt = {});
double normalized_derivative(const KernelSpec& spec, const DerivedConstants& c, long n, double z,
                             const KiOptions& opt = {});

/// Xi_F^{(2n)}(C_n z - M'/Lambda) = D_n(z) / A_n in log form.
SignedLogReal<double> xi_derivative(const KernelSpec& spec, long n, double z, const KiOptions& opt = {});

/// The undifferentiated curve (n = 0): Re(e^{i theta} F(z)) / |F(0)| with
/// F(z) = \int_0^inf kappa(x) e^{ixz} dx, i.e. Xi_F((z - M')/Lambda) up to a positive scale.
class XiCurve {
 public:
  explicit XiCurve(const KernelSpec& spec);
  double operator()(double z) const;

 private:
  std::complex<double> transform(double z) const;
  KernelFn kappa_;
  double theta_;
  std::vector<double> nodes_;
  std::vector<std::complex<double>> weighted_;  // kappa(x_i) * w_i
  double norm_ = 1;
};

/// Sign changes on a grid of `step`, refined by bisection to `tol`.
std::vector<double> find_zeros(const std::function<double(double)>& f, double lo, double hi, double step = 0.05,
                               double tol = 1e-10);
std::vector<double> spacings(const std::vector<double>& zeros);

/// Consecutive zero spacings of D_n on [lo, hi]; empty when fewer than two zeros.
std::vector<double> zero_spacings(const KernelSpec& spec, const DerivedConstants& c, long n, double lo, double hi);

struct ConvergenceEntry {
  long n = 0;
  double w = 0;
  double C = 0;
  double log10_abs_A = 0;
  double sup_error = 0;    // max over the grid of |D_n(z) - cos(z + theta)|
  double error_at_0 = 0;   // |D_n(0) - cos(theta)|
};

struct SpacingStat {
  long n = 0;
  double max_relative_deviation = 0;  // max |spacing - pi| / pi on [0, 3 pi]
  std::size_t zero_count = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;
  std::optional<double> fitted_slope;  // least-squares slope of ln sup_error against ln w_n
  std::vector<SpacingStat> spacing_stats;
};

struct ExecutionPolicy {
  bool parallel = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// 65 equispaced points on [-pi, pi].
std::vector<double> default_z_grid(int points = 65);

ConvergenceReport convergence_report(const KernelSpec& spec, const DerivedConstants& c, const std::vector<long>& ns,
                                     const std::vector<double>& z_grid, const ExecutionPolicy& policy = {},
                                     bool with_spacings = true);

/// Least-squares slope of ys against xs; std::nullopt for fewer than two points.
std::optional<double> fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Runs fn(i) for i in [0, count), possibly on several threads. Each index is
/// handled exactly once, so results written per index are deterministic.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn, const ExecutionPolicy& policy);

}  // namespace lfun
