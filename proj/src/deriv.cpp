#include "lfun/deriv.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "lfun/errors.hpp"
#include "lfun/quadrature.hpp"

namespace lfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

}  // namespace

double solve_wn(double a, double b, long n) {
  if (!(a > 0)) throw std::invalid_argument("solve_wn needs a > 0");
  if (n < 1) throw std::invalid_argument("solve_wn needs n >= 1");
  const double two_n = 2.0 * static_cast<double>(n);
  const double L1 = std::log(two_n / a);
  double w = std::max(1.0, L1 > kE ? L1 - std::log(L1) : L1);

  std::vector<double> history;
  for (int it = 0; it < 100; ++it) {
    history.push_back(w);
    const double ew = std::exp(w);
    const double g = a * w * ew - b * w - two_n;
    if (std::abs(g) < 1e-12 * two_n) return w;
    const double slope = a * ew * (1 + w) - b;
    if (!(slope > 0)) {
      // g is still decreasing here; the root is further right
      w = 2 * w + 1;
      continue;
    }
    double next = w - g / slope;
    if (next <= 0) next = w / 2;
    if (next == w) return w;
    w = next;
  }
  throw NonConvergence("w_n Newton iteration did not converge", std::move(history));
}

ScalingSequence scaling_sequence(const DerivedConstants& c, long n) {
  ScalingSequence s;
  s.n = n;
  s.w = solve_wn(c.a, c.b, n);
  const double w = s.w;
  const double nd = static_cast<double>(n);
  const double ew = std::exp(w);
  s.residual = c.a * w * ew - c.b * w - 2 * nd;
  s.C = 1 / (c.Lambda * w);
  const double core = c.a * ew - c.b * w;
  s.v = SignedLogReal<double>::from_log(0.5 * std::log(nd * w / kPi) + core, 1);
  const double log_A = core + 0.5 * std::log(nd) - std::log(2.0) - c.B.log_abs - 2 * nd * std::log(c.Lambda) -
                       (2 * nd + 0.5) * std::log(w) - 0.5 * std::log(kPi);
  s.A = SignedLogReal<double>::from_log(log_A, n % 2 == 0 ? 1 : -1);
  return s;
}

double log_An_asymptotic(const DerivedConstants& c, long n) {
  const double w = solve_wn(c.a, c.b, n);
  const double nd = static_cast<double>(n);
  return 2 * nd * (1 - std::log(c.Lambda) - std::log(w)) - c.a * std::exp(w) * (w - 1) + 0.5 * std::log(nd) -
         0.5 * std::log(w);
}

KernelFn kernel_function(const KernelSpec& spec) {
  spec.check();
  if (spec.variant == KernelVariant::Asymptotic) {
    const double a = spec.constants.a;
    const double b = spec.constants.b;
    return [a, b](double x) { return LogComplex<double>(-a * std::exp(x) + b * x, 0.0); };
  }
  // Theta and series kernels are costly; the quadrature nodes repeat across z, so memoize.
  struct Cache {
    std::mutex mutex;
    std::unordered_map<double, LogComplex<double>> values;
  };
  auto cache = std::make_shared<Cache>();
  return [spec, cache](double x) {
    {
      std::lock_guard<std::mutex> lock(cache->mutex);
      auto it = cache->values.find(x);
      if (it != cache->values.end()) return it->second;
    }
    const LogComplex<double> value = canonical_kernel(spec, x);
    std::lock_guard<std::mutex> lock(cache->mutex);
    cache->values.emplace(x, value);
    return value;
  };
}

KiWindow ki_window(const KernelFn& kappa, const ScalingSequence& seq, const KiOptions& opt) {
  const double w = seq.w;
  const double nd = static_cast<double>(seq.n);
  const double at_peak = kappa(w).log_abs;
  auto rel = [&](double x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    return kappa(w * x).log_abs - at_peak + 2 * nd * std::log(x);
  };
  const double sigma = 1 / std::sqrt(2 * nd * (w + 1));
  const double floor = -opt.window_nats;

  auto edge = [&](double direction) {
    double inner = 1;
    double step = sigma;
    double outer = 1 + direction * step;
    while (outer > 0 && rel(outer) > floor) {
      inner = outer;
      step *= 2;
      outer = 1 + direction * step;
      if (step > 1e6) throw NonConvergence("derivative integrand does not decay", {outer});
    }
    if (outer <= 0) outer = 0;
    for (int it = 0; it < 200 && std::abs(outer - inner) > 1e-13; ++it) {
      const double mid = (inner + outer) / 2;
      (rel(mid) > floor ? inner : outer) = mid;
    }
    return outer;
  };

  KiWindow win;
  win.lo = edge(-1);
  win.hi = edge(1);
  // golden-section search for the peak of the log-integrand
  const double g = (std::sqrt(5.0) - 1) / 2;
  double lo = std::max(win.lo, 1 - 4 * sigma);
  double hi = std::min(win.hi, 1 + 4 * sigma);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = rel(x1), f2 = rel(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = rel(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = rel(x1);
    }
  }
  win.peak = (lo + hi) / 2;
  return win;
}

std::complex<double> ki_integral(const KernelFn& kappa, const ScalingSequence& seq, std::complex<double> z,
                                 const KiOptions& opt) {
  const double w = seq.w;
  const double nd = static_cast<double>(seq.n);
  const KiWindow win = ki_window(kappa, seq, opt);
  const LogComplex<double> at_peak = kappa(w);
  const double reach = (win.hi - win.lo) * std::abs(z.real()) / (kPi / 2);
  const int panels = std::max(opt.min_panels, static_cast<int>(std::ceil(reach)));
  const std::complex<double> i(0, 1);
  auto integrand = [&](double x) -> std::complex<double> {
    if (x <= 0) return 0;
    const LogComplex<double> k = kappa(w * x);
    const std::complex<double> e(k.log_abs - at_peak.log_abs + 2 * nd * std::log(x), k.phase);
    return std::exp(e + i * x * z);
  };
  const std::complex<double> integral = gauss_composite<32>(integrand, win.lo, win.hi, panels);
  return std::exp(seq.v.log_abs + at_peak.log_abs) * integral;
}

std::complex<double> ki_integral(const KernelSpec& spec, long n, std::complex<double> z, const KiOptions& opt) {
  return ki_integral(kernel_function(spec), scaling_sequence(spec.constants, n), z, opt);
}

double normalized_derivative(const KernelFn& kappa, const DerivedConstants& c, const ScalingSequence& seq, double z,
                             const KiOptions& opt) {
  return (std::polar(1.0, c.theta) * ki_integral(kappa, seq, z, opt)).real();
}

double normalized_derivative(const KernelSpec& spec, const DerivedConstants& c, long n, double z,
                             const KiOptions& opt) {
  return normalized_derivative(kernel_function(spec), c, scaling_sequence(c, n), z, opt);
}

SignedLogReal<double> xi_derivative(const KernelSpec& spec, long n, double z, const KiOptions& opt) {
  const ScalingSequence seq = scaling_sequence(spec.constants, n);
  const double d = normalized_derivative(kernel_function(spec), spec.constants, seq, z, opt);
  return SignedLogReal<double>::from_value(d) / seq.A;
}

XiCurve::XiCurve(const KernelSpec& spec) : kappa_(kernel_function(spec)), theta_(spec.constants.theta) {
  // extent: past the maximum of |kappa| on [0, inf) by 60 nats
  constexpr double kStep = 0.25;
  constexpr double kDrop = 60;
  double best = kappa_(0).log_abs;
  double x = 0;
  while (true) {
    x += kStep;
    const double v = kappa_(x).log_abs;
    best = std::max(best, v);
    if (v < best - kDrop) break;
    if (x > 1e3) throw NonConvergence("kernel does not decay on [0, inf)", {x, v});
  }
  const double extent = x;
  constexpr double kPanel = 0.125;
  const int panels = static_cast<int>(std::ceil(extent / kPanel));
  const auto& rule = gauss_legendre<double, 32>();
  const double width = extent / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (int j = 0; j < 32; ++j) {
      const double xj = mid + width / 2 * rule.nodes[j];
      nodes_.push_back(xj);
      weighted_.push_back(kappa_(xj).value() * (rule.weights[j] * width / 2));
    }
  }
  norm_ = std::abs(transform(0));
}

std::complex<double> XiCurve::transform(double z) const {
  std::complex<double> sum = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weighted_[i] * std::polar(1.0, nodes_[i] * z);
  return sum;
}

double XiCurve::operator()(double z) const { return (std::polar(1.0, theta_) * transform(z)).real() / norm_; }

std::vector<double> find_zeros(const std::function<double(double)>& f, double lo, double hi, double step,
                               double tol) {
  if (!(hi > lo)) throw std::invalid_argument("zero search needs a nonempty interval");
  std::vector<double> xs;
  const auto count = static_cast<long>(std::floor((hi - lo) / step));
  for (long i = 0; i <= count; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  if (hi - xs.back() > 1e-12) xs.push_back(hi);

  std::vector<double> fs;
  fs.reserve(xs.size());
  for (double x : xs) fs.push_back(f(x));

  std::vector<double> zeros;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (fs[i] == 0) {
      zeros.push_back(xs[i]);
      continue;
    }
    if (i + 1 == xs.size() || fs[i + 1] == 0 || (fs[i] > 0) == (fs[i + 1] > 0)) continue;
    double a = xs[i], b = xs[i + 1];
    double fa = fs[i];
    while (b - a > tol) {
      const double mid = (a + b) / 2;
      const double fm = f(mid);
      if (fm == 0) {
        a = b = mid;
        break;
      }
      if ((fm > 0) == (fa > 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    zeros.push_back((a + b) / 2);
  }
  return zeros;
}

std::vector<double> spacings(const std::vector<double>& zeros) {
  std::vector<double> out;
  for (std::size_t i = 1; i < zeros.size(); ++i) out.push_back(zeros[i] - zeros[i - 1]);
  return out;
}

std::vector<double> zero_spacings(const KernelSpec& spec, const DerivedConstants& c, long n, double lo, double hi) {
  if (n == 0) {
    const XiCurve curve(spec);
    return spacings(find_zeros(curve, lo, hi));
  }
  const KernelFn kappa = kernel_function(spec);
  const ScalingSequence seq = scaling_sequence(c, n);
  return spacings(find_zeros([&](double z) { return normalized_derivative(kappa, c, seq, z); }, lo, hi));
}

std::vector<double> default_z_grid(int points) {
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(-kPi + 2 * kPi * i / (points - 1));
  return grid;
}

std::optional<double> fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn, const ExecutionPolicy& policy) {
  unsigned threads = policy.threads != 0 ? policy.threads : std::max(1u, std::thread::hardware_concurrency());
  if (!policy.parallel || threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

ConvergenceReport convergence_report(const KernelSpec& spec, const DerivedConstants& c, const std::vector<long>& ns,
                                     const std::vector<double>& z_grid, const ExecutionPolicy& policy,
                                     bool with_spacings) {
  if (ns.empty()) throw std::invalid_argument("convergence report needs at least one n");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw std::invalid_argument("n values must be positive");
    if (i > 0 && ns[i] <= ns[i - 1]) throw std::invalid_argument("n values must be increasing");
  }
  if (z_grid.empty()) throw std::invalid_argument("z grid is empty");
  for (double z : z_grid) {
    if (std::abs(z) > kPi + 1e-12) throw std::invalid_argument("z grid must lie within [-pi, pi]");
  }

  const KernelFn kappa = kernel_function(spec);
  std::vector<ScalingSequence> seqs;
  for (long n : ns) seqs.push_back(scaling_sequence(c, n));

  // one extra column per n for z = 0
  const std::size_t cols = z_grid.size() + 1;
  std::vector<double> values(ns.size() * cols);
  for_each_index(
      values.size(),
      [&](std::size_t idx) {
        const std::size_t row = idx / cols;
        const std::size_t col = idx % cols;
        const double z = col < z_grid.size() ? z_grid[col] : 0.0;
        values[idx] = normalized_derivative(kappa, c, seqs[row], z);
      },
      policy);

  ConvergenceReport report;
  std::vector<double> log_w, log_err;
  for (std::size_t r = 0; r < ns.size(); ++r) {
    ConvergenceEntry e;
    e.n = ns[r];
    e.w = seqs[r].w;
    e.C = seqs[r].C;
    e.log10_abs_A = seqs[r].A.log10_abs();
    for (std::size_t col = 0; col < z_grid.size(); ++col) {
      e.sup_error = std::max(e.sup_error, std::abs(values[r * cols + col] - std::cos(z_grid[col] + c.theta)));
    }
    e.error_at_0 = std::abs(values[r * cols + z_grid.size()] - std::cos(c.theta));
    report.entries.push_back(e);
    log_w.push_back(std::log(e.w));
    log_err.push_back(std::log(e.sup_error));
  }
  report.fitted_slope = fit_slope(log_w, log_err);

  if (with_spacings) {
    report.spacing_stats.resize(ns.size());
    for_each_index(
        ns.size(),
        [&](std::size_t r) {
          const auto zeros =
              find_zeros([&](double z) { return normalized_derivative(kappa, c, seqs[r], z); }, 0.0, 3 * kPi);
          SpacingStat s;
          s.n = ns[r];
          s.zero_count = zeros.size();
          for (double d : spacings(zeros)) s.max_relative_deviation = std::max(s.max_relative_deviation, std::abs(d - kPi) / kPi);
          report.spacing_stats[r] = s;
        },
        policy);
  }
  return report;
}

}  // namespace lfun
