// Gauss-Legendre panels: a fixed composite rule and a globally adaptive one.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "lfun/errors.hpp"

namespace lfun {

template <typename Scalar, int N>
struct GaussLegendreRule {
  std::array<Scalar, N> nodes{};    // on [-1, 1]
  std::array<Scalar, N> weights{};
};

/// N-point Gauss-Legendre rule, nodes by Newton iteration on P_N.
template <typename Scalar, int N>
const GaussLegendreRule<Scalar, N>& gauss_legendre() {
  static const GaussLegendreRule<Scalar, N> rule = [] {
    GaussLegendreRule<Scalar, N> r;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = 0; i < (N + 1) / 2; ++i) {
      Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(N) + Scalar(0.5)));
      Scalar dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= N; ++k) {
          const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1);
        const Scalar dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) <= 4 * std::numeric_limits<Scalar>::epsilon()) break;
      }
      // recompute derivative at the converged node
      Scalar p0 = 1, p1 = x;
      for (int k = 2; k <= N; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = N * (x * p1 - p0) / (x * x - 1);
      const Scalar w = 2 / ((1 - x * x) * dp * dp);
      r.nodes[i] = -x;
      r.nodes[N - 1 - i] = x;
      r.weights[i] = w;
      r.weights[N - 1 - i] = w;
    }
    if (N % 2 == 1) r.nodes[N / 2] = 0;
    return r;
  }();
  return rule;
}

/// One N-point panel on [lo, hi].
template <int N, typename Scalar, typename F>
auto gauss_panel(const F& f, Scalar lo, Scalar hi) {
  const auto& rule = gauss_legendre<Scalar, N>();
  const Scalar half = (hi - lo) / 2;
  const Scalar mid = (hi + lo) / 2;
  decltype(f(mid)) sum{};
  for (int i = 0; i < N; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

/// Composite rule over `panels` equal panels. Deterministic for a fixed
/// decomposition, which the derivative engine relies on.
template <int N, typename Scalar, typename F>
auto gauss_composite(const F& f, Scalar lo, Scalar hi, int panels) {
  const Scalar width = (hi - lo) / panels;
  decltype(f(lo)) sum{};
  for (int p = 0; p < panels; ++p) {
    const Scalar a = lo + p * width;
    const Scalar b = (p + 1 == panels) ? hi : a + width;
    sum += gauss_panel<N>(f, a, b);
  }
  return sum;
}

struct AdaptiveOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0;
  int initial_panels = 8;
  int max_panels = 20000;
};

/// Globally adaptive integration: each panel is estimated by one 20-point
/// rule and by two 20-point half-panels; the panel with the largest
/// disagreement is split until the summed disagreement is below
/// max(abs_tol, rel_tol * |total|). Throws NonConvergence carrying the last
/// two total estimates when max_panels is hit.
template <typename Scalar, typename F>
auto integrate_adaptive(const F& f, Scalar lo, Scalar hi, const AdaptiveOptions& opt = {}) {
  using Value = decltype(f(lo));
  constexpr int kNodes = 20;
  struct Panel {
    Scalar a, b;
    Value estimate;
    Scalar error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  auto make = [&](Scalar a, Scalar b) {
    const Scalar m = (a + b) / 2;
    const Value coarse = gauss_panel<kNodes>(f, a, b);
    const Value fine = gauss_panel<kNodes>(f, a, m) + gauss_panel<kNodes>(f, m, b);
    return Panel{a, b, fine, static_cast<Scalar>(std::abs(fine - coarse))};
  };

  std::priority_queue<Panel> queue;
  Value total{};
  Scalar error = 0;
  const Scalar width = (hi - lo) / opt.initial_panels;
  for (int p = 0; p < opt.initial_panels; ++p) {
    const Scalar a = lo + p * width;
    const Scalar b = (p + 1 == opt.initial_panels) ? hi : a + width;
    Panel panel = make(a, b);
    total += panel.estimate;
    error += panel.error;
    queue.push(panel);
  }
  Value previous = total;
  auto target = [&] {
    return std::max(static_cast<Scalar>(opt.abs_tol), static_cast<Scalar>(opt.rel_tol) * Scalar(std::abs(total)));
  };
  while (error > target()) {
    if (static_cast<int>(queue.size()) >= opt.max_panels) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "error estimate %.3e above target %.3e after %d panels", double(error),
                    double(target()), opt.max_panels);
      throw NonConvergence(msg, {double(std::abs(previous)), double(std::abs(total))});
    }
    const Panel worst = queue.top();
    queue.pop();
    const Scalar m = (worst.a + worst.b) / 2;
    const Panel left = make(worst.a, m);
    const Panel right = make(m, worst.b);
    previous = total;
    total += left.estimate + right.estimate - worst.estimate;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    // the running sums drift; refresh them occasionally
    if (queue.size() % 512 == 0) {
      auto copy = queue;
      total = Value{};
      error = 0;
      while (!copy.empty()) {
        total += copy.top().estimate;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

}  // namespace lfun
