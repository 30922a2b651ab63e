#include "lfun/selberg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lfun {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cplx> generate(BuiltinCoefficients rule, std::size_t n_max) {
  std::vector<cplx> out;
  switch (rule) {
    case BuiltinCoefficients::Zeta:
      out.assign(n_max, cplx(1));
      break;
    case BuiltinCoefficients::Chi4:
      out.reserve(n_max);
      for (std::size_t n = 1; n <= n_max; ++n) {
        const int r = static_cast<int>(n % 4);
        out.emplace_back(r == 1 ? 1.0 : (r == 3 ? -1.0 : 0.0));
      }
      break;
    case BuiltinCoefficients::Delta: {
      const auto tau = ramanujan_tau(n_max);
      out.reserve(n_max);
      for (std::size_t n = 1; n <= n_max; ++n) {
        out.emplace_back(static_cast<double>(tau[n - 1]) * std::pow(static_cast<double>(n), -5.5));
      }
      break;
    }
    case BuiltinCoefficients::None:
      break;
  }
  return out;
}

}  // namespace

std::vector<long long> ramanujan_tau(std::size_t count) {
  // coefficients of prod_{n>=1} (1 - q^n)^24 up to q^{count-1}
  std::vector<long long> p(count, 0);
  if (count == 0) return p;
  p[0] = 1;
  for (std::size_t n = 1; n < count; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = count - 1; i >= n; --i) {
        p[i] -= p[i - n];
        if (i == n) break;
      }
    }
  }
  return p;  // tau(n) = p[n-1]
}

CoefficientSource CoefficientSource::builtin(BuiltinCoefficients rule, std::size_t n_max) {
  CoefficientSource s;
  s.rule_ = rule;
  s.values_ = generate(rule, n_max);
  return s;
}

CoefficientSource CoefficientSource::list(std::vector<cplx> values) {
  CoefficientSource s;
  s.values_ = std::move(values);
  return s;
}

cplx CoefficientSource::operator[](std::size_t n) const {
  if (n == 0 || n > values_.size()) {
    throw std::out_of_range("Dirichlet coefficient a_" + std::to_string(n) + " not available");
  }
  return values_[n - 1];
}

bool CoefficientSource::all_real() const {
  for (const auto& v : values_) {
    if (v.imag() != 0) return false;
  }
  return true;
}

bool ValidationReport::mentions(const std::string& text) const {
  for (const auto& v : violations) {
    if (v.message.find(text) != std::string::npos || v.field.find(text) != std::string::npos) return true;
  }
  return false;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.field << ": " << v.message << '\n';
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : report_(std::move(report)), text_("invalid L-function data:\n" + report_.to_string()) {}

ValidationReport validate(const SelbergData& data) {
  ValidationReport r;
  auto add = [&](std::string field, std::string message) {
    r.violations.push_back({std::move(field), std::move(message)});
  };
  if (data.m < 0) add("m", "m must be nonnegative");
  if (!(std::abs(std::abs(data.epsilon) - 1.0) <= 1e-12)) add("epsilon", "|epsilon| must equal 1");
  if (!(data.Q > 0) || !std::isfinite(data.Q)) add("Q", "Q must be positive");
  if (data.factors.empty()) add("factors", "factors must be nonempty");
  for (std::size_t j = 0; j < data.factors.size(); ++j) {
    const auto& f = data.factors[j];
    const std::string where = "factors[" + std::to_string(j) + "]";
    if (!(f.lambda > 0) || !std::isfinite(f.lambda)) add(where + ".lambda", "lambda must be positive");
    if (!(f.mu.real() >= 0)) add(where + ".mu", "Re(mu) must be nonnegative");
  }
  if (data.coefficients.empty()) {
    add("coefficients", "coefficient list must be nonempty");
  } else if (data.coefficients[1] != cplx(1)) {
    add("coefficients", "a_1 must equal 1");
  }
  return r;
}

SelbergData normalized(SelbergData data) {
  data.epsilon /= std::abs(data.epsilon);
  return data;
}

DerivedConstants derive_constants(const SelbergData& input) {
  if (auto report = validate(input); !report.ok()) throw ValidationError(std::move(report));
  const SelbergData data = normalized(input);

  DerivedConstants c;
  c.k = static_cast<int>(data.factors.size());
  cplx sum_mu = 0;
  for (const auto& f : data.factors) {
    c.Lambda += f.lambda;
    sum_mu += f.mu;
  }
  const double L = c.Lambda;
  c.M = sum_mu - 0.5 * (c.k - 1);
  c.Mprime = sum_mu.imag();

  double weighted_log_lambda = 0;
  for (const auto& f : data.factors) weighted_log_lambda += (f.lambda / L) * std::log(f.lambda);
  c.a_hat = std::exp(std::log(L) - std::log(data.Q) / L - weighted_log_lambda);
  c.b_hat = (2.0 * data.m + c.M + 0.5 * L) / L;
  c.a = c.a_hat;
  c.b = 2.0 * data.m + 0.5 * L - 0.5 * (c.k - 1) + sum_mu.real();

  // B_hat = (-1)^m eps Q^{-(M+2m)/Lambda} (2 pi)^{(k+1)/2} Lambda^{-1/2}
  //         prod lambda_j^{-1/2 + mu_j - lambda_j (M + 2m)/Lambda}
  const cplx shift = c.M + 2.0 * data.m;
  cplx log_B_hat = std::log(data.epsilon) - shift / L * std::log(data.Q) +
                   0.5 * (c.k + 1) * std::log(2 * kPi) - 0.5 * std::log(L);
  for (const auto& f : data.factors) {
    log_B_hat += (-0.5 + f.mu - (f.lambda / L) * shift) * std::log(f.lambda);
  }
  if (data.m % 2 == 1) log_B_hat += cplx(0, kPi);
  c.B_hat = LogComplex<double>::exp_of(log_B_hat);
  c.B = LogComplex<double>::exp_of(log_B_hat + std::log(L) - std::log(2 * kPi));
  c.theta = c.B.phase;
  return c;
}

SelbergData duplicate_gamma_factor(const SelbergData& data, std::size_t j) {
  if (j >= data.factors.size()) {
    throw std::out_of_range("gamma factor index " + std::to_string(j) + " out of range");
  }
  SelbergData out = data;
  const GammaFactor f = data.factors[j];
  out.factors.erase(out.factors.begin() + static_cast<std::ptrdiff_t>(j));
  out.factors.insert(out.factors.begin() + static_cast<std::ptrdiff_t>(j),
                     {GammaFactor{f.lambda / 2, f.mu / 2.0}, GammaFactor{f.lambda / 2, f.mu / 2.0 + 0.5}});
  out.Q = data.Q * std::pow(2.0, f.lambda);
  return out;
}

namespace builtin {

SelbergData zeta(std::size_t n_max) {
  SelbergData d;
  d.m = 1;
  d.Q = 1 / std::sqrt(kPi);
  d.factors = {{0.5, 0.0}};
  d.coefficients = CoefficientSource::builtin(BuiltinCoefficients::Zeta, n_max);
  return d;
}

SelbergData chi4(std::size_t n_max) {
  SelbergData d;
  d.m = 0;
  d.Q = std::sqrt(4 / kPi);
  d.factors = {{0.5, 0.5}};
  d.coefficients = CoefficientSource::builtin(BuiltinCoefficients::Chi4, n_max);
  return d;
}

SelbergData delta() {
  SelbergData d;
  d.m = 0;
  d.Q = 1 / (2 * kPi);
  d.factors = {{1.0, 5.5}};
  d.coefficients = CoefficientSource::builtin(BuiltinCoefficients::Delta, 50);
  return d;
}

std::optional<SelbergData> by_name(const std::string& name) {
  if (name == "zeta") return zeta();
  if (name == "chi4") return chi4();
  if (name == "delta") return delta();
  return std::nullopt;
}

}  // namespace builtin

}  // namespace lfun
