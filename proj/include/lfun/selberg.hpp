// L-function data (functional-equation data plus Dirichlet coefficients),
// axiom checks, the Gamma duplication transform, and the derived constants
// of the Fourier-transform and repeated-differentiation results.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lfun/log_number.hpp"

namespace lfun {

using cplx = std::complex<double>;

struct GammaFactor {
  double lambda = 0;  // scale, > 0
  cplx mu;            // shift, Re >= 0
};

enum class BuiltinCoefficients { None, Zeta, Chi4, Delta };

/// Dirichlet coefficients a_1..a_N. Built-in rules are materialized up to
/// `n_max`; user data is an explicit list.
class CoefficientSource {
 public:
  CoefficientSource() = default;
  static CoefficientSource builtin(BuiltinCoefficients rule, std::size_t n_max = 1000);
  static CoefficientSource list(std::vector<cplx> values);

  BuiltinCoefficients rule() const { return rule_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  /// a_n, 1-based. n > size() throws std::out_of_range.
  cplx operator[](std::size_t n) const;
  const std::vector<cplx>& values() const { return values_; }
  bool all_real() const;

 private:
  BuiltinCoefficients rule_ = BuiltinCoefficients::None;
  std::vector<cplx> values_;
};

struct SelbergData {
  int m = 0;                         // pole order at s = 1
  cplx epsilon{1, 0};                // root number, |epsilon| = 1
  double Q = 1;                      // conductor scale, > 0
  std::vector<GammaFactor> factors;  // Gamma(lambda_j s + mu_j)
  CoefficientSource coefficients;
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool mentions(const std::string& text) const;
  std::string to_string() const;
};

/// Checks axioms (1)-(3) data plus a_1 = 1. Violations are returned, never thrown.
ValidationReport validate(const SelbergData& data);

/// Thrown by derive_constants on invalid data.
class ValidationError : public std::exception {
 public:
  explicit ValidationError(ValidationReport report);
  const char* what() const noexcept override { return text_.c_str(); }
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
  std::string text_;
};

struct DerivedConstants {
  int k = 0;              // number of Gamma factors
  double Lambda = 0;      // sum lambda_j
  cplx M;                 // sum mu_j - (k-1)/2
  double Mprime = 0;      // sum Im mu_j
  double a_hat = 0;       // Lambda Q^{-1/Lambda} prod lambda_j^{-lambda_j/Lambda}
  cplx b_hat;             // (2m + M + Lambda/2) / Lambda
  LogComplex<double> B_hat;
  double a = 0;           // equals a_hat
  double b = 0;           // 2m + Lambda/2 - (k-1)/2 + sum Re mu_j
  LogComplex<double> B;   // B_hat Lambda / (2 pi)
  double theta = 0;       // arg B in (-pi, pi]
};

/// Throws ValidationError if validate(data) reports anything.
DerivedConstants derive_constants(const SelbergData& data);

/// Replaces factor j (0-based) by (lambda/2, mu/2) and (lambda/2, mu/2 + 1/2)
/// and Q by Q 2^lambda (Legendre duplication). The constant 2^{mu-1}/sqrt(pi)
/// that the duplication produces is dropped, so B changes but Lambda, M, a, b do not.
SelbergData duplicate_gamma_factor(const SelbergData& data, std::size_t j);

/// epsilon scaled to exactly unit modulus.
SelbergData normalized(SelbergData data);

namespace builtin {
/// zeta: m = 1, Q = pi^{-1/2}, Gamma(s/2).
SelbergData zeta(std::size_t n_max = 1000);
/// L(s, chi_{-4}): m = 0, Q = (4/pi)^{1/2}, Gamma(s/2 + 1/2).
SelbergData chi4(std::size_t n_max = 1000);
/// Ramanujan Delta, analytically normalized: Q = 1/(2 pi), Gamma(s + 11/2),
/// coefficients tau(n) n^{-11/2} for n <= 50.
SelbergData delta();
/// By name ("zeta", "chi4", "delta"); std::nullopt if unknown.
std::optional<SelbergData> by_name(const std::string& name);
}  // namespace builtin

/// tau(1..count) from q prod (1 - q^n)^24.
std::vector<long long> ramanujan_tau(std::size_t count);

}  // namespace lfun
