#include "doctest.h"
#include "lfun/log_number.hpp"
#include "support.hpp"

using lfun::LogComplex;
using lfun::SignedLogReal;

TEST_CASE("wrap_phase lands in (-pi, pi] and preserves the angle") {
  testing::Gen gen(11);
  const double pi = std::numbers::pi;
  for (int i = 0; i < 500; ++i) {
    const double phase = gen.uniform(-50, 50);
    const double w = lfun::wrap_phase(phase);
    CHECK(w > -pi);
    CHECK(w <= pi);
    CHECK(std::abs(std::remainder(phase - w, 2 * pi)) < 1e-12);
  }
  CHECK(lfun::wrap_phase(-pi) == doctest::Approx(pi));
  CHECK(lfun::wrap_phase(pi) == doctest::Approx(pi));
}

TEST_CASE("SignedLogReal round-trips and multiplies like the reals") {
  testing::Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const double x = gen.uniform(-1e3, 1e3);
    const double y = gen.uniform(-1e3, 1e3);
    const auto lx = SignedLogReal<>::from_value(x);
    const auto ly = SignedLogReal<>::from_value(y);
    CHECK(lx.value() == doctest::Approx(x).epsilon(1e-14));
    CHECK((lx * ly).value() == doctest::Approx(x * y).epsilon(1e-13));
    CHECK((lx / ly).value() == doctest::Approx(x / y).epsilon(1e-13));
  }
  const auto zero = SignedLogReal<>::from_value(0);
  CHECK(zero.sign == 0);
  CHECK(zero.value() == 0);
  CHECK((zero * SignedLogReal<>::from_value(3)).sign == 0);
}

TEST_CASE("SignedLogReal carries magnitudes far outside double range") {
  const auto big = SignedLogReal<>::from_log(1e6, -1);
  const auto tiny = SignedLogReal<>::from_log(-1e6, 1);
  const auto prod = big * tiny;
  CHECK(prod.sign == -1);
  CHECK(prod.value() == doctest::Approx(-1.0));
  CHECK(big.log10_abs() == doctest::Approx(1e6 / std::log(10.0)));
}

TEST_CASE("LogComplex round-trips and multiplies like the complex numbers") {
  testing::Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    const auto x = gen.complex_in(-5, 5, -5, 5);
    const auto y = gen.complex_in(-5, 5, -5, 5);
    const auto lx = LogComplex<>::from_value(x);
    const auto ly = LogComplex<>::from_value(y);
    CHECK(std::abs(lx.value() - x) < 1e-14 * std::abs(x));
    CHECK(std::abs((lx * ly).value() - x * y) < 1e-13 * std::abs(x * y));
    CHECK(std::abs((lx / ly).value() - x / y) < 1e-13 * std::abs(x / y));
    CHECK(std::abs(std::exp(lx.log()) - x) < 1e-13 * std::abs(x));
  }
  CHECK(LogComplex<>().is_zero());
  CHECK(LogComplex<>::from_value(0).is_zero());
}

TEST_CASE("ratio_minus_one resolves differences far below the magnitudes") {
  // x = y (1 + 1e-12), both around e^{-5000}
  const LogComplex<> y(-5000, 0.3);
  const LogComplex<> x(-5000 + std::log1p(1e-12), 0.3);
  const auto r = lfun::ratio_minus_one(x, y);
  CHECK(r.real() == doctest::Approx(1e-12).epsilon(1e-6));
  CHECK(std::abs(r.imag()) < 1e-25);

  // a pure phase offset d gives e^{id} - 1
  const LogComplex<> z(-5000, 0.3 + 1e-9);
  const auto q = lfun::ratio_minus_one(z, y);
  CHECK(std::abs(q - (std::exp(std::complex<double>(0, 1e-9)) - 1.0)) < 1e-16);
  CHECK(lfun::relative_error(z, y) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("cast keeps the value") {
  const LogComplex<long double> x(-123.25L, 1.0L);
  const auto d = x.cast<double>();
  CHECK(d.log_abs == -123.25);
  CHECK(d.phase == doctest::Approx(1.0));
}
