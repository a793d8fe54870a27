#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "psindex/checks.hpp"
#include "psindex/errors.hpp"
#include "psindex/phi.hpp"

using namespace psindex;

namespace {
const double kBeta = 3.0 * std::numbers::pi / 4.0;
}

TEST_CASE("ramp matches the exponential-integral closed form") {
  const PhiSpec phi(kBeta);
  for (double u = 0.05; u <= 6.0; u += 0.0173) {
    const double want = oracle::ramp_closed_form(u);
    CHECK(std::abs(phi.ramp(u) - want) <= 1e-11 * want);
  }
  CHECK(phi.ramp(0.0) == 0.0);
  CHECK(phi.ramp(-1.0) == 0.0);
}

TEST_CASE("ramp factor follows its asymptotic series for small u") {
  const PhiSpec phi(kBeta);
  for (double u : {1e-4, 5e-4, 1e-3, 3e-3}) {
    // int_0^inf e^{-v} u^2/(1+uv)^2 dv = u^2 (1 - 2u + 6u^2 - 24u^3 + 120u^4 - ...)
    const double series = u * u * (1 - 2 * u + 6 * u * u - 24 * u * u * u + 120 * std::pow(u, 4) - 720 * std::pow(u, 5));
    CHECK(std::abs(phi.ramp_factor(u) - series) <= 1e-11 * series);
  }
}

TEST_CASE("derivatives agree with finite differences") {
  const PhiSpec phi(kBeta);
  oracle::Fn f = [&](const std::vector<double>& x) { return phi(x[0]); };
  for (double x : {-3.1, -2.0, -1.3, 1.2, 1.7, 2.5, 3.4}) {
    const auto d = phi.derivatives(x);
    CHECK(d[0] == doctest::Approx(phi(x)).epsilon(1e-14));
    for (int k = 1; k <= 3; ++k) {
      std::vector<int> dirs(static_cast<std::size_t>(k), 0);
      const double fd = oracle::richardson2(f, {x}, dirs, 1e-2);
      CHECK(std::abs(d[static_cast<std::size_t>(k)] - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("log value is exact on the zero set and finite outside") {
  const PhiSpec phi(kBeta);
  const double r = phi.r();
  CHECK(std::isinf(phi.log_value(0.0)));
  CHECK(std::isinf(phi.log_value(r)));
  CHECK(std::isinf(phi.log_value(-r)));
  CHECK(std::isfinite(phi.log_value(r + 1e-12)));
  CHECK(std::isfinite(phi.log_value(-r - 1e-12)));
  for (double x : {r + 0.5, r + 1.0, -r - 2.0}) CHECK(phi.log_value(x) == doctest::Approx(std::log(phi(x))).epsilon(1e-12));
}

TEST_CASE("axioms on a grid") {
  const PhiCheck c = phi_axioms(kBeta, 10000);
  CHECK(c.grid >= 10000);
  CHECK(c.even_exact);
  CHECK(c.min_phi >= 0.0);
  CHECK(c.min_phi2 >= -1e-12);
  CHECK(c.zero_inside);
  CHECK(c.positive_outside);
  CHECK(std::abs(c.phi_at_a - 1.0) <= 1e-10);
  CHECK(c.dphi_at_a > 0.0);
  CHECK(c.pass());
}

TEST_CASE("jet evaluation and input checks") {
  const PhiSpec phi(kBeta);
  const Jet3 x = Jet3::variable(1, 0, 2.0);
  const Jet3 y = phi(x);
  const auto d = phi.derivatives(2.0);
  CHECK(y.value() == d[0]);
  CHECK(y.d1(0) == d[1]);
  CHECK(y.d2(0, 0) == d[2]);
  CHECK(y.d3(0, 0, 0) == d[3]);
  CHECK_THROWS_AS(PhiSpec(1.0), InputError);
  CHECK_THROWS_AS(PhiSpec(std::numbers::pi / 2.0), InputError);
}

TEST_CASE("smooth cutoff") {
  for (double v : {0.0, 0.5, 1.0, -1.0}) CHECK(smooth_cutoff(Jet3::variable(1, 0, v), 1.0, 2.0).value() == 1.0);
  for (double v : {2.0, 3.0, -2.5}) CHECK(smooth_cutoff(Jet3::variable(1, 0, v), 1.0, 2.0).value() == 0.0);
  const double mid = smooth_cutoff(Jet3::variable(1, 0, 1.5), 1.0, 2.0).value();
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  const auto k = smooth_step_kernel(-0.1);
  CHECK(k[0] == 0.0);
}
