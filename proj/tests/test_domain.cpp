#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "psindex/domain.hpp"
#include "psindex/errors.hpp"

using namespace psindex;

TEST_CASE("worm defining function") {
  const double beta = 3.0 * std::numbers::pi / 4.0;
  const cdouble t(0.2, -0.1);
  const WormDomain worm(beta, t);
  const PhiSpec phi(beta);
  oracle::Gen g(17);
  for (int trial = 0; trial < 50; ++trial) {
    const cdouble z(g.uniform(-2, 2), g.uniform(-2, 2)), w(g.uniform(-3, 3), g.uniform(-3, 3));
    const double lam = std::log(std::norm(w));
    const double want = std::norm(z - std::polar(1.0, lam)) - (1.0 - phi(lam) - std::norm(t));
    const std::vector<double> x = {z.real(), z.imag(), w.real(), w.imag()};
    CHECK(worm.value(x) == doctest::Approx(want).epsilon(1e-13));
    CHECK(worm.jet(x).value() == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK_THROWS_AS(worm.value(std::vector<double>{0.5, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS(worm.jet(std::vector<double>{0.5, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS(worm.value(std::vector<double>{0.5, 0, 1}), InputError);
  CHECK_THROWS_AS(WormDomain(1.0, 0.0), InputError);
  CHECK_THROWS_AS(WormDomain(beta, 1.5), InputError);
  CHECK(worm.value(worm.default_anchor()) < 0.0);
}

TEST_CASE("ellipsoid and ball") {
  const auto ball = make_ball(2);
  CHECK(ball->kind() == DomainKind::Ball);
  CHECK(ball->value(std::vector<double>{0.6, 0, 0, 0.8}) == doctest::Approx(0.0));
  const auto e = make_ellipsoid({1.0, 4.0});
  CHECK(e->kind() == DomainKind::Ellipsoid);
  CHECK(e->value(std::vector<double>{0, 0, 0.5, 0}) == doctest::Approx(0.0));
  const Jet3 j = e->jet(std::vector<double>{0.1, 0.2, 0.3, 0.4});
  CHECK(j.d2(2, 2) == doctest::Approx(8.0));
  CHECK(j.d2(0, 0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(make_ellipsoid({1.0, -1.0}), InputError);
  CHECK_THROWS_AS(make_ball(5), InputError);
}

TEST_CASE("expression domains") {
  const auto d = parse_expression("abs2(z1) + abs2(z2) - 1");
  CHECK(d->dim() == 2);
  CHECK(d->kind() == DomainKind::Custom);
  CHECK(d->value(std::vector<double>{0.6, 0, 0, 0.8}) == doctest::Approx(0.0));
  CHECK(parse_expression("abs2(z1) - 1", 3)->dim() == 3);
  CHECK_THROWS_AS(parse_expression("abs2(z1)+"), ParseError);
  CHECK_THROWS_AS(parse_expression("z1 + abs2(z1) - 1"), InputError);  // not real-valued
  const auto s = parse_expression("log(abs2(z1)) + abs2(z2) - 1");
  CHECK_THROWS_AS(s->value(std::vector<double>{0, 0, 0.5, 0}), DomainError);
}
