#include <doctest.h>

#include <numbers>

#include "psindex/errors.hpp"
#include "psindex/parallel.hpp"
#include "psindex/sampling.hpp"

using namespace psindex;

TEST_CASE("ray sampling lands on the boundary") {
  const auto ball = make_ball(2);
  const std::vector<double> a = {0, 0, 0, 0}, dir = {1, 1, 0, 0};
  const BoundaryPoint p = boundary_along_ray(*ball, a, dir);
  CHECK(p.residual < 1e-12);
  CHECK(std::abs(p.z[0] - cdouble(std::sqrt(0.5), std::sqrt(0.5))) < 1e-12);
  CHECK_THROWS_AS(boundary_along_ray(*ball, a, std::vector<double>{0, 0, 0, 0}), InputError);
}

TEST_CASE("worm samples are reproducible and independent of threads") {
  const auto worm = make_worm(3.0 * std::numbers::pi / 4.0, 0.1);
  SampleOptions one, four;
  four.threads = 4;
  const auto a = boundary_sample(*worm, worm->default_anchor(), 200, 42, one);
  const auto b = boundary_sample(*worm, worm->default_anchor(), 200, 42, four);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coords() == b[i].coords());
    CHECK(a[i].residual <= 1e-12 * (1 + 2 * a[i].wirt.grad_norm()));
  }
  const auto c = boundary_sample(*worm, worm->default_anchor(), 200, 43, one);
  CHECK(a[0].coords() != c[0].coords());
  CHECK_THROWS_AS(boundary_sample(*worm, std::vector<double>{5, 0, 1, 0}, 10, 1), InputError);
}

TEST_CASE("annulus points") {
  const double beta = 3.0 * std::numbers::pi / 4.0;
  const auto pts = annulus_points(beta, 64);
  REQUIRE(pts.size() == 64);
  CHECK(pts[0].coords() == std::vector<double>{0, 0, 1, 0});
  double lo = 1e9, hi = -1e9;
  for (const auto& p : pts) {
    CHECK(std::abs(p.z[0]) == 0.0);
    CHECK(p.residual < 1e-15);
    const double lam = std::log(std::norm(p.z[1]));
    lo = std::min(lo, lam);
    hi = std::max(hi, lam);
  }
  CHECK(lo == doctest::Approx(-(beta - std::numbers::pi / 2)).epsilon(1e-14));
  CHECK(hi == doctest::Approx(beta - std::numbers::pi / 2).epsilon(1e-14));
  CHECK_THROWS_AS(annulus_points(WormDomain(beta, 0.1), 4), InputError);
}

TEST_CASE("parallel_for reports the lowest failing index") {
  std::vector<int> out(100, 0);
  parallel_for(out.size(), 3, [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
  try {
    parallel_for(100, 4, [&](std::size_t i) {
      if (i == 30 || i == 80) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "30");
  }
}
