#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "wirtinger_fd.hpp"
#include "psindex/domain.hpp"
#include "psindex/sampling.hpp"
#include "psindex/wirtinger.hpp"

using namespace psindex;

TEST_CASE("quadratic examples") {
  const auto ball = parse_expression("abs2(z1)", 1);
  const WirtingerData w = wirtinger(ball->jet(std::vector<double>{1.0, 0.0}), 1);
  CHECK(std::abs(w.grad(0) - cdouble(1.0)) < 1e-15);
  CHECK(std::abs(w.hess_mixed(0, 0) - cdouble(1.0)) < 1e-15);
  CHECK(std::abs(w.hess_hol(0, 0)) < 1e-15);

  // Re(z^2) = x^2 - y^2
  const auto sq = parse_expression("re(z1*z1)", 1);
  const WirtingerData v = wirtinger(sq->jet(std::vector<double>{0.3, -1.2}), 1);
  CHECK(std::abs(v.hess_hol(0, 0) - cdouble(1.0)) < 1e-14);
  CHECK(std::abs(v.hess_mixed(0, 0)) < 1e-14);
}

TEST_CASE("conjugation symmetries") {
  oracle::Gen g(5);
  const auto d = parse_expression("abs2(z1)*re(z2) + exp(im(z1*z2)) + sin(re(z1))*abs2(z2)", 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x;
    for (int i = 0; i < 4; ++i) x.push_back(g.uniform(-1, 1));
    const WirtingerData w = wirtinger(d->jet(x), 2);
    CHECK((w.hess_mixed - w.hess_mixed.adjoint()).norm() < 1e-13);
    CHECK((w.hess_hol - w.hess_hol.transpose()).norm() < 1e-13);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          // rho_{z_i zbar_j zbar_k} = conj(rho_{zbar_i z_j z_k}) = conj(rho_{z_j z_k zbar_i})
          CHECK(std::abs(w.zzbzb(i, j, k) - std::conj(w.zzzb(j, k, i))) < 1e-12);
          CHECK(std::abs(w.zzzb(i, j, k) - w.zzzb(j, i, k)) < 1e-12);
        }
  }
}

TEST_CASE("complex derivative operators") {
  auto v = lift(std::vector<double>{0.4, 0.9});
  const CJet z = to_complex(v[0]) + to_complex(v[1]) * cdouble(0, 1);
  const CJet f = z * z * conj(z);  // z^2 zbar
  const CJet fz = dz(f, 0);        // 2 z zbar
  const CJet fzb = dzbar(f, 0);    // z^2
  const cdouble z0(0.4, 0.9);
  CHECK(std::abs(fz.value() - 2.0 * z0 * std::conj(z0)) < 1e-14);
  CHECK(std::abs(fzb.value() - z0 * z0) < 1e-14);
  CHECK(std::abs(dz(fzb, 0).value() - 2.0 * z0) < 1e-14);
  CHECK(std::abs(dzbar(fzb, 0).value()) < 1e-14);
}

TEST_CASE("worm derivatives match Richardson central differences") {
  const auto worm = make_worm(3.0 * std::numbers::pi / 4.0, 0.0);
  const auto pts = boundary_sample(*worm, worm->default_anchor(), 25, 99);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, oracle::max_wirtinger_fd_error(*worm, p.coords(), 1e-3));
  MESSAGE("max relative FD deviation " << worst);
  CHECK(worst < 1e-5);
}

TEST_CASE("point conversions") {
  const std::vector<cdouble> z = {{1, 2}, {-3, 4}};
  const auto x = to_real(z);
  CHECK(x == std::vector<double>{1, 2, -3, 4});
  CHECK(to_complex_point(x) == z);
  CHECK_THROWS(wirtinger(Jet3(3, 0.0), 2));
}
