#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "psindex/jet.hpp"

using namespace psindex;

namespace {

// Random cubic polynomial in nv variables with its exact derivatives.
struct Cubic {
  int nv;
  double c0;
  std::vector<double> c1;
  std::vector<double> c2;  // full nv*nv, symmetric
  std::vector<double> c3;  // full nv^3, symmetric

  static Cubic random(oracle::Gen& g, int nv) {
    Cubic p{nv, g.normal(), {}, std::vector<double>(nv * nv), std::vector<double>(nv * nv * nv)};
    for (int i = 0; i < nv; ++i) p.c1.push_back(g.normal());
    for (int i = 0; i < nv; ++i)
      for (int j = i; j < nv; ++j) p.c2[i * nv + j] = p.c2[j * nv + i] = g.normal();
    for (int i = 0; i < nv; ++i)
      for (int j = i; j < nv; ++j)
        for (int k = j; k < nv; ++k) {
          const double v = g.normal();
          const int perm[6][3] = {{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}};
          for (auto& q : perm) p.c3[(q[0] * nv + q[1]) * nv + q[2]] = v;
        }
    return p;
  }

  // Taylor polynomial around 0: c0 + c1.x + x^T c2 x / 2 + c3[x,x,x] / 6.
  template <class T>
  T eval(const std::vector<T>& x) const {
    T r = x[0] * 0.0 + c0;
    for (int i = 0; i < nv; ++i) r = r + x[i] * c1[i];
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) r = r + x[i] * x[j] * (0.5 * c2[i * nv + j]);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        for (int k = 0; k < nv; ++k) r = r + x[i] * x[j] * x[k] * (c3[(i * nv + j) * nv + k] / 6.0);
    return r;
  }
};

void check_matches(const Jet3& j, const Cubic& p, double tol) {
  const int nv = p.nv;
  CHECK(j.value() == doctest::Approx(p.c0).epsilon(tol));
  for (int i = 0; i < nv; ++i) CHECK(std::abs(j.d1(i) - p.c1[i]) < tol * (1 + std::abs(p.c1[i])));
  for (int i = 0; i < nv; ++i)
    for (int k = 0; k < nv; ++k) CHECK(std::abs(j.d2(i, k) - p.c2[i * nv + k]) < tol * (1 + std::abs(p.c2[i * nv + k])));
  for (int i = 0; i < nv; ++i)
    for (int k = 0; k < nv; ++k)
      for (int l = 0; l < nv; ++l) {
        const double e = p.c3[(i * nv + k) * nv + l];
        CHECK(std::abs(j.d3(i, k, l) - e) < tol * (1 + std::abs(e)));
      }
}

}  // namespace

TEST_CASE("seed jets") {
  const std::vector<double> x = {2.0, 0.0};
  auto v = lift(x);
  REQUIRE(v.size() == 2);
  CHECK(v[0].value() == 2.0);
  CHECK(v[0].d1(0) == 1.0);
  CHECK(v[0].d1(1) == 0.0);
  CHECK(v[0].d2(0, 0) == 0.0);

  const Jet3 sq = v[0] * v[0];
  CHECK(sq.value() == 4.0);
  CHECK(sq.d1(0) == 4.0);
  CHECK(sq.d1(1) == 0.0);
  CHECK(sq.d2(0, 0) == 2.0);
  CHECK(sq.d3(0, 0, 0) == 0.0);

  const Jet3 e = exp(Jet3::variable(1, 0, 0.0));
  CHECK(e.value() == 1.0);
  CHECK(e.d1(0) == 1.0);
  CHECK(e.d2(0, 0) == 1.0);
  CHECK(e.d3(0, 0, 0) == 1.0);
}

TEST_CASE("symmetric reads") {
  oracle::Gen g(7);
  auto x = lift(std::vector<double>{0.3, -0.7, 1.1});
  const Jet3 f = sin(x[0] * x[1]) * exp(x[2]) + x[0] * x[1] * x[2];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(f.d2(i, j) == f.d2(j, i));
      for (int k = 0; k < 3; ++k) {
        CHECK(f.d3(i, j, k) == f.d3(k, j, i));
        CHECK(f.d3(i, j, k) == f.d3(j, k, i));
      }
    }
}

TEST_CASE("ring operations reproduce polynomial coefficients") {
  oracle::Gen g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int nv = g.integer(1, 4);
    const Cubic p = Cubic::random(g, nv);
    const Cubic q = Cubic::random(g, nv);
    std::vector<Jet3> x;
    for (int i = 0; i < nv; ++i) x.push_back(Jet3::variable(nv, i, 0.0));
    const Jet3 jp = p.eval(x), jq = q.eval(x);
    check_matches(jp, p, 1e-12);

    // product: coefficients of (p*q) truncated at degree 3, from the oracle's own expansion.
    const Jet3 prod = jp * jq;
    for (int i = 0; i < nv; ++i) CHECK(std::abs(prod.d1(i) - (p.c1[i] * q.c0 + p.c0 * q.c1[i])) < 1e-12 * 10);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) {
        const double e = p.c2[i * nv + j] * q.c0 + p.c1[i] * q.c1[j] + p.c1[j] * q.c1[i] + p.c0 * q.c2[i * nv + j];
        CHECK(std::abs(prod.d2(i, j) - e) < 1e-12 * (1 + std::abs(e)));
      }
    const Jet3 sum = jp + jq;
    CHECK(sum.d1(0) == doctest::Approx(p.c1[0] + q.c1[0]));
  }
}

TEST_CASE("primitives agree with finite differences of the composed function") {
  oracle::Gen g(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<double> x0 = {g.uniform(0.2, 1.0), g.uniform(0.2, 1.0)};
    auto fn = [](const auto& a, const auto& b) {
      using std::cos;
      using std::exp;
      using std::log;
      using std::sin;
      using std::sqrt;
      return exp(a) * sin(b) + log(a + b) / (1.0 + a * a) + sqrt(a * b) * cos(a - b);
    };
    auto v = lift(x0);
    const Jet3 j = fn(v[0], v[1]);
    oracle::Fn f = [&](const std::vector<double>& y) { return fn(y[0], y[1]); };
    CHECK(j.value() == doctest::Approx(f(x0)).epsilon(1e-14));
    for (int a = 0; a < 2; ++a) {
      const double fd = oracle::richardson(f, x0, {a}, 1e-3);
      CHECK(std::abs(j.d1(a) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
      for (int b = 0; b < 2; ++b) {
        const double fd2 = oracle::richardson2(f, x0, {a, b}, 1e-2);
        CHECK(std::abs(j.d2(a, b) - fd2) < 1e-6 * std::max(1.0, std::abs(fd2)));
        for (int c = 0; c < 2; ++c) {
          const double fd3 = oracle::richardson2(f, x0, {a, b, c}, 1e-2);
          CHECK(std::abs(j.d3(a, b, c) - fd3) < 1e-5 * std::max(1.0, std::abs(fd3)));
        }
      }
    }
  }
}

TEST_CASE("derivative and truncation") {
  auto v = lift(std::vector<double>{0.5, 0.25});
  const Jet3 f = v[0] * v[0] * v[1];
  const Jet3 fx = f.derivative(0);  // 2 x y
  CHECK(fx.order() == 2);
  CHECK(fx.value() == doctest::Approx(0.25));
  CHECK(fx.d1(0) == doctest::Approx(0.5));
  CHECK(fx.d1(1) == doctest::Approx(1.0));
  CHECK(fx.d2(0, 1) == doctest::Approx(2.0));
  const Jet3 t = f.truncated(1);
  CHECK(t.order() == 1);
  CHECK(t.d2(0, 0) == 0.0);
  CHECK_THROWS(reciprocal(Jet3(1, 0.0)));
  CHECK_THROWS(log(Jet3(1, 0.0)));
  CHECK_THROWS(Jet3(2, 1.0) + Jet3(3, 1.0));
}

TEST_CASE("complex jets") {
  auto v = lift(std::vector<double>{1.0, 2.0});
  const CJet z = to_complex(v[0]) + to_complex(v[1]) * std::complex<double>(0, 1);
  const CJet zb = conj(z);
  const CJet a = z * zb;  // |z|^2 = x^2 + y^2
  CHECK(std::abs(a.value() - 5.0) < 1e-15);
  CHECK(std::abs(real_part(a).d1(0) - 2.0) < 1e-15);
  CHECK(std::abs(imag_part(a).d1(1)) < 1e-15);
  CHECK(max_abs_coeff(v[1]) == 2.0);
}
