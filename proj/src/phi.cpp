#include "psindex/phi.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "psindex/errors.hpp"

namespace psindex {

std::array<double, 4> smooth_step_kernel(double s) {
  if (s <= 0.0) return {0.0, 0.0, 0.0, 0.0};
  const double e = std::exp(-1.0 / s);
  const double i1 = 1.0 / s, i2 = i1 * i1, i3 = i2 * i1, i4 = i2 * i2, i5 = i4 * i1, i6 = i3 * i3;
  // d/ds e = e/s^2, d2 = e (1/s^4 - 2/s^3), d3 = e (1/s^6 - 6/s^5 + 6/s^4)
  return {e, e * i2, e * (i4 - 2.0 * i3), e * (i6 - 6.0 * i5 + 6.0 * i4)};
}

PhiSpec::PhiSpec(double beta, PhiProfile profile) : beta_(beta), r_(beta - std::numbers::pi / 2), tol_(profile.quadrature_tol) {
  if (!(beta > std::numbers::pi / 2) || !std::isfinite(beta))
    throw InputError("phi: beta must exceed pi/2, got " + std::to_string(beta));
  if (!(tol_ > 0.0)) throw InputError("phi: quadrature tolerance must be positive");
  K_ = 1.0 / ramp(1.0);
}

double PhiSpec::ramp_factor(double u) const {
  if (u <= 0.0) return 0.0;
  // With 1/s = 1/u + v, ramp(u) = exp(-1/u) * int_0^inf exp(-v) u^2/(1+uv)^2 dv and the
  // remaining integrand is O(1) and smooth for every u.
  auto f = [u](double v) {
    const double q = 1.0 + u * v;
    return std::exp(-v) * u * u / (q * q);
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 30, tol_, &err);
}

double PhiSpec::ramp(double u) const {
  if (u <= 0.0) return 0.0;
  const double scale = std::exp(-1.0 / u);
  return scale == 0.0 ? 0.0 : scale * ramp_factor(u);
}

double PhiSpec::log_value(double x) const {
  const double u = std::abs(x) - r_;
  if (u <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(K_) - 1.0 / u + std::log(ramp_factor(u));
}

double PhiSpec::operator()(double x) const {
  // The two terms are summed in a fixed order so that phi(x) == phi(-x) bit for bit.
  const double p = ramp(x - r_), q = ramp(-x - r_);
  return K_ * (std::min(p, q) + std::max(p, q));
}

std::array<double, 4> PhiSpec::derivatives(double x) const {
  const auto mp = smooth_step_kernel(x - r_);
  const auto mq = smooth_step_kernel(-x - r_);
  // d/dx ramp(x - r) = m(x - r); d/dx ramp(-x - r) = -m(-x - r).
  return {(*this)(x), K_ * (mp[0] - mq[0]), K_ * (mp[1] + mq[1]), K_ * (mp[2] - mq[2])};
}

Jet3 PhiSpec::operator()(const Jet3& x) const {
  const auto d = derivatives(x.value());
  return x.compose(d[0], d[1], d[2], d[3]);
}

Jet3 smooth_cutoff(const Jet3& x, double inner, double outer) {
  // h(u) = m(1-u) / (m(1-u) + m(u)) with u = (|x| - inner)/(outer - inner); evaluated
  // via jets so derivatives are exact.
  const double v = std::abs(x.value());
  if (v <= inner) return Jet3(x.nvars(), 1.0, x.order());
  if (v >= outer) return Jet3(x.nvars(), 0.0, x.order());
  const Jet3 ax = x.value() >= 0 ? x : -x;
  const Jet3 u = (ax - inner) * (1.0 / (outer - inner));
  auto kernel = [](const Jet3& s) {
    const auto k = smooth_step_kernel(s.value());
    return s.compose(k[0], k[1], k[2], k[3]);
  };
  const Jet3 a = kernel(1.0 - u);
  const Jet3 b = kernel(u);
  return a / (a + b);
}

}  // namespace psindex
