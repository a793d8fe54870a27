#include "psindex/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "psindex/errors.hpp"
#include "psindex/parallel.hpp"

namespace psindex {
namespace {

std::vector<double> along(std::span<const double> a, std::span<const double> d, double s) {
  std::vector<double> x(a.begin(), a.end());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * d[i];
  return x;
}

}  // namespace

BoundaryPoint make_boundary_point(const Domain& d, std::span<const double> x, cdouble t) {
  BoundaryPoint p;
  p.z = to_complex_point(x);
  p.t = t;
  p.jet = d.jet(x);
  p.wirt = wirtinger(p.jet, d.dim());
  p.residual = std::abs(p.jet.value());
  return p;
}

BoundaryPoint boundary_along_ray(const Domain& d, std::span<const double> anchor, std::span<const double> direction,
                                 const SampleOptions& opt) {
  check_coords(d, anchor);
  check_coords(d, direction);
  const double radius = opt.radius > 0 ? opt.radius : d.search_radius();
  const double step = opt.step > 0 ? opt.step : radius / 1000.0;
  double dn = 0.0;
  for (double v : direction) dn += v * v;
  dn = std::sqrt(dn);
  if (!(dn > 0.0)) throw InputError("sampling direction must be nonzero");
  std::vector<double> u(direction.begin(), direction.end());
  for (double& v : u) v /= dn;

  if (!(d.value(anchor) < 0.0)) throw InputError("sampling anchor must satisfy rho(anchor) < 0");

  double lo = 0.0, hi = -1.0;
  for (double s = step; s <= radius + 0.5 * step; s += step) {
    if (d.value(along(anchor, u, s)) >= 0.0) {
      hi = s;
      break;
    }
    lo = s;
  }
  if (hi < 0.0) throw InputError("ray left the search radius without crossing the boundary (unbounded domain or bad anchor)");

  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (d.value(along(anchor, u, mid)) < 0.0 ? lo : hi) = mid;
  }
  double s = std::abs(d.value(along(anchor, u, lo))) <= std::abs(d.value(along(anchor, u, hi))) ? lo : hi;

  // Newton polish along the ray.
  for (int it = 0; it < opt.newton_iters; ++it) {
    const auto x = along(anchor, u, s);
    const Jet3 j = d.jet(x, 1);
    double slope = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) slope += j.d1(static_cast<int>(i)) * u[i];
    if (j.value() == 0.0 || slope == 0.0) break;
    const double next = s - j.value() / slope;
    if (!(std::abs(d.value(along(anchor, u, next))) < std::abs(j.value()))) break;
    s = next;
  }

  BoundaryPoint p = make_boundary_point(d, along(anchor, u, s));
  const double gnorm = p.wirt.grad_norm();
  if (!(gnorm > 1e-10)) throw NumericalError("defining function has vanishing gradient at a boundary point");
  if (!(p.residual <= opt.residual_tol * (1.0 + 2.0 * gnorm)))
    throw NumericalError("boundary point residual " + std::to_string(p.residual) + " above tolerance");
  return p;
}

std::vector<BoundaryPoint> boundary_sample(const Domain& d, std::span<const double> anchor, int count, std::uint64_t seed,
                                           const SampleOptions& opt) {
  if (count < 0) throw InputError("sample count must be nonnegative");
  check_coords(d, anchor);
  if (!(d.value(anchor) < 0.0)) throw InputError("sampling anchor must satisfy rho(anchor) < 0");
  std::vector<BoundaryPoint> out(static_cast<std::size_t>(count));
  const std::size_t nv = anchor.size();
  parallel_for(out.size(), opt.threads, [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> dir(nv);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& v : dir) {
        v = g(rng);
        norm += v * v;
      }
    } while (norm < 1e-12);
    out[i] = boundary_along_ray(d, anchor, dir, opt);
  });
  for (auto& p : out) p.t = 0.0;
  if (const auto* worm = dynamic_cast<const WormDomain*>(&d))
    for (auto& p : out) p.t = worm->t();
  return out;
}

std::vector<BoundaryPoint> annulus_points(const WormDomain& worm, int count) {
  if (worm.t() != 0.0) throw InputError("annulus points lie on the boundary only for t = 0");
  if (count <= 0) return {};
  const double r = worm.phi().r();
  // Golden-angle spacing in arg w; log|w|^2 on an even grid with both endpoints.
  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  std::vector<BoundaryPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(make_boundary_point(worm, std::vector<double>{0.0, 0.0, 1.0, 0.0}));
  const int rest = count - 1;
  for (int i = 0; i < rest; ++i) {
    const double lam = rest == 1 ? 0.0 : -r + 2.0 * r * i / (rest - 1);
    const double frac = std::fmod((i + 1) * golden, 1.0);
    const cdouble w = std::polar(std::exp(0.5 * lam), 2.0 * std::numbers::pi * frac);
    out.push_back(make_boundary_point(worm, std::vector<double>{0.0, 0.0, w.real(), w.imag()}));
  }
  return out;
}

std::vector<BoundaryPoint> annulus_points(double beta, int count) {
  const WormDomain worm(beta, 0.0);
  return annulus_points(worm, count);
}

}  // namespace psindex
