#pragma once

#include <array>

#include "psindex/jet.hpp"

namespace psindex {

/// Smoothing profile for the worm's radial function.
struct PhiProfile {
  double quadrature_tol = 1e-12;
};

/// phi(x) = K * (ramp(x - r) + ramp(-x - r)) with ramp(u) = integral_0^u exp(-1/s) ds.
///
/// The ramp is C-infinity, convex and vanishes exactly for u <= 0, so phi is even,
/// convex, zero exactly on [-r, r] and strictly monotone outside it.  K = 1/ramp(1)
/// pins phi(r + 1) = 1; the threshold `a` is r + 1.
class PhiSpec {
 public:
  PhiSpec(double beta, PhiProfile profile = {});

  double beta() const { return beta_; }
  double r() const { return r_; }
  double K() const { return K_; }
  double a() const { return r_ + 1.0; }
  double quadrature_tol() const { return tol_; }

  double operator()(double x) const;
  /// phi and its first three derivatives at x.
  std::array<double, 4> derivatives(double x) const;
  Jet3 operator()(const Jet3& x) const;

  /// log phi(x); -inf exactly on [-r, r] and finite elsewhere, even where phi underflows.
  double log_value(double x) const;
  /// integral_0^u exp(-1/s) ds for u > 0, 0 otherwise (adaptive Gauss-Kronrod).
  double ramp(double u) const;
  /// ramp(u) * exp(1/u), which stays O(u^2) for small u.
  double ramp_factor(double u) const;

 private:
  double beta_;
  double r_;
  double tol_;
  double K_;
};

/// exp(-1/s) and its first three derivatives; all zero for s <= 0.
std::array<double, 4> smooth_step_kernel(double s);

/// Smooth cutoff: 1 for |x| <= inner, 0 for |x| >= outer, C-infinity in between.
Jet3 smooth_cutoff(const Jet3& x, double inner, double outer);

}  // namespace psindex
