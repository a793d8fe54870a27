#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psindex/domain.hpp"
#include "psindex/wirtinger.hpp"

namespace psindex {

/// A point on the zero set of a defining function with its cached derivatives.
struct BoundaryPoint {
  std::vector<cdouble> z;
  cdouble t = 0.0;
  Jet3 jet;
  WirtingerData wirt;
  double residual = 0.0;  // |rho(z)|

  std::vector<double> coords() const { return to_real(z); }
};

struct SampleOptions {
  double radius = 0.0;     // 0: use the domain's search radius
  double step = 0.0;       // marching step; 0: radius / 1000
  int newton_iters = 5;
  double residual_tol = 1e-12;
  int threads = 1;
};

/// Attach jet and Wirtinger data to a point (no boundary check).
BoundaryPoint make_boundary_point(const Domain& d, std::span<const double> x, cdouble t = 0.0);

/// First zero of rho along anchor + s * direction, s in (0, radius].
BoundaryPoint boundary_along_ray(const Domain& d, std::span<const double> anchor, std::span<const double> direction,
                                 const SampleOptions& opt = {});

/// `count` boundary points along uniformly random rays from `anchor`.  Ray i draws its
/// direction from a generator seeded by (seed, i), so results are reproducible and
/// independent of the thread count.
std::vector<BoundaryPoint> boundary_sample(const Domain& d, std::span<const double> anchor, int count, std::uint64_t seed,
                                           const SampleOptions& opt = {});

/// Points (0, w) of the unperturbed worm's Levi-flat annulus:
/// log|w|^2 spans [-(beta - pi/2), beta - pi/2] (endpoints included), arg w spans
/// [0, 2 pi).  The first point is always (0, 1).
std::vector<BoundaryPoint> annulus_points(double beta, int count);

/// Same, reusing an existing worm domain (which must have t = 0).
std::vector<BoundaryPoint> annulus_points(const WormDomain& worm, int count);

}  // namespace psindex
