#pragma once

// Self-checks exposed as CLI commands: Levi closed form, Schur block transform, and
// the axioms of the worm's radial function.

#include <complex>
#include <cstdint>
#include <vector>

#include "psindex/domain.hpp"
#include "psindex/sampling.hpp"

namespace psindex {

struct LeviComparison {
  std::vector<cdouble> z;
  double ad = 0.0;      // AD Levi value times e^{2 arg w}
  double closed = 0.0;  // closed-form bracket times e^{2 arg w}
  double rel_error = 0.0;
};

struct LeviCheck {
  int points = 0;
  int excluded = 0;  // |w| too small
  double max_rel_error = 0.0;
  std::vector<LeviComparison> rows;
  bool pass(double tol = 1e-8) const { return points > 0 && max_rel_error < tol; }
};

/// Levi form of L = -rho_w d/dz + rho_z d/dw at a worm boundary point, by AD and in
/// closed form, both multiplied by e^{2 arg w} (principal branch).  The relative error
/// uses max(|closed|, 1e-13 * e^{2 arg w} |L|^2 ||Levi matrix||) as denominator so that
/// points where both sides vanish compare their absolute noise.
LeviComparison compare_levi(const WormDomain& worm, const BoundaryPoint& p);
LeviCheck verify_levi(const WormDomain& worm, int count, std::uint64_t seed, int threads = 1);

struct SchurCheck {
  int trials = 0;
  double max_block_residual = 0.0;  // ||Psi^* M Psi - blockdiag|| / ||M||
  double max_null_residual = 0.0;   // projection of null vectors off span{L_1..L_m}
  int skipped = 0;                  // ill-conditioned trailing block
  bool pass() const { return trials > 0 && max_block_residual < 1e-10 && max_null_residual < 1e-8; }
};

/// Random Hermitian matrices of sizes 2..8 with an exact m-dimensional kernel and a
/// well-conditioned trailing block, plus a random ambient frame.
SchurCheck schur_property(int trials, std::uint64_t seed);

struct PhiCheck {
  int grid = 0;
  bool even_exact = true;
  double min_phi = 0.0;
  double min_phi2 = 0.0;
  bool zero_inside = true;     // phi == 0 on [-r, r]
  bool positive_outside = true;  // log phi finite for |x| >= r + 1e-12
  double phi_at_a = 0.0;       // phi(r + 1)
  double dphi_at_a = 0.0;
  bool pass() const {
    return grid > 0 && even_exact && min_phi >= 0.0 && min_phi2 >= -1e-12 && zero_inside && positive_outside &&
           std::abs(phi_at_a - 1.0) <= 1e-10 && dphi_at_a > 0.0;
  }
};

/// Grid of `grid` points on [-(r + 3), r + 3] plus the points r +- 1e-12 and r + 1.
PhiCheck phi_axioms(double beta, int grid);

}  // namespace psindex
