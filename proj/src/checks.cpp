#include "psindex/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "psindex/errors.hpp"
#include "psindex/levi.hpp"
#include "psindex/parallel.hpp"

namespace psindex {

LeviComparison compare_levi(const WormDomain& worm, const BoundaryPoint& p) {
  const cdouble z = p.z[0], w = p.z[1];
  CVec l(2);
  l << -p.wirt.grad(1), p.wirt.grad(0);
  const double factor = std::exp(2.0 * std::arg(w));
  LeviComparison c;
  c.z = p.z;
  c.ad = levi_form(p.wirt, l, l).real() * factor;
  c.closed = worm.levi_closed_form(z, w) * factor;
  const double scale = factor * l.squaredNorm() * p.wirt.hess_mixed.norm();
  c.rel_error = std::abs(c.ad - c.closed) / std::max(std::abs(c.closed), 1e-13 * scale);
  return c;
}

LeviCheck verify_levi(const WormDomain& worm, int count, std::uint64_t seed, int threads) {
  SampleOptions so;
  so.threads = resolve_threads(threads);
  const auto pts = boundary_sample(worm, worm.default_anchor(), count, seed, so);
  LeviCheck out;
  for (const auto& p : pts) {
    if (std::abs(p.z[1]) < 1e-8) {
      ++out.excluded;
      continue;
    }
    out.rows.push_back(compare_levi(worm, p));
    out.max_rel_error = std::max(out.max_rel_error, out.rows.back().rel_error);
  }
  out.points = static_cast<int>(out.rows.size());
  return out;
}

namespace {

CMat random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cdouble(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(a);
  return qr.householderQ() * CMat::Identity(n, n);
}

}  // namespace

SchurCheck schur_property(int trials, std::uint64_t seed) {
  if (trials < 0) throw InputError("trial count must be nonnegative");
  SchurCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_d(2, 8);
  std::uniform_real_distribution<double> eig_d(0.5, 3.0);
  std::normal_distribution<double> g(0.0, 1.0);
  while (out.trials < trials) {
    const int size = size_d(rng);
    const int m = std::uniform_int_distribution<int>(1, size - 1)(rng);
    // Kernel of dimension m in a random position.
    const CMat u = random_unitary(size, rng);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(size);
    for (int i = m; i < size; ++i) d(i) = (g(rng) < 0 ? -1.0 : 1.0) * eig_d(rng);
    const CMat mat = u * d.asDiagonal() * u.adjoint();

    SchurBlocks s;
    std::vector<CVec> frame;
    for (int i = 0; i < size; ++i) {
      CVec x(size + 1);
      for (int k = 0; k <= size; ++k) x(k) = cdouble(g(rng), g(rng));
      frame.push_back(x);
    }
    try {
      s = schur_frame(mat, m, &frame);
    } catch (const NumericalError&) {
      ++out.skipped;
      continue;
    }
    ++out.trials;
    out.max_block_residual = std::max(out.max_block_residual, s.residual / mat.norm());

    // Ambient null directions sum_i conj(u_i) X_i against span{L_1..L_m}.
    CMat span(size + 1, m);
    for (int j = 0; j < m; ++j) span.col(j) = s.frame[static_cast<std::size_t>(j)];
    Eigen::HouseholderQR<CMat> qr(span);
    const CMat q = qr.householderQ() * CMat::Identity(size + 1, m);
    NullData nd = null_data_from_matrix(mat);
    null_basis(nd, kDefaultNullTol);
    for (const auto& v : nd.null_basis) {
      CVec l = CVec::Zero(size + 1);
      for (int i = 0; i < size; ++i) l += std::conj(v(i)) * frame[static_cast<std::size_t>(i)];
      l /= l.norm();
      const double res = (l - q * (q.adjoint() * l)).norm();
      out.max_null_residual = std::max(out.max_null_residual, res);
    }
  }
  return out;
}

PhiCheck phi_axioms(double beta, int grid) {
  if (grid < 2) throw InputError("phi grid needs at least 2 points");
  const PhiSpec phi(beta);
  const double r = phi.r(), lim = r + 3.0;
  PhiCheck c;
  c.grid = grid;
  c.min_phi = INFINITY;
  c.min_phi2 = INFINITY;
  std::vector<double> xs;
  for (int i = 0; i < grid; ++i) xs.push_back(-lim + 2.0 * lim * i / (grid - 1));
  for (double x : {r - 1e-12, r + 1e-12, r, r + 1.0}) {
    xs.push_back(x);
    xs.push_back(-x);
  }
  for (double x : xs) {
    const auto d = phi.derivatives(x);
    if (phi(x) != phi(-x)) c.even_exact = false;
    c.min_phi = std::min(c.min_phi, d[0]);
    c.min_phi2 = std::min(c.min_phi2, d[2]);
    if (std::abs(x) <= r) {
      if (d[0] != 0.0) c.zero_inside = false;
    } else if (std::abs(x) >= r + 1e-12) {
      if (!std::isfinite(phi.log_value(x))) c.positive_outside = false;
    }
  }
  const auto a = phi.derivatives(r + 1.0);
  c.phi_at_a = a[0];
  c.dphi_at_a = a[1];
  return c;
}

}  // namespace psindex
