#pragma once

// Finite-difference cross-check of every stored Wirtinger derivative of a domain.

#include <algorithm>

#include "oracles.hpp"
#include "psindex/domain.hpp"
#include "psindex/wirtinger.hpp"

namespace oracle {

inline double rel_dev(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

/// Largest relative deviation of grad, both Hessians and both third-order tensors from
/// Richardson central differences of d.value().
inline double max_wirtinger_fd_error(const psindex::Domain& d, const std::vector<double>& x, double h) {
  const int n = d.dim();
  const psindex::WirtingerData w = psindex::wirtinger(d.jet(x), n);
  Fn f = [&](const std::vector<double>& y) { return d.value(y); };
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, rel_dev(w.grad(i), wirtinger_fd(f, x, {{i, false}}, h)));
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, rel_dev(w.hess_hol(i, j), wirtinger_fd(f, x, {{i, false}, {j, false}}, h)));
      worst = std::max(worst, rel_dev(w.hess_mixed(i, j), wirtinger_fd(f, x, {{i, false}, {j, true}}, h)));
      for (int k = 0; k < n; ++k) {
        worst = std::max(worst, rel_dev(w.zzzb(i, j, k), wirtinger_fd(f, x, {{i, false}, {j, false}, {k, true}}, h)));
        worst = std::max(worst, rel_dev(w.zzbzb(i, j, k), wirtinger_fd(f, x, {{i, false}, {j, true}, {k, true}}, h)));
      }
    }
  }
  return worst;
}

}  // namespace oracle
