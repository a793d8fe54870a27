#pragma once

// Independent reference computations used by the tests.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Fn = std::function<double(const std::vector<double>&)>;

/// Product of central difference operators along `dirs` (repeats allowed), step h.
inline double central(const Fn& f, const std::vector<double>& x, const std::vector<int>& dirs, double h) {
  const std::size_t k = dirs.size();
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<double> y = x;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      const bool minus = (mask >> i) & 1u;
      y[static_cast<std::size_t>(dirs[i])] += minus ? -h : h;
      if (minus) sign = -sign;
    }
    sum += sign * f(y);
  }
  return sum / std::pow(2.0 * h, static_cast<double>(k));
}

/// One Richardson step on the O(h^2) central stencil.
inline double richardson(const Fn& f, const std::vector<double>& x, const std::vector<int>& dirs, double h) {
  return (4.0 * central(f, x, dirs, 0.5 * h) - central(f, x, dirs, h)) / 3.0;
}

/// Second Richardson level: cancels the h^4 term as well.
inline double richardson2(const Fn& f, const std::vector<double>& x, const std::vector<int>& dirs, double h) {
  return (16.0 * richardson(f, x, dirs, 0.5 * h) - richardson(f, x, dirs, h)) / 15.0;
}

/// Wirtinger derivative d/dz or d/dzbar applied in sequence: pattern entries are
/// (complex index, conjugate?).  Expands d/dz = (d/dx - i d/dy)/2 into real partials.
inline std::complex<double> wirtinger_fd(const Fn& f, const std::vector<double>& x,
                                         const std::vector<std::pair<int, bool>>& pattern, double h) {
  const std::size_t k = pattern.size();
  std::complex<double> total = 0.0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> dirs;
    std::complex<double> coef = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto [idx, bar] = pattern[i];
      const bool imag = (mask >> i) & 1u;
      dirs.push_back(2 * idx + (imag ? 1 : 0));
      coef *= imag ? std::complex<double>(0.0, bar ? 0.5 : -0.5) : std::complex<double>(0.5, 0.0);
    }
    total += coef * richardson2(f, x, dirs, h);
  }
  return total;
}

/// integral_0^u exp(-1/s) ds = u exp(-1/u) + Ei(-1/u).
inline double ramp_closed_form(double u) {
  if (u <= 0.0) return 0.0;
  return u * std::exp(-1.0 / u) + std::expint(-1.0 / u);
}

struct RawSample {
  double dbar;
  double msq;
};

/// sup of gamma in (0, 1) with dbar - gamma/(1-gamma) msq > 0 for every sample, by bisection.
inline double df_bisect(const std::vector<RawSample>& s) {
  auto ok = [&](double g) {
    const double k = g / (1.0 - g);
    for (const auto& x : s)
      if (!(x.dbar - k * x.msq > 0.0)) return false;
    return true;
  };
  if (s.empty()) return 1.0;
  double lo = 0.0, hi = 1.0;
  if (!ok(std::nextafter(0.0, 1.0))) return 0.0;
  for (int i = 0; i < 2000 && std::nextafter(lo, hi) < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

/// inf of gamma > 1 with -dbar - gamma/(gamma-1) msq > 0 for every sample, by bisection.
inline double s_bisect(const std::vector<RawSample>& s) {
  auto ok = [&](double g) {
    const double k = g / (g - 1.0);
    for (const auto& x : s)
      if (!(-x.dbar - k * x.msq > 0.0)) return false;
    return true;
  };
  if (s.empty()) return 1.0;
  double hi = 2.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  double lo = 1.0;
  for (int i = 0; i < 5000 && std::nextafter(lo, hi) < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Standard normal draws from a fixed seed.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  std::complex<double> cnormal() { return {normal(), normal()}; }
};

}  // namespace oracle
