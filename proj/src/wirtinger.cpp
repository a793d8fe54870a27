#include "psindex/wirtinger.hpp"

#include <array>

#include "psindex/errors.hpp"

namespace psindex {
namespace {

// Direction of d/dz_i (conjugate = false) or d/dzbar_i in the real coordinates:
// only entries 2i and 2i+1 are nonzero.
struct WDir {
  int re;
  cdouble a;  // coefficient on d/dx
  cdouble b;  // coefficient on d/dy
};

WDir wdir(int i, bool bar) { return {2 * i, 0.5, bar ? cdouble(0, 0.5) : cdouble(0, -0.5)}; }

cdouble contract2(const Jet3& j, WDir u, WDir v) {
  const std::array<std::pair<int, cdouble>, 2> uu{{{u.re, u.a}, {u.re + 1, u.b}}};
  const std::array<std::pair<int, cdouble>, 2> vv{{{v.re, v.a}, {v.re + 1, v.b}}};
  cdouble s = 0.0;
  for (const auto& [p, cp] : uu)
    for (const auto& [q, cq] : vv) s += cp * cq * j.d2(p, q);
  return s;
}

cdouble contract3(const Jet3& j, WDir u, WDir v, WDir w) {
  const std::array<std::pair<int, cdouble>, 2> uu{{{u.re, u.a}, {u.re + 1, u.b}}};
  const std::array<std::pair<int, cdouble>, 2> vv{{{v.re, v.a}, {v.re + 1, v.b}}};
  const std::array<std::pair<int, cdouble>, 2> ww{{{w.re, w.a}, {w.re + 1, w.b}}};
  cdouble s = 0.0;
  for (const auto& [p, cp] : uu)
    for (const auto& [q, cq] : vv)
      for (const auto& [r, cr] : ww) s += cp * cq * cr * j.d3(p, q, r);
  return s;
}

}  // namespace

WirtingerData wirtinger(const Jet3& j, int n) {
  if (j.nvars() != 2 * n) throw InputError("wirtinger: jet has " + std::to_string(j.nvars()) +
                                           " variables, expected " + std::to_string(2 * n));
  WirtingerData w;
  w.n = n;
  w.grad.resize(n);
  w.hess_hol.resize(n, n);
  w.hess_mixed.resize(n, n);
  w.third_zzb.assign(static_cast<std::size_t>(n * n * n), 0.0);
  w.third_zbzb.assign(static_cast<std::size_t>(n * n * n), 0.0);
  for (int i = 0; i < n; ++i) w.grad(i) = 0.5 * cdouble(j.d1(2 * i), -j.d1(2 * i + 1));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      w.hess_hol(i, k) = contract2(j, wdir(i, false), wdir(k, false));
      w.hess_mixed(i, k) = contract2(j, wdir(i, false), wdir(k, true));
    }
  // Exact Hermitian symmetry; the two triangles differ only by rounding.
  w.hess_mixed = (0.5 * (w.hess_mixed + w.hess_mixed.adjoint())).eval();
  if (j.order() >= 3)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          w.third_zzb[(a * n + b) * n + c] = contract3(j, wdir(a, false), wdir(b, false), wdir(c, true));
          w.third_zbzb[(a * n + b) * n + c] = contract3(j, wdir(a, false), wdir(b, true), wdir(c, true));
        }
  return w;
}

CJet dz(const CJet& f, int i) {
  return 0.5 * (f.derivative(2 * i) - cdouble(0, 1) * f.derivative(2 * i + 1));
}

CJet dzbar(const CJet& f, int i) {
  return 0.5 * (f.derivative(2 * i) + cdouble(0, 1) * f.derivative(2 * i + 1));
}

CJet dz(const Jet3& f, int i) {
  CJet r = to_complex(f.derivative(2 * i));
  r += cdouble(0, -1) * to_complex(f.derivative(2 * i + 1));
  return 0.5 * r;
}

CJet dzbar(const Jet3& f, int i) {
  CJet r = to_complex(f.derivative(2 * i));
  r += cdouble(0, 1) * to_complex(f.derivative(2 * i + 1));
  return 0.5 * r;
}

std::vector<double> to_real(const std::vector<cdouble>& z) {
  std::vector<double> x;
  x.reserve(2 * z.size());
  for (const auto& v : z) {
    x.push_back(v.real());
    x.push_back(v.imag());
  }
  return x;
}

std::vector<cdouble> to_complex_point(std::span<const double> x) {
  std::vector<cdouble> z(x.size() / 2);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = {x[2 * i], x[2 * i + 1]};
  return z;
}

}  // namespace psindex
