#include "psindex/jet.hpp"

#include <algorithm>
#include <memory>

namespace psindex {

JetLayout::JetLayout(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > kMaxJetVars) throw std::invalid_argument("jet variable count out of range");
  const int n = nvars;
  t2_.assign(static_cast<std::size_t>(n * n), -1);
  t3_.assign(static_cast<std::size_t>(n * n * n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int q = static_cast<int>(pairs_.size());
      pairs_.push_back({i, j});
      t2_[i * n + j] = t2_[j * n + i] = q;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const int q = static_cast<int>(triples_.size());
        triples_.push_back({i, j, k});
        std::array<int, 3> p{i, j, k};
        do {
          t3_[(p[0] * n + p[1]) * n + p[2]] = q;
        } while (std::next_permutation(p.begin(), p.end()));
      }
}

const JetLayout& JetLayout::get(int nvars) {
  static const auto table = [] {
    std::array<std::unique_ptr<JetLayout>, kMaxJetVars + 1> t;
    for (int n = 1; n <= kMaxJetVars; ++n) t[n] = std::make_unique<JetLayout>(n);
    return t;
  }();
  if (nvars < 1 || nvars > kMaxJetVars) throw std::invalid_argument("jet variable count out of range");
  return *table[nvars];
}

std::vector<Jet3> lift(std::span<const double> coords, int order) {
  const int n = static_cast<int>(coords.size());
  std::vector<Jet3> out;
  out.reserve(coords.size());
  for (int i = 0; i < n; ++i) out.push_back(Jet3::variable(n, i, coords[i], order));
  return out;
}

CJet to_complex(const Jet3& j) {
  CJet r(j.nvars(), j.value(), j.order());
  auto src = j.coeffs();
  auto dst = r.coeffs();
  for (std::size_t q = 0; q < src.size(); ++q) dst[q] = src[q];
  return r;
}

Jet3 real_part(const CJet& j) {
  Jet3 r(j.nvars(), j.value().real(), j.order());
  auto src = j.coeffs();
  auto dst = r.coeffs();
  for (std::size_t q = 0; q < src.size(); ++q) dst[q] = src[q].real();
  return r;
}

Jet3 imag_part(const CJet& j) {
  Jet3 r(j.nvars(), j.value().imag(), j.order());
  auto src = j.coeffs();
  auto dst = r.coeffs();
  for (std::size_t q = 0; q < src.size(); ++q) dst[q] = src[q].imag();
  return r;
}

CJet conj(const CJet& j) {
  CJet r = j;
  for (auto& v : r.coeffs()) v = std::conj(v);
  return r;
}

CJet constant_like(const CJet& like, std::complex<double> v, int order) {
  return CJet(like.nvars(), v, order);
}

double max_abs_coeff(const Jet3& j) {
  double m = 0.0;
  for (double v : j.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_coeff(const CJet& j) {
  double m = 0.0;
  for (const auto& v : j.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace psindex
