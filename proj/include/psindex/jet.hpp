#pragma once

// Third-order truncated Taylor arithmetic over a fixed set of real variables.
//
// A jet carries the value of a function at a point together with all partial
// derivatives up to order three.  The symmetric derivative tensors are stored
// packed (i <= j <= k); reads through d2()/d3() accept any index order.
// Arithmetic is exact modulo terms of degree four, so composing jets gives the
// same Taylor coefficients as differentiating the composed function.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace psindex {

inline constexpr int kMaxJetVars = 8;
inline constexpr int kMaxJetOrder = 3;

/// Index tables for packed symmetric tensors in `nvars` variables.
class JetLayout {
 public:
  static const JetLayout& get(int nvars);

  int nvars() const { return nvars_; }
  int size2() const { return static_cast<int>(pairs_.size()); }
  int size3() const { return static_cast<int>(triples_.size()); }
  int offset1() const { return 1; }
  int offset2() const { return 1 + nvars_; }
  int offset3() const { return 1 + nvars_ + size2(); }
  int total() const { return offset3() + size3(); }

  int idx2(int i, int j) const { return t2_[i * nvars_ + j]; }
  int idx3(int i, int j, int k) const { return t3_[(i * nvars_ + j) * nvars_ + k]; }

  const std::vector<std::array<int, 2>>& pairs() const { return pairs_; }
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }

  explicit JetLayout(int nvars);

 private:
  int nvars_;
  std::vector<std::array<int, 2>> pairs_;
  std::vector<std::array<int, 3>> triples_;
  std::vector<int> t2_;
  std::vector<int> t3_;
};

template <class S>
class BasicJet {
 public:
  using scalar_type = S;

  BasicJet() = default;

  /// Constant jet (all derivatives zero).
  BasicJet(int nvars, S value, int order = kMaxJetOrder)
      : layout_(&JetLayout::get(nvars)), order_(order), c_(layout_->total(), S{}) {
    if (order < 0 || order > kMaxJetOrder) throw std::invalid_argument("jet order out of range");
    c_[0] = value;
  }

  /// Seed jet for variable `index`: value `value`, gradient e_index.
  static BasicJet variable(int nvars, int index, S value, int order = kMaxJetOrder) {
    BasicJet j(nvars, value, order);
    if (index < 0 || index >= nvars) throw std::out_of_range("jet variable index");
    if (order >= 1) j.c_[1 + index] = S{1};
    return j;
  }

  int nvars() const { return layout_ ? layout_->nvars() : 0; }
  int order() const { return order_; }
  const JetLayout& layout() const { return *layout_; }

  S value() const { return c_[0]; }
  S d1(int i) const { return order_ >= 1 ? c_[1 + i] : S{}; }
  S d2(int i, int j) const { return order_ >= 2 ? c_[layout_->offset2() + layout_->idx2(i, j)] : S{}; }
  S d3(int i, int j, int k) const {
    return order_ >= 3 ? c_[layout_->offset3() + layout_->idx3(i, j, k)] : S{};
  }

  // Raw packed access, used by the arithmetic kernels and serializers.
  std::span<const S> coeffs() const { return c_; }
  std::span<S> coeffs() { return c_; }

  void set_d1(int i, S v) { c_[1 + i] = v; }
  void set_d2(int i, int j, S v) { c_[layout_->offset2() + layout_->idx2(i, j)] = v; }
  void set_d3(int i, int j, int k, S v) { c_[layout_->offset3() + layout_->idx3(i, j, k)] = v; }

  /// Partial derivative in variable i; the result has order one less.
  BasicJet derivative(int i) const {
    if (order_ == 0) throw std::logic_error("cannot differentiate an order-0 jet");
    BasicJet r(nvars(), d1(i), order_ - 1);
    const int n = nvars();
    if (r.order_ >= 1)
      for (int j = 0; j < n; ++j) r.c_[1 + j] = d2(i, j);
    if (r.order_ >= 2)
      for (const auto& [j, k] : layout_->pairs()) r.set_d2(j, k, d3(i, j, k));
    return r;
  }

  /// Truncate to a lower order (no-op when already at or below it).
  BasicJet truncated(int order) const {
    BasicJet r = *this;
    if (order < r.order_) {
      r.order_ = order;
      const int keep = order == 0 ? 1 : order == 1 ? layout_->offset2() : order == 2 ? layout_->offset3() : layout_->total();
      for (std::size_t q = static_cast<std::size_t>(keep); q < r.c_.size(); ++q) r.c_[q] = S{};
    }
    return r;
  }

  /// f(this) given f and its first three derivatives at value().
  BasicJet compose(S f0, S f1, S f2, S f3) const {
    BasicJet r(nvars(), f0, order_);
    const int n = nvars();
    if (order_ >= 1)
      for (int i = 0; i < n; ++i) r.c_[1 + i] = f1 * d1(i);
    if (order_ >= 2)
      for (const auto& [i, j] : layout_->pairs()) r.set_d2(i, j, f2 * d1(i) * d1(j) + f1 * d2(i, j));
    if (order_ >= 3)
      for (const auto& [i, j, k] : layout_->triples())
        r.set_d3(i, j, k,
                 f3 * d1(i) * d1(j) * d1(k) +
                     f2 * (d2(i, j) * d1(k) + d2(i, k) * d1(j) + d2(j, k) * d1(i)) + f1 * d3(i, j, k));
    return r;
  }

  BasicJet& operator+=(const BasicJet& o) {
    check_same(o);
    order_ = std::min(order_, o.order_);
    for (std::size_t q = 0; q < c_.size(); ++q) c_[q] += o.c_[q];
    clear_above_order();
    return *this;
  }
  BasicJet& operator-=(const BasicJet& o) {
    check_same(o);
    order_ = std::min(order_, o.order_);
    for (std::size_t q = 0; q < c_.size(); ++q) c_[q] -= o.c_[q];
    clear_above_order();
    return *this;
  }
  BasicJet& operator+=(S s) {
    c_[0] += s;
    return *this;
  }
  BasicJet& operator-=(S s) {
    c_[0] -= s;
    return *this;
  }
  BasicJet& operator*=(S s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend BasicJet operator+(BasicJet a, const BasicJet& b) { return a += b; }
  friend BasicJet operator-(BasicJet a, const BasicJet& b) { return a -= b; }
  friend BasicJet operator+(BasicJet a, S s) { return a += s; }
  friend BasicJet operator+(S s, BasicJet a) { return a += s; }
  friend BasicJet operator-(BasicJet a, S s) { return a -= s; }
  friend BasicJet operator-(S s, const BasicJet& a) { return -a + s; }
  friend BasicJet operator*(BasicJet a, S s) { return a *= s; }
  friend BasicJet operator*(S s, BasicJet a) { return a *= s; }
  friend BasicJet operator/(BasicJet a, S s) { return a *= (S{1} / s); }
  friend BasicJet operator/(S s, const BasicJet& a) { return reciprocal(a) * s; }
  BasicJet operator-() const {
    BasicJet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend BasicJet operator*(const BasicJet& a, const BasicJet& b) {
    a.check_same(b);
    const int ord = std::min(a.order_, b.order_);
    BasicJet r(a.nvars(), a.value() * b.value(), ord);
    const int n = a.nvars();
    const S a0 = a.value(), b0 = b.value();
    if (ord >= 1)
      for (int i = 0; i < n; ++i) r.c_[1 + i] = a.d1(i) * b0 + a0 * b.d1(i);
    if (ord >= 2)
      for (const auto& [i, j] : a.layout_->pairs())
        r.set_d2(i, j, a.d2(i, j) * b0 + a.d1(i) * b.d1(j) + a.d1(j) * b.d1(i) + a0 * b.d2(i, j));
    if (ord >= 3)
      for (const auto& [i, j, k] : a.layout_->triples())
        r.set_d3(i, j, k,
                 a.d3(i, j, k) * b0 + a.d2(i, j) * b.d1(k) + a.d2(i, k) * b.d1(j) + a.d2(j, k) * b.d1(i) +
                     a.d1(i) * b.d2(j, k) + a.d1(j) * b.d2(i, k) + a.d1(k) * b.d2(i, j) + a0 * b.d3(i, j, k));
    return r;
  }
  friend BasicJet operator/(const BasicJet& a, const BasicJet& b) { return a * reciprocal(b); }

  friend BasicJet reciprocal(const BasicJet& a) {
    const S v = a.value();
    if (v == S{}) throw std::domain_error("jet reciprocal of zero");
    const S r = S{1} / v;
    return a.compose(r, -r * r, S{2} * r * r * r, S{-6} * r * r * r * r);
  }
  friend BasicJet exp(const BasicJet& a) {
    using std::exp;
    const S e = exp(a.value());
    return a.compose(e, e, e, e);
  }
  friend BasicJet log(const BasicJet& a) {
    using std::log;
    const S v = a.value();
    if (v == S{}) throw std::domain_error("jet log of zero");
    const S r = S{1} / v;
    return a.compose(log(v), r, -r * r, S{2} * r * r * r);
  }
  friend BasicJet sqrt(const BasicJet& a) {
    using std::sqrt;
    const S s = sqrt(a.value());
    if (s == S{}) throw std::domain_error("jet sqrt at zero");
    const S r = S{1} / a.value();
    return a.compose(s, S{0.5} * s * r, S{-0.25} * s * r * r, S{0.375} * s * r * r * r);
  }
  friend BasicJet sin(const BasicJet& a) {
    using std::cos;
    using std::sin;
    const S s = sin(a.value()), c = cos(a.value());
    return a.compose(s, c, -s, -c);
  }
  friend BasicJet cos(const BasicJet& a) {
    using std::cos;
    using std::sin;
    const S s = sin(a.value()), c = cos(a.value());
    return a.compose(c, -s, -c, s);
  }
  friend BasicJet square(const BasicJet& a) { return a * a; }

 private:
  template <class>
  friend class BasicJet;

  void check_same(const BasicJet& o) const {
    if (layout_ != o.layout_) throw std::invalid_argument("jets over different variable sets");
  }
  void clear_above_order() {
    if (order_ < kMaxJetOrder) *this = truncated(order_);
  }

  const JetLayout* layout_ = nullptr;
  int order_ = 0;
  std::vector<S> c_;
};

using Jet3 = BasicJet<double>;
using CJet = BasicJet<std::complex<double>>;

/// Seed jets for every coordinate of `coords`.
std::vector<Jet3> lift(std::span<const double> coords, int order = kMaxJetOrder);

CJet to_complex(const Jet3& j);
Jet3 real_part(const CJet& j);
Jet3 imag_part(const CJet& j);
CJet conj(const CJet& j);

/// Constant complex jet sharing the variable set of `like`.
CJet constant_like(const CJet& like, std::complex<double> v, int order = kMaxJetOrder);

/// Largest absolute coefficient; used for tolerance scaling.
double max_abs_coeff(const Jet3& j);
double max_abs_coeff(const CJet& j);

}  // namespace psindex
