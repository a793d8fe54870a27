#include "psindex/domain.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "psindex/errors.hpp"

namespace psindex {

void check_coords(const Domain& d, std::span<const double> x) {
  if (static_cast<int>(x.size()) != 2 * d.dim())
    throw InputError("point has " + std::to_string(x.size()) + " real coordinates, domain needs " + std::to_string(2 * d.dim()));
}

// ---------------------------------------------------------------- worm

WormDomain::WormDomain(double beta, std::complex<double> t, PhiProfile profile) : phi_(beta, profile), t_(t) {
  if (!(std::abs(t) < 1.0)) throw InputError("worm: deformation parameter must satisfy |t| < 1");
}

std::string WormDomain::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "worm(beta=" << beta() << ", t=" << t_.real();
  if (t_.imag() != 0.0) os << (t_.imag() > 0 ? "+" : "") << t_.imag() << "i";
  os << ")";
  return os.str();
}

Jet3 WormDomain::jet(std::span<const double> x, int order) const {
  check_coords(*this, x);
  if (x[2] == 0.0 && x[3] == 0.0) throw DomainError("worm defining function is singular at w = 0");
  const auto v = lift(x, order);
  const Jet3 lam = log(v[2] * v[2] + v[3] * v[3]);
  const Jet3 dx = v[0] - cos(lam);
  const Jet3 dy = v[1] - sin(lam);
  return dx * dx + dy * dy + phi_(lam) - (1.0 - std::norm(t_));
}

double WormDomain::value(std::span<const double> x) const {
  check_coords(*this, x);
  const double r2 = x[2] * x[2] + x[3] * x[3];
  if (r2 == 0.0) throw DomainError("worm defining function is singular at w = 0");
  const double lam = std::log(r2);
  const double dx = x[0] - std::cos(lam), dy = x[1] - std::sin(lam);
  return dx * dx + dy * dy + phi_(lam) - (1.0 - std::norm(t_));
}

double WormDomain::levi_closed_form(std::complex<double> z, std::complex<double> w) const {
  const double lam = std::log(std::norm(w));
  const auto d = phi_.derivatives(lam);
  const std::complex<double> u = z - std::polar(1.0, lam);
  const std::complex<double> i(0.0, 1.0);
  return (std::norm(i * std::conj(z) * u + d[1]) + std::norm(u) * (d[0] + std::norm(t_) + d[2])) / std::norm(w);
}

DomainPtr make_worm(double beta, std::complex<double> t, PhiProfile profile) {
  return std::make_shared<WormDomain>(beta, t, profile);
}

// ---------------------------------------------------------------- ellipsoid

EllipsoidDomain::EllipsoidDomain(std::vector<double> coeffs) : a_(std::move(coeffs)) {
  if (a_.empty() || static_cast<int>(a_.size()) * 2 > kMaxJetVars) throw InputError("ellipsoid: dimension must be 1..4");
  for (double c : a_)
    if (!(c > 0.0) || !std::isfinite(c)) throw InputError("ellipsoid: coefficients must be positive");
}

DomainKind EllipsoidDomain::kind() const {
  for (double c : a_)
    if (c != 1.0) return DomainKind::Ellipsoid;
  return DomainKind::Ball;
}

std::string EllipsoidDomain::describe() const {
  if (kind() == DomainKind::Ball) return "ball(n=" + std::to_string(a_.size()) + ")";
  std::ostringstream os;
  os.precision(17);
  os << "ellipsoid(";
  for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
  os << ")";
  return os.str();
}

Jet3 EllipsoidDomain::jet(std::span<const double> x, int order) const {
  check_coords(*this, x);
  const auto v = lift(x, order);
  Jet3 r(static_cast<int>(x.size()), -1.0, order);
  for (std::size_t i = 0; i < a_.size(); ++i) r += a_[i] * (v[2 * i] * v[2 * i] + v[2 * i + 1] * v[2 * i + 1]);
  return r;
}

double EllipsoidDomain::value(std::span<const double> x) const {
  check_coords(*this, x);
  double s = -1.0;
  for (std::size_t i = 0; i < a_.size(); ++i) s += a_[i] * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
  return s;
}

double EllipsoidDomain::search_radius() const {
  double amin = a_.front();
  for (double c : a_) amin = std::min(amin, c);
  return std::max(10.0, 2.0 / std::sqrt(amin));
}

DomainPtr make_ball(int n) { return std::make_shared<EllipsoidDomain>(std::vector<double>(static_cast<std::size_t>(n), 1.0)); }

DomainPtr make_ellipsoid(std::vector<double> coeffs) { return std::make_shared<EllipsoidDomain>(std::move(coeffs)); }

// ---------------------------------------------------------------- expression

ExprDomain::ExprDomain(std::string text, int n, std::optional<std::vector<double>> anchor)
    : text_(std::move(text)), parsed_(parse_expr(text_, n)), n_(n > 0 ? n : std::max(1, parsed_.max_variable)) {
  if (2 * n_ > kMaxJetVars) throw InputError("expression domains support at most 4 complex variables");
  anchor_ = anchor ? *anchor : std::vector<double>(2 * static_cast<std::size_t>(n_), 0.0);
  if (static_cast<int>(anchor_.size()) != 2 * n_) throw InputError("anchor has the wrong number of coordinates");

  // Randomized check that the expression is real-valued.
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> g(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 64 && checked < 16; ++trial) {
    std::vector<CJet> z;
    const int nv = 2 * n_;
    for (int i = 0; i < n_; ++i) {
      const double re = g(rng), im = g(rng);
      z.push_back(to_complex(Jet3::variable(nv, 2 * i, re, 0)) + std::complex<double>(0, 1) * to_complex(Jet3::variable(nv, 2 * i + 1, im, 0)));
    }
    std::complex<double> v;
    try {
      v = eval_expr(*parsed_.root, z).value();
    } catch (const std::domain_error&) {
      continue;
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
    ++checked;
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
      throw InputError("expression is not real-valued (imaginary part " + std::to_string(v.imag()) + " at a random point)");
  }
}

Jet3 ExprDomain::jet(std::span<const double> x, int order) const {
  check_coords(*this, x);
  const auto v = lift(x, order);
  std::vector<CJet> z;
  z.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) z.push_back(to_complex(v[2 * i]) + std::complex<double>(0, 1) * to_complex(v[2 * i + 1]));
  CJet r;
  try {
    r = eval_expr(*parsed_.root, z);
  } catch (const std::domain_error& e) {
    throw DomainError(std::string("expression is singular here: ") + e.what());
  }
  return real_part(r);
}

DomainPtr parse_expression(const std::string& text, int n) { return std::make_shared<ExprDomain>(text, n); }

}  // namespace psindex
