#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psindex/expr.hpp"
#include "psindex/jet.hpp"
#include "psindex/phi.hpp"
#include "psindex/wirtinger.hpp"

namespace psindex {

enum class DomainKind { Worm, Ball, Ellipsoid, Custom, Conformal };

/// A smooth defining function rho on C^n, evaluated in the real coordinates
/// (Re z1, Im z1, ..., Re zn, Im zn).  Implementations are immutable.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual int dim() const = 0;
  virtual DomainKind kind() const = 0;
  virtual std::string describe() const = 0;

  /// Jet of rho at x up to `order`.
  virtual Jet3 jet(std::span<const double> x, int order = kMaxJetOrder) const = 0;

  /// rho(x).  Throws DomainError where rho is not smooth.
  virtual double value(std::span<const double> x) const { return jet(x, 0).value(); }

  /// A point with rho < 0, used as the default sampling anchor.
  virtual std::vector<double> default_anchor() const = 0;

  /// Radius of a ball around the anchor that contains the domain (sampling hint).
  virtual double search_radius() const { return 10.0; }
};

using DomainPtr = std::shared_ptr<const Domain>;

/// rho_t(z, w) = |z - exp(i log|w|^2)|^2 - (1 - phi_beta(log|w|^2) - |t|^2).
class WormDomain final : public Domain {
 public:
  WormDomain(double beta, std::complex<double> t, PhiProfile profile = {});

  int dim() const override { return 2; }
  DomainKind kind() const override { return DomainKind::Worm; }
  std::string describe() const override;
  Jet3 jet(std::span<const double> x, int order = kMaxJetOrder) const override;
  double value(std::span<const double> x) const override;
  std::vector<double> default_anchor() const override { return {1.0, 0.0, 1.0, 0.0}; }

  double beta() const { return phi_.beta(); }
  std::complex<double> t() const { return t_; }
  const PhiSpec& phi() const { return phi_; }

  /// Closed-form Levi value rho_{j kbar} L^j conj(L^k) at a boundary point for the
  /// vector L = -rho_w d/dz + rho_z d/dw.
  double levi_closed_form(std::complex<double> z, std::complex<double> w) const;

 private:
  PhiSpec phi_;
  std::complex<double> t_;
};

/// rho = sum_i a_i |z_i|^2 - 1; the unit ball when all a_i = 1.
class EllipsoidDomain final : public Domain {
 public:
  explicit EllipsoidDomain(std::vector<double> coeffs);

  int dim() const override { return static_cast<int>(a_.size()); }
  DomainKind kind() const override;
  std::string describe() const override;
  Jet3 jet(std::span<const double> x, int order = kMaxJetOrder) const override;
  double value(std::span<const double> x) const override;
  std::vector<double> default_anchor() const override { return std::vector<double>(2 * a_.size(), 0.0); }
  double search_radius() const override;

 private:
  std::vector<double> a_;
};

/// Parsed user expression.
class ExprDomain final : public Domain {
 public:
  /// `n` = 0 infers the dimension from the highest variable index.
  ExprDomain(std::string text, int n = 0, std::optional<std::vector<double>> anchor = std::nullopt);

  int dim() const override { return n_; }
  DomainKind kind() const override { return DomainKind::Custom; }
  std::string describe() const override { return text_; }
  Jet3 jet(std::span<const double> x, int order = kMaxJetOrder) const override;
  std::vector<double> default_anchor() const override { return anchor_; }

  const ExprNode& tree() const { return *parsed_.root; }

 private:
  std::string text_;
  ParsedExpr parsed_;
  int n_;
  std::vector<double> anchor_;
};

DomainPtr make_worm(double beta, std::complex<double> t, PhiProfile profile = {});
DomainPtr make_ball(int n);
DomainPtr make_ellipsoid(std::vector<double> coeffs);
DomainPtr parse_expression(const std::string& text, int n = 0);

/// Rejects coordinates of the wrong length.
void check_coords(const Domain& d, std::span<const double> x);

}  // namespace psindex
