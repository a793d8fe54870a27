#pragma once

// D'Angelo forms of a defining function at a boundary point.
//
// With eta = (d rho - dbar rho)/2 and a purely imaginary transversal field T,
// eta(T) = 1, the D'Angelo 1-form is alpha = -L_T eta, evaluated through Cartan's
// formula alpha(Y) = -T(eta(Y)) + eta([T, Y]).  omega is its (1,0) part, i.e. the
// form that agrees with alpha on T^{1,0} and vanishes on T^{0,1} and on T.
//
// Every field here is the jet of a smooth field around the base point, so brackets
// and derivatives are exact to the order the rho jet supports.  With an order-3
// rho jet: field coefficients are order 2, omega(X_j) is order 1, and the value of
// dbar omega(L, Lbar) at the point is available.

#include <vector>

#include "psindex/domain.hpp"
#include "psindex/levi.hpp"
#include "psindex/sampling.hpp"
#include "psindex/wirtinger.hpp"

namespace psindex {

/// Sign applied to -Lbar(omega(L)) - omega([L, Lbar]).  +1 reproduces d omega(L, Lbar)
/// and matches the plurisubharmonicity of -(-rho)^gamma near the worm annulus.
inline constexpr double kDbarOmegaSign = 1.0;

/// Vector field sum_i hol_i d/dz_i + antihol_i d/dzbar_i with jet coefficients.
struct VectorFieldJet {
  std::vector<CJet> hol;
  std::vector<CJet> antihol;

  int dim() const { return static_cast<int>(hol.size()); }
  CVec hol_at() const;
  CVec antihol_at() const;
};

/// Values of a list of jets at the base point.
CVec values_of(const std::vector<CJet>& v);

CJet apply_field(const VectorFieldJet& v, const CJet& f);
VectorFieldJet bracket(const VectorFieldJet& v, const VectorFieldJet& w);
VectorFieldJet conj(const VectorFieldJet& v);
VectorFieldJet operator+(const VectorFieldJet& a, const VectorFieldJet& b);
VectorFieldJet operator-(const VectorFieldJet& a, const VectorFieldJet& b);
VectorFieldJet operator*(const CJet& f, const VectorFieldJet& v);

/// The forms of one defining-function jet at one point.
class DAngeloPoint {
 public:
  /// `rho` must be an order-3 jet in 2n variables.  `perturbation`, when given, holds
  /// coefficients h_j of H = sum_j h_j X_j and replaces T by T + H - conj(H).
  DAngeloPoint(const Jet3& rho, int n, const std::vector<CJet>* perturbation = nullptr);

  int dim() const { return n_; }
  int pivot() const { return pivot_; }
  int nvars() const { return 2 * n_; }

  const std::vector<CJet>& grad() const { return grad_; }
  const VectorFieldJet& transversal() const { return t_; }
  const std::vector<VectorFieldJet>& frame() const { return frame_; }
  /// omega(X_j) as order-1 jets.
  const std::vector<CJet>& omega_frame() const { return omega_frame_; }

  /// Frame of T^{1,0} at the base point (values of the frame fields).
  TangentFrame tangent_frame_at() const;

  CJet eta(const VectorFieldJet& v) const;
  /// alpha(Y) = -T(eta(Y)) + eta([T, Y]) as a jet (order drops by one).
  CJet alpha(const VectorFieldJet& y) const;

  /// sum_j f_j X_j.
  VectorFieldJet frame_field(const std::vector<CJet>& coeffs) const;
  std::vector<CJet> constant_coeffs(const CVec& c) const;

  /// omega of a vector tangent to the level set at the base point.
  cdouble omega_at(const CVec& hol, const CVec& antihol) const;
  /// omega(sum c_j X_j) at the base point.
  cdouble omega(const CVec& coeffs) const;
  /// sigma * (-Lbar(omega(L)) - omega([L, Lbar])) for L = sum f_j X_j, complex-valued.
  cdouble dbar_omega_complex(const std::vector<CJet>& coeffs) const;

 private:
  int n_;
  int pivot_ = 0;
  std::vector<CJet> grad_;
  std::vector<CJet> grad_bar_;
  VectorFieldJet n_field_;  // (1,0) part of T
  VectorFieldJet t_;
  std::vector<VectorFieldJet> frame_;
  std::vector<CJet> omega_frame_;
};

/// Values of eta, T, omega, dbar omega and |omega|^2 at one point on given null directions.
struct FormValue {
  CVec eta_coeffs;       // eta = sum eta_hol_i dz_i + eta_antihol_i dzbar_i, stacked (hol, antihol)
  CVec t_coeffs;         // T, stacked (hol, antihol)
  CVec omega_on_frame;   // omega(X_j)
  std::vector<double> dbar_omega;
  std::vector<double> wedge;
  std::vector<cdouble> omega_null;
};

/// eta(v) = (sum rho_{z_i} v_hol_i - sum rho_{zbar_i} v_antihol_i) / 2.
cdouble eta_value(const WirtingerData& w, const CVec& v_hol, const CVec& v_antihol);

/// T = N - conj(N) with N = sum rho_{zbar_j} / |d rho|^2 d/dz_j; returns (hol, antihol).
std::pair<CVec, CVec> transversal(const WirtingerData& w);

/// alpha(Y) at the base point for a jet field Y.
cdouble alpha(const Domain& d, const BoundaryPoint& p, const VectorFieldJet& y);

/// omega(L) for L in the Levi null space at p (ambient coordinates).  Throws InputError
/// when L is not a null direction.
cdouble omega_on_null(const Domain& d, const BoundaryPoint& p, const CVec& l, double null_tol = kDefaultNullTol);

/// dbar omega(L, Lbar) for a null direction L; the imaginary residue is checked against
/// 1e-8 * scale and dropped.
double dbar_omega(const Domain& d, const BoundaryPoint& p, const CVec& l, double null_tol = kDefaultNullTol);

/// Same on an already-built point context (no null check).
double dbar_omega_checked(const DAngeloPoint& ctx, const std::vector<CJet>& coeffs, double* imag_residue = nullptr);

/// (omega wedge omegabar)(L, Lbar) = |omega(L)|^2.
double omega_wedge(const CVec& l, cdouble omega_val);

FormValue evaluate_forms(const DAngeloPoint& ctx, const std::vector<CVec>& null_coeffs);

/// Null fields of the Schur-complement frame: with U the eigenvectors of the Levi matrix
/// at the point (null directions first) and Psi(q) built from U^* M(q) U, returns the
/// X-frame coefficient jets of L_1..L_m.
std::vector<std::vector<CJet>> schur_null_fields(const DAngeloPoint& ctx, const Jet3& rho, int null_dim, double null_tol = kDefaultNullTol);

}  // namespace psindex
