#include "psindex/dangelo.hpp"

#include <cmath>

#include "psindex/errors.hpp"

namespace psindex {

CVec values_of(const std::vector<CJet>& v) {
  CVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].value();
  return out;
}

namespace {

CJet zero_like(const CJet& like, int order) { return CJet(like.nvars(), 0.0, order); }

// Gauss-Jordan inverse of a small matrix of jets, pivoting on values.
std::vector<std::vector<CJet>> jet_inverse(std::vector<std::vector<CJet>> a) {
  const std::size_t n = a.size();
  const CJet& like = a[0][0];
  std::vector<std::vector<CJet>> inv(n, std::vector<CJet>(n, zero_like(like, like.order())));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = CJet(like.nvars(), 1.0, like.order());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col].value()) > std::abs(a[piv][col].value())) piv = r;
    if (std::abs(a[piv][col].value()) == 0.0) throw NumericalError("singular trailing Levi block");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const CJet r = reciprocal(a[col][col]);
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] = a[col][k] * r;
      inv[col][k] = inv[col][k] * r;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const CJet f = a[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[row][k] -= f * a[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

}  // namespace

CVec VectorFieldJet::hol_at() const { return values_of(hol); }
CVec VectorFieldJet::antihol_at() const { return values_of(antihol); }

CJet apply_field(const VectorFieldJet& v, const CJet& f) {
  CJet s = zero_like(f, std::max(0, f.order() - 1));
  for (int i = 0; i < v.dim(); ++i) {
    s += v.hol[i] * dz(f, i);
    s += v.antihol[i] * dzbar(f, i);
  }
  return s;
}

VectorFieldJet bracket(const VectorFieldJet& v, const VectorFieldJet& w) {
  VectorFieldJet r;
  for (int i = 0; i < v.dim(); ++i) {
    r.hol.push_back(apply_field(v, w.hol[i]) - apply_field(w, v.hol[i]));
    r.antihol.push_back(apply_field(v, w.antihol[i]) - apply_field(w, v.antihol[i]));
  }
  return r;
}

VectorFieldJet conj(const VectorFieldJet& v) {
  VectorFieldJet r;
  for (int i = 0; i < v.dim(); ++i) {
    r.hol.push_back(conj(v.antihol[i]));
    r.antihol.push_back(conj(v.hol[i]));
  }
  return r;
}

VectorFieldJet operator+(const VectorFieldJet& a, const VectorFieldJet& b) {
  VectorFieldJet r = a;
  for (int i = 0; i < a.dim(); ++i) {
    r.hol[i] += b.hol[i];
    r.antihol[i] += b.antihol[i];
  }
  return r;
}

VectorFieldJet operator-(const VectorFieldJet& a, const VectorFieldJet& b) {
  VectorFieldJet r = a;
  for (int i = 0; i < a.dim(); ++i) {
    r.hol[i] -= b.hol[i];
    r.antihol[i] -= b.antihol[i];
  }
  return r;
}

VectorFieldJet operator*(const CJet& f, const VectorFieldJet& v) {
  VectorFieldJet r;
  for (int i = 0; i < v.dim(); ++i) {
    r.hol.push_back(f * v.hol[i]);
    r.antihol.push_back(f * v.antihol[i]);
  }
  return r;
}

// ------------------------------------------------------------------ point context

DAngeloPoint::DAngeloPoint(const Jet3& rho, int n, const std::vector<CJet>* perturbation) : n_(n) {
  if (rho.nvars() != 2 * n) throw InputError("D'Angelo context: jet dimension mismatch");
  if (rho.order() < 3) throw InputError("D'Angelo context needs an order-3 jet");
  for (int i = 0; i < n; ++i) {
    grad_.push_back(dz(rho, i));
    grad_bar_.push_back(conj(grad_.back()));
  }
  CJet norm2 = zero_like(grad_[0], grad_[0].order());
  for (int i = 0; i < n; ++i) norm2 += grad_[i] * grad_bar_[i];
  if (!(std::abs(norm2.value()) > 1e-28)) throw NumericalError("D'Angelo context: gradient vanishes");
  const CJet inv = reciprocal(norm2);

  double best = -1.0;
  for (int i = 0; i < n; ++i)
    if (std::abs(grad_[i].value()) > best) {
      best = std::abs(grad_[i].value());
      pivot_ = i;
    }

  const CJet zero = zero_like(grad_[0], grad_[0].order());
  for (int j = 0; j < n; ++j) {
    if (j == pivot_) continue;
    VectorFieldJet x;
    x.hol.assign(static_cast<std::size_t>(n), zero);
    x.antihol.assign(static_cast<std::size_t>(n), zero);
    x.hol[j] = grad_[pivot_];
    x.hol[pivot_] = -grad_[j];
    frame_.push_back(std::move(x));
  }

  n_field_.hol.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) n_field_.hol.push_back(grad_bar_[j] * inv);
  n_field_.antihol.assign(static_cast<std::size_t>(n), zero);
  if (perturbation) {
    if (perturbation->size() != frame_.size()) throw InputError("transversal perturbation needs one coefficient per frame field");
    n_field_ = n_field_ + frame_field(*perturbation);
  }
  t_ = n_field_ - conj(n_field_);

  for (const auto& x : frame_) omega_frame_.push_back(alpha(x));
}

TangentFrame DAngeloPoint::tangent_frame_at() const {
  TangentFrame f;
  f.pivot = pivot_;
  for (const auto& x : frame_) f.basis.push_back(x.hol_at());
  return f;
}

CJet DAngeloPoint::eta(const VectorFieldJet& v) const {
  const int ord = std::min(v.hol[0].order(), grad_[0].order());
  CJet s = zero_like(grad_[0], ord);
  for (int i = 0; i < n_; ++i) {
    s += grad_[i] * v.hol[i];
    s -= grad_bar_[i] * v.antihol[i];
  }
  return 0.5 * s;
}

CJet DAngeloPoint::alpha(const VectorFieldJet& y) const { return eta(bracket(t_, y)) - apply_field(t_, eta(y)); }

VectorFieldJet DAngeloPoint::frame_field(const std::vector<CJet>& coeffs) const {
  if (coeffs.size() != frame_.size()) throw InputError("frame coefficient count mismatch");
  VectorFieldJet r = coeffs[0] * frame_[0];
  for (std::size_t j = 1; j < frame_.size(); ++j) r = r + coeffs[j] * frame_[j];
  return r;
}

std::vector<CJet> DAngeloPoint::constant_coeffs(const CVec& c) const {
  std::vector<CJet> out;
  for (Eigen::Index j = 0; j < c.size(); ++j) out.push_back(CJet(nvars(), cdouble(c(j)), kMaxJetOrder));
  return out;
}

cdouble DAngeloPoint::omega_at(const CVec& hol, const CVec& antihol) const {
  // Split off the T component, then read the (1,0) part in the frame.
  CVec nh = n_field_.hol_at();
  CVec g = values_of(grad_);
  const cdouble c = 0.5 * ((g.transpose() * hol)(0) - (g.conjugate().transpose() * antihol)(0));
  const CVec a = hol - c * nh;
  cdouble s = 0.0;
  int col = 0;
  for (int j = 0; j < n_; ++j) {
    if (j == pivot_) continue;
    s += a(j) / g(pivot_) * omega_frame_[static_cast<std::size_t>(col)].value();
    ++col;
  }
  return s;
}

cdouble DAngeloPoint::omega(const CVec& coeffs) const {
  cdouble s = 0.0;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) s += coeffs(j) * omega_frame_[static_cast<std::size_t>(j)].value();
  return s;
}

cdouble DAngeloPoint::dbar_omega_complex(const std::vector<CJet>& coeffs) const {
  const VectorFieldJet l = frame_field(coeffs);
  const VectorFieldJet lbar = conj(l);
  CJet omega_l = zero_like(grad_[0], 1);
  for (std::size_t j = 0; j < coeffs.size(); ++j) omega_l += coeffs[j] * omega_frame_[j];
  const VectorFieldJet br = bracket(l, lbar);
  const cdouble term1 = apply_field(lbar, omega_l).value();
  const cdouble term2 = omega_at(br.hol_at(), br.antihol_at());
  return kDbarOmegaSign * (-term1 - term2);
}

// ------------------------------------------------------------------ free functions

cdouble eta_value(const WirtingerData& w, const CVec& v_hol, const CVec& v_antihol) {
  return 0.5 * ((w.grad.transpose() * v_hol)(0) - (w.grad.conjugate().transpose() * v_antihol)(0));
}

std::pair<CVec, CVec> transversal(const WirtingerData& w) {
  const double n2 = w.grad.squaredNorm();
  if (!(n2 > 0.0)) throw NumericalError("transversal: gradient vanishes");
  CVec nvec = w.grad.conjugate() / n2;
  return {nvec, -nvec.conjugate()};
}

cdouble alpha(const Domain& d, const BoundaryPoint& p, const VectorFieldJet& y) {
  const DAngeloPoint ctx(p.jet, d.dim());
  return ctx.alpha(y).value();
}

namespace {

// Frame coefficients of a null direction after checking it against the Levi null space.
CVec null_coeffs(const DAngeloPoint& ctx, const BoundaryPoint& p, const CVec& l, double null_tol) {
  const TangentFrame f = ctx.tangent_frame_at();
  const double ln = l.norm();
  if (!(ln > 0.0)) throw InputError("null direction must be nonzero");
  if (std::abs((p.wirt.grad.transpose() * l)(0)) > 1e-8 * ln * std::max(1.0, p.wirt.grad.norm()))
    throw InputError("direction is not tangent to the boundary");
  NullData nd = levi_matrix(p.wirt, f);
  null_basis(nd, null_tol);
  if (nd.null_dim == 0) throw InputError("no Levi null directions at this point (strongly pseudoconvex)");
  // Residual of l after projecting onto the span of the ambient null vectors.
  const auto amb = nd.ambient_null_vectors();
  CMat q(l.size(), static_cast<Eigen::Index>(amb.size()));
  for (std::size_t k = 0; k < amb.size(); ++k) q.col(static_cast<Eigen::Index>(k)) = amb[k];
  Eigen::HouseholderQR<CMat> qr(q);
  const CMat basis = qr.householderQ() * CMat::Identity(l.size(), q.cols());
  const CVec resid = l - basis * (basis.adjoint() * l);
  if (resid.norm() > 1e-6 * ln) throw InputError("direction is not in the Levi null space");
  return f.coefficients(l, p.wirt.grad);
}

}  // namespace

cdouble omega_on_null(const Domain& d, const BoundaryPoint& p, const CVec& l, double null_tol) {
  const DAngeloPoint ctx(p.jet, d.dim());
  return ctx.omega(null_coeffs(ctx, p, l, null_tol));
}

double dbar_omega_checked(const DAngeloPoint& ctx, const std::vector<CJet>& coeffs, double* imag_residue) {
  const cdouble v = ctx.dbar_omega_complex(coeffs);
  if (imag_residue) *imag_residue = std::abs(v.imag());
  double cnorm = 0.0;
  for (const auto& c : coeffs) cnorm += std::norm(c.value());
  double om = 0.0;
  for (const auto& w : ctx.omega_frame()) om = std::max(om, std::norm(w.value()));
  const double scale = std::max({1.0, std::abs(v.real()), om * cnorm});
  if (std::abs(v.imag()) > 1e-8 * scale)
    throw NumericalError("dbar omega(L, Lbar) has imaginary residue " + std::to_string(v.imag()) + " (scale " +
                         std::to_string(scale) + ")");
  return v.real();
}

double dbar_omega(const Domain& d, const BoundaryPoint& p, const CVec& l, double null_tol) {
  const DAngeloPoint ctx(p.jet, d.dim());
  return dbar_omega_checked(ctx, ctx.constant_coeffs(null_coeffs(ctx, p, l, null_tol)));
}

double omega_wedge(const CVec&, cdouble omega_val) { return std::norm(omega_val); }

FormValue evaluate_forms(const DAngeloPoint& ctx, const std::vector<CVec>& null_coeffs_list) {
  FormValue fv;
  const int n = ctx.dim();
  CVec g = values_of(ctx.grad());
  fv.eta_coeffs.resize(2 * n);
  fv.eta_coeffs << 0.5 * g, -0.5 * g.conjugate();
  fv.t_coeffs.resize(2 * n);
  fv.t_coeffs << ctx.transversal().hol_at(), ctx.transversal().antihol_at();
  fv.omega_on_frame.resize(static_cast<Eigen::Index>(ctx.omega_frame().size()));
  for (std::size_t j = 0; j < ctx.omega_frame().size(); ++j) fv.omega_on_frame(static_cast<Eigen::Index>(j)) = ctx.omega_frame()[j].value();
  for (const auto& c : null_coeffs_list) {
    const cdouble om = ctx.omega(c);
    fv.omega_null.push_back(om);
    fv.wedge.push_back(std::norm(om));
    fv.dbar_omega.push_back(dbar_omega_checked(ctx, ctx.constant_coeffs(c)));
  }
  return fv;
}

std::vector<std::vector<CJet>> schur_null_fields(const DAngeloPoint& ctx, const Jet3& rho, int null_dim, double null_tol) {
  const int n = ctx.dim();
  const auto k = static_cast<Eigen::Index>(ctx.frame().size());
  // Levi matrix of the jet frame, as order-1 jets.
  std::vector<std::vector<CJet>> hmix(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) hmix[a].push_back(dzbar(ctx.grad()[a], b));
  std::vector<std::vector<CJet>> m(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      CJet s = zero_like(ctx.grad()[0], 1);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += hmix[a][b] * ctx.frame()[i].hol[a] * conj(ctx.frame()[j].hol[b]);
      m[i].push_back(s);
    }

  CMat m0(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m0(i, j) = m[i][j].value();
  NullData nd = null_data_from_matrix(0.5 * (m0 + m0.adjoint()));
  null_basis(nd, null_tol);
  if (nd.null_dim < null_dim) throw InputError("schur_null_fields: fewer null directions than requested");
  (void)rho;
  const CMat& u = nd.eigenvectors;  // ascending: null directions first

  // M'(q) = U^* M(q) U
  std::vector<std::vector<CJet>> mp(static_cast<std::size_t>(k), std::vector<CJet>(static_cast<std::size_t>(k), zero_like(m[0][0], 1)));
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) mp[i][j] += (std::conj(u(a, i)) * u(b, j)) * m[a][b];

  const Eigen::Index mm = null_dim, rest = k - null_dim;
  std::vector<std::vector<CJet>> cinv;
  if (rest > 0) {
    std::vector<std::vector<CJet>> c(static_cast<std::size_t>(rest));
    for (Eigen::Index i = 0; i < rest; ++i)
      for (Eigen::Index j = 0; j < rest; ++j) c[i].push_back(mp[mm + i][mm + j]);
    cinv = jet_inverse(c);
  }
  // Column j < m of Psi: e_j on top, -C^{-1} B^* e_j below; B^*_{ij} = conj(B_{ji}) = conj(M'_{j, m+i}).
  std::vector<std::vector<CJet>> fields;
  for (Eigen::Index j = 0; j < mm; ++j) {
    std::vector<CJet> psi_col;
    for (Eigen::Index i = 0; i < mm; ++i) psi_col.emplace_back(2 * n, i == j ? 1.0 : 0.0, 1);
    for (Eigen::Index i = 0; i < rest; ++i) {
      CJet s = zero_like(m[0][0], 1);
      for (Eigen::Index l = 0; l < rest; ++l) s -= cinv[i][l] * conj(mp[j][mm + l]);
      psi_col.push_back(s);
    }
    // Frame coefficients of L_j: conj((U Psi)_{:, j}).
    std::vector<CJet> coeffs;
    for (Eigen::Index a = 0; a < k; ++a) {
      CJet s = zero_like(m[0][0], 1);
      for (Eigen::Index b = 0; b < k; ++b) s += u(a, b) * psi_col[static_cast<std::size_t>(b)];
      coeffs.push_back(conj(s));
    }
    fields.push_back(std::move(coeffs));
  }
  return fields;
}

}  // namespace psindex
