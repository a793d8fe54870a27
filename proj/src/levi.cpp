#include "psindex/levi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psindex/errors.hpp"

namespace psindex {

HermitianEigen hermitian_eigen(const CMat& input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw InputError("hermitian_eigen: matrix must be square");
  CMat a = 0.5 * (input + input.adjoint());
  CMat v = CMat::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-16 * scale) break;

    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        // Rotate with J = diag(1, e^{-i phi}) * R(theta) so that (J^* A J)_{pq} = 0.
        const cdouble phase = a(p, q) / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        const cdouble jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        // A <- A J (columns p, q)
        for (Eigen::Index k = 0; k < n; ++k) {
          const cdouble akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        // A <- J^* A (rows p, q)
        for (Eigen::Index k = 0; k < n; ++k) {
          const cdouble apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const cdouble vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

CVec TangentFrame::coefficients(const CVec& v, const CVec& grad) const {
  const Eigen::Index n = grad.size();
  CVec c(n - 1);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == pivot) continue;
    c(col++) = v(j) / grad(pivot);
  }
  return c;
}

TangentFrame tangent_frame(const WirtingerData& w) {
  const int n = w.n;
  TangentFrame f;
  Eigen::Index k = 0;
  const double gmax = w.grad.cwiseAbs().maxCoeff(&k);
  if (!(gmax > 1e-14)) throw NumericalError("tangent_frame: gradient vanishes");
  f.pivot = static_cast<int>(k);
  for (int j = 0; j < n; ++j) {
    if (j == f.pivot) continue;
    CVec x = CVec::Zero(n);
    x(j) = w.grad(k);
    x(k) = -w.grad(j);
    f.basis.push_back(std::move(x));
  }
  return f;
}

cdouble levi_form(const WirtingerData& w, const CVec& x, const CVec& y) {
  return x.transpose() * w.hess_mixed * y.conjugate();
}

double NullData::spectral_radius() const { return eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0; }

std::vector<CVec> NullData::ambient_null_vectors() const {
  if (!frame) throw std::logic_error("ambient_null_vectors: no frame attached");
  std::vector<CVec> out;
  for (const auto& u : null_basis) {
    CVec l = CVec::Zero(frame->basis.front().size());
    for (std::size_t i = 0; i < frame->basis.size(); ++i) l += std::conj(u(static_cast<Eigen::Index>(i))) * frame->basis[i];
    out.push_back(l / l.norm());
  }
  return out;
}

NullData null_data_from_matrix(const CMat& m) {
  NullData nd;
  nd.m = m;
  if (m.rows() > 0) {
    auto eig = hermitian_eigen(m);
    nd.eigenvalues = std::move(eig.values);
    nd.eigenvectors = std::move(eig.vectors);
  }
  return nd;
}

NullData levi_matrix(const WirtingerData& w, const TangentFrame& f) {
  const auto k = static_cast<Eigen::Index>(f.basis.size());
  CMat m(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = levi_form(w, f.basis[i], f.basis[j]);
  m = (0.5 * (m + m.adjoint())).eval();
  NullData nd = null_data_from_matrix(m);
  nd.frame = f;
  null_basis(nd);
  return nd;
}

std::vector<CVec> null_basis(NullData& nd, double tol) {
  const double cut = tol * std::max(1.0, nd.spectral_radius());
  nd.null_basis.clear();
  for (Eigen::Index k = 0; k < nd.eigenvalues.size(); ++k)
    if (std::abs(nd.eigenvalues(k)) < cut) nd.null_basis.push_back(nd.eigenvectors.col(k));
  nd.null_dim = static_cast<int>(nd.null_basis.size());
  return nd.null_basis;
}

SchurBlocks schur_frame(const CMat& m, int null_dim, const std::vector<CVec>* frame) {
  const Eigen::Index size = m.rows();
  const Eigen::Index k = null_dim;
  if (k < 0 || k > size) throw InputError("schur_frame: block size out of range");
  SchurBlocks s;
  s.a = m.topLeftCorner(k, k);
  s.b = m.topRightCorner(k, size - k);
  s.c = m.bottomRightCorner(size - k, size - k);
  if (size - k > 0) {
    const auto eig = hermitian_eigen(s.c);
    const double big = eig.values.cwiseAbs().maxCoeff(), small = eig.values.cwiseAbs().minCoeff();
    if (!(small > 0.0) || big / small >= 1e8)
      throw NumericalError("schur_frame: trailing block is singular or ill-conditioned (condition " +
                           std::to_string(small > 0 ? big / small : INFINITY) + ")");
    s.c_inv = s.c.inverse();
  } else {
    s.c_inv.resize(0, 0);
  }
  s.schur = s.a - s.b * s.c_inv * s.b.adjoint();
  s.psi = CMat::Zero(size, size);
  s.psi.topLeftCorner(k, k).setIdentity();
  s.psi.bottomLeftCorner(size - k, k) = -s.c_inv * s.b.adjoint();
  s.psi.bottomRightCorner(size - k, size - k) = s.c_inv;
  s.transformed = s.psi.adjoint() * m * s.psi;

  CMat expected = CMat::Zero(size, size);
  expected.topLeftCorner(k, k) = s.schur;
  expected.bottomRightCorner(size - k, size - k) = s.c_inv;
  s.residual = (s.transformed - expected).norm();
  if (!(s.residual <= 1e-10 * std::max(m.norm(), 1e-300) + 1e-300))
    throw NumericalError("schur_frame: block diagonalization residual " + std::to_string(s.residual));

  if (frame) {
    for (Eigen::Index j = 0; j < size; ++j) {
      CVec l = CVec::Zero(frame->front().size());
      for (Eigen::Index i = 0; i < size; ++i) l += std::conj(s.psi(i, j)) * (*frame)[static_cast<std::size_t>(i)];
      s.frame.push_back(std::move(l));
    }
  }
  return s;
}

SchurBlocks schur_frame(NullData& nd, int null_dim) {
  nd.schur = schur_frame(nd.m, null_dim, nd.frame ? &nd.frame->basis : nullptr);
  return *nd.schur;
}

}  // namespace psindex
