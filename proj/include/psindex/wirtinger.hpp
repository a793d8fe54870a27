#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "psindex/jet.hpp"

namespace psindex {

using cdouble = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Complex derivatives of a real function on C^n, read off a real jet in the
/// coordinates (Re z1, Im z1, ..., Re zn, Im zn).
struct WirtingerData {
  int n = 0;
  CVec grad;        // rho_{z_i}
  CMat hess_hol;    // rho_{z_i z_j}
  CMat hess_mixed;  // rho_{z_i zbar_j}, Hermitian
  // rho_{z_i z_j zbar_k} and rho_{z_i zbar_j zbar_k}, flattened as (i*n + j)*n + k.
  std::vector<cdouble> third_zzb;
  std::vector<cdouble> third_zbzb;

  cdouble zzzb(int i, int j, int k) const { return third_zzb[(i * n + j) * n + k]; }
  cdouble zzbzb(int i, int j, int k) const { return third_zbzb[(i * n + j) * n + k]; }
  double grad_norm() const { return grad.norm(); }
};

WirtingerData wirtinger(const Jet3& j, int n);

/// d/dz_i and d/dzbar_i of a complex jet (order drops by one).
CJet dz(const CJet& f, int i);
CJet dzbar(const CJet& f, int i);
CJet dz(const Jet3& f, int i);
CJet dzbar(const Jet3& f, int i);

/// Real coordinate vector of a point in C^n.
std::vector<double> to_real(const std::vector<cdouble>& z);
std::vector<cdouble> to_complex_point(std::span<const double> x);

}  // namespace psindex
