#pragma once

#include <optional>
#include <vector>

#include "psindex/wirtinger.hpp"

namespace psindex {

inline constexpr double kDefaultNullTol = 1e-7;

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  CMat vectors;            // columns, orthonormal
};

/// Cyclic Jacobi for small Hermitian matrices; deterministic sweep order.
HermitianEigen hermitian_eigen(const CMat& m);

/// Frame X_j = rho_{z_k} e_j - rho_{z_j} e_k (j != k) of T^{1,0} of the level set,
/// with pivot k = argmax |rho_{z_k}|.
struct TangentFrame {
  std::vector<CVec> basis;
  int pivot = 0;

  /// Coefficients c with v = sum_j c_j X_j, for v annihilated by d rho.
  CVec coefficients(const CVec& v, const CVec& grad) const;
};

TangentFrame tangent_frame(const WirtingerData& w);

/// sum_{ij} rho_{z_i zbar_j} X_i conj(Y_j)
cdouble levi_form(const WirtingerData& w, const CVec& x, const CVec& y);

struct SchurBlocks {
  CMat psi;          // [[I, 0], [-C^{-1} B^*, C^{-1}]]
  CMat a, b, c;
  CMat schur;        // A - B C^{-1} B^*
  CMat c_inv;
  CMat transformed;  // Psi^* M Psi
  double residual = 0.0;  // ||Psi^* M Psi - blockdiag(schur, C^{-1})||_F
  std::vector<CVec> frame;  // [L_1 .. L_{n-1}] = [X_1 .. X_{n-1}] conj(Psi), when a frame was given
};

/// Levi matrix M_{ij} = levi_form(X_i, X_j) in some frame plus its eigendata.
///
/// For Levi(sum c_i X_i) = c^T M conj(c), the eigenvector u of M with M u = 0 gives
/// the null direction sum_i conj(u_i) X_i; `ambient_null_vectors` performs that map.
struct NullData {
  CMat m;
  Eigen::VectorXd eigenvalues;
  CMat eigenvectors;
  std::vector<CVec> null_basis;  // in frame-coefficient (u) space
  int null_dim = 0;
  std::optional<TangentFrame> frame;
  std::optional<SchurBlocks> schur;

  double spectral_radius() const;
  double min_eigenvalue() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
  std::vector<CVec> ambient_null_vectors() const;
};

NullData levi_matrix(const WirtingerData& w, const TangentFrame& f);
/// Eigendata for an arbitrary Hermitian matrix (no frame attached).
NullData null_data_from_matrix(const CMat& m);

/// Eigenvectors with eigenvalue < tol * max(1, spectral radius); also updates nd.null_basis.
std::vector<CVec> null_basis(NullData& nd, double tol = kDefaultNullTol);

/// Block-diagonalizing transform for the split of M into a leading m x m block and an
/// invertible trailing block C.  Throws NumericalError when C is singular or has
/// condition number >= 1e8.
SchurBlocks schur_frame(const CMat& m, int null_dim, const std::vector<CVec>* frame = nullptr);
SchurBlocks schur_frame(NullData& nd, int null_dim);

}  // namespace psindex
