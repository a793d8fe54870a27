#pragma once

// Certified index bounds from the Levi null set.
//
// For a defining function rho and a weak boundary point p with null direction L, put
// dbar = dbar omega(L, Lbar) and msq = |omega(L)|^2.  The exponent gamma in (0, 1)
// passes the DF test at p when dbar - gamma/(1 - gamma) msq > 0, and gamma > 1 passes
// the Steinness test when -dbar - gamma/(gamma - 1) msq > 0.  Both conditions are
// monotone in gamma, so the admissible range is a single threshold per sample.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psindex/dangelo.hpp"
#include "psindex/domain.hpp"
#include "psindex/levi.hpp"
#include "psindex/sampling.hpp"

namespace psindex {

inline constexpr double kDegenerateMsq = 1e-10;
inline constexpr double kSpcThreshold = 1e-6;
inline constexpr int kReportSchemaVersion = 1;

struct CriterionSample {
  BoundaryPoint point;
  CVec l;              // ambient null direction, unit length
  double dbar = 0.0;   // dbar omega(L, Lbar)
  double msq = 0.0;    // |omega(L)|^2
  double imag_residue = 0.0;
};

/// Contribution of one sample to the DF bound (see df_bound).
double df_contribution(double dbar, double msq, double eps = kDegenerateMsq);
/// Contribution of one sample to the Steinness bound (see s_bound).
double s_contribution(double dbar, double msq, double eps = kDegenerateMsq);

/// inf over samples of r/(1+r), r = dbar/msq; 1 for an empty list.  A sample with
/// msq <= eps*max(1,|dbar|) counts as 1 when dbar > 0 and 0 otherwise; dbar <= 0 gives 0.
double df_bound(const std::vector<CriterionSample>& samples, double eps = kDegenerateMsq);
/// sup over samples of s/(s-1), s = -dbar/msq; 1 for an empty list, +inf when some
/// sample has s <= 1.  Degenerate msq counts as 1 when dbar < 0 and +inf otherwise.
double s_bound(const std::vector<CriterionSample>& samples, double eps = kDegenerateMsq);

/// A smooth real function psi(z) evaluated on the lifted coordinates.
struct PsiTerm {
  std::string name;
  std::function<Jet3(const std::vector<Jet3>& vars)> eval;
};

/// rho = exp(sum_i c_i psi_i) * delta for a base defining function delta.
class RhoFamily {
 public:
  RhoFamily(DomainPtr base, std::vector<PsiTerm> basis, std::vector<double> params = {});

  /// Worm basis: chi(lam) lam^2k for k = 1..4 (lam = log|w|^2, chi = 1 on the annulus)
  /// plus Re z, Im z, |z|^2.
  static RhoFamily worm_default(DomainPtr worm);
  /// Re z_i, Im z_i, |z_i|^2 for each coordinate, truncated to 8 terms.
  static RhoFamily generic_default(DomainPtr base);
  /// No psi terms: rho = delta.
  static RhoFamily base_only(DomainPtr base);

  const Domain& base() const { return *base_; }
  const DomainPtr& base_ptr() const { return base_; }
  const std::vector<PsiTerm>& basis() const { return basis_; }
  const std::vector<double>& params() const { return params_; }
  std::size_t size() const { return basis_.size(); }
  RhoFamily with_params(std::vector<double> params) const;

  /// delta and psi_i jets at one point; realize() combines them for any parameters.
  struct PointJets {
    Jet3 delta;
    std::vector<Jet3> psi;
  };
  PointJets point_jets(std::span<const double> x, int order = kMaxJetOrder) const;
  static Jet3 combine(const PointJets& pj, std::span<const double> params);

  Jet3 realize(std::span<const double> x, int order = kMaxJetOrder) const;

 private:
  DomainPtr base_;
  std::vector<PsiTerm> basis_;
  std::vector<double> params_;
};

/// The realized rho of a family as a domain of its own (same zero set as the base).
class ConformalDomain final : public Domain {
 public:
  explicit ConformalDomain(RhoFamily family) : family_(std::move(family)) {}
  int dim() const override { return family_.base().dim(); }
  DomainKind kind() const override { return DomainKind::Conformal; }
  std::string describe() const override;
  Jet3 jet(std::span<const double> x, int order = kMaxJetOrder) const override { return family_.realize(x, order); }
  std::vector<double> default_anchor() const override { return family_.base().default_anchor(); }
  double search_radius() const override { return family_.base().search_radius(); }

 private:
  RhoFamily family_;
};

/// Levi eigendata of one boundary point.
struct LeviScan {
  double min_eigenvalue = 0.0;
  double spectral_radius = 0.0;
  int null_dim = 0;
  std::vector<CVec> null_vectors;  // ambient, unit length
};

LeviScan scan_point(const BoundaryPoint& p, double null_tol = kDefaultNullTol);
std::vector<LeviScan> scan_points(const std::vector<BoundaryPoint>& pts, double null_tol, int threads);

struct WeakPoint {
  BoundaryPoint point;
  LeviScan scan;
};

/// Evaluates criterion samples for many parameter vectors on a fixed weak set.
class CriterionEvaluator {
 public:
  CriterionEvaluator(const RhoFamily& family, const std::vector<WeakPoint>& weak, int threads = 1);
  std::vector<CriterionSample> evaluate(std::span<const double> params) const;
  std::size_t sample_count() const { return slots_.size(); }

 private:
  struct Slot {
    std::size_t point;
    CVec l;
  };
  const RhoFamily& family_;
  const std::vector<WeakPoint>& weak_;
  std::vector<RhoFamily::PointJets> jets_;
  std::vector<Slot> slots_;
  int threads_;
};

/// One sample per (weak point, null vector), evaluated for the family's current params.
std::vector<CriterionSample> criterion_samples(const RhoFamily& family, const std::vector<WeakPoint>& weak, int threads = 1);

struct OptimizeOptions {
  int budget = 1500;     // objective evaluations per target (DF and Steinness)
  int restarts = 4;
  double initial_step = 0.5;
  std::uint64_t seed = 0;
  double eps = kDegenerateMsq;
};

struct OptimizeResult {
  double df_lower = 1.0;
  double s_upper = 1.0;
  double base_df = 1.0;
  double base_s = 1.0;
  std::vector<double> best_params_df;
  std::vector<double> best_params_s;
  std::vector<double> df_history;  // best-so-far DF bound after each evaluation
  int evaluations = 0;
  int failed_probes = 0;
};

/// Best DF and Steinness bounds over the family's parameters (Nelder-Mead with
/// deterministic restarts).  Never worse than the family's starting parameters.
OptimizeResult optimize_bounds(const CriterionEvaluator& eval, std::size_t nparams, std::span<const double> start,
                               const OptimizeOptions& opt);

/// Minimizes f from x0; returns the best point found within `budget` calls.
struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
};
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             double step, int budget, double ftol = 1e-12);

struct AnalysisOptions {
  int samples = 2000;
  int annulus = 64;           // worm with t = 0 only
  std::uint64_t seed = 0;
  double null_tol = kDefaultNullTol;
  double spc_tol = kSpcThreshold;
  double eps = kDegenerateMsq;
  double residual_tol = 1e-12;
  int threads = 1;
  bool optimize = true;
  OptimizeOptions opt;
};

struct GroundTruth {
  double df = 0.0;
  double s = 0.0;
  double relation = 0.0;  // 1/df + 1/s
};

/// Closed-form indices of the unperturbed worm: DF = pi/(2 beta), S from 1/DF + 1/S = 2.
GroundTruth worm_ground_truth(double beta);

struct IndexReport {
  double df_lower = 1.0;
  double s_upper = 1.0;
  int null_count = 0;          // criterion samples (weak point, null direction)
  int weak_points = 0;
  bool spc = false;
  std::complex<double> t = 0.0;
  std::optional<double> beta;
  std::uint64_t seed = 0;
  std::string domain;
  int sample_count = 0;
  double min_levi_eigenvalue = 0.0;
  double base_df = 1.0;
  double base_s = 1.0;
  std::vector<std::string> param_names;
  std::vector<double> best_params;    // DF optimum
  std::vector<double> best_params_s;  // Steinness optimum
  int evaluations = 0;
  int failed_probes = 0;
  double max_imag_residue = 0.0;
  std::optional<GroundTruth> ground_truth;
  AnalysisOptions options;
};

struct Analysis {
  IndexReport report;
  std::vector<BoundaryPoint> samples;
  std::vector<LeviScan> scans;
  std::vector<WeakPoint> weak;
  std::vector<CriterionSample> criterion;  // at the DF optimum
};

/// Samples the boundary, finds weak points, and bounds both indices over `family`.
Analysis analyze(const RhoFamily& family, const AnalysisOptions& opt);
/// Same with the default family for the domain.
Analysis analyze(DomainPtr d, const AnalysisOptions& opt);

/// One report per t for the worm of exponent beta.  Requires 0 in t_grid.
std::vector<IndexReport> deformation_sweep(double beta, const std::vector<double>& t_grid, const AnalysisOptions& opt);

}  // namespace psindex
