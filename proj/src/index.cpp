#include "psindex/index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "psindex/errors.hpp"
#include "psindex/parallel.hpp"

namespace psindex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool degenerate(double dbar, double msq, double eps) { return msq <= eps * std::max(1.0, std::abs(dbar)); }

// Monotone surrogates of the two bounds: dbar/msq and -dbar/msq with msq floored.
double ratio(double num, double dbar, double msq, double eps) {
  return num / std::max(msq, eps * std::max(1.0, std::abs(dbar)));
}

}  // namespace

double df_contribution(double dbar, double msq, double eps) {
  if (degenerate(dbar, msq, eps)) return dbar > 0.0 ? 1.0 : 0.0;
  if (dbar <= 0.0) return 0.0;
  const double r = dbar / msq;
  return r / (1.0 + r);
}

double s_contribution(double dbar, double msq, double eps) {
  if (degenerate(dbar, msq, eps)) return dbar < 0.0 ? 1.0 : kInf;
  const double s = -dbar / msq;
  if (s <= 1.0) return kInf;
  return s / (s - 1.0);
}

double df_bound(const std::vector<CriterionSample>& samples, double eps) {
  double b = 1.0;
  for (const auto& s : samples) b = std::min(b, df_contribution(s.dbar, s.msq, eps));
  return b;
}

double s_bound(const std::vector<CriterionSample>& samples, double eps) {
  double b = 1.0;
  for (const auto& s : samples) b = std::max(b, s_contribution(s.dbar, s.msq, eps));
  return b;
}

// ------------------------------------------------------------------ family

RhoFamily::RhoFamily(DomainPtr base, std::vector<PsiTerm> basis, std::vector<double> params)
    : base_(std::move(base)), basis_(std::move(basis)), params_(std::move(params)) {
  if (!base_) throw InputError("defining-function family needs a base domain");
  if (params_.empty()) params_.assign(basis_.size(), 0.0);
  if (params_.size() != basis_.size()) throw InputError("parameter count does not match the psi basis");
}

RhoFamily RhoFamily::worm_default(DomainPtr worm) {
  const auto* w = dynamic_cast<const WormDomain*>(worm.get());
  if (!w) throw InputError("worm_default needs a worm domain");
  const double r = w->phi().r();
  std::vector<PsiTerm> basis;
  for (int k = 1; k <= 4; ++k) {
    basis.push_back({"chi(lam)*lam^" + std::to_string(2 * k), [r, k](const std::vector<Jet3>& v) {
                       const Jet3 lam = log(v[2] * v[2] + v[3] * v[3]);
                       Jet3 p = lam * lam;
                       const Jet3 l2 = p;
                       for (int i = 1; i < k; ++i) p = p * l2;
                       return smooth_cutoff(lam, r + 0.5, r + 1.5) * p;
                     }});
  }
  basis.push_back({"re(z1)", [](const std::vector<Jet3>& v) { return v[0]; }});
  basis.push_back({"im(z1)", [](const std::vector<Jet3>& v) { return v[1]; }});
  basis.push_back({"abs2(z1)", [](const std::vector<Jet3>& v) { return v[0] * v[0] + v[1] * v[1]; }});
  return RhoFamily(std::move(worm), std::move(basis));
}

RhoFamily RhoFamily::generic_default(DomainPtr base) {
  std::vector<PsiTerm> basis;
  const int n = base->dim();
  for (int i = 0; i < n && basis.size() < 8; ++i) {
    const std::string z = "z" + std::to_string(i + 1);
    basis.push_back({"abs2(" + z + ")", [i](const std::vector<Jet3>& v) { return v[2 * i] * v[2 * i] + v[2 * i + 1] * v[2 * i + 1]; }});
    if (basis.size() < 8) basis.push_back({"re(" + z + ")", [i](const std::vector<Jet3>& v) { return v[2 * i]; }});
    if (basis.size() < 8) basis.push_back({"im(" + z + ")", [i](const std::vector<Jet3>& v) { return v[2 * i + 1]; }});
  }
  return RhoFamily(std::move(base), std::move(basis));
}

RhoFamily RhoFamily::base_only(DomainPtr base) { return RhoFamily(std::move(base), {}); }

RhoFamily RhoFamily::with_params(std::vector<double> params) const { return RhoFamily(base_, basis_, std::move(params)); }

RhoFamily::PointJets RhoFamily::point_jets(std::span<const double> x, int order) const {
  PointJets pj;
  pj.delta = base_->jet(x, order);
  if (!basis_.empty()) {
    const auto vars = lift(x, order);
    for (const auto& t : basis_) pj.psi.push_back(t.eval(vars));
  }
  return pj;
}

Jet3 RhoFamily::combine(const PointJets& pj, std::span<const double> params) {
  if (params.size() != pj.psi.size()) throw InputError("parameter count does not match the psi basis");
  if (params.empty()) return pj.delta;
  Jet3 psi(pj.delta.nvars(), 0.0, pj.delta.order());
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i] != 0.0) psi += params[i] * pj.psi[i];
  return exp(psi) * pj.delta;
}

Jet3 RhoFamily::realize(std::span<const double> x, int order) const { return combine(point_jets(x, order), params_); }

std::string ConformalDomain::describe() const {
  std::ostringstream os;
  os << "exp(";
  bool first = true;
  for (std::size_t i = 0; i < family_.size(); ++i) {
    if (family_.params()[i] == 0.0) continue;
    if (!first) os << " + ";
    os << family_.params()[i] << "*" << family_.basis()[i].name;
    first = false;
  }
  if (first) os << "0";
  os << ") * [" << family_.base().describe() << "]";
  return os.str();
}

// ------------------------------------------------------------------ Levi scan

LeviScan scan_point(const BoundaryPoint& p, double null_tol) {
  const TangentFrame f = tangent_frame(p.wirt);
  NullData nd = levi_matrix(p.wirt, f);
  null_basis(nd, null_tol);
  LeviScan s;
  s.min_eigenvalue = nd.min_eigenvalue();
  s.spectral_radius = nd.spectral_radius();
  s.null_dim = nd.null_dim;
  if (nd.null_dim > 0) s.null_vectors = nd.ambient_null_vectors();
  return s;
}

std::vector<LeviScan> scan_points(const std::vector<BoundaryPoint>& pts, double null_tol, int threads) {
  std::vector<LeviScan> out(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) { out[i] = scan_point(pts[i], null_tol); });
  return out;
}

// ------------------------------------------------------------------ criterion samples

CriterionEvaluator::CriterionEvaluator(const RhoFamily& family, const std::vector<WeakPoint>& weak, int threads)
    : family_(family), weak_(weak), threads_(threads) {
  jets_.resize(weak.size());
  parallel_for(weak.size(), threads, [&](std::size_t i) { jets_[i] = family.point_jets(weak[i].point.coords()); });
  for (std::size_t i = 0; i < weak.size(); ++i)
    for (const auto& l : weak[i].scan.null_vectors) slots_.push_back({i, l});
}

std::vector<CriterionSample> CriterionEvaluator::evaluate(std::span<const double> params) const {
  std::vector<CriterionSample> out(slots_.size());
  const int n = family_.base().dim();
  parallel_for(slots_.size(), threads_, [&](std::size_t k) {
    const Slot& s = slots_[k];
    const Jet3 rho = RhoFamily::combine(jets_[s.point], params);
    const DAngeloPoint ctx(rho, n);
    const CVec g = values_of(ctx.grad());
    const CVec c = ctx.tangent_frame_at().coefficients(s.l, g);
    CriterionSample& cs = out[k];
    cs.point = weak_[s.point].point;
    cs.l = s.l;
    cs.msq = std::norm(ctx.omega(c));
    cs.dbar = dbar_omega_checked(ctx, ctx.constant_coeffs(c), &cs.imag_residue);
  });
  return out;
}

std::vector<CriterionSample> criterion_samples(const RhoFamily& family, const std::vector<WeakPoint>& weak, int threads) {
  const CriterionEvaluator ev(family, weak, threads);
  return ev.evaluate(family.params());
}

// ------------------------------------------------------------------ optimizer

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0, double step,
                             int budget, double ftol) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  res.x = x0;
  if (budget <= 0) return res;
  std::vector<std::vector<double>> simplex{x0};
  std::vector<double> fv;
  auto call = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };
  fv.push_back(call(x0));
  res.f = fv[0];
  for (std::size_t i = 0; i < n && res.evaluations < budget; ++i) {
    auto x = x0;
    x[i] += step;
    simplex.push_back(x);
    fv.push_back(call(x));
  }
  if (simplex.size() < n + 1) {
    const auto best = std::min_element(fv.begin(), fv.end()) - fv.begin();
    res.x = simplex[static_cast<std::size_t>(best)];
    res.f = fv[static_cast<std::size_t>(best)];
    return res;
  }

  std::vector<std::size_t> order(n + 1);
  while (res.evaluations < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j) size = std::max(size, std::abs(simplex[i][j] - simplex[best][j]));
    if (std::abs(fv[worst] - fv[best]) <= ftol * (std::abs(fv[best]) + ftol) && size < 1e-10) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
    auto towards = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + coef * (simplex[worst][j] - centroid[j]);
      return x;
    };

    const auto xr = towards(-1.0);
    const double fr = call(xr);
    if (fr < fv[best]) {
      if (res.evaluations >= budget) {
        simplex[worst] = xr;
        fv[worst] = fr;
        break;
      }
      const auto xe = towards(-2.0);
      const double fe = call(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      if (res.evaluations >= budget) break;
      const bool outside = fr < fv[worst];
      const auto xc = towards(outside ? -0.5 : 0.5);
      const double fc = call(xc);
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n && res.evaluations < budget; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          fv[i] = call(simplex[i]);
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = simplex[best];
  res.f = fv[best];
  return res;
}

OptimizeResult optimize_bounds(const CriterionEvaluator& eval, std::size_t nparams, std::span<const double> start,
                               const OptimizeOptions& opt) {
  OptimizeResult r;
  std::vector<double> x0(start.begin(), start.end());
  if (x0.size() != nparams) throw InputError("optimizer start has the wrong parameter count");

  const auto base = eval.evaluate(x0);
  r.evaluations = 1;
  r.base_df = r.df_lower = df_bound(base, opt.eps);
  r.base_s = r.s_upper = s_bound(base, opt.eps);
  r.best_params_df = r.best_params_s = x0;
  r.df_history.push_back(r.df_lower);
  if (nparams == 0 || eval.sample_count() == 0 || opt.budget <= 1) return r;

  // Every probe updates both best-so-far bounds; each search drives one surrogate.
  auto probe = [&](std::span<const double> x, bool for_df) -> double {
    ++r.evaluations;
    std::vector<CriterionSample> s;
    try {
      s = eval.evaluate(x);
    } catch (const NumericalError&) {
      ++r.failed_probes;
      r.df_history.push_back(r.df_lower);
      return kInf;
    }
    const double df = df_bound(s, opt.eps), sb = s_bound(s, opt.eps);
    if (df > r.df_lower) {
      r.df_lower = df;
      r.best_params_df.assign(x.begin(), x.end());
    }
    if (sb < r.s_upper) {
      r.s_upper = sb;
      r.best_params_s.assign(x.begin(), x.end());
    }
    r.df_history.push_back(r.df_lower);
    double m = kInf;
    for (const auto& c : s) m = std::min(m, ratio(for_df ? c.dbar : -c.dbar, c.dbar, c.msq, opt.eps));
    return std::isfinite(m) ? -m : (m > 0 ? -std::numeric_limits<double>::max() : kInf);
  };

  const int restarts = std::max(1, opt.restarts);
  for (int target = 0; target < 2; ++target) {
    const bool for_df = target == 0;
    const int per = std::max(1, (opt.budget - 1) / (2 * restarts));
    std::mt19937_64 rng(opt.seed * 2 + static_cast<std::uint64_t>(target));
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> from = x0;
    for (int k = 0; k < restarts; ++k) {
      if (k > 0) {
        from = for_df ? r.best_params_df : r.best_params_s;
        for (double& v : from) v += opt.initial_step * g(rng);
      }
      nelder_mead([&](std::span<const double> x) { return probe(x, for_df); }, from, opt.initial_step, per);
    }
  }
  return r;
}

// ------------------------------------------------------------------ analysis

GroundTruth worm_ground_truth(double beta) {
  GroundTruth g;
  g.df = std::numbers::pi / (2.0 * beta);
  const double inv_s = 2.0 - 1.0 / g.df;
  g.s = inv_s > 0.0 ? 1.0 / inv_s : kInf;
  g.relation = 1.0 / g.df + (std::isfinite(g.s) ? 1.0 / g.s : 0.0);
  return g;
}

Analysis analyze(const RhoFamily& family, const AnalysisOptions& opt) {
  if (!(opt.null_tol > 0.0) || !(opt.spc_tol > 0.0) || !(opt.eps > 0.0) || !(opt.residual_tol > 0.0))
    throw InputError("tolerances must be positive");
  if (opt.samples < 0 || opt.annulus < 0) throw InputError("sample counts must be nonnegative");
  const Domain& d = family.base();
  const int threads = resolve_threads(opt.threads);
  Analysis a;
  IndexReport& rep = a.report;
  rep.options = opt;
  rep.seed = opt.seed;
  rep.domain = d.describe();
  rep.param_names.clear();
  for (const auto& t : family.basis()) rep.param_names.push_back(t.name);

  SampleOptions so;
  so.residual_tol = opt.residual_tol;
  so.threads = threads;
  a.samples = boundary_sample(d, d.default_anchor(), opt.samples, opt.seed, so);
  const auto* worm = dynamic_cast<const WormDomain*>(&d);
  if (worm) {
    rep.t = worm->t();
    rep.beta = worm->beta();
    rep.ground_truth = worm_ground_truth(worm->beta());
    if (worm->t() == 0.0) {
      auto ann = annulus_points(*worm, opt.annulus);
      a.samples.insert(a.samples.end(), ann.begin(), ann.end());
    }
  }
  rep.sample_count = static_cast<int>(a.samples.size());
  a.scans = scan_points(a.samples, opt.null_tol, threads);

  rep.min_levi_eigenvalue = a.scans.empty() ? 0.0 : kInf;
  bool gap = true;
  for (std::size_t i = 0; i < a.scans.size(); ++i) {
    const auto& s = a.scans[i];
    rep.min_levi_eigenvalue = std::min(rep.min_levi_eigenvalue, s.min_eigenvalue);
    if (!(s.min_eigenvalue > opt.spc_tol * std::max(1.0, s.spectral_radius))) gap = false;
    if (s.null_dim > 0) a.weak.push_back({a.samples[i], s});
  }
  rep.weak_points = static_cast<int>(a.weak.size());
  rep.spc = gap && a.weak.empty();

  std::vector<double> start = family.params();
  rep.best_params = rep.best_params_s = start;
  if (rep.spc) {
    rep.df_lower = rep.s_upper = rep.base_df = rep.base_s = 1.0;
    return a;
  }

  const CriterionEvaluator ev(family, a.weak, threads);
  rep.null_count = static_cast<int>(ev.sample_count());
  OptimizeOptions oo = opt.opt;
  oo.seed = opt.seed;
  oo.eps = opt.eps;
  if (!opt.optimize) oo.budget = 1;
  const OptimizeResult r = optimize_bounds(ev, family.size(), start, oo);
  rep.df_lower = r.df_lower;
  rep.s_upper = r.s_upper;
  rep.base_df = r.base_df;
  rep.base_s = r.base_s;
  rep.best_params = r.best_params_df;
  rep.best_params_s = r.best_params_s;
  rep.evaluations = r.evaluations;
  rep.failed_probes = r.failed_probes;
  a.criterion = ev.evaluate(rep.best_params);
  for (const auto& c : a.criterion) rep.max_imag_residue = std::max(rep.max_imag_residue, c.imag_residue);
  return a;
}

Analysis analyze(DomainPtr d, const AnalysisOptions& opt) {
  if (d->kind() == DomainKind::Worm) return analyze(RhoFamily::worm_default(std::move(d)), opt);
  return analyze(RhoFamily::generic_default(std::move(d)), opt);
}

std::vector<IndexReport> deformation_sweep(double beta, const std::vector<double>& t_grid, const AnalysisOptions& opt) {
  if (std::find(t_grid.begin(), t_grid.end(), 0.0) == t_grid.end()) throw InputError("sweep grid must contain t = 0");
  std::vector<IndexReport> out;
  for (double t : t_grid) out.push_back(analyze(make_worm(beta, t), opt).report);
  return out;
}

}  // namespace psindex
