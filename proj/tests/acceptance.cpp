// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "psindex/checks.hpp"
#include "psindex/dangelo.hpp"
#include "psindex/index.hpp"
#include "psindex/parallel.hpp"
#include "psindex/report.hpp"
#include "wirtinger_fd.hpp"

using namespace psindex;

namespace {

const double kBeta = 3.0 * std::numbers::pi / 4.0;
const double kR = kBeta - std::numbers::pi / 2.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Verdict()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("[%s] %2d %-28s %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string g(double v) { return format_double(v); }

AnalysisOptions full_options() {
  AnalysisOptions o;
  o.samples = 2000;
  o.annulus = 64;
  o.threads = resolve_threads(0);
  return o;
}

// Shared unperturbed-worm analysis for criteria 3, 4 and 7.
const Analysis& worm0() {
  static const Analysis a = analyze(make_worm(kBeta, 0.0), full_options());
  return a;
}

CJet random_cjet(oracle::Gen& gen, int nvars, int order) {
  CJet j(nvars, gen.cnormal(), order);
  for (int i = 0; i < nvars; ++i) j.set_d1(i, gen.cnormal());
  for (int i = 0; i < nvars; ++i)
    for (int k = i; k < nvars; ++k) j.set_d2(i, k, gen.cnormal());
  return j;
}

}  // namespace

int main() {
  report(1, "levi-closed-form", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int points = 0;
    for (double t : {0.0, 0.3}) {
      const WormDomain worm(kBeta, t);
      const LeviCheck c = verify_levi(worm, 500, 1, resolve_threads(0));
      worst = std::max(worst, c.max_rel_error);
      points = std::min(points == 0 ? c.points : points, c.points);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Verdict{points >= 500 && worst < 1e-8 && secs < 60.0,
                   "min points/t=" + std::to_string(points) + " max rel err=" + g(worst) + " tol=1e-8"};
  });

  report(2, "deformed-fibers-spc", [] {
    bool ok = true;
    std::ostringstream d;
    for (double t : {0.05, 0.1, 0.3}) {
      const Analysis a = analyze(make_worm(kBeta, t), full_options());
      const bool pass = a.report.sample_count >= 2000 && a.report.min_levi_eigenvalue > 0.0 && a.report.df_lower == 1.0 &&
                        a.report.s_upper == 1.0;
      ok = ok && pass;
      d << "t=" << t << ": min eig=" << g(a.report.min_levi_eigenvalue) << " (" << g(a.report.df_lower) << ","
        << g(a.report.s_upper) << ") ";
    }
    return Verdict{ok, d.str()};
  });

  report(3, "null-set-geometry", [] {
    const Analysis& a = worm0();
    double max_z = 0.0, max_lam = 0.0;
    for (const auto& w : a.weak) {
      max_z = std::max(max_z, std::abs(w.point.z[0]));
      max_lam = std::max(max_lam, std::abs(std::log(std::norm(w.point.z[1]))));
    }
    double worst_ann = 0.0;
    for (const auto& p : annulus_points(kBeta, 64)) {
      const LeviScan s = scan_point(p);
      worst_ann = std::max(worst_ann, s.min_eigenvalue / std::max(1.0, s.spectral_radius));
    }
    const bool ok = !a.weak.empty() && max_z < 1e-6 && max_lam <= std::numbers::pi / 4 + 1e-6 && worst_ann < 1e-8;
    return Verdict{ok, "weak=" + std::to_string(a.weak.size()) + " max|z|=" + g(max_z) + " max|log|w|^2|=" + g(max_lam) +
                           " max annulus eig/scale=" + g(worst_ann)};
  });

  report(4, "index-vs-ground-truth", [] {
    const Analysis& a = worm0();
    const nlohmann::json j = report_json(a.report);
    const bool annotated = j.contains("ground_truth") && j["ground_truth"].contains("relation") &&
                           std::abs(j["ground_truth"]["relation_value"].get<double>() - 2.0) < 1e-12;
    const double df = a.report.df_lower, s = a.report.s_upper;
    const bool ok = df > 0.0 && df <= 2.0 / 3.0 + 0.02 && s >= 2.0 - 0.05 && annotated;
    return Verdict{ok, "df_lower=" + g(df) + " (truth 2/3) s_upper=" + g(s) + " (truth 2) relation annotated=" +
                           (annotated ? "yes" : "no")};
  });

  report(5, "semicontinuity-sweep", [] {
    AnalysisOptions o = full_options();
    const auto reps = deformation_sweep(kBeta, {0.0, 0.05, 0.1, 0.3}, o);
    bool ok = reps.size() == 4 && reps[0].df_lower <= 0.687 && reps[0].s_upper >= 1.95;
    std::ostringstream d;
    for (const auto& r : reps) {
      if (r.t != 0.0) ok = ok && r.df_lower == 1.0 && r.s_upper == 1.0;
      d << "t=" << r.t.real() << ":(" << g(r.df_lower) << "," << g(r.s_upper) << ") ";
    }
    return Verdict{ok, d.str()};
  });

  report(6, "schur-block-transform", [] {
    const SchurCheck c = schur_property(1000, 6);
    return Verdict{c.trials == 1000 && c.pass(), "trials=" + std::to_string(c.trials) + " skipped=" + std::to_string(c.skipped) +
                                                     " block=" + g(c.max_block_residual) + " null=" + g(c.max_null_residual)};
  });

  report(7, "transversal-invariance", [] {
    // rho from the DF optimum of the psi family, so omega and dbar omega are both nonzero
    const Analysis& a = worm0();
    const RhoFamily fam = RhoFamily::worm_default(make_worm(kBeta, 0.0)).with_params(a.report.best_params);
    const ConformalDomain dom(fam);
    oracle::Gen gen(77);
    double worst = 0.0;
    int points = 0;
    for (const auto& p0 : annulus_points(kBeta, 32)) {
      const BoundaryPoint p = make_boundary_point(dom, p0.coords());
      const DAngeloPoint ref(p.jet, 2);
      const CVec c = ref.tangent_frame_at().coefficients(CVec::Unit(2, 1), p.wirt.grad);
      const cdouble om0 = ref.omega(c);
      const double db0 = dbar_omega_checked(ref, ref.constant_coeffs(c));
      for (int k = 0; k < 20; ++k) {
        const std::vector<CJet> h = {random_cjet(gen, 4, 2)};
        const DAngeloPoint alt(p.jet, 2, &h);
        worst = std::max(worst, std::abs(alt.omega(c) - om0) / std::max(std::abs(om0), 1e-300));
        worst = std::max(worst, std::abs(dbar_omega_checked(alt, alt.constant_coeffs(c)) - db0) / std::max(std::abs(db0), 1e-300));
      }
      ++points;
    }
    return Verdict{points >= 32 && worst < 1e-7, "points=" + std::to_string(points) + " x20 max rel dev=" + g(worst)};
  });

  report(8, "jet-vs-finite-differences", [] {
    const auto worm = make_worm(kBeta, 0.0);
    const auto pts = boundary_sample(*worm, worm->default_anchor(), 100, 8);
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, oracle::max_wirtinger_fd_error(*worm, p.coords(), 1e-3));
    return Verdict{pts.size() == 100 && worst < 1e-5, "points=100 max rel dev=" + g(worst) + " tol=1e-5"};
  });

  report(9, "phi-axioms", [] {
    const PhiCheck c = phi_axioms(kBeta, 10000);
    return Verdict{c.pass(), "grid=" + std::to_string(c.grid) + " min phi''=" + g(c.min_phi2) + " phi(r+1)-1=" + g(c.phi_at_a - 1.0) +
                                 " r=" + g(kR)};
  });

  report(10, "ball-and-bisection", [] {
    AnalysisOptions o = full_options();
    const Analysis a = analyze(make_ball(2), o);
    const bool ball = a.report.null_count == 0 && a.report.df_lower == 1.0 && a.report.s_upper == 1.0;
    oracle::Gen gen(10);
    double worst = 0.0;
    for (int set = 0; set < 100; ++set) {
      std::vector<oracle::RawSample> raw;
      std::vector<CriterionSample> samples;
      const int count = gen.integer(1, 30);
      for (int i = 0; i < count; ++i) {
        const double msq = std::exp(gen.uniform(-3, 3)), mag = std::exp(gen.uniform(-3, 3));
        const double dbar = (set % 2 == 0) ? mag : -mag;
        raw.push_back({dbar, msq});
        CriterionSample s;
        s.dbar = dbar;
        s.msq = msq;
        samples.push_back(s);
      }
      worst = std::max(worst, std::abs(df_bound(samples) - oracle::df_bisect(raw)));
      const double sb = s_bound(samples), sr = oracle::s_bisect(raw);
      worst = std::max(worst, std::isinf(sr) && std::isinf(sb) ? 0.0 : std::abs(sb - sr) / std::max(1.0, sr));
    }
    return Verdict{ball && worst <= 1e-12, "ball null_count=" + std::to_string(a.report.null_count) + " (" + g(a.report.df_lower) +
                                               "," + g(a.report.s_upper) + ") bisection max dev=" + g(worst)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
