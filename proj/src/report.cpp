#include "psindex/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace psindex {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json report_json(const IndexReport& r) {
  using nlohmann::json;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["domain"] = r.domain;
  j["df_lower"] = json_number(r.df_lower);
  j["s_upper"] = json_number(r.s_upper);
  j["null_count"] = r.null_count;
  j["weak_points"] = r.weak_points;
  j["spc"] = r.spc;
  j["t"] = r.t.real();
  j["t_im"] = r.t.imag();
  j["beta"] = r.beta ? json(*r.beta) : json(nullptr);
  j["seed"] = r.seed;
  j["tolerances"] = {{"null_tol", r.options.null_tol},
                     {"spc_tol", r.options.spc_tol},
                     {"degenerate_msq", r.options.eps},
                     {"boundary_residual", r.options.residual_tol}};
  j["counts"] = {{"boundary_samples", r.options.samples},
                 {"annulus_points", r.options.annulus},
                 {"total_points", r.sample_count},
                 {"budget", r.options.opt.budget},
                 {"restarts", r.options.opt.restarts},
                 {"evaluations", r.evaluations},
                 {"failed_probes", r.failed_probes}};
  j["min_levi_eigenvalue"] = json_number(r.min_levi_eigenvalue);
  j["base"] = {{"df", json_number(r.base_df)}, {"s", json_number(r.base_s)}};
  j["best_params"] = {{"names", r.param_names}, {"df", r.best_params}, {"s", r.best_params_s}};
  j["max_imag_residue"] = r.max_imag_residue;
  if (r.ground_truth) {
    const auto& g = *r.ground_truth;
    j["ground_truth"] = {{"df", json_number(g.df)},
                         {"s", json_number(g.s)},
                         {"relation", "1/df + 1/s = 2"},
                         {"relation_value", json_number(g.relation)},
                         {"df_gap", json_number(g.df - r.df_lower)},
                         {"s_gap", json_number(r.s_upper - g.s)}};
  }
  return j;
}

namespace {

void point_header(std::ostream& os, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) os << "re(z" << i << "),im(z" << i << "),";
}

void point_row(std::ostream& os, const BoundaryPoint& p) {
  for (const auto& z : p.z) os << format_double(z.real()) << ',' << format_double(z.imag()) << ',';
}

}  // namespace

void write_samples_csv(std::ostream& os, const std::vector<BoundaryPoint>& pts) {
  if (pts.empty()) {
    os << "rho_residual\n";
    return;
  }
  point_header(os, pts.front().z.size());
  os << "rho_residual\n";
  for (const auto& p : pts) {
    point_row(os, p);
    os << format_double(p.residual) << '\n';
  }
}

void write_weak_csv(std::ostream& os, const std::vector<BoundaryPoint>& pts, const std::vector<LeviScan>& scans) {
  if (pts.empty()) {
    os << "min_eigenvalue,null_dim\n";
    return;
  }
  point_header(os, pts.front().z.size());
  os << "min_eigenvalue,null_dim\n";
  for (std::size_t i = 0; i < pts.size() && i < scans.size(); ++i) {
    if (scans[i].null_dim == 0) continue;
    point_row(os, pts[i]);
    os << format_double(scans[i].min_eigenvalue) << ',' << scans[i].null_dim << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<IndexReport>& reports) {
  os << "t,df_lower,s_upper,spc,null_count,weak_points,min_levi_eigenvalue,ground_truth_df,ground_truth_s\n";
  for (const auto& r : reports) {
    os << format_double(r.t.real()) << ',' << format_double(r.df_lower) << ',' << format_double(r.s_upper) << ','
       << (r.spc ? 1 : 0) << ',' << r.null_count << ',' << r.weak_points << ',' << format_double(r.min_levi_eigenvalue) << ','
       << (r.ground_truth ? format_double(r.ground_truth->df) : "") << ','
       << (r.ground_truth ? format_double(r.ground_truth->s) : "") << '\n';
  }
}

}  // namespace psindex
