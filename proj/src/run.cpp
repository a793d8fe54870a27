#include "psindex/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "psindex/checks.hpp"
#include "psindex/errors.hpp"
#include "psindex/index.hpp"
#include "psindex/parallel.hpp"
#include "psindex/report.hpp"

namespace psindex {
namespace {

using nlohmann::json;

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d = {
      {"command", "analyze"},     {"domain", "worm"},       {"beta", "2.356194490192345"},
      {"t", "0"},                 {"t_im", "0"},            {"expr", ""},
      {"n", "0"},                 {"coeffs", ""},           {"anchor", ""},
      {"seed", "0"},              {"samples", "2000"},      {"annulus", "64"},
      {"budget", "1500"},         {"restarts", "4"},        {"step", "0.5"},
      {"optimize", "true"},       {"null_tol", "1e-7"},     {"spc_tol", "1e-6"},
      {"eps", "1e-10"},           {"residual_tol", "1e-12"}, {"threads", "0"},
      {"count", "500"},           {"trials", "1000"},       {"grid", "10000"},
      {"out", "."},               {"report", "report.json"}, {"samples_csv", "samples.csv"},
      {"weak_csv", "weak_points.csv"}, {"sweep_csv", "sweep.csv"}, {"levi_csv", "levi.csv"},
      {"diagnostic", "diagnostic.json"}, {"timestamp", "true"}};
  return d;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw InputError("config key '" + key + "': expected a finite number, got '" + text + "'");
  return v;
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Writer {
 public:
  explicit Writer(const RunConfig& cfg) : dir_(cfg.get("out")) {}

  std::string path(const std::string& file) const { return (std::filesystem::path(dir_) / file).string(); }

  template <class F>
  void write(RunOutcome& out, const std::string& name, const std::string& file, F&& body) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const std::string p = path(file);
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InputError("cannot open output file '" + p + "'");
    body(os);
    os.flush();
    if (!os) throw InputError("failed writing '" + p + "'");
    out.artifacts.push_back({name, p});
  }

 private:
  std::string dir_;
};

DomainPtr build_domain(const RunConfig& cfg) {
  std::string kind = cfg.get("domain");
  if (cfg.has("expr") && !cfg.has("domain")) kind = "expr";
  if (kind == "worm") {
    const auto ts = cfg.numbers("t");
    if (ts.size() != 1) throw InputError("config key 't': expected a single value for this command");
    return make_worm(cfg.number("beta"), {ts[0], cfg.number("t_im")});
  }
  if (kind == "ball") {
    const long long n = cfg.integer("n");
    return make_ball(n == 0 ? 2 : static_cast<int>(n));
  }
  if (kind == "ellipsoid") {
    const auto c = cfg.numbers("coeffs");
    if (c.empty()) throw InputError("ellipsoid domain needs 'coeffs'");
    return make_ellipsoid(c);
  }
  if (kind == "expr") {
    const std::string& text = cfg.get("expr");
    if (trim(text).empty()) throw InputError("expression domain needs 'expr'");
    const int n = static_cast<int>(cfg.integer("n"));
    if (cfg.has("anchor")) return std::make_shared<ExprDomain>(text, n, cfg.numbers("anchor"));
    return std::make_shared<ExprDomain>(text, n);
  }
  throw InputError("unknown domain '" + kind + "' (expected worm, ball, ellipsoid or expr)");
}

AnalysisOptions analysis_options(const RunConfig& cfg) {
  AnalysisOptions o;
  const long long samples = cfg.integer("samples"), annulus = cfg.integer("annulus");
  const long long budget = cfg.integer("budget"), restarts = cfg.integer("restarts");
  if (samples < 0 || annulus < 0 || budget < 1 || restarts < 1) throw InputError("counts must be positive");
  o.samples = static_cast<int>(samples);
  o.annulus = static_cast<int>(annulus);
  o.seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  o.null_tol = cfg.number("null_tol");
  o.spc_tol = cfg.number("spc_tol");
  o.eps = cfg.number("eps");
  o.residual_tol = cfg.number("residual_tol");
  if (!(o.null_tol > 0) || !(o.spc_tol > 0) || !(o.eps > 0) || !(o.residual_tol > 0)) throw InputError("tolerances must be positive");
  o.threads = resolve_threads(static_cast<int>(cfg.integer("threads")));
  o.optimize = cfg.boolean("optimize");
  o.opt.budget = static_cast<int>(budget);
  o.opt.restarts = static_cast<int>(restarts);
  o.opt.initial_step = cfg.number("step");
  if (!(o.opt.initial_step > 0)) throw InputError("step must be positive");
  return o;
}

json envelope(const RunConfig& cfg, const std::string& command) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  if (cfg.boolean("timestamp")) j["timestamp"] = timestamp_utc();
  return j;
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void cmd_analyze(const RunConfig& cfg, RunOutcome& out) {
  const Writer w(cfg);
  const Analysis a = analyze(build_domain(cfg), analysis_options(cfg));
  json j = envelope(cfg, "analyze");
  j.update(report_json(a.report));
  out.report = j.dump(2);
  w.write(out, "report", cfg.get("report"), [&](std::ostream& os) { os << out.report << '\n'; });
  w.write(out, "samples", cfg.get("samples_csv"), [&](std::ostream& os) { write_samples_csv(os, a.samples); });
  w.write(out, "weak_points", cfg.get("weak_csv"), [&](std::ostream& os) { write_weak_csv(os, a.samples, a.scans); });
  out.summary = "df_lower=" + fmt(a.report.df_lower) + " s_upper=" + fmt(a.report.s_upper) +
                " null_count=" + std::to_string(a.report.null_count) + " spc=" + (a.report.spc ? "true" : "false");
}

void cmd_sweep(const RunConfig& cfg, RunOutcome& out) {
  const Writer w(cfg);
  const double beta = cfg.number("beta");
  const auto ts = cfg.has("t") ? cfg.numbers("t") : std::vector<double>{0.0, 0.05, 0.1, 0.3};
  const auto reports = deformation_sweep(beta, ts, analysis_options(cfg));
  json j = envelope(cfg, "sweep");
  j["beta"] = beta;
  j["reports"] = json::array();
  for (const auto& r : reports) j["reports"].push_back(report_json(r));
  const GroundTruth g = worm_ground_truth(beta);
  j["ground_truth"] = {{"df", json_number(g.df)}, {"s", json_number(g.s)}, {"relation", "1/df + 1/s = 2"},
                       {"relation_value", json_number(g.relation)}};
  double df0 = 1.0, s0 = 1.0, df_off = INFINITY, s_off = -INFINITY;
  for (const auto& r : reports) {
    if (r.t == 0.0) {
      df0 = r.df_lower;
      s0 = r.s_upper;
    } else {
      df_off = std::min(df_off, r.df_lower);
      s_off = std::max(s_off, r.s_upper);
    }
  }
  j["semicontinuity"] = {{"df_at_0", json_number(df0)},
                         {"s_at_0", json_number(s0)},
                         {"df_min_off_0", json_number(df_off)},
                         {"s_max_off_0", json_number(s_off)},
                         {"df_jumps_up", df_off > df0},
                         {"s_jumps_down", s_off < s0}};
  out.report = j.dump(2);
  w.write(out, "report", cfg.get("report"), [&](std::ostream& os) { os << out.report << '\n'; });
  w.write(out, "sweep", cfg.get("sweep_csv"), [&](std::ostream& os) { write_sweep_csv(os, reports); });
  std::ostringstream s;
  for (const auto& r : reports) s << "t=" << fmt(r.t.real()) << " df=" << fmt(r.df_lower) << " s=" << fmt(r.s_upper) << "; ";
  out.summary = s.str();
}

void cmd_sample(const RunConfig& cfg, RunOutcome& out) {
  const Writer w(cfg);
  const DomainPtr d = build_domain(cfg);
  const AnalysisOptions o = analysis_options(cfg);
  SampleOptions so;
  so.residual_tol = o.residual_tol;
  so.threads = o.threads;
  const auto anchor = cfg.has("anchor") ? cfg.numbers("anchor") : d->default_anchor();
  const auto pts = boundary_sample(*d, anchor, o.samples, o.seed, so);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, p.residual);
  json j = envelope(cfg, "sample");
  j["domain"] = d->describe();
  j["seed"] = o.seed;
  j["count"] = pts.size();
  j["max_residual"] = worst;
  out.report = j.dump(2);
  w.write(out, "report", cfg.get("report"), [&](std::ostream& os) { os << out.report << '\n'; });
  w.write(out, "samples", cfg.get("samples_csv"), [&](std::ostream& os) { write_samples_csv(os, pts); });
  out.summary = std::to_string(pts.size()) + " boundary points, max |rho| = " + fmt(worst);
}

void cmd_verify_levi(const RunConfig& cfg, RunOutcome& out) {
  const Writer w(cfg);
  const double beta = cfg.number("beta");
  const auto ts = cfg.numbers("t");
  const long long count = cfg.integer("count");
  if (count < 1) throw InputError("count must be positive");
  const int threads = resolve_threads(static_cast<int>(cfg.integer("threads")));
  json j = envelope(cfg, "verify-levi");
  j["beta"] = beta;
  j["tolerance"] = 1e-8;
  j["runs"] = json::array();
  std::vector<std::pair<double, LeviCheck>> runs;
  bool pass = true;
  double worst = 0.0;
  for (double t : ts) {
    const WormDomain worm(beta, t);
    auto c = verify_levi(worm, static_cast<int>(count), static_cast<std::uint64_t>(cfg.integer("seed")), threads);
    pass = pass && c.pass();
    worst = std::max(worst, c.max_rel_error);
    j["runs"].push_back({{"t", t}, {"points", c.points}, {"excluded", c.excluded}, {"max_rel_error", c.max_rel_error}, {"pass", c.pass()}});
    runs.emplace_back(t, std::move(c));
  }
  j["max_rel_error"] = worst;
  j["pass"] = pass;
  out.report = j.dump(2);
  w.write(out, "report", cfg.get("report"), [&](std::ostream& os) { os << out.report << '\n'; });
  w.write(out, "levi", cfg.get("levi_csv"), [&](std::ostream& os) {
    os << "t,re(z1),im(z1),re(z2),im(z2),ad,closed,rel_error\n";
    for (const auto& [t, c] : runs)
      for (const auto& r : c.rows)
        os << format_double(t) << ',' << format_double(r.z[0].real()) << ',' << format_double(r.z[0].imag()) << ',' << format_double(r.z[1].real()) << ','
           << format_double(r.z[1].imag()) << ',' << format_double(r.ad) << ',' << format_double(r.closed) << ',' << format_double(r.rel_error) << '\n';
  });
  out.summary = "max relative error " + fmt(worst) + (pass ? " (pass)" : " (FAIL)");
  if (!pass) throw NumericalError("Levi closed form disagrees with AD: max relative error " + fmt(worst));
}

void cmd_schur_test(const RunConfig& cfg, RunOutcome& out) {
  const Writer w(cfg);
  const long long trials = cfg.integer("trials");
  if (trials < 1) throw InputError("trials must be positive");
  const SchurCheck c = schur_property(static_cast<int>(trials), static_cast<std::uint64_t>(cfg.integer("seed")));
  json j = envelope(cfg, "schur-test");
  j["trials"] = c.trials;
  j["skipped"] = c.skipped;
  j["max_block_residual"] = c.max_block_residual;
  j["max_null_residual"] = c.max_null_residual;
  j["pass"] = c.pass();
  out.report = j.dump(2);
  w.write(out, "report", cfg.get("report"), [&](std::ostream& os) { os << out.report << '\n'; });
  out.summary = "block residual " + fmt(c.max_block_residual) + ", null residual " + fmt(c.max_null_residual);
  if (!c.pass()) throw NumericalError("Schur frame property failed: " + out.summary);
}

void cmd_phi_check(const RunConfig& cfg, RunOutcome& out) {
  const Writer w(cfg);
  const long long grid = cfg.integer("grid");
  if (grid < 2) throw InputError("grid must be at least 2");
  const double beta = cfg.number("beta");
  const PhiCheck c = phi_axioms(beta, static_cast<int>(grid));
  json j = envelope(cfg, "phi-check");
  j["beta"] = beta;
  j["grid"] = c.grid;
  j["even_exact"] = c.even_exact;
  j["min_phi"] = c.min_phi;
  j["min_phi2"] = c.min_phi2;
  j["zero_inside"] = c.zero_inside;
  j["positive_outside"] = c.positive_outside;
  j["phi_at_r_plus_1"] = c.phi_at_a;
  j["dphi_at_r_plus_1"] = c.dphi_at_a;
  j["pass"] = c.pass();
  out.report = j.dump(2);
  w.write(out, "report", cfg.get("report"), [&](std::ostream& os) { os << out.report << '\n'; });
  out.summary = std::string("phi axioms ") + (c.pass() ? "hold" : "FAIL");
  if (!c.pass()) throw NumericalError("phi axioms failed");
}

void write_diagnostic(const RunConfig& cfg, RunOutcome& out) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = cfg.get("command");
  j["exit_code"] = out.exit_code;
  j["error"] = out.message;
  json c;
  for (const auto& k : RunConfig::keys()) c[k] = cfg.get(k);
  j["config"] = c;
  try {
    const Writer w(cfg);
    w.write(out, "diagnostic", cfg.get("diagnostic"), [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  } catch (const std::exception&) {
  }
}

}  // namespace

RunConfig::RunConfig() = default;

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> v;
    for (const auto& [key, _] : defaults()) v.push_back(key);
    return v;
  }();
  return k;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!defaults().count(key)) throw InputError("unknown config key '" + key + "'");
  values_[key] = value;
}

const std::string& RunConfig::get(const std::string& key) const {
  if (const auto it = values_.find(key); it != values_.end()) return it->second;
  if (const auto it = defaults().find(key); it != defaults().end()) return it->second;
  throw InputError("unknown config key '" + key + "'");
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

void RunConfig::load_string(const std::string& text, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [key, node] : tree) {
    if (!node.empty()) throw InputError(origin + ": sections are not supported ([" + key + "])");
    set(key, trim(node.data()));
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  load_string(ss.str(), path);
}

double RunConfig::number(const std::string& key) const { return parse_number(key, get(key)); }

long long RunConfig::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw InputError("config key '" + key + "': expected an integer, got '" + get(key) + "'");
  return static_cast<long long>(v);
}

bool RunConfig::boolean(const std::string& key) const {
  std::string v = trim(get(key));
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InputError("config key '" + key + "': expected a boolean, got '" + get(key) + "'");
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  const std::string& s = get(key);
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_number(key, s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

RunOutcome run(const RunConfig& cfg) {
  RunOutcome out;
  try {
    const std::string& cmd = cfg.get("command");
    if (cmd == "analyze") cmd_analyze(cfg, out);
    else if (cmd == "sweep") cmd_sweep(cfg, out);
    else if (cmd == "sample") cmd_sample(cfg, out);
    else if (cmd == "verify-levi") cmd_verify_levi(cfg, out);
    else if (cmd == "schur-test") cmd_schur_test(cfg, out);
    else if (cmd == "phi-check") cmd_phi_check(cfg, out);
    else throw InputError("unknown command '" + cmd + "'");
  } catch (const ParseError& e) {
    out.error = RunError::Parse;
    out.exit_code = 2;
    out.message = e.what();
    out.error_position = static_cast<long long>(e.position());
  } catch (const InputError& e) {
    out.error = RunError::Input;
    out.exit_code = 2;
    out.message = e.what();
  } catch (const DomainError& e) {
    out.error = RunError::Domain;
    out.exit_code = 2;
    out.message = e.what();
  } catch (const NumericalError& e) {
    out.error = RunError::Numerical;
    out.exit_code = 3;
    out.message = e.what();
    write_diagnostic(cfg, out);
  } catch (const std::exception& e) {
    out.error = RunError::Internal;
    out.exit_code = 3;
    out.message = std::string("internal error: ") + e.what();
    write_diagnostic(cfg, out);
  }
  return out;
}

}  // namespace psindex
