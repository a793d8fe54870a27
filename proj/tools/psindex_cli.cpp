// psindex command-line front end.  Talks to the library only through psindex.h.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psindex/psindex.h"

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
  std::vector<std::string> commands;  // empty: every command
};

const std::vector<Flag>& flags() {
  static const std::vector<std::string> dom = {"analyze", "sample"};
  static const std::vector<std::string> idx = {"analyze", "sweep"};
  static const std::vector<Flag> f = {
      {"--domain", "domain", "worm | ball | ellipsoid | expr", dom},
      {"--expr", "expr", "defining function, e.g. \"abs2(z1)+abs2(z2)-1\"", dom},
      {"--n", "n", "complex dimension (ball, expr)", dom},
      {"--coeffs", "coeffs", "ellipsoid coefficients, comma separated", dom},
      {"--anchor", "anchor", "interior point for ray sampling (2n reals)", dom},
      {"--beta", "beta", "worm exponent beta > pi/2", {"analyze", "sample", "sweep", "verify-levi", "phi-check"}},
      {"--t", "t", "deformation parameter (comma list for sweep and verify-levi)", {"analyze", "sample", "sweep", "verify-levi"}},
      {"--t-im", "t_im", "imaginary part of t", dom},
      {"--samples", "samples", "random boundary samples", {"analyze", "sample", "sweep"}},
      {"--annulus", "annulus", "annulus points for the unperturbed worm", idx},
      {"--budget", "budget", "objective evaluations for the psi search", idx},
      {"--restarts", "restarts", "optimizer restarts", idx},
      {"--step", "step", "initial simplex size", idx},
      {"--optimize", "optimize", "search the psi family (true/false)", idx},
      {"--null-tol", "null_tol", "relative Levi null tolerance", idx},
      {"--spc-tol", "spc_tol", "strong pseudoconvexity threshold", idx},
      {"--eps", "eps", "degenerate |omega|^2 threshold", idx},
      {"--residual-tol", "residual_tol", "boundary residual tolerance", {"analyze", "sample", "sweep"}},
      {"--count", "count", "boundary points per t", {"verify-levi"}},
      {"--trials", "trials", "random matrices", {"schur-test"}},
      {"--grid", "grid", "grid points", {"phi-check"}},
      {"--seed", "seed", "random seed", {}},
      {"--out", "out", "output directory", {}},
      {"--report", "report", "report file name", {}},
      {"--samples-csv", "samples_csv", "sample dump file name", {"analyze", "sample"}},
      {"--weak-csv", "weak_csv", "weak-point file name", {"analyze"}},
      {"--sweep-csv", "sweep_csv", "sweep table file name", {"sweep"}},
      {"--levi-csv", "levi_csv", "Levi comparison file name", {"verify-levi"}},
      {"--diagnostic", "diagnostic", "diagnostic dump file name", {}},
      {"--timestamp", "timestamp", "include a timestamp in the report (true/false)", {}},
  };
  return f;
}

int report_failure(psx_status s) {
  std::fprintf(stderr, "error: %s\n", psx_last_error());
  return psx_exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levi-form analysis and Diederich-Fornaess / Steinness index bounds"};
  app.require_subcommand(1);
  std::string config_file, threads;
  app.add_option("--config", config_file, "flat key = value config file");
  app.add_option("--threads", threads, "worker threads (PSINDEX_THREADS overrides)");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "index bounds for one domain"},
      {"sweep", "index bounds along the worm deformation"},
      {"sample", "dump boundary samples"},
      {"verify-levi", "compare AD Levi values with the worm closed form"},
      {"schur-test", "Schur block transform property check"},
      {"phi-check", "axioms of the worm's radial function"}};
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    subs[name] = sub;
    for (const auto& f : flags()) {
      bool applies = f.commands.empty();
      for (const auto& c : f.commands) applies = applies || c == name;
      if (applies) sub->add_option(f.name, values[name][f.key], f.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  psx_config* cfg = nullptr;
  if (psx_status s = psx_config_create(&cfg); s != PSX_OK) return report_failure(s);
  auto set = [&](const std::string& k, const std::string& v) { return psx_config_set(cfg, k.c_str(), v.c_str()); };
  psx_status s = PSX_OK;
  if (!config_file.empty()) s = psx_config_load_file(cfg, config_file.c_str());
  for (const auto& [name, sub] : subs) {
    if (!sub->parsed() || s != PSX_OK) continue;
    s = set("command", name);
    for (const auto& f : flags())
      if (s == PSX_OK && sub->get_option_no_throw(f.name) && sub->get_option(f.name)->count() > 0) s = set(f.key, values[name][f.key]);
  }
  if (s == PSX_OK && !threads.empty()) s = set("threads", threads);
  if (s != PSX_OK) {
    psx_config_destroy(cfg);
    return report_failure(s);
  }

  psx_result* res = nullptr;
  s = psx_run(cfg, &res);
  psx_config_destroy(cfg);
  if (!res) return report_failure(s);
  if (*psx_result_summary(res)) std::printf("%s\n", psx_result_summary(res));
  for (size_t i = 0; i < psx_result_artifact_count(res); ++i)
    std::printf("wrote %s: %s\n", psx_result_artifact_name(res, i), psx_result_artifact_path(res, i));
  const int code = psx_result_exit_code(res);
  if (s != PSX_OK) std::fprintf(stderr, "error: %s\n", psx_result_message(res));
  psx_result_destroy(res);
  return code;
}
