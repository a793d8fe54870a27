#pragma once

#include <map>
#include <string>
#include <vector>

namespace psindex {

/// Flat key/value run configuration shared by the CLI flags and config files.
///
/// Keys: command, domain (worm|ball|ellipsoid|expr), beta, t (comma list for sweep),
/// t_im, expr, n, coeffs, anchor, seed, samples, annulus, budget, restarts, step,
/// optimize, null_tol, spc_tol, eps, residual_tol, threads, count, trials, grid, out,
/// report, samples_csv, weak_csv, sweep_csv, levi_csv, diagnostic, timestamp.
class RunConfig {
 public:
  RunConfig();

  /// Throws InputError for unknown keys.
  void set(const std::string& key, const std::string& value);
  const std::string& get(const std::string& key) const;
  bool has(const std::string& key) const;
  /// `key = value` lines; `;` starts a comment line; [sections] are rejected.
  void load_file(const std::string& path);
  void load_string(const std::string& text, const std::string& origin = "<string>");

  static const std::vector<std::string>& keys();

  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

struct Artifact {
  std::string name;
  std::string path;
};

enum class RunError { None, Input, Parse, Domain, Numerical, Internal };

struct RunOutcome {
  RunError error = RunError::None;
  int exit_code = 0;  // 0 ok, 2 input/domain error, 3 numerical-consistency failure
  std::string message;
  std::string summary;  // one line for the terminal
  std::string report;   // JSON text of the main report
  std::vector<Artifact> artifacts;
  long long error_position = -1;  // parse errors only
};

/// Runs one command.  Never throws: failures become exit codes with a message, and
/// numerical failures also write a diagnostic JSON file.
RunOutcome run(const RunConfig& cfg);

}  // namespace psindex
