#include "psindex/psindex.h"

#include <cstring>
#include <memory>
#include <string>

#include "psindex/domain.hpp"
#include "psindex/errors.hpp"
#include "psindex/levi.hpp"
#include "psindex/run.hpp"
#include "psindex/sampling.hpp"

struct psx_config {
  psindex::RunConfig cfg;
};

struct psx_domain {
  psindex::DomainPtr d;
};

struct psx_result {
  psindex::RunOutcome outcome;
  psx_status status = PSX_OK;
};

namespace {

thread_local std::string g_error;
thread_local long long g_position = -1;

psx_status fail(psx_status s, const std::string& msg, long long pos = -1) {
  g_error = msg;
  g_position = pos;
  return s;
}

// Runs fn and converts exceptions into status codes.
template <class F>
psx_status guarded(F&& fn) {
  try {
    g_error.clear();
    g_position = -1;
    fn();
    return PSX_OK;
  } catch (const psindex::ParseError& e) {
    return fail(PSX_ERR_PARSE, e.what(), static_cast<long long>(e.position()));
  } catch (const psindex::InputError& e) {
    return fail(PSX_ERR_INPUT, e.what());
  } catch (const psindex::DomainError& e) {
    return fail(PSX_ERR_DOMAIN, e.what());
  } catch (const psindex::NumericalError& e) {
    return fail(PSX_ERR_NUMERICAL, e.what());
  } catch (const std::exception& e) {
    return fail(PSX_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PSX_ERR_INTERNAL, "unknown error");
  }
}

psx_status from_run_error(psindex::RunError e) {
  switch (e) {
    case psindex::RunError::None: return PSX_OK;
    case psindex::RunError::Input: return PSX_ERR_INPUT;
    case psindex::RunError::Parse: return PSX_ERR_PARSE;
    case psindex::RunError::Domain: return PSX_ERR_DOMAIN;
    case psindex::RunError::Numerical: return PSX_ERR_NUMERICAL;
    case psindex::RunError::Internal: return PSX_ERR_INTERNAL;
  }
  return PSX_ERR_INTERNAL;
}

#define PSX_REQUIRE(cond, msg) \
  if (!(cond)) return fail(PSX_ERR_INPUT, msg)

}  // namespace

extern "C" {

const char* psx_version(void) { return "1.0.0"; }

const char* psx_status_name(psx_status s) {
  switch (s) {
    case PSX_OK: return "ok";
    case PSX_ERR_INPUT: return "input error";
    case PSX_ERR_PARSE: return "parse error";
    case PSX_ERR_DOMAIN: return "domain error";
    case PSX_ERR_NUMERICAL: return "numerical error";
    case PSX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int psx_exit_code(psx_status s) {
  switch (s) {
    case PSX_OK: return 0;
    case PSX_ERR_INPUT:
    case PSX_ERR_PARSE:
    case PSX_ERR_DOMAIN: return 2;
    default: return 3;
  }
}

const char* psx_last_error(void) { return g_error.c_str(); }
long long psx_last_error_position(void) { return g_position; }

psx_status psx_config_create(psx_config** out) {
  PSX_REQUIRE(out, "null output pointer");
  return guarded([&] { *out = new psx_config(); });
}

void psx_config_destroy(psx_config* cfg) { delete cfg; }

psx_status psx_config_set(psx_config* cfg, const char* key, const char* value) {
  PSX_REQUIRE(cfg && key && value, "null argument");
  return guarded([&] { cfg->cfg.set(key, value); });
}

psx_status psx_config_get(const psx_config* cfg, const char* key, char* buf, size_t len, size_t* needed) {
  PSX_REQUIRE(cfg && key, "null argument");
  return guarded([&] {
    const std::string& v = cfg->cfg.get(key);
    if (needed) *needed = v.size() + 1;
    if (buf && len > 0) {
      const size_t n = std::min(len - 1, v.size());
      std::memcpy(buf, v.data(), n);
      buf[n] = '\0';
    }
  });
}

psx_status psx_config_load_file(psx_config* cfg, const char* path) {
  PSX_REQUIRE(cfg && path, "null argument");
  return guarded([&] { cfg->cfg.load_file(path); });
}

size_t psx_config_key_count(void) { return psindex::RunConfig::keys().size(); }

const char* psx_config_key(size_t i) {
  const auto& k = psindex::RunConfig::keys();
  return i < k.size() ? k[i].c_str() : nullptr;
}

psx_status psx_domain_worm(double beta, double t_re, double t_im, psx_domain** out) {
  PSX_REQUIRE(out, "null output pointer");
  return guarded([&] { *out = new psx_domain{psindex::make_worm(beta, {t_re, t_im})}; });
}

psx_status psx_domain_ball(int n, psx_domain** out) {
  PSX_REQUIRE(out, "null output pointer");
  return guarded([&] { *out = new psx_domain{psindex::make_ball(n)}; });
}

psx_status psx_domain_ellipsoid(const double* coeffs, int n, psx_domain** out) {
  PSX_REQUIRE(out && coeffs && n > 0, "invalid argument");
  return guarded([&] { *out = new psx_domain{psindex::make_ellipsoid(std::vector<double>(coeffs, coeffs + n))}; });
}

psx_status psx_domain_expr(const char* text, int n, psx_domain** out) {
  PSX_REQUIRE(out && text, "null argument");
  return guarded([&] { *out = new psx_domain{psindex::parse_expression(text, n)}; });
}

void psx_domain_destroy(psx_domain* d) { delete d; }

int psx_domain_dim(const psx_domain* d) { return d ? d->d->dim() : 0; }

psx_status psx_domain_eval(const psx_domain* d, const double* x, size_t len, double* value) {
  PSX_REQUIRE(d && x && value, "null argument");
  return guarded([&] { *value = d->d->value(std::span<const double>(x, len)); });
}

psx_status psx_domain_boundary_point(const psx_domain* d, const double* anchor, const double* dir, size_t len,
                                     double* point, double* min_levi_eigenvalue) {
  PSX_REQUIRE(d && anchor && dir && point, "null argument");
  return guarded([&] {
    const auto p = psindex::boundary_along_ray(*d->d, std::span<const double>(anchor, len), std::span<const double>(dir, len));
    const auto x = p.coords();
    std::copy(x.begin(), x.end(), point);
    if (min_levi_eigenvalue) {
      auto nd = psindex::levi_matrix(p.wirt, psindex::tangent_frame(p.wirt));
      *min_levi_eigenvalue = nd.min_eigenvalue();
    }
  });
}

psx_status psx_run(const psx_config* cfg, psx_result** out) {
  PSX_REQUIRE(cfg && out, "null argument");
  psx_status s = guarded([&] {
    auto r = std::make_unique<psx_result>();
    r->outcome = psindex::run(cfg->cfg);
    r->status = from_run_error(r->outcome.error);
    *out = r.release();
  });
  if (s != PSX_OK) return s;
  if ((*out)->status != PSX_OK) return fail((*out)->status, (*out)->outcome.message, (*out)->outcome.error_position);
  return PSX_OK;
}

void psx_result_destroy(psx_result* r) { delete r; }
psx_status psx_result_status(const psx_result* r) { return r ? r->status : PSX_ERR_INPUT; }
int psx_result_exit_code(const psx_result* r) { return r ? r->outcome.exit_code : 2; }
const char* psx_result_message(const psx_result* r) { return r ? r->outcome.message.c_str() : ""; }
const char* psx_result_summary(const psx_result* r) { return r ? r->outcome.summary.c_str() : ""; }
const char* psx_result_report(const psx_result* r) { return r ? r->outcome.report.c_str() : ""; }
size_t psx_result_artifact_count(const psx_result* r) { return r ? r->outcome.artifacts.size() : 0; }

const char* psx_result_artifact_name(const psx_result* r, size_t i) {
  return r && i < r->outcome.artifacts.size() ? r->outcome.artifacts[i].name.c_str() : nullptr;
}

const char* psx_result_artifact_path(const psx_result* r, size_t i) {
  return r && i < r->outcome.artifacts.size() ? r->outcome.artifacts[i].path.c_str() : nullptr;
}

}  // extern "C"
