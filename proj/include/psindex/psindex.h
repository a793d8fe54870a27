#ifndef PSINDEX_H
#define PSINDEX_H

/* C interface to the psindex library.
 *
 * Every function returns a psx_status.  On failure the message of the most recent
 * error on the calling thread is available from psx_last_error(); parse errors also
 * record a 0-based offset into the expression text (psx_last_error_position).
 * Handles are opaque and owned by the caller; destroy functions accept NULL. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PSX_API __declspec(dllexport)
#else
#define PSX_API __attribute__((visibility("default")))
#endif

typedef enum psx_status {
  PSX_OK = 0,
  PSX_ERR_INPUT = 1,     /* invalid argument, config key or value */
  PSX_ERR_PARSE = 2,     /* expression syntax error */
  PSX_ERR_DOMAIN = 3,    /* evaluation outside the smooth set of rho */
  PSX_ERR_NUMERICAL = 4, /* internal consistency check failed */
  PSX_ERR_INTERNAL = 5
} psx_status;

typedef struct psx_config psx_config;
typedef struct psx_domain psx_domain;
typedef struct psx_result psx_result;

PSX_API const char* psx_version(void);
PSX_API const char* psx_status_name(psx_status s);
/* Process exit code for a status: 0, 2 (input/parse/domain) or 3 (numerical/internal). */
PSX_API int psx_exit_code(psx_status s);
PSX_API const char* psx_last_error(void);
PSX_API long long psx_last_error_position(void);

/* ---- configuration (flat key/value) ---- */
PSX_API psx_status psx_config_create(psx_config** out);
PSX_API void psx_config_destroy(psx_config* cfg);
PSX_API psx_status psx_config_set(psx_config* cfg, const char* key, const char* value);
/* Copies the effective value (default when unset) into buf; *needed receives the size
 * including the terminator. */
PSX_API psx_status psx_config_get(const psx_config* cfg, const char* key, char* buf, size_t len, size_t* needed);
PSX_API psx_status psx_config_load_file(psx_config* cfg, const char* path);
PSX_API size_t psx_config_key_count(void);
PSX_API const char* psx_config_key(size_t i);

/* ---- domains ---- */
PSX_API psx_status psx_domain_worm(double beta, double t_re, double t_im, psx_domain** out);
PSX_API psx_status psx_domain_ball(int n, psx_domain** out);
PSX_API psx_status psx_domain_ellipsoid(const double* coeffs, int n, psx_domain** out);
/* n = 0 infers the dimension from the expression. */
PSX_API psx_status psx_domain_expr(const char* text, int n, psx_domain** out);
PSX_API void psx_domain_destroy(psx_domain* d);
PSX_API int psx_domain_dim(const psx_domain* d);
/* x holds 2n reals (Re z1, Im z1, ...). */
PSX_API psx_status psx_domain_eval(const psx_domain* d, const double* x, size_t len, double* value);
/* Smallest tangential Levi eigenvalue at the first boundary point along anchor + s*dir. */
PSX_API psx_status psx_domain_boundary_point(const psx_domain* d, const double* anchor, const double* dir, size_t len,
                                             double* point, double* min_levi_eigenvalue);

/* ---- runs ---- */
/* Runs the configured command.  A result is produced even when the command fails;
 * the return value is the command's status. */
PSX_API psx_status psx_run(const psx_config* cfg, psx_result** out);
PSX_API void psx_result_destroy(psx_result* r);
PSX_API psx_status psx_result_status(const psx_result* r);
PSX_API int psx_result_exit_code(const psx_result* r);
PSX_API const char* psx_result_message(const psx_result* r);
PSX_API const char* psx_result_summary(const psx_result* r);
/* JSON text of the main report ("" when the command failed before producing one). */
PSX_API const char* psx_result_report(const psx_result* r);
PSX_API size_t psx_result_artifact_count(const psx_result* r);
PSX_API const char* psx_result_artifact_name(const psx_result* r, size_t i);
PSX_API const char* psx_result_artifact_path(const psx_result* r, size_t i);

#ifdef __cplusplus
}
#endif

#endif
