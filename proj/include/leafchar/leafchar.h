#ifndef LEAFCHAR_LEAFCHAR_H
#define LEAFCHAR_LEAFCHAR_H

/* C interface to the leafchar library. Handles are opaque; every handle
 * returned through an out-parameter must be released with its _free
 * function. Functions returning lc_status set a thread-local message
 * readable with lc_last_error() on failure. Strings returned by accessors
 * are owned by the handle and stay valid until it is freed. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LC_API __declspec(dllexport)
#else
#define LC_API __attribute__((visibility("default")))
#endif

typedef enum lc_status {
  LC_OK = 0,
  LC_ERR_INVALID_ARGUMENT,
  LC_ERR_PARSE,
  LC_ERR_UNKNOWN_SYMBOL,
  LC_ERR_CONTEXT_MISMATCH,
  LC_ERR_TRUNCATION_EXCEEDED,
  LC_ERR_MISSING_COMPONENT,
  LC_ERR_DIVISION_BY_ZERO,
  LC_ERR_ORDER_MISMATCH,
  LC_ERR_NOT_REGULAR,
  LC_ERR_NONZERO_BASE_POINT,
  LC_ERR_ZERO_SCALAR,
  LC_ERR_INDEX_OUT_OF_RANGE,
  LC_ERR_RESOURCE_BUDGET_EXCEEDED,
  LC_ERR_NOT_BASIC,
  LC_ERR_PRECISION_INSUFFICIENT,
  LC_ERR_MALFORMED_SITE,
  LC_ERR_MISSING_STRING,
  LC_ERR_CANDIDATE_NOT_CLOSED,
  LC_ERR_CANDIDATE_NOT_PERIODIC,
  LC_ERR_INTERNAL = 100
} lc_status;

typedef struct lc_report lc_report;
typedef struct lc_expr lc_expr;
typedef struct lc_jet lc_jet;

LC_API const char* lc_version(void);
/* Message of the last failed call on this thread, "" if none. */
LC_API const char* lc_last_error(void);
LC_API const char* lc_status_name(lc_status status);

/* Runs a subcommand (jet, wn, gk, reeb, cech, site, probe) with a JSON
 * object as configuration. A report is produced even when checks fail or
 * the configuration is rejected; inspect lc_report_exit_code. */
LC_API lc_status lc_run(const char* subcommand, const char* config_json, lc_report** out);
LC_API const char* lc_report_json(const lc_report* report);
/* Empty string when the subcommand has no table. */
LC_API const char* lc_report_csv(const lc_report* report);
LC_API const char* lc_report_text(const lc_report* report);
/* 0 all checks passed, 1 a check failed, 2 usage error. */
LC_API int lc_report_exit_code(const lc_report* report);
LC_API void lc_report_free(lc_report* report);

/* Rational function in the comma-separated variables. */
LC_API lc_status lc_expr_parse(const char* variables, const char* text, lc_expr** out);
LC_API lc_status lc_expr_derivative(const lc_expr* e, const char* variable, lc_expr** out);
LC_API lc_status lc_expr_add(const lc_expr* a, const lc_expr* b, lc_expr** out);
LC_API lc_status lc_expr_mul(const lc_expr* a, const lc_expr* b, lc_expr** out);
LC_API const char* lc_expr_string(const lc_expr* e);
/* 1 equal, 0 different, -1 error (contexts differ). */
LC_API int lc_expr_equal(const lc_expr* a, const lc_expr* b);
LC_API void lc_expr_free(lc_expr* e);

/* Exact jets (x_0, ..., x_N), entries given as rationals like "3/4". */
LC_API lc_status lc_jet_create(const char* const* entries, size_t count, lc_jet** out);
/* g after f. */
LC_API lc_status lc_jet_compose(const lc_jet* g, const lc_jet* f, lc_jet** out);
LC_API lc_status lc_jet_invert(const lc_jet* f, lc_jet** out);
LC_API size_t lc_jet_order(const lc_jet* j);
/* NULL if k is out of range. */
LC_API const char* lc_jet_entry(const lc_jet* j, size_t k);
LC_API void lc_jet_free(lc_jet* j);

#ifdef __cplusplus
}
#endif

#endif
