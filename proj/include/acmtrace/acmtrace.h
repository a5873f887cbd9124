/*
 * acmtrace C API.
 *
 * The engine lives behind an opaque model handle. Loading never fails for
 * model-level problems: the handle always carries the full diagnostic list
 * (parser, graph builder, rule engine), and the query entry points report
 * ACM_E_PARSE / ACM_E_MODEL / ACM_E_VALIDATION when the model is not in a
 * queryable state. Strings returned through char** out-parameters are
 * heap-allocated; release them with acm_string_free().
 *
 * All functions are thread-compatible: one model may be read from many
 * threads, but acm_last_error() is thread-local.
 */
#ifndef ACMTRACE_H
#define ACMTRACE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct acm_model acm_model;

typedef enum acm_status {
    ACM_OK = 0,
    ACM_E_IO = 1,         /* file could not be read */
    ACM_E_PARSE = 2,      /* syntax errors in the model source */
    ACM_E_MODEL = 3,      /* the trace graph could not be built */
    ACM_E_VALIDATION = 4, /* validation errors block this operation */
    ACM_E_ARGUMENT = 5,   /* unknown id, kind, format or bad parameter */
    ACM_E_INTERNAL = 6,
} acm_status;

const char* acm_version(void);

/* Message for the last failing call on this thread; empty if none. */
const char* acm_last_error(void);

/* Parses, builds and validates. Returns ACM_E_IO (and no handle) only when
 * the file cannot be read; any other problem is reported via diagnostics. */
acm_status acm_model_load_file(const char* path, acm_model** out);
acm_status acm_model_load_text(const char* text, const char* file_name, acm_model** out);
void acm_model_free(acm_model* model);

int acm_model_parse_ok(const acm_model* model);
int acm_model_build_ok(const acm_model* model);
size_t acm_model_artifact_count(const acm_model* model);
size_t acm_model_link_count(const acm_model* model);

size_t acm_model_diagnostic_count(const acm_model* model);
int acm_model_error_count(const acm_model* model);
int acm_model_warning_count(const acm_model* model);
/* "<file>:<line>:<col>: <severity>[<rule>]: <message>" */
acm_status acm_model_diagnostic_text(const acm_model* model, size_t index, char** out);
/* JSON array mirroring the diagnostic fields. */
acm_status acm_model_diagnostics_json(const acm_model* model, char** out);

/* Chain listing, one chain per line ("no chains\n" when empty). direction is
 * "forward" or "back"; to_kind is a DSL kind keyword or NULL; max_depth 0
 * means unlimited. *overflowed is set when the listing was truncated at
 * max_chains. */
acm_status acm_model_trace(const acm_model* model, const char* from_id, const char* direction,
                           const char* to_kind, int max_chains, int max_depth, char** out,
                           int* overflowed);

/* Rendered trace matrix; kinds are DSL keywords, format "csv", "html" or
 * "text". */
acm_status acm_model_matrix(const acm_model* model, const char* row_kind, const char* col_kind,
                            int cap, const char* format, char** out);

/* Data submodel report; format "text" or "json". */
acm_status acm_model_clusters(const acm_model* model, const char* format, char** out);

/* Graph export; format "json" (canonical document) or "dot". */
acm_status acm_model_export(const acm_model* model, const char* format, char** out);

/* Counts per artifact kind, per link kind and per layer. Needs a built
 * graph but no clean validation. */
acm_status acm_model_stats(const acm_model* model, char** out);

void acm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ACMTRACE_H */
