#ifndef CODEGRAPH_H
#define CODEGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum CgStatus {
  CG_STATUS_OK = 0,
  CG_STATUS_NULL_POINTER = 1,
  CG_STATUS_INVALID_UTF8 = 2,
  CG_STATUS_PARSE_ERROR = 3,
  // No closed form covers the input.
  CG_STATUS_INAPPLICABLE = 4,
  CG_STATUS_BUDGET_EXCEEDED = 5,
  CG_STATUS_INVALID_ARGUMENT = 6,
  // A Rust panic was caught at the boundary.
  CG_STATUS_INTERNAL = 7,
} CgStatus;

typedef enum CgFamily {
  CG_FAMILY_THRESHOLD = 0,
  CG_FAMILY_CHAIN = 1,
} CgFamily;

typedef enum CgOracleMode {
  CG_ORACLE_MODE_OFF = 0,
  CG_ORACLE_MODE_TRY = 1,
  CG_ORACLE_MODE_REQUIRE = 2,
} CgOracleMode;

// Opaque generating code.
typedef struct CgCode CgCode;

// Opaque graph.
typedef struct CgGraph CgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never free the result.
const char *cg_status_message(enum CgStatus status);

// Parses a NUL-terminated code such as `"0^3 1^2 0 1"`.
//
// # Safety
// `text` must be a valid C string; `out` must be writable.
enum CgStatus cg_code_parse(const char *text, struct CgCode **out);

// # Safety
// `code` must come from `cg_code_parse` and not be freed twice. Null is a no-op.
void cg_code_free(struct CgCode *code);

// Number of vertices the code generates.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum CgStatus cg_code_len(const struct CgCode *code, size_t *out);

// Canonical compressed form, e.g. `"(0^3 1^2)(0 1)"`.
//
// # Safety
// `code` must be a live handle; `out` must be writable. Free the result
// with `cg_string_free`.
enum CgStatus cg_code_to_string(const struct CgCode *code, char **out);

// # Safety
// `s` must come from this library. Null is a no-op.
void cg_string_free(char *s);

// # Safety
// `code` must be a live handle; `out` must be writable.
enum CgStatus cg_graph_build(const struct CgCode *code, enum CgFamily family, struct CgGraph **out);

// # Safety
// `graph` must come from `cg_graph_build` and not be freed twice. Null is a no-op.
void cg_graph_free(struct CgGraph *graph);

// # Safety
// `graph` must be a live handle; `out` must be writable.
enum CgStatus cg_graph_order(const struct CgGraph *graph, size_t *out);

// # Safety
// `graph` must be a live handle; `out` must be writable.
enum CgStatus cg_graph_edge_count(const struct CgGraph *graph, size_t *out);

// `true` when `u` and `v` are adjacent.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum CgStatus cg_graph_has_edge(const struct CgGraph *graph, size_t u, size_t v, bool *out);

// Metric dimension from the closed form.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum CgStatus cg_beta(const struct CgCode *code, enum CgFamily family, uint64_t *out);

// Threshold dimension of the threshold graph of `code`. Returns
// `Inapplicable` when no clause of the closed form applies.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum CgStatus cg_tau(const struct CgCode *code, uint64_t *out);

// Restricted threshold dimension of the threshold graph of `code`.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum CgStatus cg_tau_r(const struct CgCode *code, uint64_t *out);

// L(2,1) labeling number from the closed form.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum CgStatus cg_lambda(const struct CgCode *code, enum CgFamily family, uint64_t *out);

// Exact metric dimension by exhaustive search, refused above `max_n`
// vertices.
//
// # Safety
// `graph` must be a live handle; `out` must be writable.
enum CgStatus cg_exact_metric_dimension(const struct CgGraph *graph, size_t max_n, uint64_t *out);

// Full invariant report as JSON, oracles run with default budgets.
//
// # Safety
// `code` must be a live handle; `out` must be writable. Free the result
// with `cg_string_free`.
enum CgStatus cg_report_json(const struct CgCode *code,
                             enum CgFamily family,
                             enum CgOracleMode oracle,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CODEGRAPH_H */
