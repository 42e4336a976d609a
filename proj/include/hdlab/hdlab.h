#ifndef HDLAB_H
#define HDLAB_H

/* C interface of libhdlab. Every call returns a status code; on failure the
 * message is available from hdlab_last_error() on the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * hdlab_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(HDLAB_BUILDING)
#define HDLAB_API __attribute__((visibility("default")))
#else
#define HDLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hdlab_status {
  HDLAB_OK = 0,
  HDLAB_ERR_UNSOLVABLE = 1,
  HDLAB_ERR_INVALID_FACTORS = 2,
  HDLAB_ERR_BASE_MISMATCH = 3,
  HDLAB_ERR_NOT_AN_ACTION = 4,
  HDLAB_ERR_DIM_MISMATCH = 5,
  HDLAB_ERR_SEARCH_EXHAUSTED = 6,
  HDLAB_ERR_LIFTING_UNVERIFIED = 7,
  HDLAB_ERR_NO_WITNESS = 8,
  HDLAB_ERR_NOT_EXACT_IN_QUOTIENT = 9,
  HDLAB_ERR_BUDGET_EXCEEDED = 10,
  HDLAB_ERR_NOT_ELL_PRIMARY = 11,
  HDLAB_ERR_FIELD_MISMATCH = 12,
  HDLAB_ERR_PARSE = 13,
  HDLAB_ERR_VALIDATION = 14,
  HDLAB_ERR_INVALID_ARGUMENT = 15,
  HDLAB_ERR_NULL_ARGUMENT = 100,
  HDLAB_ERR_INTERNAL = 101
} hdlab_status;

typedef struct hdlab_workspace hdlab_workspace;
typedef struct hdlab_reports hdlab_reports;
typedef struct hdlab_module hdlab_module;

typedef struct hdlab_run_options {
  uint64_t seed;
  long bound;      /* < 0: command default */
  long truncation; /* < 0: command default */
} hdlab_run_options;

HDLAB_API const char* hdlab_version(void);
HDLAB_API const char* hdlab_status_name(hdlab_status status);
HDLAB_API const char* hdlab_last_error(void);
HDLAB_API void hdlab_string_free(char* s);

/* Workspaces */
HDLAB_API hdlab_status hdlab_workspace_parse(const char* text, hdlab_workspace** out);
/* Appends "task <id> <command>" and revalidates. */
HDLAB_API hdlab_status hdlab_workspace_add_task(hdlab_workspace* ws, const char* id, const char* command);
HDLAB_API hdlab_status hdlab_workspace_format(const hdlab_workspace* ws, char** out);
HDLAB_API size_t hdlab_workspace_task_count(const hdlab_workspace* ws);
HDLAB_API void hdlab_workspace_free(hdlab_workspace* ws);

/* Runs every task; per-task failures are recorded in the reports. */
HDLAB_API hdlab_status hdlab_run(const hdlab_workspace* ws, const hdlab_run_options* options, hdlab_reports** out);
HDLAB_API size_t hdlab_reports_count(const hdlab_reports* reports);
HDLAB_API hdlab_status hdlab_reports_json(const hdlab_reports* reports, int timing, char** out);
HDLAB_API hdlab_status hdlab_reports_text(const hdlab_reports* reports, int timing, char** out);
/* 0 when every task passed, 1 otherwise. */
HDLAB_API int hdlab_reports_exit_status(const hdlab_reports* reports);
HDLAB_API void hdlab_reports_free(hdlab_reports* reports);

/* Modules */
HDLAB_API hdlab_status hdlab_module_finab(const long* factors, size_t count, hdlab_module** out);
/* Representation k^v1 -> k^v2 of A2 over F_p; edge is v2 x v1, row major. */
HDLAB_API hdlab_status hdlab_module_quiver(unsigned p, size_t v1, size_t v2, const long* edge, hdlab_module** out);
HDLAB_API hdlab_status hdlab_module_describe(const hdlab_module* m, char** out);
HDLAB_API void hdlab_module_free(hdlab_module* m);

/* Invariant factors as a JSON array of integers. */
HDLAB_API hdlab_status hdlab_hom_invariants(const hdlab_module* x, const hdlab_module* y, char** out);
HDLAB_API hdlab_status hdlab_ext_invariants(size_t degree, const hdlab_module* x, const hdlab_module* y, char** out);

/* dim_k of the cokernel of F - 1 on polynomials of degree < truncation, for a field label like "F_4". */
HDLAB_API hdlab_status hdlab_coker_F_minus_id(const char* field, size_t truncation, size_t* dimension_over_k);

#ifdef __cplusplus
}
#endif

#endif
