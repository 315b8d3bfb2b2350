/* C API for the mzmsim shared library.
 *
 * All entry points are exception-free and return a status code:
 *   MZM_OK          success
 *   MZM_ERR_USAGE   bad arguments (null pointers, unknown artifact)
 *   MZM_ERR_CONFIG  invalid configuration JSON
 *   MZM_ERR_NUMERIC numerical failure (annihilation, non-convergence)
 *   MZM_ERR_VERIFY  verification mismatch
 *
 * Results are returned through an opaque handle that owns the JSON record
 * and any CSV/trace artifacts; release it with mzm_result_release.
 */
#ifndef MZMSIM_H
#define MZMSIM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mzm_status {
  MZM_OK = 0,
  MZM_ERR_USAGE = 1,
  MZM_ERR_CONFIG = 2,
  MZM_ERR_NUMERIC = 3,
  MZM_ERR_VERIFY = 4
} mzm_status;

typedef struct mzm_result mzm_result;

/* Library semantic version, e.g. "1.0.0". Static storage; do not free. */
const char* mzm_version(void);

/* Message for the most recent failure on this thread, or "" if none.
 * Valid until the next API call on the same thread. */
const char* mzm_last_error(void);

/* Validates a configuration JSON document without running it. */
mzm_status mzm_validate_json(const char* config_json);

/* Runs the experiment described by the configuration JSON. On MZM_OK,
 * *out_result owns the outputs and must be released by the caller. */
mzm_status mzm_run_json(const char* config_json, mzm_result** out_result);

/* Full experiment record as a JSON document. Owned by the result handle. */
const char* mzm_result_record(const mzm_result* result);

/* Named artifact contents ("bloch.csv", "chi.csv", "trace.txt"), or NULL
 * if the run produced no artifact with that name. */
const char* mzm_result_artifact(const mzm_result* result, const char* name);

/* Number of artifacts and their names, for enumeration. */
int mzm_result_artifact_count(const mzm_result* result);
const char* mzm_result_artifact_name(const mzm_result* result, int index);

void mzm_result_release(mzm_result* result);

#ifdef __cplusplus
}
#endif

#endif /* MZMSIM_H */
