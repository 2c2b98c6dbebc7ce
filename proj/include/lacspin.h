/*
 * lac-spin-sim C API
 *
 * Simulates lock-in-detected level-anti-crossing spectra of an optically
 * pumped electron-nuclear spin pair in a modulated magnetic field.
 *
 * All entry points are thread-compatible; handles must not be shared
 * between threads without external synchronization. Functions returning
 * lac_status never throw; on failure lac_last_error() holds a message for
 * the calling thread.
 */
#ifndef LACSPIN_H
#define LACSPIN_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lac_status {
  LAC_OK = 0,
  LAC_ERR_PARSE = 1,
  LAC_ERR_CONVERGENCE = 2,
  LAC_ERR_STEADY_STATE = 3,
  LAC_ERR_IO = 4,
  LAC_ERR_INVALID_ARGUMENT = 5,
  LAC_ERR_INTERNAL = 6
} lac_status;

typedef struct lac_config lac_config; /* opaque parsed run configuration */
typedef struct lac_result lac_result; /* opaque run outcome */

/* Library semantic version, e.g. "0.1.0". */
const char* lac_version(void);

/* Message describing the most recent failure on this thread. */
const char* lac_last_error(void);

/* Parse a configuration from text or from a file. On success *out owns a
 * new handle that must be released with lac_config_free. */
lac_status lac_config_parse_string(const char* text, lac_config** out);
lac_status lac_config_parse_file(const char* path, lac_config** out);
void lac_config_free(lac_config* config);

/* Override the CSV output path of a parsed configuration. */
lac_status lac_config_set_output(lac_config* config, const char* path);

/* Execute the configured run: computes the requested mode, writes the CSV
 * (and plot data when enabled) and returns a result handle. threads = 0
 * selects the hardware concurrency. */
lac_status lac_run(const lac_config* config, int threads, int verbose,
                   lac_result** out);
void lac_result_free(lac_result* result);

/* Human-readable run summary, one line per index. */
int lac_result_summary_count(const lac_result* result);
const char* lac_result_summary_line(const lac_result* result, int index);

/* The data table that was written as CSV. */
int lac_result_rows(const lac_result* result);
int lac_result_cols(const lac_result* result);
const char* lac_result_col_name(const lac_result* result, int col);
double lac_result_cell(const lac_result* result, int row, int col);

/* Path of the CSV file the run produced. */
const char* lac_result_csv_path(const lac_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LACSPIN_H */
