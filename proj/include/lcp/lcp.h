#ifndef LCP_LCP_H_
#define LCP_LCP_H_

/* C interface to the lexical complexity toolkit.
 *
 * Every fallible call returns an lcp_status. On failure lcp_last_error()
 * holds a one-line message for the calling thread until its next call.
 * Handles are opaque; free each one with its matching *_free function.
 * Output path arguments accept NULL or "-" for standard output. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LCP_BUILDING_LIBRARY)
#    define LCP_API __declspec(dllexport)
#  else
#    define LCP_API __declspec(dllimport)
#  endif
#else
#  define LCP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lcp_status {
  LCP_OK = 0,
  LCP_ERR_INVALID_ARGUMENT = 1,
  LCP_ERR_RESOURCE = 2,
  LCP_ERR_FORMAT = 3,
  LCP_ERR_CONFIG = 4,
  LCP_ERR_DATA = 5,
  LCP_ERR_INCONSISTENT_COUNTS = 6,
  LCP_ERR_TRAINING = 7,
  LCP_ERR_UNDEFINED_CORRELATION = 8,
  LCP_ERR_INTERNAL = 9
} lcp_status;

typedef struct lcp_pipeline lcp_pipeline;
typedef struct lcp_params lcp_params;
typedef struct lcp_model lcp_model;

LCP_API const char* lcp_version(void);
LCP_API const char* lcp_status_name(lcp_status status);
LCP_API const char* lcp_last_error(void);

/* level: 0 info, 1 warning. Passing NULL restores logging to stderr. */
typedef void (*lcp_log_fn)(int level, const char* message, void* user);
LCP_API void lcp_set_log_callback(lcp_log_fn fn, void* user);

/* Strings returned through char** are owned by the caller. */
LCP_API void lcp_string_free(char* s);

/* ---- corpus statistics and association ---- */

/* Counts a one-sentence-per-line text file and writes
 * <prefix>.unigrams.tsv, <prefix>.bigrams.tsv and <prefix>.meta.json. */
LCP_API lcp_status lcp_count_corpus(const char* input_path, const char* out_prefix, size_t workers);

#define LCP_NUM_ASSOC_MEASURES 8

typedef struct lcp_assoc_scores {
  /* pmi, t_score, z_score, g2, simple_ll, dice, dp_2_given_1, dp_1_given_2 */
  double value[LCP_NUM_ASSOC_MEASURES];
  int present[LCP_NUM_ASSOC_MEASURES];
} lcp_assoc_scores;

LCP_API const char* lcp_assoc_measure_name(size_t index);

/* Scores one pair from its counts: word frequencies, pair frequency and the
 * number of bigram tokens. */
LCP_API lcp_status lcp_assoc_from_counts(double f1, double f2, double f12, double n, lcp_assoc_scores* out);

/* Reads `word1<TAB>word2` lines (an optional header row naming word1/word2 is
 * skipped) and writes one row of eight measures per pair, empty for missing. */
LCP_API lcp_status lcp_assoc_batch(const char* counts_prefix, const char* pairs_path, const char* out_path);

/* ---- feature pipeline ---- */

/* manifest_path may be NULL when the schema config names its manifest. */
LCP_API lcp_status lcp_pipeline_open(const char* schema_path, const char* manifest_path, lcp_pipeline** out);
LCP_API void lcp_pipeline_free(lcp_pipeline* pipeline);
LCP_API size_t lcp_pipeline_num_features(const lcp_pipeline* pipeline);
/* Valid while the pipeline lives; NULL when index is out of range. */
LCP_API const char* lcp_pipeline_feature_name(const lcp_pipeline* pipeline, size_t index);

/* Dataset TSV in, feature matrix TSV out: header = feature names, one row per
 * instance in input order, empty field for a missing value. */
LCP_API lcp_status lcp_featurize(const lcp_pipeline* pipeline, const char* data_path, const char* out_path,
                                 size_t workers);

/* ---- model parameters ---- */

LCP_API lcp_status lcp_params_create(lcp_params** out);
LCP_API lcp_status lcp_params_load(const char* json_path, lcp_params** out);
/* Sets one parameter from its text form, e.g. ("num_iterations", "200"). */
LCP_API lcp_status lcp_params_set(lcp_params* params, const char* key, const char* value);
LCP_API void lcp_params_free(lcp_params* params);

/* ---- models ---- */

/* Trains on a labeled dataset featurized through the pipeline. The pipeline
 * configuration is stored in the model so predict can featurize raw data. */
LCP_API lcp_status lcp_train(const lcp_pipeline* pipeline, const char* data_path, const lcp_params* params,
                             size_t workers, lcp_model** out);

/* Trains on a dense row-major matrix; NaN marks a missing value. */
LCP_API lcp_status lcp_train_matrix(const double* values, size_t rows, size_t cols,
                                    const char* const* feature_names, const double* targets,
                                    const lcp_params* params, size_t workers, lcp_model** out);

LCP_API lcp_status lcp_model_load(const char* path, lcp_model** out);
LCP_API lcp_status lcp_model_save(const lcp_model* model, const char* path);
LCP_API lcp_status lcp_model_to_json(const lcp_model* model, char** out);
LCP_API void lcp_model_free(lcp_model* model);
LCP_API size_t lcp_model_num_trees(const lcp_model* model);
LCP_API size_t lcp_model_num_features(const lcp_model* model);

LCP_API lcp_status lcp_model_predict_row(const lcp_model* model, const double* row, size_t n, double* out);

/* Accepts a dataset TSV (featurized with the model's stored pipeline, or with
 * `pipeline` when not NULL) or a feature matrix TSV. Writes
 * `id<TAB>prediction`; matrix rows are identified by their 0-based index. */
LCP_API lcp_status lcp_predict(const lcp_model* model, const lcp_pipeline* pipeline, const char* data_path,
                               const char* out_path, size_t workers);

/* ---- evaluation ---- */

typedef struct lcp_cv_options {
  size_t folds;          /* default 9 */
  uint64_t seed;         /* fold assignment seed, default 0 */
  size_t workers;        /* folds run concurrently, default 1 */
  int pooled;            /* headline r over pooled out-of-fold predictions */
  int group_by_target;   /* keep repeated targets in one fold */
  int stratify_corpus;   /* balance corpora across folds */
} lcp_cv_options;

LCP_API void lcp_cv_options_init(lcp_cv_options* options);

/* Writes a JSON report with per-fold and mean r. */
LCP_API lcp_status lcp_cv(const lcp_pipeline* pipeline, const char* data_path, const lcp_params* params,
                          const lcp_cv_options* options, const char* out_path);

/* groups: comma-separated selectors (length, corpus, freq, norms, psych,
 * assoc). test_path may be NULL. Writes a TSV table. */
LCP_API lcp_status lcp_ablate(const lcp_pipeline* pipeline, const char* data_path, const char* groups,
                              const char* test_path, const lcp_params* params, const lcp_cv_options* options,
                              const char* out_path);

/* Target repetition statistics of a labeled dataset as JSON. */
LCP_API lcp_status lcp_repetition_report(const char* data_path, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif  /* LCP_LCP_H_ */
