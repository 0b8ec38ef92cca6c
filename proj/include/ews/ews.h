/* Early-warning-system toolkit: C interface to the bank-distress scoring
 * library. All functions return ews_status; outputs come back through
 * pointer parameters. Strings returned through char** are malloc'd and must
 * be released with ews_string_free. Handles are opaque and freed with their
 * matching *_free call. On any non-OK status, ews_last_error() describes the
 * failure for the calling thread. */
#ifndef EWS_H
#define EWS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ews_status {
  EWS_OK = 0,
  EWS_ERR_FILE_NOT_FOUND = 1,
  EWS_ERR_IO = 2,
  EWS_ERR_SCHEMA = 3,
  EWS_ERR_DUPLICATE_KEY = 4,
  EWS_ERR_INVALID_ARGUMENT = 5,
  EWS_ERR_EMPTY_WINDOW = 6,
  EWS_ERR_DIVISION_BY_ZERO = 7,
  EWS_ERR_NON_ADJACENT_PERIODS = 8,
  EWS_ERR_PERIOD_MISMATCH = 9,
  EWS_ERR_TOO_FEW_SAMPLES = 10,
  EWS_ERR_DEGENERATE_CLASSES = 11,
  EWS_ERR_SINGULAR_SCATTER = 12,
  EWS_ERR_NO_FEASIBLE_THRESHOLD = 13,
  EWS_ERR_HORIZON_MISMATCH = 14,
  EWS_ERR_NON_POSITIVE_DEFINITE = 15,
  EWS_ERR_INVALID_CONFIG = 16,
  EWS_ERR_INTERNAL = 17
} ews_status;

const char* ews_status_name(ews_status status);

/* Message for the most recent failure on this thread; never NULL. */
const char* ews_last_error(void);

void ews_string_free(char* s);

/* ---- datasets ------------------------------------------------------- */

typedef struct ews_dataset ews_dataset;

/* lenient != 0 skips bad CSV rows (collected as diagnostics) instead of
 * failing the whole file. */
ews_status ews_dataset_load(const char* banks_csv_path, const char* macro_csv_path, int lenient,
                            ews_dataset** out);
void ews_dataset_free(ews_dataset* ds);

/* Any output pointer may be NULL. */
ews_status ews_dataset_counts(const ews_dataset* ds, long* bank_rows, long* macro_rows,
                              long* exclusions, long* diagnostics);

ews_status ews_dataset_write(const ews_dataset* ds, const char* banks_csv_path,
                             const char* macro_csv_path);

/* CSV `bank_id,kept,reason` of banks kept/dropped by completeness over the
 * window ("YYYY-H1..YYYY-H2"), allowing up to max_missing absent periods. */
ews_status ews_dataset_filter_complete(const ews_dataset* ds, const char* window, int max_missing,
                                       char** out_csv);

/* ---- models ---------------------------------------------------------- */

typedef struct ews_model ews_model;

ews_status ews_model_load(const char* path, ews_model** out);
ews_status ews_model_save(const ews_model* m, const char* path);
void ews_model_free(ews_model* m);

/* weights[10], order f1..f5, m1..m5. */
ews_status ews_model_weights(const ews_model* m, double* weights);
ews_status ews_model_threshold(const ews_model* m, double* threshold);
ews_status ews_model_regularization(const ews_model* m, double* regularization);

/* Fits the discriminant on every usable bank-period of the dataset. A bank
 * is labeled distressed when it is intervened on or before
 * label_intervened_by ("YYYY-H1"). window may be NULL (whole panel) or
 * "FROM..TO" to restrict the fitting sample. When tune_threshold != 0 the
 * midpoint threshold is replaced by the error-minimizing one over the
 * training scores; typeI_below_typeII additionally constrains the tuned
 * threshold so missed bankruptcies stay at or below false alarms (rate-wise).
 * n_healthy/n_distressed (NULL ok) receive the class sizes. */
ews_status ews_fit(const ews_dataset* ds, const char* label_intervened_by, const char* window,
                   int tune_threshold, int typeI_below_typeII, long* n_healthy, long* n_distressed,
                   ews_model** out);

/* x[10] in indicator order f1..f5, m1..m5. */
ews_status ews_score_vector(const ews_model* m, const double* x, double* score);
/* *distressed = 1 when score >= threshold (boundary inclusive), else 0. */
ews_status ews_classify_vector(const ews_model* m, const double* x, int* distressed);

/* Scores every bank at one period. CSV `bank_id,period,score`, plus a
 * trailing `,decision` column (Distressed/Healthy) when with_decision. */
ews_status ews_score_period_csv(const ews_model* m, const ews_dataset* ds, const char* period,
                                int with_decision, char** out_csv);

/* ---- probe ----------------------------------------------------------- */

typedef struct ews_probe_report ews_probe_report;

ews_status ews_probe_run(const ews_model* m, const ews_dataset* ds, const char* from,
                         const char* to, ews_probe_report** out);
void ews_probe_free(ews_probe_report* r);

/* Any output pointer may be NULL. */
ews_status ews_probe_counts(const ews_probe_report* r, long* entries, long* flagged, long* alerts,
                            long* exceptions);

/* entries.csv, alerts.csv, yearly.csv, exceptions.csv under dir. */
ews_status ews_probe_write_reports(const ews_probe_report* r, const char* dir);

ews_status ews_probe_entries_csv(const ews_probe_report* r, char** out_csv);
ews_status ews_probe_alerts_csv(const ews_probe_report* r, char** out_csv);
ews_status ews_probe_yearly_csv(const ews_probe_report* r, char** out_csv);

/* ---- study helpers ---------------------------------------------------- */

/* Greedy capitalization pairing straight from a banks CSV (no macro data
 * needed). out_csv: `intervened_id,active_id`. out_warning (NULL ok) is set
 * to a message when intervened banks were left unmatched, otherwise to NULL. */
ews_status ews_pair_csv(const char* banks_csv_path, int lenient, char** out_csv,
                        char** out_warning);

/* Indicator dump `bank_id,period,f1..f5,m1..m5` for every usable
 * bank-period; from/to (NULL ok) restrict the period range. */
ews_status ews_indicators_csv(const ews_dataset* ds, const char* from, const char* to,
                              char** out_csv);

/* Fits one model per horizon (4/3/2/1 years before `crisis`) on that
 * horizon's one-year window and renders the combined precision table. */
ews_status ews_horizon_table(const ews_dataset* ds, const char* crisis, char** out_table);

/* Renders a probe entries CSV file as "text" or "csv". */
ews_status ews_report_render(const char* probe_entries_csv_path, const char* format, char** out);

/* ---- synthetic data --------------------------------------------------- */

/* Deterministic synthetic panel (banks.csv, macro.csv under out_dir). start
 * may be NULL (defaults to 1996-H1). With n_banks >= 2 the panel embeds one
 * scripted bank that crosses the bankruptcy threshold once, late in the
 * panel, and is marked intervened the following period. */
ews_status ews_synth_panel(uint64_t seed, long n_banks, long n_periods, const char* start,
                           const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* EWS_H */
