/*
 * specrisk - portfolio risk forecasting from historical equity returns.
 *
 * C API over the C++ core: opaque handles, status-code returns, and a
 * thread-local error message. Every object returned through an out-parameter
 * is owned by the caller and released with the matching *_free function.
 * Handles are immutable once created and may be shared across threads.
 */
#ifndef SPECRISK_H
#define SPECRISK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SPECRISK_API __declspec(dllexport)
#else
#define SPECRISK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sr_status {
  SR_OK = 0,
  SR_ERR_IO = 1,
  SR_ERR_PARSE = 2,
  SR_ERR_INVALID_ARGUMENT = 3,
  SR_ERR_PRECONDITION = 4,
  SR_ERR_EMPTY_UNIVERSE = 5,
  SR_ERR_NUMERIC = 6,
  SR_ERR_INFEASIBLE = 7,
  SR_ERR_DOMAIN = 8,
  SR_ERR_UNKNOWN = 9
} sr_status;

/* Message describing the calling thread's most recent failure. */
SPECRISK_API const char* sr_last_error(void);
SPECRISK_API const char* sr_version(void);

/* Release buffers and strings handed out through out-parameters. */
SPECRISK_API void sr_buffer_free(double* buffer);
SPECRISK_API void sr_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Market data                                                          */

typedef struct sr_price_panel sr_price_panel;
typedef struct sr_return_panel sr_return_panel;

/* layout: "long" (date,ticker,close) or "wide" (date,<t1>,...).
 * missing_sentinel: cell text treated as a missing mark; NULL or "" means
 * only empty cells. */
SPECRISK_API sr_status sr_price_panel_read(const char* path, const char* layout,
                                           const char* missing_sentinel,
                                           sr_price_panel** out);
SPECRISK_API void sr_price_panel_free(sr_price_panel* panel);
SPECRISK_API size_t sr_price_panel_dates(const sr_price_panel* panel);
SPECRISK_API size_t sr_price_panel_assets(const sr_price_panel* panel);
SPECRISK_API size_t sr_price_panel_missing(const sr_price_panel* panel);
SPECRISK_API const char* sr_price_panel_ticker(const sr_price_panel* panel, size_t index);
/* Writes the ISO-8601 date into `buffer` (size >= 11 incl. terminator). */
SPECRISK_API sr_status sr_price_panel_date(const sr_price_panel* panel, size_t index,
                                           char* buffer, size_t size);
SPECRISK_API sr_status sr_price_panel_write(const sr_price_panel* panel, const char* path,
                                            const char* layout);
SPECRISK_API sr_status sr_price_panel_filter_liquid(const sr_price_panel* panel,
                                                    sr_price_panel** out);
/* Inclusive [begin, end] slice; dates are ISO-8601 strings. */
SPECRISK_API sr_status sr_price_panel_slice(const sr_price_panel* panel, const char* begin,
                                            const char* end, sr_price_panel** out);

SPECRISK_API sr_status sr_log_returns(const sr_price_panel* panel, sr_return_panel** out);
SPECRISK_API void sr_return_panel_free(sr_return_panel* panel);
SPECRISK_API size_t sr_return_panel_obs(const sr_return_panel* panel);
SPECRISK_API size_t sr_return_panel_assets(const sr_return_panel* panel);
SPECRISK_API double sr_return_panel_value(const sr_return_panel* panel, size_t obs,
                                          size_t asset);
SPECRISK_API double sr_return_panel_q(const sr_return_panel* panel);

/* ------------------------------------------------------------------ */
/* Marchenko-Pastur reference law                                       */

SPECRISK_API sr_status sr_mp_bounds(double q, double sigma2, double* lower, double* upper);
SPECRISK_API sr_status sr_mp_density(double lambda, double q, double sigma2, double* out);
SPECRISK_API sr_status sr_mp_cdf(double lambda, double q, double sigma2, double* out);
SPECRISK_API sr_status sr_mp_quantile(double u, double q, double sigma2, double* out);

/* ------------------------------------------------------------------ */
/* Correlation and spectral analysis                                    */

typedef struct sr_corr sr_corr;
typedef struct sr_spectrum sr_spectrum;

typedef enum sr_band { SR_BAND_BELOW = 0, SR_BAND_NOISE = 1, SR_BAND_ABOVE = 2 } sr_band;

SPECRISK_API sr_status sr_pearson(const sr_return_panel* panel, sr_corr** out);
SPECRISK_API void sr_corr_free(sr_corr* corr);
SPECRISK_API size_t sr_corr_size(const sr_corr* corr);
SPECRISK_API double sr_corr_value(const sr_corr* corr, size_t row, size_t col);
SPECRISK_API const char* sr_corr_ticker(const sr_corr* corr, size_t index);
SPECRISK_API int sr_corr_is_cleaned(const sr_corr* corr);
SPECRISK_API double sr_corr_unit_diag_deviation(const sr_corr* corr);
SPECRISK_API sr_status sr_corr_write_csv(const sr_corr* corr, const char* path);

SPECRISK_API sr_status sr_decompose(const sr_corr* corr, double q, double sigma2,
                                    sr_spectrum** out);
SPECRISK_API void sr_spectrum_free(sr_spectrum* spectrum);
SPECRISK_API size_t sr_spectrum_size(const sr_spectrum* spectrum);
SPECRISK_API double sr_spectrum_eigenvalue(const sr_spectrum* spectrum, size_t index);
SPECRISK_API sr_band sr_spectrum_band(const sr_spectrum* spectrum, size_t index);
/* Entry `component` of eigenvector `index` (0 = largest eigenvalue). */
SPECRISK_API double sr_spectrum_eigenvector(const sr_spectrum* spectrum, size_t component,
                                            size_t index);
SPECRISK_API sr_status sr_spectrum_mean_noise(const sr_spectrum* spectrum, double* out);
SPECRISK_API double sr_spectrum_band_lower(const sr_spectrum* spectrum);
SPECRISK_API double sr_spectrum_band_upper(const sr_spectrum* spectrum);
SPECRISK_API sr_status sr_spectrum_write_csv(const sr_spectrum* spectrum, const char* path);

/* Noise-band average replacement; trace-conserving. */
SPECRISK_API sr_status sr_clean(const sr_spectrum* spectrum, sr_corr** out);

/* Pooled eigenvalues of n_sims column-shuffled copies of the panel.
 * *out gets n_sims * N values (simulation-major), caller frees. */
SPECRISK_API sr_status sr_shuffle_eigenvalues(const sr_return_panel* panel, int n_sims,
                                              uint64_t seed, double** out, size_t* out_len);

SPECRISK_API sr_status sr_ks_one_sample(const double* sample, size_t n, double q,
                                        double sigma2, double* statistic, double* p_value,
                                        double* n_effective);
SPECRISK_API sr_status sr_ks_two_sample(const double* a, size_t n_a, const double* b,
                                        size_t n_b, double* statistic, double* p_value,
                                        double* n_effective);

/* *out gets 2*n values: (reference quantile, sample quantile) pairs. */
SPECRISK_API sr_status sr_qq_points(const double* sample, size_t n, double q, double sigma2,
                                    double** out, size_t* out_pairs);

/* ------------------------------------------------------------------ */
/* Regression (market-mode removal)                                     */

typedef struct sr_fit sr_fit;

SPECRISK_API sr_status sr_fit_single_index(const sr_return_panel* panel,
                                           const double* index_values, size_t index_len,
                                           sr_fit** out);
/* Index from the eigenvector of the largest eigenvalue; *out gets the L
 * index returns, caller frees. */
SPECRISK_API sr_status sr_eigen_market_index(const sr_return_panel* panel,
                                             const sr_spectrum* spectrum, double** out,
                                             size_t* out_len);
SPECRISK_API void sr_fit_free(sr_fit* fit);
SPECRISK_API double sr_fit_intercept(const sr_fit* fit, size_t asset);
SPECRISK_API double sr_fit_slope(const sr_fit* fit, size_t asset);
SPECRISK_API sr_status sr_fit_residual_panel(const sr_fit* fit, sr_return_panel** out);

/* ------------------------------------------------------------------ */
/* Portfolios                                                           */

typedef struct sr_frontier sr_frontier;
typedef struct sr_report sr_report;

/* The four-way method switch plus solver/report knobs. cleaning/regression
 * are 0/1; upper_bound may be HUGE_VAL for an uncapped long position. */
typedef struct sr_method_config {
  int cleaning;
  int regression;
  double lower_bound;
  double upper_bound;
  int grid_points;
  int bin_count;
  uint64_t seed;
} sr_method_config;

/* Defaults: raw method, no-short bounds [0,1], 100 grid points, 50 bins. */
SPECRISK_API sr_method_config sr_method_default(void);

/* Frontier over one panel: correlation per the method; means and std-devs
 * from the same panel. */
SPECRISK_API sr_status sr_frontier_trace(const sr_return_panel* panel,
                                         const sr_method_config* method, sr_frontier** out);
/* Perfect-forecast pair: correlation from each window, means/std-devs from
 * the target window on both sides, one shared return grid. */
SPECRISK_API sr_status sr_frontier_pair(const sr_return_panel* previous,
                                        const sr_return_panel* target,
                                        const sr_method_config* method, sr_frontier** pred,
                                        sr_frontier** real, sr_corr** pred_corr,
                                        sr_corr** real_corr);
SPECRISK_API void sr_frontier_free(sr_frontier* frontier);
SPECRISK_API size_t sr_frontier_points(const sr_frontier* frontier);
SPECRISK_API size_t sr_frontier_assets(const sr_frontier* frontier);
SPECRISK_API double sr_frontier_target(const sr_frontier* frontier, size_t index);
SPECRISK_API double sr_frontier_risk(const sr_frontier* frontier, size_t index);
SPECRISK_API int sr_frontier_feasible(const sr_frontier* frontier, size_t index);
SPECRISK_API double sr_frontier_weight(const sr_frontier* frontier, size_t index,
                                       size_t asset);
SPECRISK_API double sr_frontier_gmv_return(const sr_frontier* frontier);
SPECRISK_API sr_status sr_frontier_write_csv(const sr_frontier* frontier, const char* path);
SPECRISK_API sr_status sr_frontier_write_json(const sr_frontier* frontier, const char* path);

/* ------------------------------------------------------------------ */
/* Forecast-quality metrics                                             */

SPECRISK_API sr_status sr_compare(const sr_frontier* pred, const sr_frontier* real,
                                  const sr_corr* pred_corr, const sr_corr* real_corr,
                                  const sr_method_config* method, sr_report** out);
SPECRISK_API void sr_report_free(sr_report* report);
SPECRISK_API double sr_report_ag(const sr_report* report);
SPECRISK_API double sr_report_mse(const sr_report* report);
SPECRISK_API double sr_report_angle_deg(const sr_report* report);
SPECRISK_API double sr_report_dist(const sr_report* report);
SPECRISK_API double sr_report_dkl(const sr_report* report);
SPECRISK_API int sr_report_n_points(const sr_report* report);
SPECRISK_API sr_status sr_report_write_json(const sr_report* report, const char* path);

SPECRISK_API sr_status sr_matrix_distance(const sr_corr* a, const sr_corr* b, double* out);
SPECRISK_API sr_status sr_kl_distance(const sr_corr* a, const sr_corr* b, int bin_count,
                                      double* out);

/* ------------------------------------------------------------------ */
/* Command runners (what the CLI calls)                                 */

/* One options struct for every subcommand; a runner ignores fields it does
 * not use. Paths are required where the command reads/writes them; ranges
 * are "YYYY-MM-DD:YYYY-MM-DD". method_mask selects the pair/rolling method
 * subset (bit 0 raw, 1 clean, 2 regress, 3 clean+regress; 0 = all four). */
typedef struct sr_run_options {
  const char* input;
  const char* layout;            /* "long" | "wide" */
  const char* missing_sentinel;  /* may be NULL */
  const char* out_dir;
  sr_method_config method;
  unsigned method_mask;
  int window_length;
  int step;
  int n_sims;
  const char* previous_range;    /* pair only */
  const char* target_range;      /* pair only */
  const char* index_path;        /* optional external index */
  const char* command_echo;      /* recorded in the manifest */
} sr_run_options;

SPECRISK_API sr_run_options sr_run_options_default(void);

/* Each runner writes its artifact directory and, on success, stores a
 * printable summary in *summary (caller frees with sr_string_free). */
SPECRISK_API sr_status sr_cmd_ingest(const sr_run_options* options, char** summary);
SPECRISK_API sr_status sr_cmd_spectrum(const sr_run_options* options, char** summary);
SPECRISK_API sr_status sr_cmd_clean(const sr_run_options* options, char** summary);
SPECRISK_API sr_status sr_cmd_residuals(const sr_run_options* options, char** summary);
SPECRISK_API sr_status sr_cmd_frontier(const sr_run_options* options, char** summary);
SPECRISK_API sr_status sr_cmd_pair(const sr_run_options* options, char** summary);
SPECRISK_API sr_status sr_cmd_rolling(const sr_run_options* options, char** summary);
SPECRISK_API sr_status sr_cmd_simulate(const sr_run_options* options, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* SPECRISK_H */
