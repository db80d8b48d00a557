#include "specrisk.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/markowitz.hpp"
#include "core/marketdata.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"
#include "core/rmt.hpp"
#include "core/singleindex.hpp"
#include "core/version.hpp"

using specrisk::Date;
using specrisk::DateRange;
using specrisk::Error;
using specrisk::ErrorCode;

struct sr_price_panel {
  specrisk::marketdata::PricePanel v;
};
struct sr_return_panel {
  specrisk::marketdata::ReturnPanel v;
};
struct sr_corr {
  specrisk::rmt::CorrelationMatrix v;
};
struct sr_spectrum {
  specrisk::rmt::SpectralDecomposition v;
};
struct sr_fit {
  specrisk::singleindex::RegressionFit v;
};
struct sr_frontier {
  specrisk::markowitz::Frontier v;
  std::vector<std::string> tickers;
};
struct sr_report {
  specrisk::metrics::ComparisonReport v;
};

namespace {

thread_local std::string g_last_error;

sr_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
      return SR_ERR_IO;
    case ErrorCode::Parse:
      return SR_ERR_PARSE;
    case ErrorCode::InvalidArgument:
      return SR_ERR_INVALID_ARGUMENT;
    case ErrorCode::Precondition:
      return SR_ERR_PRECONDITION;
    case ErrorCode::EmptyUniverse:
      return SR_ERR_EMPTY_UNIVERSE;
    case ErrorCode::Numeric:
      return SR_ERR_NUMERIC;
    case ErrorCode::Infeasible:
      return SR_ERR_INFEASIBLE;
    case ErrorCode::Domain:
      return SR_ERR_DOMAIN;
  }
  return SR_ERR_UNKNOWN;
}

template <typename Fn>
sr_status guard(Fn&& fn) {
  try {
    fn();
    return SR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SR_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return SR_ERR_UNKNOWN;
  }
}

const char* require(const char* text, const char* what) {
  if (text == nullptr || *text == '\0') {
    specrisk::fail(ErrorCode::InvalidArgument, std::string(what) + " is required");
  }
  return text;
}

specrisk::marketdata::Layout parse_layout(const char* layout) {
  const std::string text = layout == nullptr ? "long" : layout;
  if (text == "long") return specrisk::marketdata::Layout::Long;
  if (text == "wide") return specrisk::marketdata::Layout::Wide;
  specrisk::fail(ErrorCode::InvalidArgument, "layout must be 'long' or 'wide'");
}

DateRange parse_range(const char* text, const char* what) {
  const std::string s = require(text, what);
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    specrisk::fail(ErrorCode::InvalidArgument,
                   std::string(what) + " must be 'YYYY-MM-DD:YYYY-MM-DD'");
  }
  DateRange range{Date::parse(s.substr(0, colon)), Date::parse(s.substr(colon + 1))};
  if (range.end < range.begin) {
    specrisk::fail(ErrorCode::InvalidArgument, std::string(what) + " runs backwards");
  }
  return range;
}

specrisk::markowitz::MethodConfig to_method(const sr_method_config* method) {
  if (method == nullptr) {
    specrisk::fail(ErrorCode::InvalidArgument, "method config is required");
  }
  specrisk::markowitz::MethodConfig out;
  out.cleaning = method->cleaning != 0;
  out.regression = method->regression != 0;
  out.bounds.lower = method->lower_bound;
  out.bounds.upper = method->upper_bound;
  out.grid_points = method->grid_points;
  out.bin_count = method->bin_count;
  out.seed = method->seed;
  return out;
}

specrisk::pipeline::RunOptions to_run_options(const sr_run_options* options) {
  if (options == nullptr) {
    specrisk::fail(ErrorCode::InvalidArgument, "run options are required");
  }
  specrisk::pipeline::RunOptions out;
  out.input = require(options->input, "--input");
  out.layout = parse_layout(options->layout);
  if (options->missing_sentinel != nullptr) out.missing_sentinel = options->missing_sentinel;
  if (options->out_dir != nullptr) out.out_dir = options->out_dir;
  out.method = to_method(&options->method);
  out.method_mask = options->method_mask;
  out.window.window_length = options->window_length;
  out.window.step = options->step;
  out.n_sims = options->n_sims;
  if (options->previous_range != nullptr) {
    out.previous_range = parse_range(options->previous_range, "--prev");
  }
  if (options->target_range != nullptr) {
    out.target_range = parse_range(options->target_range, "--target");
  }
  if (options->index_path != nullptr && *options->index_path != '\0') {
    out.external_index = options->index_path;
  }
  if (options->command_echo != nullptr) out.command_echo = options->command_echo;
  return out;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

double* copy_buffer(const double* data, std::size_t n) {
  double* out = new double[n];
  if (n > 0) std::memcpy(out, data, n * sizeof(double));
  return out;
}

void write_text_file(const char* path, const std::string& contents) {
  std::ofstream out(require(path, "output path"), std::ios::binary);
  if (!out) {
    specrisk::fail(ErrorCode::Io, "cannot open '" + std::string(path) + "' for writing");
  }
  out << contents;
}

template <typename Fn>
void write_with(const char* path, Fn&& fn) {
  std::ostringstream buffer;
  fn(buffer);
  write_text_file(path, buffer.str());
}

using CmdRunner = std::string (*)(const specrisk::pipeline::RunOptions&);

sr_status run_command(CmdRunner runner, const sr_run_options* options, char** summary) {
  return guard([&] {
    const std::string text = runner(to_run_options(options));
    if (summary != nullptr) *summary = copy_string(text);
  });
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

extern "C" {

const char* sr_last_error(void) { return g_last_error.c_str(); }

const char* sr_version(void) { return specrisk::kToolVersion; }

void sr_buffer_free(double* buffer) { delete[] buffer; }

void sr_string_free(char* text) { delete[] text; }

/* ------------------------------------------------------------------ */

sr_status sr_price_panel_read(const char* path, const char* layout,
                              const char* missing_sentinel, sr_price_panel** out) {
  return guard([&] {
    std::ifstream in(require(path, "input path"), std::ios::binary);
    if (!in) specrisk::fail(ErrorCode::Io, "cannot open input file '" + std::string(path) + "'");
    specrisk::marketdata::ParseOptions options;
    options.layout = parse_layout(layout);
    if (missing_sentinel != nullptr) options.missing_sentinel = missing_sentinel;
    *out = new sr_price_panel{specrisk::marketdata::parse_prices(in, options)};
  });
}

void sr_price_panel_free(sr_price_panel* panel) { delete panel; }

size_t sr_price_panel_dates(const sr_price_panel* panel) {
  return static_cast<size_t>(panel->v.n_dates());
}

size_t sr_price_panel_assets(const sr_price_panel* panel) {
  return static_cast<size_t>(panel->v.n_assets());
}

size_t sr_price_panel_missing(const sr_price_panel* panel) {
  return static_cast<size_t>(panel->v.missing_count());
}

const char* sr_price_panel_ticker(const sr_price_panel* panel, size_t index) {
  if (index >= panel->v.tickers().size()) return nullptr;
  return panel->v.tickers()[index].c_str();
}

sr_status sr_price_panel_date(const sr_price_panel* panel, size_t index, char* buffer,
                              size_t size) {
  return guard([&] {
    if (index >= panel->v.dates().size()) {
      specrisk::fail(ErrorCode::InvalidArgument, "date index out of range");
    }
    const std::string text = panel->v.dates()[index].to_string();
    if (buffer == nullptr || size < text.size() + 1) {
      specrisk::fail(ErrorCode::InvalidArgument, "date buffer too small (need 11 bytes)");
    }
    std::memcpy(buffer, text.c_str(), text.size() + 1);
  });
}

sr_status sr_price_panel_write(const sr_price_panel* panel, const char* path,
                               const char* layout) {
  return guard([&] {
    const auto parsed = parse_layout(layout);
    write_with(path, [&](std::ostream& out) {
      specrisk::marketdata::write_prices(out, panel->v, parsed);
    });
  });
}

sr_status sr_price_panel_filter_liquid(const sr_price_panel* panel, sr_price_panel** out) {
  return guard([&] {
    *out = new sr_price_panel{specrisk::marketdata::filter_fully_liquid(panel->v)};
  });
}

sr_status sr_price_panel_slice(const sr_price_panel* panel, const char* begin,
                               const char* end, sr_price_panel** out) {
  return guard([&] {
    const DateRange range{Date::parse(require(begin, "begin date")),
                          Date::parse(require(end, "end date"))};
    *out = new sr_price_panel{specrisk::marketdata::slice_dates(panel->v, range)};
  });
}

sr_status sr_log_returns(const sr_price_panel* panel, sr_return_panel** out) {
  return guard([&] {
    *out = new sr_return_panel{specrisk::marketdata::log_returns(panel->v)};
  });
}

void sr_return_panel_free(sr_return_panel* panel) { delete panel; }

size_t sr_return_panel_obs(const sr_return_panel* panel) {
  return static_cast<size_t>(panel->v.n_obs());
}

size_t sr_return_panel_assets(const sr_return_panel* panel) {
  return static_cast<size_t>(panel->v.n_assets());
}

double sr_return_panel_value(const sr_return_panel* panel, size_t obs, size_t asset) {
  if (obs >= static_cast<size_t>(panel->v.n_obs()) ||
      asset >= static_cast<size_t>(panel->v.n_assets())) {
    return kNaN;
  }
  return panel->v.returns()(static_cast<Eigen::Index>(obs), static_cast<Eigen::Index>(asset));
}

double sr_return_panel_q(const sr_return_panel* panel) { return panel->v.q_ratio(); }

/* ------------------------------------------------------------------ */

sr_status sr_mp_bounds(double q, double sigma2, double* lower, double* upper) {
  return guard([&] {
    const auto [lo, hi] = specrisk::rmt::mp_bounds({q, sigma2});
    if (lower != nullptr) *lower = lo;
    if (upper != nullptr) *upper = hi;
  });
}

sr_status sr_mp_density(double lambda, double q, double sigma2, double* out) {
  return guard([&] { *out = specrisk::rmt::mp_density(lambda, {q, sigma2}); });
}

sr_status sr_mp_cdf(double lambda, double q, double sigma2, double* out) {
  return guard([&] { *out = specrisk::rmt::mp_cdf(lambda, {q, sigma2}); });
}

sr_status sr_mp_quantile(double u, double q, double sigma2, double* out) {
  return guard([&] { *out = specrisk::rmt::mp_quantile(u, {q, sigma2}); });
}

/* ------------------------------------------------------------------ */

sr_status sr_pearson(const sr_return_panel* panel, sr_corr** out) {
  return guard([&] { *out = new sr_corr{specrisk::rmt::pearson_correlation(panel->v)}; });
}

void sr_corr_free(sr_corr* corr) { delete corr; }

size_t sr_corr_size(const sr_corr* corr) { return static_cast<size_t>(corr->v.size()); }

double sr_corr_value(const sr_corr* corr, size_t row, size_t col) {
  if (row >= static_cast<size_t>(corr->v.size()) ||
      col >= static_cast<size_t>(corr->v.size())) {
    return kNaN;
  }
  return corr->v.values()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

const char* sr_corr_ticker(const sr_corr* corr, size_t index) {
  if (index >= corr->v.tickers().size()) return nullptr;
  return corr->v.tickers()[index].c_str();
}

int sr_corr_is_cleaned(const sr_corr* corr) { return corr->v.is_cleaned() ? 1 : 0; }

double sr_corr_unit_diag_deviation(const sr_corr* corr) {
  return corr->v.unit_diag_deviation();
}

sr_status sr_corr_write_csv(const sr_corr* corr, const char* path) {
  return guard([&] {
    write_with(path, [&](std::ostream& out) {
      specrisk::io::write_correlation_csv(out, corr->v);
    });
  });
}

sr_status sr_decompose(const sr_corr* corr, double q, double sigma2, sr_spectrum** out) {
  return guard([&] {
    *out = new sr_spectrum{specrisk::rmt::decompose(corr->v, {q, sigma2})};
  });
}

void sr_spectrum_free(sr_spectrum* spectrum) { delete spectrum; }

size_t sr_spectrum_size(const sr_spectrum* spectrum) {
  return static_cast<size_t>(spectrum->v.size());
}

double sr_spectrum_eigenvalue(const sr_spectrum* spectrum, size_t index) {
  if (index >= static_cast<size_t>(spectrum->v.size())) return kNaN;
  return spectrum->v.eigenvalues()[static_cast<Eigen::Index>(index)];
}

sr_band sr_spectrum_band(const sr_spectrum* spectrum, size_t index) {
  if (index >= spectrum->v.bands().size()) return SR_BAND_NOISE;
  switch (spectrum->v.bands()[index]) {
    case specrisk::rmt::Band::BelowNoise:
      return SR_BAND_BELOW;
    case specrisk::rmt::Band::AboveNoise:
      return SR_BAND_ABOVE;
    case specrisk::rmt::Band::Noise:
      break;
  }
  return SR_BAND_NOISE;
}

double sr_spectrum_eigenvector(const sr_spectrum* spectrum, size_t component, size_t index) {
  if (component >= static_cast<size_t>(spectrum->v.size()) ||
      index >= static_cast<size_t>(spectrum->v.size())) {
    return kNaN;
  }
  return spectrum->v.eigenvectors()(static_cast<Eigen::Index>(component),
                                    static_cast<Eigen::Index>(index));
}

sr_status sr_spectrum_mean_noise(const sr_spectrum* spectrum, double* out) {
  return guard([&] { *out = spectrum->v.mean_noise(); });
}

double sr_spectrum_band_lower(const sr_spectrum* spectrum) {
  return spectrum->v.band_lower();
}

double sr_spectrum_band_upper(const sr_spectrum* spectrum) {
  return spectrum->v.band_upper();
}

sr_status sr_spectrum_write_csv(const sr_spectrum* spectrum, const char* path) {
  return guard([&] {
    write_with(path, [&](std::ostream& out) {
      specrisk::io::write_spectrum_csv(out, spectrum->v);
    });
  });
}

sr_status sr_clean(const sr_spectrum* spectrum, sr_corr** out) {
  return guard([&] { *out = new sr_corr{specrisk::rmt::clean(spectrum->v)}; });
}

sr_status sr_shuffle_eigenvalues(const sr_return_panel* panel, int n_sims, uint64_t seed,
                                 double** out, size_t* out_len) {
  return guard([&] {
    const auto samples = specrisk::rmt::shuffle_eigenvalue_sample(panel->v, n_sims, seed);
    std::vector<double> pooled;
    for (const auto& sample : samples) {
      pooled.insert(pooled.end(), sample.begin(), sample.end());
    }
    *out = copy_buffer(pooled.data(), pooled.size());
    *out_len = pooled.size();
  });
}

sr_status sr_ks_one_sample(const double* sample, size_t n, double q, double sigma2,
                           double* statistic, double* p_value, double* n_effective) {
  return guard([&] {
    const auto result =
        specrisk::rmt::ks_one_sample(std::span<const double>(sample, n), {q, sigma2});
    if (statistic != nullptr) *statistic = result.statistic;
    if (p_value != nullptr) *p_value = result.p_value;
    if (n_effective != nullptr) *n_effective = result.n_effective;
  });
}

sr_status sr_ks_two_sample(const double* a, size_t n_a, const double* b, size_t n_b,
                           double* statistic, double* p_value, double* n_effective) {
  return guard([&] {
    const auto result = specrisk::rmt::ks_two_sample(std::span<const double>(a, n_a),
                                                     std::span<const double>(b, n_b));
    if (statistic != nullptr) *statistic = result.statistic;
    if (p_value != nullptr) *p_value = result.p_value;
    if (n_effective != nullptr) *n_effective = result.n_effective;
  });
}

sr_status sr_qq_points(const double* sample, size_t n, double q, double sigma2, double** out,
                       size_t* out_pairs) {
  return guard([&] {
    const auto points =
        specrisk::rmt::qq_points(std::span<const double>(sample, n), {q, sigma2});
    std::vector<double> flat;
    flat.reserve(points.size() * 2);
    for (const auto& [x, y] : points) {
      flat.push_back(x);
      flat.push_back(y);
    }
    *out = copy_buffer(flat.data(), flat.size());
    *out_pairs = points.size();
  });
}

/* ------------------------------------------------------------------ */

sr_status sr_fit_single_index(const sr_return_panel* panel, const double* index_values,
                              size_t index_len, sr_fit** out) {
  return guard([&] {
    specrisk::singleindex::IndexSeries index;
    index.source = specrisk::singleindex::IndexSource::External;
    index.dates = panel->v.dates();
    index.values = Eigen::Map<const Eigen::VectorXd>(index_values,
                                                     static_cast<Eigen::Index>(index_len));
    *out = new sr_fit{specrisk::singleindex::fit_single_index(panel->v, index)};
  });
}

sr_status sr_eigen_market_index(const sr_return_panel* panel, const sr_spectrum* spectrum,
                                double** out, size_t* out_len) {
  return guard([&] {
    const auto index = specrisk::singleindex::eigen_market_index(panel->v, spectrum->v);
    *out = copy_buffer(index.values.data(), static_cast<std::size_t>(index.values.size()));
    *out_len = static_cast<size_t>(index.values.size());
  });
}

void sr_fit_free(sr_fit* fit) { delete fit; }

double sr_fit_intercept(const sr_fit* fit, size_t asset) {
  if (asset >= static_cast<size_t>(fit->v.intercepts.size())) return kNaN;
  return fit->v.intercepts[static_cast<Eigen::Index>(asset)];
}

double sr_fit_slope(const sr_fit* fit, size_t asset) {
  if (asset >= static_cast<size_t>(fit->v.slopes.size())) return kNaN;
  return fit->v.slopes[static_cast<Eigen::Index>(asset)];
}

sr_status sr_fit_residual_panel(const sr_fit* fit, sr_return_panel** out) {
  return guard([&] {
    *out = new sr_return_panel{specrisk::singleindex::residual_panel(fit->v)};
  });
}

/* ------------------------------------------------------------------ */

sr_method_config sr_method_default(void) {
  sr_method_config method;
  method.cleaning = 0;
  method.regression = 0;
  method.lower_bound = 0.0;
  method.upper_bound = 1.0;
  method.grid_points = 100;
  method.bin_count = 50;
  method.seed = 0;
  return method;
}

sr_status sr_frontier_trace(const sr_return_panel* panel, const sr_method_config* method,
                            sr_frontier** out) {
  return guard([&] {
    const auto config = to_method(method);
    const auto corr = specrisk::markowitz::method_correlation(panel->v, config);
    const auto cov = specrisk::markowitz::assemble_covariance(
        corr, panel->v.column_stddevs(), config.regression);
    *out = new sr_frontier{
        specrisk::markowitz::trace_frontier(cov, panel->v.column_means(), config.bounds,
                                            config.grid_points),
        panel->v.tickers()};
  });
}

sr_status sr_frontier_pair(const sr_return_panel* previous, const sr_return_panel* target,
                           const sr_method_config* method, sr_frontier** pred,
                           sr_frontier** real, sr_corr** pred_corr, sr_corr** real_corr) {
  return guard([&] {
    auto result =
        specrisk::markowitz::frontier_pair(previous->v, target->v, to_method(method));
    if (pred != nullptr) {
      *pred = new sr_frontier{std::move(result.predicted), target->v.tickers()};
    }
    if (real != nullptr) {
      *real = new sr_frontier{std::move(result.realized), target->v.tickers()};
    }
    if (pred_corr != nullptr) *pred_corr = new sr_corr{std::move(result.pred_corr)};
    if (real_corr != nullptr) *real_corr = new sr_corr{std::move(result.real_corr)};
  });
}

void sr_frontier_free(sr_frontier* frontier) { delete frontier; }

size_t sr_frontier_points(const sr_frontier* frontier) { return frontier->v.points.size(); }

size_t sr_frontier_assets(const sr_frontier* frontier) { return frontier->tickers.size(); }

double sr_frontier_target(const sr_frontier* frontier, size_t index) {
  if (index >= frontier->v.points.size()) return kNaN;
  return frontier->v.points[index].target_return;
}

double sr_frontier_risk(const sr_frontier* frontier, size_t index) {
  if (index >= frontier->v.points.size()) return kNaN;
  return frontier->v.points[index].risk;
}

int sr_frontier_feasible(const sr_frontier* frontier, size_t index) {
  if (index >= frontier->v.points.size()) return 0;
  return frontier->v.points[index].feasible ? 1 : 0;
}

double sr_frontier_weight(const sr_frontier* frontier, size_t index, size_t asset) {
  if (index >= frontier->v.points.size()) return kNaN;
  const auto& point = frontier->v.points[index];
  if (!point.feasible || asset >= static_cast<size_t>(point.weights.size())) return kNaN;
  return point.weights[static_cast<Eigen::Index>(asset)];
}

double sr_frontier_gmv_return(const sr_frontier* frontier) { return frontier->v.gmv_return; }

sr_status sr_frontier_write_csv(const sr_frontier* frontier, const char* path) {
  return guard([&] {
    write_with(path, [&](std::ostream& out) {
      specrisk::io::write_frontier_csv(out, frontier->v, frontier->tickers);
    });
  });
}

sr_status sr_frontier_write_json(const sr_frontier* frontier, const char* path) {
  return guard([&] {
    write_with(path, [&](std::ostream& out) {
      specrisk::io::write_frontier_json(out, frontier->v, frontier->tickers);
    });
  });
}

/* ------------------------------------------------------------------ */

sr_status sr_compare(const sr_frontier* pred, const sr_frontier* real,
                     const sr_corr* pred_corr, const sr_corr* real_corr,
                     const sr_method_config* method, sr_report** out) {
  return guard([&] {
    *out = new sr_report{specrisk::metrics::compare(pred->v, real->v, pred_corr->v,
                                                    real_corr->v, to_method(method))};
  });
}

void sr_report_free(sr_report* report) { delete report; }

double sr_report_ag(const sr_report* report) { return report->v.ag; }

double sr_report_mse(const sr_report* report) { return report->v.mse; }

double sr_report_angle_deg(const sr_report* report) { return report->v.angle_deg; }

double sr_report_dist(const sr_report* report) { return report->v.dist; }

double sr_report_dkl(const sr_report* report) { return report->v.d_kl; }

int sr_report_n_points(const sr_report* report) { return report->v.n_points; }

sr_status sr_report_write_json(const sr_report* report, const char* path) {
  return guard([&] {
    write_with(path, [&](std::ostream& out) {
      specrisk::io::write_report_json(out, report->v);
    });
  });
}

sr_status sr_matrix_distance(const sr_corr* a, const sr_corr* b, double* out) {
  return guard([&] { *out = specrisk::metrics::matrix_distance(a->v, b->v); });
}

sr_status sr_kl_distance(const sr_corr* a, const sr_corr* b, int bin_count, double* out) {
  return guard([&] { *out = specrisk::metrics::kl_distance(a->v, b->v, bin_count); });
}

/* ------------------------------------------------------------------ */

sr_run_options sr_run_options_default(void) {
  sr_run_options options;
  options.input = nullptr;
  options.layout = "long";
  options.missing_sentinel = nullptr;
  options.out_dir = nullptr;
  options.method = sr_method_default();
  options.method_mask = 0;
  options.window_length = 100;
  options.step = 5;
  options.n_sims = 10000;
  options.previous_range = nullptr;
  options.target_range = nullptr;
  options.index_path = nullptr;
  options.command_echo = nullptr;
  return options;
}

sr_status sr_cmd_ingest(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_ingest, options, summary);
}

sr_status sr_cmd_spectrum(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_spectrum, options, summary);
}

sr_status sr_cmd_clean(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_clean, options, summary);
}

sr_status sr_cmd_residuals(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_residuals, options, summary);
}

sr_status sr_cmd_frontier(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_frontier, options, summary);
}

sr_status sr_cmd_pair(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_pair, options, summary);
}

sr_status sr_cmd_rolling(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_rolling_cmd, options, summary);
}

sr_status sr_cmd_simulate(const sr_run_options* options, char** summary) {
  return run_command(specrisk::pipeline::run_simulate, options, summary);
}

}  // extern "C"
