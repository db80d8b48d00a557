#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/dates.hpp"
#include "core/markowitz.hpp"
#include "core/metrics.hpp"
#include "core/singleindex.hpp"

namespace specrisk::pipeline {

enum class WindowMode { YearPair, Rolling };

struct WindowSpec {
  int window_length = 100;
  int step = 5;
  WindowMode mode = WindowMode::Rolling;
};

/// Risk extremes of one window's frontiers (over the feasible points).
struct RiskEnvelope {
  double min_pred = 0.0;
  double max_pred = 0.0;
  double min_real = 0.0;
  double max_real = 0.0;
};

/// One (window, method) result. A method whose frontier construction fails
/// (say, no positive-mean asset in the evaluation window) is reported flagged
/// instead of aborting the run.
struct PairOutcome {
  markowitz::MethodConfig method;
  std::optional<metrics::ComparisonReport> report;
  std::optional<markowitz::PairResult> pair;
  RiskEnvelope envelope;
  double q_prev = 0.0;    // L/N of the estimation window
  double q_target = 0.0;  // L/N of the evaluation window
  std::string error;      // empty on success

  bool ok() const { return error.empty(); }
};

/// Previous-year/target-year experiment. The universe is the intersection of
/// tickers fully liquid over BOTH ranges; each method builds its own
/// correlation on each side and is compared under the perfect-forecast
/// protocol.
std::vector<PairOutcome> run_year_pair(const marketdata::PricePanel& prices,
                                       const DateRange& previous_range,
                                       const DateRange& target_range,
                                       const std::vector<markowitz::MethodConfig>& methods);

struct WindowOutcome {
  int index = 0;
  Date est_begin, est_end;    // estimation window, inclusive
  Date eval_begin, eval_end;  // evaluation window, inclusive
  std::vector<PairOutcome> outcomes;  // one per method
};

struct RollingResult {
  std::vector<std::string> tickers;
  double q_ratio = 0.0;  // window_length / N
  std::vector<WindowOutcome> windows;
};

/// Sliding estimation/evaluation pairs over the fully liquid universe:
/// estimation window i covers return rows [i*step, i*step + W), evaluation
/// the W rows immediately after. Frontiers are not retained window by window;
/// reports and risk envelopes are.
RollingResult run_rolling(const marketdata::PricePanel& prices, const WindowSpec& spec,
                          const std::vector<markowitz::MethodConfig>& methods);

/// Per-window standard deviation of an index series, same window arithmetic
/// as run_rolling's estimation windows.
std::vector<double> index_window_volatility(const singleindex::IndexSeries& index,
                                            const WindowSpec& spec);

/// Resolved command options (one struct for every subcommand; unused fields
/// are ignored by a given runner).
struct RunOptions {
  std::filesystem::path input;
  marketdata::Layout layout = marketdata::Layout::Long;
  std::string missing_sentinel;
  std::filesystem::path out_dir;
  markowitz::MethodConfig method;  // single-configuration commands
  /// pair/rolling method subset: bit 0 raw, 1 clean, 2 regress,
  /// 3 clean+regress; 0 means all four.
  unsigned method_mask = 0;
  WindowSpec window;
  std::optional<DateRange> previous_range;
  std::optional<DateRange> target_range;
  int n_sims = 10000;
  std::optional<std::filesystem::path> external_index;
  std::string command_echo;
};

/// Command runners: validate options, compute, write the run directory
/// (config echo, per-method reports, frontier/spectrum CSVs, manifest with
/// input hashes), and return a short printable summary.
std::string run_ingest(const RunOptions& options);
std::string run_spectrum(const RunOptions& options);
std::string run_clean(const RunOptions& options);
std::string run_residuals(const RunOptions& options);
std::string run_frontier(const RunOptions& options);
std::string run_pair(const RunOptions& options);
std::string run_rolling_cmd(const RunOptions& options);
std::string run_simulate(const RunOptions& options);

/// The method subset selected by `method_mask`, with shared knobs copied
/// from `base`.
std::vector<markowitz::MethodConfig> expand_methods(const markowitz::MethodConfig& base,
                                                    unsigned method_mask);

}  // namespace specrisk::pipeline
