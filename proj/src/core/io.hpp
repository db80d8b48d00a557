#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "core/markowitz.hpp"
#include "core/metrics.hpp"
#include "core/rmt.hpp"

namespace specrisk::io {

/// `target_return,risk,feasible,w_1..w_N`; infeasible rows carry nan risk
/// and nan weights.
void write_frontier_csv(std::ostream& out, const markowitz::Frontier& frontier,
                        const std::vector<std::string>& tickers);
/// Same fields as the CSV, one object per grid entry.
void write_frontier_json(std::ostream& out, const markowitz::Frontier& frontier,
                         const std::vector<std::string>& tickers);

/// `k,eigenvalue,band` rows, eigenvalues descending.
void write_spectrum_csv(std::ostream& out, const rmt::SpectralDecomposition& decomp);

/// Two-column `lambda,rho` density trace over the MP support.
void write_mp_density_csv(std::ostream& out, const rmt::MPParams& params, int n_points);

/// Two-column `reference_quantile,sample_quantile`.
void write_qq_csv(std::ostream& out,
                  const std::vector<std::pair<double, double>>& points);

/// Two-column `sim,eigenvalue`, one row per pooled eigenvalue.
void write_eigenvalue_samples_csv(std::ostream& out,
                                  const std::vector<std::vector<double>>& samples);

/// Single JSON record {statistic, p_value, n_effective}.
void write_ks_json(std::ostream& out, const rmt::KSResult& result);

/// Ticker-labelled square matrix.
void write_correlation_csv(std::ostream& out, const rmt::CorrelationMatrix& corr);

void write_report_json(std::ostream& out, const metrics::ComparisonReport& report);

/// One batch row per (window, method); pass window="-" for year-pair runs.
struct ReportRow {
  std::string window;
  std::string estimation_range;
  std::string evaluation_range;
  metrics::ComparisonReport report;
  double min_pred_risk = 0.0;
  double max_pred_risk = 0.0;
  double min_real_risk = 0.0;
  double max_real_risk = 0.0;
  std::string error;  // non-empty when the (window, method) run failed
};
void write_reports_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// FNV-1a 64-bit over a file's bytes, hex-encoded; recorded in run manifests.
std::string fnv1a64_file(const std::filesystem::path& path);

std::string json_method(const markowitz::MethodConfig& method);

}  // namespace specrisk::io
