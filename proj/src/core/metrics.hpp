#pragma once

#include <string>
#include <vector>

#include "core/markowitz.hpp"
#include "core/rmt.hpp"

namespace specrisk::metrics {

/// Mean relative risk gap over the shared grid:
/// (1/n) * sum (RI_real - RI_pred) / RI_pred.
/// Grid entries infeasible on either side are excluded pairwise; a zero
/// predicted risk among the compared points is an error, not a skip.
double agreement(const markowitz::Frontier& pred, const markowitz::Frontier& real);

/// (1/n) * sum (RI_real - RI_pred)^2 with the same pairwise exclusion.
double mean_squared_error(const markowitz::Frontier& pred, const markowitz::Frontier& real);

/// Angle in degrees between the two risk vectors.
double risk_angle(const markowitz::Frontier& pred, const markowitz::Frontier& real);

/// Squared Frobenius norm of the difference, Tr((A-B)^T (A-B)).
double matrix_distance(const rmt::CorrelationMatrix& a, const rmt::CorrelationMatrix& b);

struct KLDetail {
  double value = 0.0;
  /// Bins where one histogram has mass and the other none; those terms are
  /// dropped by the zero-skip rule, which can hide disagreement (and lets the
  /// total dip below zero), so the count is surfaced.
  int dropped_bins = 0;
};

/// Binned Kullback-Leibler divergence between the strictly-upper-triangle
/// entry histograms of the two matrices, `bin_count` equal-width bins over
/// [-1, 1]; terms with a zero P or Q bin count as zero.
double kl_distance(const rmt::CorrelationMatrix& a, const rmt::CorrelationMatrix& b,
                   int bin_count);
KLDetail kl_distance_detail(const rmt::CorrelationMatrix& a,
                            const rmt::CorrelationMatrix& b, int bin_count);

/// All five metrics for one predicted/realized pair.
struct ComparisonReport {
  double ag = 0.0;  // NaN when undefined; see ag_error
  double mse = 0.0;
  double angle_deg = 0.0;
  double dist = 0.0;
  double d_kl = 0.0;
  int n_points = 0;   // grid entries actually compared
  int bin_count = 0;
  int kl_dropped_bins = 0;
  /// Non-empty when the agreement ratio was refused (a predicted risk at the
  /// numerical-zero floor); the other metrics are still filled in.
  std::string ag_error;
  markowitz::MethodConfig method;
  std::vector<std::string> tickers;
};

ComparisonReport compare(const markowitz::Frontier& pred_frontier,
                         const markowitz::Frontier& real_frontier,
                         const rmt::CorrelationMatrix& pred_corr,
                         const rmt::CorrelationMatrix& real_corr,
                         const markowitz::MethodConfig& config);

}  // namespace specrisk::metrics
