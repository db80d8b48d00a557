#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/error.hpp"

namespace specrisk::metrics {

namespace {

/// Risk pairs at grid entries feasible on both sides.
std::vector<std::pair<double, double>> paired_risks(const markowitz::Frontier& pred,
                                                    const markowitz::Frontier& real) {
  if (pred.grid.size() != real.grid.size()) {
    fail(ErrorCode::InvalidArgument, "frontiers do not share a return grid");
  }
  for (std::size_t i = 0; i < pred.grid.size(); ++i) {
    if (pred.grid[i] != real.grid[i]) {
      fail(ErrorCode::InvalidArgument, "frontiers do not share a return grid");
    }
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(pred.points.size());
  for (std::size_t i = 0; i < pred.points.size(); ++i) {
    if (pred.points[i].feasible && real.points[i].feasible) {
      pairs.emplace_back(pred.points[i].risk, real.points[i].risk);
    }
  }
  if (pairs.empty()) {
    fail(ErrorCode::Precondition, "no grid entry is feasible on both frontiers");
  }
  return pairs;
}

}  // namespace

double agreement(const markowitz::Frontier& pred, const markowitz::Frontier& real) {
  const auto pairs = paired_risks(pred, real);
  double scale = 0.0;
  for (const auto& [rp, rr] : pairs) scale = std::max({scale, rp, rr});
  // Regressing on a window's own eigenportfolio index leaves the residual
  // covariance singular, so a frontier can genuinely touch zero risk; a
  // predicted risk at the numerical-zero floor makes the ratio meaningless
  // and is refused rather than turned into noise.
  const double zero_floor = 1e-9 * scale;
  double sum = 0.0;
  for (const auto& [rp, rr] : pairs) {
    if (rp == rr) continue;  // exact agreement contributes zero
    if (rp <= zero_floor) {
      fail(ErrorCode::Domain,
           "agreement is undefined: a predicted risk is zero at this grid's scale");
    }
    sum += (rr - rp) / rp;
  }
  return sum / static_cast<double>(pairs.size());
}

double mean_squared_error(const markowitz::Frontier& pred, const markowitz::Frontier& real) {
  const auto pairs = paired_risks(pred, real);
  double sum = 0.0;
  for (const auto& [rp, rr] : pairs) {
    const double gap = rr - rp;
    sum += gap * gap;
  }
  return sum / static_cast<double>(pairs.size());
}

double risk_angle(const markowitz::Frontier& pred, const markowitz::Frontier& real) {
  const auto pairs = paired_risks(pred, real);
  bool identical = true;
  double dot = 0.0;
  double norm_p = 0.0;
  double norm_r = 0.0;
  for (const auto& [rp, rr] : pairs) {
    identical = identical && rp == rr;
    dot += rp * rr;
    norm_p += rp * rp;
    norm_r += rr * rr;
  }
  if (identical && norm_p > 0.0) return 0.0;  // exact-identity contract
  if (norm_p == 0.0 || norm_r == 0.0) {
    fail(ErrorCode::Domain, "risk angle is undefined for a zero risk vector");
  }
  const double cosine = std::clamp(dot / (std::sqrt(norm_p) * std::sqrt(norm_r)), -1.0, 1.0);
  return std::acos(cosine) * 180.0 / std::numbers::pi;
}

double matrix_distance(const rmt::CorrelationMatrix& a, const rmt::CorrelationMatrix& b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::InvalidArgument, "matrix distance needs equal dimensions");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      const double diff = a.values()(i, j) - b.values()(i, j);
      sum += diff * diff;
    }
  }
  return sum;
}

KLDetail kl_distance_detail(const rmt::CorrelationMatrix& a, const rmt::CorrelationMatrix& b,
                            int bin_count) {
  if (a.size() != b.size()) {
    fail(ErrorCode::InvalidArgument, "KL distance needs equal dimensions");
  }
  if (bin_count < 2) fail(ErrorCode::InvalidArgument, "KL distance needs at least 2 bins");
  if (a.size() < 2) {
    fail(ErrorCode::InvalidArgument, "KL distance needs at least one off-diagonal entry");
  }

  // Histogram of the strictly-upper-triangle entries over [-1, 1]; values
  // outside (cleaned matrices can overshoot slightly) land in the end bins.
  const auto histogram = [bin_count](const rmt::CorrelationMatrix& m) {
    std::vector<double> bins(static_cast<std::size_t>(bin_count), 0.0);
    double total = 0.0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      for (Eigen::Index j = i + 1; j < m.size(); ++j) {
        auto bin = static_cast<long>(std::floor((m.values()(i, j) + 1.0) / 2.0 *
                                                static_cast<double>(bin_count)));
        bin = std::clamp(bin, 0L, static_cast<long>(bin_count - 1));
        bins[static_cast<std::size_t>(bin)] += 1.0;
        total += 1.0;
      }
    }
    for (auto& v : bins) v /= total;
    return bins;
  };

  const auto p = histogram(a);
  const auto q = histogram(b);
  KLDetail detail;
  for (int i = 0; i < bin_count; ++i) {
    const double pi = p[static_cast<std::size_t>(i)];
    const double qi = q[static_cast<std::size_t>(i)];
    if (pi == 0.0 && qi == 0.0) continue;
    if (pi == 0.0 || qi == 0.0) {
      ++detail.dropped_bins;
      continue;
    }
    detail.value += pi * std::log(pi / qi);
  }
  return detail;
}

double kl_distance(const rmt::CorrelationMatrix& a, const rmt::CorrelationMatrix& b,
                   int bin_count) {
  return kl_distance_detail(a, b, bin_count).value;
}

ComparisonReport compare(const markowitz::Frontier& pred_frontier,
                         const markowitz::Frontier& real_frontier,
                         const rmt::CorrelationMatrix& pred_corr,
                         const rmt::CorrelationMatrix& real_corr,
                         const markowitz::MethodConfig& config) {
  ComparisonReport report;
  report.method = config;
  report.bin_count = config.bin_count;
  report.tickers = pred_corr.tickers();
  report.n_points = static_cast<int>(paired_risks(pred_frontier, real_frontier).size());
  try {
    report.ag = agreement(pred_frontier, real_frontier);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Domain) throw;
    // The other four metrics stay well defined; surface the AG failure in
    // the report instead of discarding them.
    report.ag = std::numeric_limits<double>::quiet_NaN();
    report.ag_error = e.what();
  }
  report.mse = mean_squared_error(pred_frontier, real_frontier);
  report.angle_deg = risk_angle(pred_frontier, real_frontier);
  report.dist = matrix_distance(pred_corr, real_corr);
  const KLDetail kl = kl_distance_detail(pred_corr, real_corr, config.bin_count);
  report.d_kl = kl.value;
  report.kl_dropped_bins = kl.dropped_bins;
  return report;
}

}  // namespace specrisk::metrics
