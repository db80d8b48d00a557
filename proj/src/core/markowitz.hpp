#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "core/marketdata.hpp"
#include "core/qp.hpp"
#include "core/rmt.hpp"

namespace specrisk::markowitz {

/// Uniform box on portfolio weights. Budget feasibility needs
/// N*lower <= 1 <= N*upper; `upper` may be +infinity.
struct WeightBounds {
  double lower = 0.0;
  double upper = 1.0;
};

/// Sigma-scaled covariance: values[i][j] = sigma_i * C[i][j] * sigma_j.
/// The matrix handed to the solver has eigenvalues in [-1e-8, 0) clamped to
/// zero (cleaning can leave a correlation matrix indefinite at rounding
/// level); anything more negative is rejected outright.
class CovarianceAssembly {
public:
  const Eigen::MatrixXd& values() const { return values_; }
  const Eigen::MatrixXd& solver_matrix() const { return solver_matrix_; }
  const Eigen::VectorXd& sigma() const { return sigma_; }
  const std::vector<std::string>& tickers() const { return tickers_; }
  Eigen::Index size() const { return values_.rows(); }

  bool from_cleaned() const { return from_cleaned_; }
  bool from_residuals() const { return from_residuals_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  int clamped_count() const { return clamped_count_; }

private:
  friend CovarianceAssembly assemble_covariance(const rmt::CorrelationMatrix&,
                                                const Eigen::VectorXd&, bool);

  Eigen::MatrixXd values_;
  Eigen::MatrixXd solver_matrix_;
  Eigen::VectorXd sigma_;
  std::vector<std::string> tickers_;
  bool from_cleaned_ = false;
  bool from_residuals_ = false;
  double min_eigenvalue_ = 0.0;
  int clamped_count_ = 0;
};

CovarianceAssembly assemble_covariance(const rmt::CorrelationMatrix& corr,
                                       const Eigen::VectorXd& sigma,
                                       bool from_residuals = false);

struct FrontierPoint {
  double target_return = 0.0;
  double risk = 0.0;          // NaN when infeasible
  Eigen::VectorXd weights;    // empty when infeasible
  bool feasible = true;
  double kkt_residual = 0.0;
};

/// Minimum-risk curve over a shared, strictly increasing return grid.
/// Unreachable grid targets stay in place, flagged infeasible.
struct Frontier {
  std::vector<double> grid;
  std::vector<FrontierPoint> points;
  double gmv_return = 0.0;  // return of the global minimum-variance portfolio

  std::size_t feasible_count() const;
};

/// One quadratic program: fixed target return, minimized variance.
FrontierPoint min_risk_weights(const CovarianceAssembly& cov,
                               const Eigen::VectorXd& mean_returns, double target_return,
                               const WeightBounds& bounds);

/// Grid runs from max(1e-8, GMV return) to the best single-asset mean.
/// Requires at least one asset with a positive mean return.
Frontier trace_frontier(const CovarianceAssembly& cov, const Eigen::VectorXd& mean_returns,
                        const WeightBounds& bounds, int n_points = 100);

/// The four-way method switch plus the solver/report knobs.
struct MethodConfig {
  bool cleaning = false;
  bool regression = false;
  WeightBounds bounds;
  int grid_points = 100;
  int bin_count = 50;
  std::uint64_t seed = 0;
};

/// Stable directory/report label: raw, clean, regress, clean_regress.
std::string method_tag(const MethodConfig& method);

/// Predicted/realized frontier pair under the perfect-forecast protocol:
/// mean returns and standard deviations come from the target window for both
/// sides, so only the correlation matrices (previous vs target window,
/// cleaned and/or residual-based per the method) differ. Both frontiers share
/// one return grid, starting at the higher of the two GMV returns.
struct PairResult {
  Frontier predicted;
  Frontier realized;
  rmt::CorrelationMatrix pred_corr;
  rmt::CorrelationMatrix real_corr;
  Eigen::VectorXd means;   // target-window per-asset means
  Eigen::VectorXd sigmas;  // target-window per-asset std-devs
};

PairResult frontier_pair(const marketdata::ReturnPanel& previous,
                         const marketdata::ReturnPanel& target, const MethodConfig& method);

/// Correlation matrix a method implies for one window: Pearson on the raw or
/// residual panel, optionally noise-cleaned with Q taken from the window
/// shape. Exposed for the spectrum/clean/residuals commands.
rmt::CorrelationMatrix method_correlation(const marketdata::ReturnPanel& panel,
                                          const MethodConfig& method);

}  // namespace specrisk::markowitz
