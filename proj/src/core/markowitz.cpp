#include "core/markowitz.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/singleindex.hpp"

namespace specrisk::markowitz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMinPositiveReturn = 1e-8;

void validate_bounds(const WeightBounds& bounds, Eigen::Index n) {
  if (!std::isfinite(bounds.lower)) {
    fail(ErrorCode::InvalidArgument, "the lower weight bound must be finite");
  }
  if (!(bounds.lower <= bounds.upper)) {
    fail(ErrorCode::InvalidArgument, "weight bounds must satisfy lower <= upper");
  }
  if (static_cast<double>(n) * bounds.lower > 1.0 + 1e-12 ||
      (std::isfinite(bounds.upper) && static_cast<double>(n) * bounds.upper < 1.0 - 1e-12)) {
    fail(ErrorCode::InvalidArgument,
         "weight bounds exclude the budget: need N*lower <= 1 <= N*upper");
  }
}

Frontier trace_on_grid(const CovarianceAssembly& cov, const Eigen::VectorXd& means,
                       const WeightBounds& bounds, const std::vector<double>& grid,
                       double gmv_return) {
  Frontier frontier;
  frontier.grid = grid;
  frontier.gmv_return = gmv_return;
  frontier.points.reserve(grid.size());
  for (const double target : grid) {
    try {
      frontier.points.push_back(min_risk_weights(cov, means, target, bounds));
    } catch (const InfeasibleError&) {
      FrontierPoint point;
      point.target_return = target;
      point.risk = kNaN;
      point.feasible = false;
      frontier.points.push_back(std::move(point));
    }
  }
  return frontier;
}

std::vector<double> build_grid(double lo, double hi, int n_points) {
  if (n_points < 1) fail(ErrorCode::InvalidArgument, "frontier needs at least one grid point");
  if (hi <= lo || n_points == 1 || hi - lo <= 1e-15 * (1.0 + std::abs(hi))) {
    return {hi};
  }
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  const double step = (hi - lo) / static_cast<double>(n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
  }
  grid.back() = hi;
  return grid;
}

}  // namespace

CovarianceAssembly assemble_covariance(const rmt::CorrelationMatrix& corr,
                                       const Eigen::VectorXd& sigma, bool from_residuals) {
  const Eigen::Index n = corr.size();
  if (sigma.size() != n) {
    fail(ErrorCode::InvalidArgument, "sigma vector length does not match the correlation");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(sigma[i] > 0.0)) {
      fail(ErrorCode::InvalidArgument,
           "non-positive standard deviation for ticker '" +
               corr.tickers()[static_cast<std::size_t>(i)] + "'");
    }
  }

  CovarianceAssembly assembly;
  assembly.tickers_ = corr.tickers();
  assembly.sigma_ = sigma;
  assembly.from_cleaned_ = corr.is_cleaned();
  assembly.from_residuals_ = from_residuals;
  assembly.values_ = sigma.asDiagonal() * corr.values() * sigma.asDiagonal();
  assembly.values_ = 0.5 * (assembly.values_ + assembly.values_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(assembly.values_);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::Numeric, "eigensolver failed on the covariance assembly");
  }
  assembly.min_eigenvalue_ = solver.eigenvalues().minCoeff();
  if (assembly.min_eigenvalue_ < -1e-8) {
    fail(ErrorCode::Numeric, "covariance assembly is indefinite beyond the -1e-8 tolerance");
  }
  if (assembly.min_eigenvalue_ < 0.0) {
    Eigen::VectorXd clipped = solver.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (clipped[i] < 0.0) {
        clipped[i] = 0.0;
        ++assembly.clamped_count_;
      }
    }
    assembly.solver_matrix_ =
        solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().transpose();
    assembly.solver_matrix_ =
        0.5 * (assembly.solver_matrix_ + assembly.solver_matrix_.transpose()).eval();
  } else {
    assembly.solver_matrix_ = assembly.values_;
  }
  return assembly;
}

std::size_t Frontier::feasible_count() const {
  std::size_t count = 0;
  for (const auto& point : points) count += point.feasible ? 1 : 0;
  return count;
}

FrontierPoint min_risk_weights(const CovarianceAssembly& cov,
                               const Eigen::VectorXd& mean_returns, double target_return,
                               const WeightBounds& bounds) {
  validate_bounds(bounds, cov.size());
  if (mean_returns.size() != cov.size()) {
    fail(ErrorCode::InvalidArgument, "mean-return vector length does not match covariance");
  }
  const QPSolution sol = solve_min_variance(cov.solver_matrix(), mean_returns, target_return,
                                            bounds.lower, bounds.upper);
  FrontierPoint point;
  point.target_return = target_return;
  point.risk = sol.risk;
  point.weights = sol.weights;
  point.kkt_residual = sol.kkt_residual;
  return point;
}

Frontier trace_frontier(const CovarianceAssembly& cov, const Eigen::VectorXd& mean_returns,
                        const WeightBounds& bounds, int n_points) {
  validate_bounds(bounds, cov.size());
  if (mean_returns.size() != cov.size()) {
    fail(ErrorCode::InvalidArgument, "mean-return vector length does not match covariance");
  }
  const double best_single = mean_returns.maxCoeff();
  if (!(best_single > 0.0)) {
    fail(ErrorCode::Precondition, "no asset has a positive mean return");
  }
  const QPSolution gmv = solve_min_variance(cov.solver_matrix(), mean_returns, std::nullopt,
                                            bounds.lower, bounds.upper);
  const double gmv_return = mean_returns.dot(gmv.weights);
  const double lo = std::max(kMinPositiveReturn, gmv_return);
  return trace_on_grid(cov, mean_returns, bounds, build_grid(lo, best_single, n_points),
                       gmv_return);
}

std::string method_tag(const MethodConfig& method) {
  if (method.cleaning && method.regression) return "clean_regress";
  if (method.cleaning) return "clean";
  if (method.regression) return "regress";
  return "raw";
}

rmt::CorrelationMatrix method_correlation(const marketdata::ReturnPanel& panel,
                                          const MethodConfig& method) {
  const marketdata::ReturnPanel* source = &panel;
  marketdata::ReturnPanel residuals({}, {}, Eigen::MatrixXd::Zero(0, 0));
  if (method.regression) {
    const auto decomp = rmt::decompose(rmt::pearson_correlation(panel),
                                       rmt::MPParams{panel.q_ratio(), 1.0});
    const auto index = singleindex::eigen_market_index(panel, decomp);
    residuals = singleindex::residual_panel(singleindex::fit_single_index(panel, index));
    source = &residuals;
  }
  rmt::CorrelationMatrix corr = rmt::pearson_correlation(*source);
  if (method.cleaning) {
    corr = rmt::clean(rmt::decompose(corr, rmt::MPParams{panel.q_ratio(), 1.0}));
  }
  return corr;
}

PairResult frontier_pair(const marketdata::ReturnPanel& previous,
                         const marketdata::ReturnPanel& target, const MethodConfig& method) {
  if (previous.tickers() != target.tickers()) {
    fail(ErrorCode::InvalidArgument, "previous and target panels list different tickers");
  }
  validate_bounds(method.bounds, target.n_assets());

  PairResult result{Frontier{}, Frontier{}, method_correlation(previous, method),
                    method_correlation(target, method), target.column_means(),
                    target.column_stddevs()};

  const auto cov_pred = assemble_covariance(result.pred_corr, result.sigmas, method.regression);
  const auto cov_real = assemble_covariance(result.real_corr, result.sigmas, method.regression);

  const double best_single = result.means.maxCoeff();
  if (!(best_single > 0.0)) {
    fail(ErrorCode::Precondition, "no asset has a positive mean return in the target window");
  }
  const QPSolution gmv_pred = solve_min_variance(cov_pred.solver_matrix(), result.means,
                                                 std::nullopt, method.bounds.lower,
                                                 method.bounds.upper);
  const QPSolution gmv_real = solve_min_variance(cov_real.solver_matrix(), result.means,
                                                 std::nullopt, method.bounds.lower,
                                                 method.bounds.upper);
  const double ret_pred = result.means.dot(gmv_pred.weights);
  const double ret_real = result.means.dot(gmv_real.weights);
  // The shared grid starts at the higher GMV return so risk stays monotone
  // along both curves.
  const double lo = std::max(kMinPositiveReturn, std::max(ret_pred, ret_real));
  const auto grid = build_grid(lo, best_single, method.grid_points);

  result.predicted = trace_on_grid(cov_pred, result.means, method.bounds, grid, ret_pred);
  result.realized = trace_on_grid(cov_real, result.means, method.bounds, grid, ret_real);
  return result;
}

}  // namespace specrisk::markowitz
