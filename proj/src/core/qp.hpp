#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>

namespace specrisk::markowitz {

struct QPSolution {
  Eigen::VectorXd weights;
  double risk = 0.0;          // w^T Q w at the solution
  double kkt_residual = 0.0;  // relative stationarity + feasibility residual
  int iterations = 0;
};

/// Attainable interval of means^T w over {1^T w = 1, lo <= w <= hi}.
/// `hi` may be +infinity.
std::pair<double, double> feasible_return_interval(const Eigen::VectorXd& means,
                                                   double lo, double hi);

/// Minimizes w^T Q w subject to 1^T w = 1, means^T w = target (when a target
/// is given), and lo <= w_i <= hi, with a primal active-set method over the
/// box constraints. Q must be positive semidefinite. Throws InfeasibleError
/// (carrying the attainable return interval) for unreachable targets and
/// Error(Numeric) if the iteration cap is hit without a KKT point.
///
/// When every mean is identical the return constraint is degenerate with the
/// budget; it is dropped after checking that the target matches the implied
/// return.
QPSolution solve_min_variance(const Eigen::MatrixXd& cov, const Eigen::VectorXd& means,
                              std::optional<double> target, double lo, double hi);

}  // namespace specrisk::markowitz
