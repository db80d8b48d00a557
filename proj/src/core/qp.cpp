#include "core/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "core/error.hpp"

namespace specrisk::markowitz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class At { Free, Lower, Upper };

struct Problem {
  Eigen::MatrixXd cov;
  Eigen::MatrixXd eq;   // m x n equality rows
  Eigen::VectorXd rhs;  // m
  double lo = 0.0;
  double hi = 0.0;
};

/// Equality-constrained subproblem on the free variables, bound variables
/// pinned. Solved through a complete orthogonal decomposition so singular
/// KKT systems (semidefinite covariance, redundant equalities) yield the
/// minimum-norm solution instead of failing.
void solve_eqp(const Problem& p, const std::vector<At>& state,
               const Eigen::VectorXd& w, Eigen::VectorXd* w_star,
               Eigen::VectorXd* multipliers) {
  const Eigen::Index n = p.cov.rows();
  const Eigen::Index m = p.eq.rows();
  std::vector<Eigen::Index> free_idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (state[static_cast<std::size_t>(i)] == At::Free) free_idx.push_back(i);
  }
  const auto nf = static_cast<Eigen::Index>(free_idx.size());

  *w_star = w;
  if (nf == 0) {
    // Vertex: every variable pinned. Price the bounds with least-squares
    // multipliers from the full stationarity condition.
    const Eigen::VectorXd g = 2.0 * p.cov * w;
    *multipliers = p.eq.transpose().completeOrthogonalDecomposition().solve(g);
    return;
  }

  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nf + m, nf + m);
  Eigen::VectorXd rhs(nf + m);
  for (Eigen::Index a = 0; a < nf; ++a) {
    for (Eigen::Index b = 0; b < nf; ++b) {
      kkt(a, b) = 2.0 * p.cov(free_idx[static_cast<std::size_t>(a)],
                              free_idx[static_cast<std::size_t>(b)]);
    }
    for (Eigen::Index r = 0; r < m; ++r) {
      kkt(a, nf + r) = p.eq(r, free_idx[static_cast<std::size_t>(a)]);
      kkt(nf + r, a) = p.eq(r, free_idx[static_cast<std::size_t>(a)]);
    }
  }
  // rhs: -2*Q_FB w_B on the stationarity rows, d - E_B w_B on equality rows.
  for (Eigen::Index a = 0; a < nf; ++a) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (state[static_cast<std::size_t>(i)] != At::Free) {
        acc += 2.0 * p.cov(free_idx[static_cast<std::size_t>(a)], i) * w[i];
      }
    }
    rhs[a] = -acc;
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    double acc = p.rhs[r];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (state[static_cast<std::size_t>(i)] != At::Free) acc -= p.eq(r, i) * w[i];
    }
    rhs[nf + r] = acc;
  }

  const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  for (Eigen::Index a = 0; a < nf; ++a) {
    (*w_star)[free_idx[static_cast<std::size_t>(a)]] = sol[a];
  }
  // The KKT block was assembled with +E^T, so the solved block is the
  // negative of the multipliers in the g = E^T nu convention.
  *multipliers = -sol.tail(m);
}

double kkt_residual(const Problem& p, const std::vector<At>& state,
                    const Eigen::VectorXd& w, const Eigen::VectorXd& multipliers) {
  const Eigen::VectorXd g = 2.0 * p.cov * w;
  const Eigen::VectorXd r = g - p.eq.transpose() * multipliers;
  double stat = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    switch (state[static_cast<std::size_t>(i)]) {
      case At::Free:
        stat = std::max(stat, std::abs(r[i]));
        break;
      case At::Lower:
        stat = std::max(stat, std::max(0.0, -r[i]));
        break;
      case At::Upper:
        stat = std::max(stat, std::max(0.0, r[i]));
        break;
    }
  }
  double feas = (p.eq * w - p.rhs).cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    feas = std::max(feas, p.lo - w[i]);
    if (std::isfinite(p.hi)) feas = std::max(feas, w[i] - p.hi);
  }
  const double scale = 1.0 + g.cwiseAbs().maxCoeff();
  return std::max(stat / scale, feas);
}

}  // namespace

std::pair<double, double> feasible_return_interval(const Eigen::VectorXd& means,
                                                   double lo, double hi) {
  const Eigen::Index n = means.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  // Greedy knapsack: everyone starts at `lo`, the leftover budget goes to the
  // best (worst) means first, capped at hi - lo each.
  const auto extreme = [&](bool maximize) {
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return maximize ? means[a] > means[b] : means[a] < means[b];
    });
    double budget = 1.0 - static_cast<double>(n) * lo;
    double value = lo * means.sum();
    const double cap = hi - lo;
    for (const auto i : order) {
      if (budget <= 0.0) break;
      const double take = std::min(budget, cap);
      value += take * means[i];
      budget -= take;
    }
    return value;
  };
  return {extreme(false), extreme(true)};
}

QPSolution solve_min_variance(const Eigen::MatrixXd& cov, const Eigen::VectorXd& means,
                              std::optional<double> target, double lo, double hi) {
  const Eigen::Index n = cov.rows();
  if (n == 0 || cov.cols() != n) {
    fail(ErrorCode::InvalidArgument, "covariance matrix must be square and non-empty");
  }
  if (target && means.size() != n) {
    fail(ErrorCode::InvalidArgument, "mean-return vector length does not match covariance");
  }
  if (!std::isfinite(lo)) {
    fail(ErrorCode::InvalidArgument, "the lower weight bound must be finite");
  }
  if (!(lo <= hi)) fail(ErrorCode::InvalidArgument, "weight bounds must satisfy lower <= upper");
  if (static_cast<double>(n) * lo > 1.0 + 1e-12 ||
      (std::isfinite(hi) && static_cast<double>(n) * hi < 1.0 - 1e-12)) {
    fail(ErrorCode::InvalidArgument,
         "weight bounds exclude the budget: need N*lower <= 1 <= N*upper");
  }

  Problem p;
  p.cov = cov;
  p.lo = lo;
  p.hi = hi;

  bool degenerate_target = false;
  if (target) {
    const double spread = means.maxCoeff() - means.minCoeff();
    degenerate_target = spread <= 1e-14 * (1.0 + means.cwiseAbs().maxCoeff());
  }

  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

  if (target && degenerate_target) {
    const double implied = means.mean();
    if (std::abs(*target - implied) > 1e-10 * (1.0 + std::abs(implied))) {
      throw InfeasibleError("target return unreachable: all assets share mean " +
                                std::to_string(implied),
                            implied, implied);
    }
  }
  const bool use_target = target && !degenerate_target;

  if (use_target) {
    const auto [rmin, rmax] = feasible_return_interval(means, lo, hi);
    const double ftol = 1e-9 * (1.0 + std::abs(rmin) + std::abs(rmax));
    if (*target < rmin - ftol || *target > rmax + ftol) {
      throw InfeasibleError("target return outside the attainable interval", rmin, rmax);
    }
    // Pairwise transfers keep the budget while steering the return to the
    // target; each step either reaches it or saturates one bound.
    double current = means.dot(w);
    for (int guard = 0; guard < 4 * static_cast<int>(n) + 8; ++guard) {
      const double gap = *target - current;
      if (std::abs(gap) <= 1e-14 * (1.0 + std::abs(*target))) break;
      Eigen::Index up = -1;
      Eigen::Index down = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        const bool room_above = w[i] < hi - 1e-15;
        const bool room_below = w[i] > lo + 1e-15;
        if (gap > 0.0) {
          if (room_above && (up < 0 || means[i] > means[up])) up = i;
          if (room_below && (down < 0 || means[i] < means[down])) down = i;
        } else {
          if (room_above && (up < 0 || means[i] < means[up])) up = i;
          if (room_below && (down < 0 || means[i] > means[down])) down = i;
        }
      }
      if (up < 0 || down < 0 || up == down) break;
      const double slope = means[up] - means[down];
      if (std::abs(slope) < 1e-16) break;
      double step = gap / slope;
      step = std::min(step, w[down] - lo);
      if (std::isfinite(hi)) step = std::min(step, hi - w[up]);
      if (step <= 0.0) break;
      w[up] += step;
      w[down] -= step;
      current = means.dot(w);
    }
  }

  p.eq.resize(use_target ? 2 : 1, n);
  p.rhs.resize(use_target ? 2 : 1);
  p.eq.row(0).setOnes();
  p.rhs[0] = 1.0;
  if (use_target) {
    p.eq.row(1) = means.transpose();
    p.rhs[1] = *target;
  }

  std::vector<At> state(static_cast<std::size_t>(n), At::Free);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w[i] <= lo) {
      w[i] = lo;
      state[static_cast<std::size_t>(i)] = At::Lower;
    } else if (std::isfinite(hi) && w[i] >= hi) {
      w[i] = hi;
      state[static_cast<std::size_t>(i)] = At::Upper;
    }
  }

  Eigen::VectorXd multipliers = Eigen::VectorXd::Zero(p.eq.rows());
  const int max_iters = 100 + 20 * static_cast<int>(n);
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    Eigen::VectorXd w_star;
    solve_eqp(p, state, w, &w_star, &multipliers);
    const Eigen::VectorXd step = w_star - w;
    const double step_norm = step.cwiseAbs().maxCoeff();

    if (step_norm <= 1e-13 * (1.0 + w.cwiseAbs().maxCoeff())) {
      // Stationary on the working set; price the active bounds.
      const Eigen::VectorXd g = 2.0 * p.cov * w;
      const Eigen::VectorXd r = g - p.eq.transpose() * multipliers;
      const double mtol = 1e-9 * (1.0 + g.cwiseAbs().maxCoeff());
      Eigen::Index worst = -1;
      double worst_value = -mtol;
      for (Eigen::Index i = 0; i < n; ++i) {
        const At s = state[static_cast<std::size_t>(i)];
        if (s == At::Free) continue;
        const double price = (s == At::Lower) ? r[i] : -r[i];
        if (price < worst_value) {
          worst_value = price;
          worst = i;
        }
      }
      if (worst < 0) break;  // KKT point
      state[static_cast<std::size_t>(worst)] = At::Free;
      continue;
    }

    double alpha = 1.0;
    Eigen::Index blocker = -1;
    At blocker_side = At::Lower;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (state[static_cast<std::size_t>(i)] != At::Free) continue;
      if (step[i] > 1e-14 && std::isfinite(hi)) {
        const double limit = (hi - w[i]) / step[i];
        if (limit < alpha) {
          alpha = limit;
          blocker = i;
          blocker_side = At::Upper;
        }
      } else if (step[i] < -1e-14) {
        const double limit = (lo - w[i]) / step[i];
        if (limit < alpha) {
          alpha = limit;
          blocker = i;
          blocker_side = At::Lower;
        }
      }
    }
    alpha = std::max(alpha, 0.0);
    if (blocker >= 0 && alpha < 1.0) {
      w += alpha * step;
      w[blocker] = (blocker_side == At::Upper) ? hi : lo;
      state[static_cast<std::size_t>(blocker)] = blocker_side;
    } else {
      w = w_star;  // full step, no drift
    }
  }

  QPSolution solution;
  solution.weights = w;
  // Q is PSD, so the true quadratic form is non-negative; rounding may dip
  // a hair below zero on singular directions.
  solution.risk = std::max(0.0, w.dot(p.cov * w));
  solution.iterations = iter;
  solution.kkt_residual = kkt_residual(p, state, w, multipliers);
  if (iter >= max_iters && solution.kkt_residual > 1e-6) {
    fail(ErrorCode::Numeric, "quadratic program did not converge to a KKT point");
  }
  return solution;
}

}  // namespace specrisk::markowitz
