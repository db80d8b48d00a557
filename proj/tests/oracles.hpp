// Independent oracles used by the unit and acceptance suites. Everything here
// deliberately avoids the implementation paths it checks: plain composite
// Simpson instead of the library's adaptive quadrature, explicit two-pass
// statistics, determinant-based eigenvalues, and brute-force grid searches
// for the quadratic programs.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace oracles {

/// Fixed-panel composite Simpson (n even).
template <typename F>
double simpson(const F& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

inline double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (const double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

/// Two-pass sample standard deviation, (n-1) normalization.
inline double stddev_of(const std::vector<double>& xs) {
  const double mu = mean_of(xs);
  double ss = 0.0;
  for (const double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Two-pass Pearson correlation of two columns.
inline double pearson_of(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// det(A) by Gaussian elimination with partial pivoting (own implementation).
inline double determinant(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  double det = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    }
    if (a(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      a.row(pivot).swap(a.row(k));
      det = -det;
    }
    det *= a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / a(k, k);
      a.row(i).tail(n - k) -= factor * a.row(k).tail(n - k);
    }
  }
  return det;
}

/// Eigenvalues of a small symmetric matrix by scanning the characteristic
/// polynomial det(A - x I) for sign changes over the Gershgorin interval and
/// bisecting each bracket. Assumes distinct eigenvalues (random inputs).
inline std::vector<double> charpoly_eigenvalues(const Eigen::MatrixXd& a, int scan = 200000) {
  const Eigen::Index n = a.rows();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) radius += std::abs(a(i, j));
    }
    lo = std::min(lo, a(i, i) - radius);
    hi = std::max(hi, a(i, i) + radius);
  }
  lo -= 1e-6;
  hi += 1e-6;
  const auto charpoly = [&](double x) {
    return determinant(a - x * Eigen::MatrixXd::Identity(n, n));
  };
  std::vector<double> roots;
  double prev_x = lo;
  double prev_f = charpoly(lo);
  for (int i = 1; i <= scan && static_cast<Eigen::Index>(roots.size()) < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / scan;
    const double f = charpoly(x);
    if (prev_f == 0.0) {
      roots.push_back(prev_x);
    } else if (f != 0.0 && std::signbit(f) != std::signbit(prev_f)) {
      double bl = prev_x;
      double bh = x;
      double fl = prev_f;
      for (int it = 0; it < 200 && bh - bl > 1e-13; ++it) {
        const double mid = 0.5 * (bl + bh);
        const double fm = charpoly(mid);
        if (fm == 0.0) {
          bl = bh = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fl)) {
          bl = mid;
          fl = fm;
        } else {
          bh = mid;
        }
      }
      roots.push_back(0.5 * (bl + bh));
    }
    prev_x = x;
    prev_f = f;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

/// Brute-force minimum of w^T S w over {1^T w = 1, means^T w = target,
/// lo <= w <= hi} for N in {2, 3}: the feasible slice is 0- or 1-dimensional,
/// so it is enumerated directly. Returns nullopt when no grid point is
/// feasible.
inline std::optional<double> grid_min_risk(const Eigen::MatrixXd& cov,
                                           const Eigen::VectorXd& means, double target,
                                           double lo, double hi, double step = 1e-3) {
  const Eigen::Index n = cov.rows();
  const double slack = 1e-9;
  const auto risk_of = [&](const Eigen::VectorXd& w) { return w.dot(cov * w); };
  if (n == 2) {
    const double denom = means[1] - means[0];
    if (std::abs(denom) < 1e-15) return std::nullopt;
    Eigen::VectorXd w(2);
    w[1] = (target - means[0]) / denom;
    w[0] = 1.0 - w[1];
    for (int i = 0; i < 2; ++i) {
      if (w[i] < lo - slack || w[i] > hi + slack) return std::nullopt;
    }
    return risk_of(w);
  }
  if (n == 3) {
    // Grid the coordinate whose complementary mean pair is best separated,
    // so the solved-for pair stays well conditioned.
    int g = 0;
    double best_sep = -1.0;
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3;
      const int b = (k + 2) % 3;
      const double sep = std::abs(means[b] - means[a]);
      if (sep > best_sep) {
        best_sep = sep;
        g = k;
      }
    }
    const int a = (g + 1) % 3;
    const int b = (g + 2) % 3;
    const double denom = means[b] - means[a];
    if (std::abs(denom) < 1e-15) return std::nullopt;
    // w_a and w_b are affine in the gridded coordinate; intersecting their
    // box conditions gives the exact feasible interval, whose endpoints join
    // the scan so bound-constrained minima are sampled exactly.
    const double beta_b = (means[a] - means[g]) / denom;
    const double alpha_b = (target - means[a]) / denom;
    const double beta_a = -1.0 - beta_b;
    const double alpha_a = 1.0 - alpha_b;
    double left = lo;
    double right = hi;
    const auto tighten = [&](double alpha, double beta) {
      if (std::abs(beta) < 1e-15) {
        if (alpha < lo - slack || alpha > hi + slack) left = right + 1.0;
        return;
      }
      double at_lo = (lo - alpha) / beta;
      double at_hi = (hi - alpha) / beta;
      if (at_lo > at_hi) std::swap(at_lo, at_hi);
      left = std::max(left, at_lo);
      right = std::min(right, at_hi);
    };
    tighten(alpha_a, beta_a);
    tighten(alpha_b, beta_b);
    if (left > right) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    const auto eval_at = [&](double wg) {
      Eigen::VectorXd w(3);
      w[g] = wg;
      w[b] = alpha_b + beta_b * wg;
      w[a] = alpha_a + beta_a * wg;
      best = std::min(best, risk_of(w));
    };
    for (double wg = left; wg < right; wg += step) eval_at(wg);
    eval_at(right);
    return best;
  }
  return std::nullopt;
}

/// Two-stage grid search for N = 4: coarse sweep over (w0, w1), the two
/// remaining weights solved from the equality constraints, then a local
/// refinement around the coarse winner.
inline std::optional<double> grid_min_risk4(const Eigen::MatrixXd& cov,
                                            const Eigen::VectorXd& means, double target,
                                            double lo, double hi) {
  const double denom = means[3] - means[2];
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const double slack = 1e-9;
  const auto eval = [&](double w0, double w1) -> std::optional<double> {
    Eigen::VectorXd w(4);
    w[0] = w0;
    w[1] = w1;
    const double rest = 1.0 - w0 - w1;
    const double rest_ret = target - means[0] * w0 - means[1] * w1;
    w[3] = (rest_ret - means[2] * rest) / denom;
    w[2] = rest - w[3];
    for (int i = 0; i < 4; ++i) {
      if (w[i] < lo - slack || w[i] > hi + slack) return std::nullopt;
    }
    return w.dot(cov * w);
  };
  double best = std::numeric_limits<double>::infinity();
  double best0 = 0.0;
  double best1 = 0.0;
  bool found = false;
  const double coarse = 0.01;
  for (double w0 = lo; w0 <= hi + 0.5 * coarse; w0 += coarse) {
    for (double w1 = lo; w1 <= hi + 0.5 * coarse; w1 += coarse) {
      if (const auto risk = eval(std::min(w0, hi), std::min(w1, hi))) {
        if (*risk < best) {
          best = *risk;
          best0 = std::min(w0, hi);
          best1 = std::min(w1, hi);
          found = true;
        }
      }
    }
  }
  if (!found) return std::nullopt;
  const double fine = 2e-4;
  for (double w0 = std::max(lo, best0 - 2 * coarse); w0 <= std::min(hi, best0 + 2 * coarse);
       w0 += fine) {
    for (double w1 = std::max(lo, best1 - 2 * coarse); w1 <= std::min(hi, best1 + 2 * coarse);
         w1 += fine) {
      if (const auto risk = eval(w0, w1)) best = std::min(best, *risk);
    }
  }
  return best;
}

}  // namespace oracles
