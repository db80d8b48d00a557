#include "core/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace specrisk::rmt {

namespace {

constexpr double kPi = std::numbers::pi;

/// Recursive adaptive Simpson with Richardson extrapolation.
template <typename F>
double adaptive_simpson(const F& f, double a, double fa, double b, double fb,
                        double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 48);
}

/// Pearson correlation of a raw observation matrix; `tickers` only feeds
/// error messages and the result's labels.
Eigen::MatrixXd pearson_of_matrix(const Eigen::MatrixXd& data,
                                  const std::vector<std::string>& tickers) {
  const Eigen::Index L = data.rows();
  const Eigen::Index N = data.cols();
  if (L < 2) fail(ErrorCode::Precondition, "correlation needs at least 2 observations");
  Eigen::MatrixXd z = data.rowwise() - data.colwise().mean();
  for (Eigen::Index j = 0; j < N; ++j) {
    if (data.col(j).maxCoeff() == data.col(j).minCoeff()) {
      fail(ErrorCode::Domain, "column '" + tickers[static_cast<std::size_t>(j)] +
                                  "' has zero variance");
    }
    const double sd = std::sqrt(z.col(j).squaredNorm() / static_cast<double>(L - 1));
    z.col(j) /= sd;
  }
  Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(L - 1);
  corr = 0.5 * (corr + corr.transpose()).eval();
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      corr(i, j) = std::clamp(corr(i, j), -1.0, 1.0);
    }
    corr(i, i) = 1.0;
  }
  return corr;
}

Eigen::VectorXd descending_eigenvalues(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::Numeric, "eigensolver failed to converge");
  }
  return solver.eigenvalues().reverse();
}

}  // namespace

void MPParams::validate() const {
  if (!(q > 0.0) || !std::isfinite(q)) {
    fail(ErrorCode::InvalidArgument, "MP aspect ratio q must be positive");
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    fail(ErrorCode::InvalidArgument, "MP variance scale sigma2 must be positive");
  }
}

std::pair<double, double> mp_bounds(const MPParams& params) {
  params.validate();
  const double inv_q = 1.0 / params.q;
  const double root = 2.0 * std::sqrt(inv_q);
  return {params.sigma2 * (1.0 + inv_q - root), params.sigma2 * (1.0 + inv_q + root)};
}

double mp_density(double lambda, const MPParams& params) {
  const auto [lo, hi] = mp_bounds(params);
  if (lambda <= lo || lambda >= hi || lambda <= 0.0) return 0.0;
  return params.q / (2.0 * kPi * params.sigma2) *
         std::sqrt((hi - lambda) * (lambda - lo)) / lambda;
}

MPDistribution::MPDistribution(const MPParams& params) : params_(params) {
  params_.validate();
  std::tie(lower_, upper_) = mp_bounds(params_);
  // Cosine-spaced panels cluster near both support edges, where the density
  // has square-root behavior, so each panel integrates cheaply.
  constexpr int kPanels = 1024;
  grid_.resize(kPanels + 1);
  cumulative_.resize(kPanels + 1);
  const double width = upper_ - lower_;
  for (int i = 0; i <= kPanels; ++i) {
    grid_[static_cast<std::size_t>(i)] =
        lower_ + 0.5 * width * (1.0 - std::cos(kPi * i / kPanels));
  }
  grid_.front() = lower_;
  grid_.back() = upper_;
  const auto f = [this](double x) { return mp_density(x, params_); };
  cumulative_[0] = 0.0;
  const double panel_tol = 1e-10 / kPanels;
  for (int i = 0; i < kPanels; ++i) {
    const auto k = static_cast<std::size_t>(i);
    cumulative_[k + 1] = cumulative_[k] + integrate(f, grid_[k], grid_[k + 1], panel_tol);
  }
}

double MPDistribution::density(double lambda) const { return mp_density(lambda, params_); }

double MPDistribution::partial(double lambda) const {
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), lambda);
  const auto panel = static_cast<std::size_t>(std::distance(grid_.begin(), it)) - 1;
  const auto f = [this](double x) { return mp_density(x, params_); };
  return cumulative_[panel] + integrate(f, grid_[panel], lambda, 1e-12);
}

double MPDistribution::cdf(double lambda) const {
  if (lambda <= lower_) return 0.0;
  if (lambda >= upper_) return cumulative_.back();
  return partial(lambda);
}

double MPDistribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    fail(ErrorCode::Domain, "quantile argument must lie in (0,1)");
  }
  // Bracket with the cumulative table, then bisect to 1e-10 in lambda.
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t hi_idx = std::min<std::size_t>(
      static_cast<std::size_t>(std::distance(cumulative_.begin(), it)),
      cumulative_.size() - 1);
  if (hi_idx == 0) hi_idx = 1;
  double lo = grid_[hi_idx - 1];
  double hi = grid_[hi_idx];
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (partial(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double mp_cdf(double lambda, const MPParams& params) {
  return MPDistribution(params).cdf(lambda);
}

double mp_quantile(double u, const MPParams& params) {
  return MPDistribution(params).quantile(u);
}

CorrelationMatrix CorrelationMatrix::from_data(std::vector<std::string> tickers,
                                               Eigen::MatrixXd values) {
  const Eigen::Index n = values.rows();
  if (values.cols() != n || static_cast<Eigen::Index>(tickers.size()) != n) {
    fail(ErrorCode::InvalidArgument, "correlation matrix dimensions are inconsistent");
  }
  if ((values - values.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    fail(ErrorCode::InvalidArgument, "correlation matrix is not symmetric");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(values(i, i) - 1.0) > 1e-12) {
      fail(ErrorCode::InvalidArgument, "correlation diagonal must equal 1");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(values(i, j)) > 1.0 + 1e-12) {
        fail(ErrorCode::InvalidArgument, "correlation entries must lie in [-1, 1]");
      }
      values(i, j) = std::clamp(values(i, j), -1.0, 1.0);
    }
    values(i, i) = 1.0;
  }
  values = 0.5 * (values + values.transpose()).eval();
  CorrelationMatrix corr;
  corr.tickers_ = std::move(tickers);
  corr.values_ = std::move(values);
  return corr;
}

CorrelationMatrix CorrelationMatrix::cleaned(std::vector<std::string> tickers,
                                             Eigen::MatrixXd values) {
  const Eigen::Index n = values.rows();
  if (values.cols() != n || static_cast<Eigen::Index>(tickers.size()) != n) {
    fail(ErrorCode::InvalidArgument, "correlation matrix dimensions are inconsistent");
  }
  values = 0.5 * (values + values.transpose()).eval();
  CorrelationMatrix corr;
  corr.tickers_ = std::move(tickers);
  corr.is_cleaned_ = true;
  corr.unit_diag_deviation_ =
      (values.diagonal().array() - 1.0).abs().maxCoeff();
  corr.values_ = std::move(values);
  return corr;
}

CorrelationMatrix pearson_correlation(const marketdata::ReturnPanel& panel) {
  return CorrelationMatrix::from_data(panel.tickers(),
                                      pearson_of_matrix(panel.returns(), panel.tickers()));
}

Eigen::Index SpectralDecomposition::count(Band band) const {
  return static_cast<Eigen::Index>(std::count(bands_.begin(), bands_.end(), band));
}

double SpectralDecomposition::mean_noise() const {
  if (!mean_noise_) {
    fail(ErrorCode::Precondition, "the Noise band is empty; no noise average exists");
  }
  return *mean_noise_;
}

SpectralDecomposition decompose(const CorrelationMatrix& corr, const MPParams& params) {
  params.validate();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr.values());
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::Numeric, "eigensolver failed to converge");
  }
  const Eigen::Index n = corr.size();

  SpectralDecomposition out;
  out.tickers_ = corr.tickers();
  out.params_ = params;
  std::tie(out.band_lower_, out.band_upper_) = mp_bounds(params);
  out.eigenvalues_ = solver.eigenvalues().reverse();
  out.eigenvectors_ = solver.eigenvectors().rowwise().reverse();

  if (out.eigenvalues_.minCoeff() < -1e-10) {
    fail(ErrorCode::Numeric, "correlation matrix has an eigenvalue below -1e-10");
  }
  if (std::abs(out.eigenvalues_.sum() - static_cast<double>(n)) > 1e-8) {
    fail(ErrorCode::Numeric, "eigenvalues do not sum to the matrix trace");
  }

  // Sign convention: the largest-magnitude entry of each eigenvector is
  // non-negative (first such entry on ties).
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index arg = 0;
    out.eigenvectors_.col(k).cwiseAbs().maxCoeff(&arg);
    if (out.eigenvectors_(arg, k) < 0.0) out.eigenvectors_.col(k) *= -1.0;
  }

  out.bands_.resize(static_cast<std::size_t>(n));
  double noise_sum = 0.0;
  Eigen::Index noise_count = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double ev = out.eigenvalues_[k];
    Band band = Band::Noise;
    if (ev > out.band_upper_) {
      band = Band::AboveNoise;
    } else if (ev < out.band_lower_) {
      band = Band::BelowNoise;
    } else {
      noise_sum += ev;
      ++noise_count;
    }
    out.bands_[static_cast<std::size_t>(k)] = band;
  }
  if (noise_count > 0) out.mean_noise_ = noise_sum / static_cast<double>(noise_count);
  return out;
}

CorrelationMatrix clean(const SpectralDecomposition& decomp) {
  const double noise_mean = decomp.mean_noise();  // errors on an empty band
  Eigen::VectorXd d = decomp.eigenvalues();
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    if (decomp.bands()[static_cast<std::size_t>(k)] == Band::Noise) d[k] = noise_mean;
  }
  Eigen::MatrixXd rebuilt =
      decomp.eigenvectors() * d.asDiagonal() * decomp.eigenvectors().transpose();
  return CorrelationMatrix::cleaned(decomp.tickers(), std::move(rebuilt));
}

std::vector<std::vector<double>> shuffle_eigenvalue_sample(
    const marketdata::ReturnPanel& panel, int n_sims, std::uint64_t seed) {
  if (n_sims < 1) fail(ErrorCode::InvalidArgument, "n_sims must be at least 1");
  const Eigen::Index L = panel.n_obs();
  const Eigen::Index N = panel.n_assets();
  std::vector<std::vector<double>> samples;
  samples.reserve(static_cast<std::size_t>(n_sims));
  for (int sim = 0; sim < n_sims; ++sim) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(sim));
    Eigen::MatrixXd shuffled = panel.returns();
    for (Eigen::Index j = 0; j < N; ++j) {
      rng.shuffle(std::span<double>(shuffled.col(j).data(), static_cast<std::size_t>(L)));
    }
    const Eigen::MatrixXd corr = pearson_of_matrix(shuffled, panel.tickers());
    const Eigen::VectorXd eigs = descending_eigenvalues(corr);
    samples.emplace_back(eigs.data(), eigs.data() + eigs.size());
  }
  return samples;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // Theta-function form converges fast for small arguments.
    const double t = std::exp(-kPi * kPi / (8.0 * x * x));
    const double cdf = std::sqrt(2.0 * kPi) / x *
                       (t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KSResult ks_one_sample(std::span<const double> sample, const MPParams& params) {
  if (sample.empty()) fail(ErrorCode::Domain, "KS test needs a non-empty sample");
  const MPDistribution dist(params);
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = dist.cdf(xs[i]);
    const double step_hi = static_cast<double>(i + 1) / n - f;
    const double step_lo = f - static_cast<double>(i) / n;
    d = std::max({d, step_hi, step_lo});
  }
  KSResult result;
  result.statistic = d;
  result.n_effective = n;
  result.p_value = kolmogorov_survival(std::sqrt(n) * d);
  return result;
}

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::Domain, "KS test needs non-empty samples");
  std::vector<double> xs(a.begin(), a.end());
  std::vector<double> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double x = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= x) ++i;
    while (j < ys.size() && ys[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KSResult result;
  result.statistic = d;
  result.n_effective = na * nb / (na + nb);
  result.p_value = kolmogorov_survival(std::sqrt(result.n_effective) * d);
  return result;
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> sample,
                                                 const MPParams& params) {
  if (sample.empty()) fail(ErrorCode::Domain, "qq plot needs a non-empty sample");
  const MPDistribution dist(params);
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  std::vector<std::pair<double, double>> points;
  points.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = (static_cast<double>(i) + 0.5) / n;
    points.emplace_back(dist.quantile(u), xs[i]);
  }
  return points;
}

}  // namespace specrisk::rmt
