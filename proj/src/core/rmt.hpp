#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/marketdata.hpp"

namespace specrisk::rmt {

/// Parameters of the limiting eigenvalue law for an L x N i.i.d. panel:
/// aspect ratio q = L/N and variance scale sigma2 (1 for standardized
/// returns, which is what a Pearson correlation matrix implies).
struct MPParams {
  double q = 1.0;
  double sigma2 = 1.0;

  void validate() const;
};

/// Support edges: sigma2 * (1 + 1/q -+ 2*sqrt(1/q)).
std::pair<double, double> mp_bounds(const MPParams& params);

/// Bulk density: q/(2*pi*sigma2) * sqrt((l+ - x)(x - l-)) / x inside the
/// support, exactly 0 outside.
double mp_density(double lambda, const MPParams& params);

/// Marchenko-Pastur reference distribution with a cached cumulative table.
/// The CDF is adaptive composite quadrature of the density (absolute
/// tolerance 1e-10); the quantile inverts it by bisection to 1e-10 in lambda.
/// Build one of these when evaluating many cdf/quantile points.
class MPDistribution {
public:
  explicit MPDistribution(const MPParams& params);

  const MPParams& params() const { return params_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  double density(double lambda) const;
  double cdf(double lambda) const;
  double quantile(double u) const;  // u in (0,1)

private:
  double partial(double lambda) const;  // integral over [lower_, lambda]

  MPParams params_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  std::vector<double> grid_;        // panel edges
  std::vector<double> cumulative_;  // cdf at panel edges
};

/// One-shot conveniences; construct an MPDistribution per call.
double mp_cdf(double lambda, const MPParams& params);
double mp_quantile(double u, const MPParams& params);

/// Symmetric matrix with unit diagonal and off-diagonal entries in [-1, 1].
/// Matrices produced by noise cleaning keep their (slightly off-unit)
/// diagonal; the deviation is kept as a diagnostic instead of being patched.
class CorrelationMatrix {
public:
  static CorrelationMatrix from_data(std::vector<std::string> tickers,
                                     Eigen::MatrixXd values);
  static CorrelationMatrix cleaned(std::vector<std::string> tickers,
                                   Eigen::MatrixXd values);

  const std::vector<std::string>& tickers() const { return tickers_; }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index size() const { return values_.rows(); }
  bool is_cleaned() const { return is_cleaned_; }
  /// max |C_ii - 1|; zero for matrices built from data.
  double unit_diag_deviation() const { return unit_diag_deviation_; }

private:
  CorrelationMatrix() = default;

  std::vector<std::string> tickers_;
  Eigen::MatrixXd values_;
  bool is_cleaned_ = false;
  double unit_diag_deviation_ = 0.0;
};

/// Pearson correlation of the panel's columns ((L-1) normalization).
/// Errors if L < 2 or any column has zero variance (constant column).
CorrelationMatrix pearson_correlation(const marketdata::ReturnPanel& panel);

enum class Band { BelowNoise, Noise, AboveNoise };

/// Eigensystem of a correlation matrix together with the MP noise-band
/// classification. Eigenvalues descend; eigenvectors are orthonormal columns
/// with the largest-magnitude entry of each made non-negative, which pins the
/// sign so repeated runs agree bit for bit.
class SpectralDecomposition {
public:
  const std::vector<std::string>& tickers() const { return tickers_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  const std::vector<Band>& bands() const { return bands_; }
  const MPParams& params() const { return params_; }
  double band_lower() const { return band_lower_; }
  double band_upper() const { return band_upper_; }

  Eigen::Index size() const { return eigenvalues_.size(); }
  Eigen::Index count(Band band) const;

  /// Average of the Noise-band eigenvalues. Error if that band is empty.
  double mean_noise() const;

private:
  friend SpectralDecomposition decompose(const CorrelationMatrix&, const MPParams&);

  std::vector<std::string> tickers_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  std::vector<Band> bands_;
  MPParams params_;
  double band_lower_ = 0.0;
  double band_upper_ = 0.0;
  std::optional<double> mean_noise_;
};

SpectralDecomposition decompose(const CorrelationMatrix& corr, const MPParams& params);

/// Rebuilds the matrix with every Noise-band eigenvalue replaced by their
/// average (V D V^T with orthonormal V, so P^-1 = P^T). Above/BelowNoise
/// eigenvalues pass through untouched; the trace is conserved by
/// construction. Requires a non-empty Noise band.
CorrelationMatrix clean(const SpectralDecomposition& decomp);

/// Column-wise permutation baseline: for each simulation the generator is
/// derived from (seed, simulation index), every column of the panel is
/// independently shuffled, and the eigenvalues of the resulting Pearson
/// correlation are collected. Output is one eigenvalue sample per simulation.
std::vector<std::vector<double>> shuffle_eigenvalue_sample(
    const marketdata::ReturnPanel& panel, int n_sims, std::uint64_t seed);

struct KSResult {
  double statistic = 0.0;    // sup distance D in [0,1]
  double p_value = 1.0;
  double n_effective = 0.0;  // n for one sample, n1*n2/(n1+n2) for two
};

/// Survival function of the Kolmogorov distribution, Q(x) = P(K > x).
double kolmogorov_survival(double x);

KSResult ks_one_sample(std::span<const double> sample, const MPParams& params);
KSResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Quantile-quantile points: (mp_quantile((i-0.5)/n), i-th order statistic).
std::vector<std::pair<double, double>> qq_points(std::span<const double> sample,
                                                 const MPParams& params);

}  // namespace specrisk::rmt
