#pragma once

#include <Eigen/Dense>
#include <istream>
#include <string>
#include <vector>

#include "core/marketdata.hpp"
#include "core/rmt.hpp"

namespace specrisk::singleindex {

enum class IndexSource { EigenPortfolio, External };

/// Market-index log-return series aligned with a return panel.
struct IndexSeries {
  std::vector<Date> dates;
  Eigen::VectorXd values;
  IndexSource source = IndexSource::EigenPortfolio;
};

/// Index built from the eigenvector of the largest eigenvalue:
/// I_t = sum_i e1[i] * R_t[i], with e1 unit-norm under the sign convention
/// (the market mode carries non-negative dominant loadings).
IndexSeries eigen_market_index(const marketdata::ReturnPanel& panel,
                               const rmt::SpectralDecomposition& decomp);

/// Reads `date,return` CSV into an External index series.
IndexSeries read_index_csv(std::istream& in);

/// Per-ticker OLS of returns on the index: R = a + b*I + E.
struct RegressionFit {
  std::vector<Date> dates;
  std::vector<std::string> tickers;
  Eigen::VectorXd intercepts;  // a
  Eigen::VectorXd slopes;      // b
  Eigen::MatrixXd residuals;   // E, L x N
};

RegressionFit fit_single_index(const marketdata::ReturnPanel& panel,
                               const IndexSeries& index);

/// Residuals wrapped as a ReturnPanel for the downstream correlation path.
marketdata::ReturnPanel residual_panel(const RegressionFit& fit);

}  // namespace specrisk::singleindex
