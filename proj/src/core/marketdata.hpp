#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "core/dates.hpp"

namespace specrisk::marketdata {

enum class Layout { Long, Wide };

/// Daily closing prices, dates x tickers. Cells with no observation are
/// explicitly marked missing (and hold NaN). Immutable once built; safe to
/// share across threads.
class PricePanel {
public:
  PricePanel(std::vector<Date> dates, std::vector<std::string> tickers,
             Eigen::MatrixXd prices, std::vector<std::uint8_t> present);

  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<std::string>& tickers() const { return tickers_; }
  const Eigen::MatrixXd& prices() const { return prices_; }

  Eigen::Index n_dates() const { return prices_.rows(); }
  Eigen::Index n_assets() const { return prices_.cols(); }

  bool present(Eigen::Index date_idx, Eigen::Index asset_idx) const {
    return present_[static_cast<std::size_t>(date_idx) * tickers_.size() +
                    static_cast<std::size_t>(asset_idx)] != 0;
  }
  bool fully_observed() const;
  Eigen::Index missing_count() const;

private:
  std::vector<Date> dates_;
  std::vector<std::string> tickers_;
  Eigen::MatrixXd prices_;                // NaN where missing
  std::vector<std::uint8_t> present_;     // row-major dates x tickers
};

struct ParseOptions {
  Layout layout = Layout::Long;
  /// Cell text (besides the empty cell) treated as an explicit missing mark.
  std::string missing_sentinel;
};

/// Parses a price file. Long layout: header `date,ticker,close`, one row per
/// observation, tickers ordered lexicographically in the result. Wide layout:
/// header `date,<t1>,<t2>,...`, ticker order taken from the header. Dates are
/// sorted ascending in both layouts; a duplicate (date,ticker) observation is
/// an error. Unparseable cells become missing marks; parseable non-positive
/// prices are rejected with their location.
PricePanel parse_prices(std::istream& in, const ParseOptions& options);
void write_prices(std::ostream& out, const PricePanel& panel, Layout layout);

/// Keeps exactly the tickers with an observation on every date.
PricePanel filter_fully_liquid(const PricePanel& panel);

/// Rows with range.begin <= date <= range.end; tickers unchanged.
PricePanel slice_dates(const PricePanel& panel, const DateRange& range);

/// Column subset in the given index order.
PricePanel subset_tickers(const PricePanel& panel, const std::vector<Eigen::Index>& idx);

/// Dated log-return matrix, L observations x N assets, no missing entries.
class ReturnPanel {
public:
  ReturnPanel(std::vector<Date> dates, std::vector<std::string> tickers,
              Eigen::MatrixXd returns);

  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<std::string>& tickers() const { return tickers_; }
  const Eigen::MatrixXd& returns() const { return returns_; }

  Eigen::Index n_obs() const { return returns_.rows(); }
  Eigen::Index n_assets() const { return returns_.cols(); }
  /// Aspect ratio Q = L / N.
  double q_ratio() const {
    return static_cast<double>(n_obs()) / static_cast<double>(n_assets());
  }

  Eigen::VectorXd column_means() const;
  /// Sample standard deviations, (L-1) normalization.
  Eigen::VectorXd column_stddevs() const;

  /// Contiguous window of `length` observations starting at `start`.
  ReturnPanel window(Eigen::Index start, Eigen::Index length) const;

private:
  std::vector<Date> dates_;
  std::vector<std::string> tickers_;
  Eigen::MatrixXd returns_;
};

/// returns[t][i] = ln(prices[t+1][i]) - ln(prices[t][i]).
/// Requires a fully observed panel with at least two dates.
ReturnPanel log_returns(const PricePanel& panel);

void write_returns(std::ostream& out, const ReturnPanel& panel);

}  // namespace specrisk::marketdata
