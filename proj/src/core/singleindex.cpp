#include "core/singleindex.hpp"

#include <cmath>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace specrisk::singleindex {

IndexSeries eigen_market_index(const marketdata::ReturnPanel& panel,
                               const rmt::SpectralDecomposition& decomp) {
  if (decomp.size() != panel.n_assets()) {
    fail(ErrorCode::InvalidArgument,
         "decomposition size does not match the panel's asset count");
  }
  if (decomp.tickers() != panel.tickers()) {
    fail(ErrorCode::InvalidArgument,
         "decomposition tickers do not match the panel's tickers");
  }
  IndexSeries series;
  series.dates = panel.dates();
  series.values = panel.returns() * decomp.eigenvectors().col(0);
  series.source = IndexSource::EigenPortfolio;
  return series;
}

IndexSeries read_index_csv(std::istream& in) {
  auto header = next_line(in);
  if (!header) fail(ErrorCode::Parse, "empty index file");
  const auto head = split_csv_line(*header);
  if (head.size() != 2 || head[0] != "date" || head[1] != "return") {
    fail(ErrorCode::Parse, "malformed header: expected 'date,return'");
  }
  std::vector<Date> dates;
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      fail(ErrorCode::Parse, "expected 2 fields at line " + std::to_string(line_no));
    }
    dates.push_back(Date::parse(fields[0]));
    values.push_back(parse_double(fields[1], "index return at line " + std::to_string(line_no)));
  }
  if (dates.empty()) fail(ErrorCode::Parse, "index file has no data rows");
  for (std::size_t i = 1; i < dates.size(); ++i) {
    if (!(dates[i - 1] < dates[i])) {
      fail(ErrorCode::Parse, "index dates are not strictly increasing");
    }
  }
  IndexSeries series;
  series.dates = std::move(dates);
  series.values = Eigen::Map<Eigen::VectorXd>(values.data(),
                                              static_cast<Eigen::Index>(values.size()));
  series.source = IndexSource::External;
  return series;
}

RegressionFit fit_single_index(const marketdata::ReturnPanel& panel,
                               const IndexSeries& index) {
  const Eigen::Index L = panel.n_obs();
  const Eigen::Index N = panel.n_assets();
  if (index.values.size() != L) {
    fail(ErrorCode::InvalidArgument, "index length does not match the panel's observations");
  }
  if (index.values.maxCoeff() == index.values.minCoeff()) {
    fail(ErrorCode::Domain, "index series is constant; regression is undefined");
  }
  const double index_mean = index.values.mean();
  const Eigen::VectorXd index_centered = index.values.array() - index_mean;
  const double index_ss = index_centered.squaredNorm();

  RegressionFit fit;
  fit.dates = panel.dates();
  fit.tickers = panel.tickers();
  fit.intercepts.resize(N);
  fit.slopes.resize(N);
  fit.residuals.resize(L, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const Eigen::VectorXd& r = panel.returns().col(j);
    const double r_mean = r.mean();
    const double b = index_centered.dot(r) / index_ss;
    const double a = r_mean - b * index_mean;
    fit.slopes[j] = b;
    fit.intercepts[j] = a;
    fit.residuals.col(j) = r.array() - a - b * index.values.array();
  }
  return fit;
}

marketdata::ReturnPanel residual_panel(const RegressionFit& fit) {
  return marketdata::ReturnPanel(fit.dates, fit.tickers, fit.residuals);
}

}  // namespace specrisk::singleindex
