#include "core/marketdata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace specrisk::marketdata {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string cell_location(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

/// Empty cell or the configured sentinel, or text that does not parse as a
/// number: a missing mark. A parseable non-positive price is rejected.
bool parse_price_cell(std::string_view text, const ParseOptions& options,
                      std::size_t line, std::size_t column, double* out) {
  std::string trimmed(text);
  while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
    trimmed.pop_back();
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.erase(trimmed.begin());
  if (trimmed.empty() || trimmed == options.missing_sentinel) return false;
  double value = 0.0;
  try {
    value = parse_double(trimmed, "price");
  } catch (const Error&) {
    return false;  // unparseable cell -> missing mark
  }
  if (!(value > 0.0)) {
    fail(ErrorCode::Parse, "non-positive price '" + trimmed + "' at " +
                               cell_location(line, column));
  }
  *out = value;
  return true;
}

PricePanel parse_long(std::istream& in, const ParseOptions& options) {
  auto header = next_line(in);
  if (!header) fail(ErrorCode::Parse, "empty price file");
  const auto head = split_csv_line(*header);
  if (head.size() != 3 || head[0] != "date" || head[1] != "ticker" || head[2] != "close") {
    fail(ErrorCode::Parse, "malformed header: expected 'date,ticker,close'");
  }

  struct Obs {
    double value;
    bool present;
  };
  std::set<Date> date_set;
  std::set<std::string> ticker_set;
  std::map<std::pair<Date, std::string>, Obs> cells;

  std::size_t line_no = 1;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      fail(ErrorCode::Parse, "expected 3 fields at " + cell_location(line_no, fields.size()));
    }
    const Date date = Date::parse(fields[0]);
    const std::string& ticker = fields[1];
    if (ticker.empty()) fail(ErrorCode::Parse, "empty ticker at " + cell_location(line_no, 2));
    double value = kNaN;
    const bool present = parse_price_cell(fields[2], options, line_no, 3, &value);
    const auto key = std::make_pair(date, ticker);
    if (!cells.emplace(key, Obs{value, present}).second) {
      fail(ErrorCode::Parse, "duplicate (date,ticker) pair (" + date.to_string() + ", " +
                                 ticker + ") at line " + std::to_string(line_no));
    }
    date_set.insert(date);
    ticker_set.insert(ticker);
  }
  if (cells.empty()) fail(ErrorCode::Parse, "price file has no data rows");

  std::vector<Date> dates(date_set.begin(), date_set.end());
  std::vector<std::string> tickers(ticker_set.begin(), ticker_set.end());
  const Eigen::Index rows = static_cast<Eigen::Index>(dates.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(tickers.size());
  Eigen::MatrixXd prices = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  std::vector<std::uint8_t> present(static_cast<std::size_t>(rows * cols), 0);

  std::map<std::string, Eigen::Index> ticker_idx;
  for (Eigen::Index j = 0; j < cols; ++j) ticker_idx[tickers[j]] = j;
  std::map<Date, Eigen::Index> date_idx;
  for (Eigen::Index i = 0; i < rows; ++i) date_idx[dates[i]] = i;

  for (const auto& [key, obs] : cells) {
    if (!obs.present) continue;
    const Eigen::Index i = date_idx[key.first];
    const Eigen::Index j = ticker_idx[key.second];
    prices(i, j) = obs.value;
    present[static_cast<std::size_t>(i * cols + j)] = 1;
  }
  return PricePanel(std::move(dates), std::move(tickers), std::move(prices),
                    std::move(present));
}

PricePanel parse_wide(std::istream& in, const ParseOptions& options) {
  auto header = next_line(in);
  if (!header) fail(ErrorCode::Parse, "empty price file");
  const auto head = split_csv_line(*header);
  if (head.size() < 2 || head[0] != "date") {
    fail(ErrorCode::Parse, "malformed header: expected 'date,<ticker>,...'");
  }
  std::vector<std::string> tickers(head.begin() + 1, head.end());
  std::set<std::string> seen;
  for (const auto& t : tickers) {
    if (t.empty()) fail(ErrorCode::Parse, "empty ticker name in header");
    if (!seen.insert(t).second) fail(ErrorCode::Parse, "duplicate ticker '" + t + "' in header");
  }
  const Eigen::Index cols = static_cast<Eigen::Index>(tickers.size());

  struct Row {
    Date date;
    std::vector<double> values;
    std::vector<std::uint8_t> present;
  };
  std::vector<Row> parsed;
  std::set<Date> date_set;

  std::size_t line_no = 1;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != tickers.size() + 1) {
      fail(ErrorCode::Parse, "expected " + std::to_string(tickers.size() + 1) +
                                 " fields at line " + std::to_string(line_no));
    }
    Row row;
    row.date = Date::parse(fields[0]);
    if (!date_set.insert(row.date).second) {
      fail(ErrorCode::Parse, "duplicate date " + row.date.to_string() + " at line " +
                                 std::to_string(line_no));
    }
    row.values.resize(tickers.size(), kNaN);
    row.present.resize(tickers.size(), 0);
    for (std::size_t j = 0; j < tickers.size(); ++j) {
      double value = kNaN;
      if (parse_price_cell(fields[j + 1], options, line_no, j + 2, &value)) {
        row.values[j] = value;
        row.present[j] = 1;
      }
    }
    parsed.push_back(std::move(row));
  }
  if (parsed.empty()) fail(ErrorCode::Parse, "price file has no data rows");

  std::sort(parsed.begin(), parsed.end(),
            [](const Row& a, const Row& b) { return a.date < b.date; });
  const Eigen::Index rows = static_cast<Eigen::Index>(parsed.size());
  std::vector<Date> dates;
  dates.reserve(parsed.size());
  Eigen::MatrixXd prices(rows, cols);
  std::vector<std::uint8_t> present(static_cast<std::size_t>(rows * cols), 0);
  for (Eigen::Index i = 0; i < rows; ++i) {
    dates.push_back(parsed[i].date);
    for (Eigen::Index j = 0; j < cols; ++j) {
      prices(i, j) = parsed[i].values[static_cast<std::size_t>(j)];
      present[static_cast<std::size_t>(i * cols + j)] =
          parsed[i].present[static_cast<std::size_t>(j)];
    }
  }
  return PricePanel(std::move(dates), std::move(tickers), std::move(prices),
                    std::move(present));
}

}  // namespace

PricePanel::PricePanel(std::vector<Date> dates, std::vector<std::string> tickers,
                       Eigen::MatrixXd prices, std::vector<std::uint8_t> present)
    : dates_(std::move(dates)),
      tickers_(std::move(tickers)),
      prices_(std::move(prices)),
      present_(std::move(present)) {
  const auto rows = static_cast<std::size_t>(prices_.rows());
  const auto cols = static_cast<std::size_t>(prices_.cols());
  if (dates_.size() != rows || tickers_.size() != cols || present_.size() != rows * cols) {
    fail(ErrorCode::InvalidArgument, "price panel dimensions are inconsistent");
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (!(dates_[i - 1] < dates_[i])) {
      fail(ErrorCode::InvalidArgument, "price panel dates are not strictly increasing");
    }
  }
  for (Eigen::Index i = 0; i < prices_.rows(); ++i) {
    for (Eigen::Index j = 0; j < prices_.cols(); ++j) {
      if (this->present(i, j) && !(prices_(i, j) > 0.0)) {
        fail(ErrorCode::InvalidArgument,
             "non-positive price for (" + dates_[static_cast<std::size_t>(i)].to_string() +
                 ", " + tickers_[static_cast<std::size_t>(j)] + ")");
      }
    }
  }
}

bool PricePanel::fully_observed() const { return missing_count() == 0; }

Eigen::Index PricePanel::missing_count() const {
  Eigen::Index missing = 0;
  for (const auto p : present_) missing += (p == 0);
  return missing;
}

PricePanel parse_prices(std::istream& in, const ParseOptions& options) {
  return options.layout == Layout::Long ? parse_long(in, options) : parse_wide(in, options);
}

void write_prices(std::ostream& out, const PricePanel& panel, Layout layout) {
  if (layout == Layout::Long) {
    out << "date,ticker,close\n";
    for (Eigen::Index i = 0; i < panel.n_dates(); ++i) {
      for (Eigen::Index j = 0; j < panel.n_assets(); ++j) {
        if (!panel.present(i, j)) continue;
        out << panel.dates()[static_cast<std::size_t>(i)].to_string() << ','
            << panel.tickers()[static_cast<std::size_t>(j)] << ','
            << format_double(panel.prices()(i, j)) << '\n';
      }
    }
    return;
  }
  out << "date";
  for (const auto& t : panel.tickers()) out << ',' << t;
  out << '\n';
  for (Eigen::Index i = 0; i < panel.n_dates(); ++i) {
    out << panel.dates()[static_cast<std::size_t>(i)].to_string();
    for (Eigen::Index j = 0; j < panel.n_assets(); ++j) {
      out << ',';
      if (panel.present(i, j)) out << format_double(panel.prices()(i, j));
    }
    out << '\n';
  }
}

PricePanel filter_fully_liquid(const PricePanel& panel) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < panel.n_assets(); ++j) {
    bool liquid = true;
    for (Eigen::Index i = 0; i < panel.n_dates(); ++i) {
      if (!panel.present(i, j)) {
        liquid = false;
        break;
      }
    }
    if (liquid) keep.push_back(j);
  }
  if (keep.empty()) {
    fail(ErrorCode::EmptyUniverse, "no ticker is fully liquid over the panel's dates");
  }
  return subset_tickers(panel, keep);
}

PricePanel slice_dates(const PricePanel& panel, const DateRange& range) {
  std::vector<Date> dates;
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < panel.n_dates(); ++i) {
    const Date& d = panel.dates()[static_cast<std::size_t>(i)];
    if (range.contains(d)) {
      dates.push_back(d);
      rows.push_back(i);
    }
  }
  const Eigen::Index cols = panel.n_assets();
  Eigen::MatrixXd prices(static_cast<Eigen::Index>(rows.size()), cols);
  std::vector<std::uint8_t> present(rows.size() * static_cast<std::size_t>(cols), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      prices(static_cast<Eigen::Index>(r), j) = panel.prices()(rows[r], j);
      present[r * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)] =
          panel.present(rows[r], j) ? 1 : 0;
    }
  }
  return PricePanel(std::move(dates), panel.tickers(), std::move(prices), std::move(present));
}

PricePanel subset_tickers(const PricePanel& panel, const std::vector<Eigen::Index>& idx) {
  std::vector<std::string> tickers;
  tickers.reserve(idx.size());
  for (const auto j : idx) tickers.push_back(panel.tickers()[static_cast<std::size_t>(j)]);
  Eigen::MatrixXd prices(panel.n_dates(), static_cast<Eigen::Index>(idx.size()));
  std::vector<std::uint8_t> present(
      static_cast<std::size_t>(panel.n_dates()) * idx.size(), 0);
  for (Eigen::Index i = 0; i < panel.n_dates(); ++i) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      prices(i, static_cast<Eigen::Index>(k)) = panel.prices()(i, idx[k]);
      present[static_cast<std::size_t>(i) * idx.size() + k] = panel.present(i, idx[k]) ? 1 : 0;
    }
  }
  return PricePanel(panel.dates(), std::move(tickers), std::move(prices), std::move(present));
}

ReturnPanel::ReturnPanel(std::vector<Date> dates, std::vector<std::string> tickers,
                         Eigen::MatrixXd returns)
    : dates_(std::move(dates)), tickers_(std::move(tickers)), returns_(std::move(returns)) {
  if (dates_.size() != static_cast<std::size_t>(returns_.rows()) ||
      tickers_.size() != static_cast<std::size_t>(returns_.cols())) {
    fail(ErrorCode::InvalidArgument, "return panel dimensions are inconsistent");
  }
  if (!returns_.allFinite()) {
    fail(ErrorCode::InvalidArgument, "return panel has non-finite entries");
  }
}

Eigen::VectorXd ReturnPanel::column_means() const {
  return returns_.colwise().mean();
}

Eigen::VectorXd ReturnPanel::column_stddevs() const {
  const Eigen::Index n = n_obs();
  if (n < 2) fail(ErrorCode::Precondition, "need at least 2 observations for a std-dev");
  const Eigen::MatrixXd centered = returns_.rowwise() - returns_.colwise().mean();
  return (centered.colwise().squaredNorm() / static_cast<double>(n - 1))
      .cwiseSqrt()
      .transpose();
}

ReturnPanel ReturnPanel::window(Eigen::Index start, Eigen::Index length) const {
  if (start < 0 || length < 1 || start + length > n_obs()) {
    fail(ErrorCode::InvalidArgument, "return window out of range");
  }
  std::vector<Date> dates(dates_.begin() + start, dates_.begin() + start + length);
  return ReturnPanel(std::move(dates), tickers_, returns_.middleRows(start, length));
}

ReturnPanel log_returns(const PricePanel& panel) {
  if (!panel.fully_observed()) {
    fail(ErrorCode::Precondition,
         "log returns need a fully liquid panel; filter it first (" +
             std::to_string(panel.missing_count()) + " missing entries)");
  }
  if (panel.n_dates() < 2) {
    fail(ErrorCode::Precondition, "log returns need at least two dates");
  }
  const Eigen::Index L = panel.n_dates() - 1;
  Eigen::MatrixXd returns(L, panel.n_assets());
  for (Eigen::Index t = 0; t < L; ++t) {
    for (Eigen::Index j = 0; j < panel.n_assets(); ++j) {
      returns(t, j) = std::log(panel.prices()(t + 1, j)) - std::log(panel.prices()(t, j));
    }
  }
  std::vector<Date> dates(panel.dates().begin() + 1, panel.dates().end());
  return ReturnPanel(std::move(dates), panel.tickers(), std::move(returns));
}

void write_returns(std::ostream& out, const ReturnPanel& panel) {
  out << "date";
  for (const auto& t : panel.tickers()) out << ',' << t;
  out << '\n';
  for (Eigen::Index i = 0; i < panel.n_obs(); ++i) {
    out << panel.dates()[static_cast<std::size_t>(i)].to_string();
    for (Eigen::Index j = 0; j < panel.n_assets(); ++j) {
      out << ',' << format_double(panel.returns()(i, j));
    }
    out << '\n';
  }
}

}  // namespace specrisk::marketdata
