// Deterministic synthetic markets for the test and acceptance suites.
#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <string>
#include <vector>

#include "core/dates.hpp"
#include "core/marketdata.hpp"
#include "core/rng.hpp"

namespace synthetic {

inline specrisk::Date next_day(specrisk::Date d) {
  ++d.day;
  if (!d.valid()) {
    d.day = 1;
    ++d.month;
    if (!d.valid()) {
      d.month = 1;
      ++d.year;
    }
  }
  return d;
}

inline std::vector<specrisk::Date> make_dates(std::size_t n,
                                              specrisk::Date start = {2004, 1, 2}) {
  std::vector<specrisk::Date> dates;
  dates.reserve(n);
  specrisk::Date d = start;
  for (std::size_t i = 0; i < n; ++i) {
    dates.push_back(d);
    d = next_day(d);
  }
  return dates;
}

inline std::vector<std::string> make_tickers(std::size_t n) {
  // Zero-padded so lexicographic and construction order coincide.
  std::vector<std::string> tickers;
  tickers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "T%03u", static_cast<unsigned>(i % 1000));
    tickers.emplace_back(name);
  }
  return tickers;
}

inline Eigen::MatrixXd gaussian_matrix(specrisk::Rng& rng, Eigen::Index rows,
                                       Eigen::Index cols, double sd = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = sd * rng.gaussian();
  }
  return m;
}

inline specrisk::marketdata::ReturnPanel iid_panel(specrisk::Rng& rng, Eigen::Index L,
                                                   Eigen::Index N, double sd = 1.0) {
  return {make_dates(static_cast<std::size_t>(L)), make_tickers(static_cast<std::size_t>(N)),
          gaussian_matrix(rng, L, N, sd)};
}

/// One-factor market: r_ti = drift + beta_i * m_t + eps_ti. `market_sd` may
/// vary over time through the optional per-day scale.
inline specrisk::marketdata::ReturnPanel factor_panel(
    specrisk::Rng& rng, Eigen::Index L, Eigen::Index N, double market_sd, double idio_sd,
    const std::vector<double>& day_scale = {}, double drift = 0.0) {
  Eigen::MatrixXd r(L, N);
  std::vector<double> betas(static_cast<std::size_t>(N));
  for (auto& b : betas) b = 0.6 + 0.8 * rng.uniform01();
  for (Eigen::Index t = 0; t < L; ++t) {
    const double scale =
        day_scale.empty() ? 1.0 : day_scale[static_cast<std::size_t>(t)];
    const double m = scale * market_sd * rng.gaussian();
    for (Eigen::Index j = 0; j < N; ++j) {
      r(t, j) =
          drift + betas[static_cast<std::size_t>(j)] * m + scale * idio_sd * rng.gaussian();
    }
  }
  return {make_dates(static_cast<std::size_t>(L)), make_tickers(static_cast<std::size_t>(N)),
          r};
}

/// Two equal blocks driven by separate factors with strength `coupling` in
/// [0,1): higher coupling means stronger intra-block correlation.
inline specrisk::marketdata::ReturnPanel block_panel(specrisk::Rng& rng, Eigen::Index L,
                                                     Eigen::Index N, double coupling) {
  Eigen::MatrixXd r(L, N);
  const Eigen::Index half = N / 2;
  const double idio = std::sqrt(1.0 - coupling * coupling);
  for (Eigen::Index t = 0; t < L; ++t) {
    const double f0 = rng.gaussian();
    const double f1 = rng.gaussian();
    for (Eigen::Index j = 0; j < N; ++j) {
      const double factor = (j < half) ? f0 : f1;
      r(t, j) = coupling * factor + idio * rng.gaussian();
    }
  }
  return {make_dates(static_cast<std::size_t>(L)), make_tickers(static_cast<std::size_t>(N)),
          r};
}

/// Random-walk closing prices around 100, strictly positive.
inline specrisk::marketdata::PricePanel price_walk(specrisk::Rng& rng, Eigen::Index days,
                                                   Eigen::Index N, double daily_sd = 0.02) {
  Eigen::MatrixXd prices(days, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    double level = 50.0 + 100.0 * rng.uniform01();
    for (Eigen::Index t = 0; t < days; ++t) {
      prices(t, j) = level;
      level *= std::exp(daily_sd * rng.gaussian());
    }
  }
  return {make_dates(static_cast<std::size_t>(days)),
          make_tickers(static_cast<std::size_t>(N)), prices,
          std::vector<std::uint8_t>(static_cast<std::size_t>(days * N), 1)};
}

}  // namespace synthetic
