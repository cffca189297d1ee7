#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace nsfts {

/// Root mean squared error. Throws PreconditionError on empty or mismatched input.
[[nodiscard]] double rmse(std::span<const double> y, std::span<const double> yhat);

struct MapeResult {
  double value = 0.0;
  std::size_t skipped = 0;  // pairs with a zero target, left out of the average
};

/// Mean absolute percentage error over non-zero targets; scaled by 100 when percent.
/// Throws PreconditionError when every target is zero.
[[nodiscard]] MapeResult mape(std::span<const double> y, std::span<const double> yhat, bool percent = true);

/// Theil's U1: sqrt(sum (y - yhat)^2) / (sqrt(sum y^2) + sqrt(sum yhat^2)), in [0, 1].
[[nodiscard]] double theil_u1(std::span<const double> y, std::span<const double> yhat);

/// Theil's U2: RMSE of yhat over y[1..] relative to the naive forecast y[t-1] -> y[t].
/// 1 means parity with the naive forecaster. Throws on length < 2 or a constant series.
[[nodiscard]] double theil_u2(std::span<const double> y, std::span<const double> yhat);

/// Accuracy of one method on one dataset.
struct MetricReport {
  double rmse = 0.0;
  double mape = 0.0;  // percent unless the literal fraction was requested
  double u1 = 0.0;
  double u2 = 0.0;
  std::size_t n = 0;        // scored pairs
  std::size_t skipped = 0;  // flagged (warm-up / fallback) pairs
  std::size_t mape_zero_targets = 0;
};

/// Scores aligned (target, forecast, naive) triples, excluding flagged pairs.
/// naive[i] is the previous observation for target[i]; U2 compares against it.
[[nodiscard]] MetricReport score(std::span<const double> target, std::span<const double> forecast,
                                 std::span<const double> naive, std::span<const std::uint8_t> flagged,
                                 bool mape_percent = true);

}  // namespace nsfts
