#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nsfts/fts.hpp"

namespace nsfts {

/// Fixed-capacity FIFO of one-step forecast residuals y(t) - yhat(t).
class ResidualWindow {
public:
  ResidualWindow() = default;
  /// Throws ConfigError when capacity < 2.
  explicit ResidualWindow(std::size_t capacity);

  [[nodiscard]] std::size_t capacity() const noexcept { return buffer_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

  /// Appends a residual, evicting the oldest one when full.
  void push(double residual);

  /// i-th residual in chronological order (0 = oldest).
  [[nodiscard]] double operator[](std::size_t i) const noexcept {
    const std::size_t j = head_ + i;
    return buffer_[j < buffer_.size() ? j : j - buffer_.size()];
  }

  [[nodiscard]] std::vector<double> values() const;

private:
  std::vector<double> buffer_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

/// How the residual spread enters the displacement formula. The standard deviation keeps
/// the spread in series units; Variance reproduces the literal "variance" reading.
enum class SpreadMeasure { StdDev, Variance };

struct ResidualStats {
  double mean = 0.0;
  double spread = 0.0;
};

/// Mean and population spread of the window, summed oldest-first.
/// Throws PreconditionError on an empty window.
[[nodiscard]] ResidualStats residual_stats(const ResidualWindow& window,
                                           SpreadMeasure measure = SpreadMeasure::StdDev);

/// Position of an observation relative to the universe of discourse.
struct Displacement {
  double below = 0.0;      // max(lb - y, 0)
  double above = 0.0;      // max(y - ub, 0)
  double range = 0.0;      // above - below
  double range_mid = 0.0;  // range / 2
};

[[nodiscard]] Displacement displacements(double y, const Universe& universe) noexcept;

/// delta_i = mean + (i*r/(k-1) - r/2) + (i*2s/(k-1) - s) for i = 0..k-1.
[[nodiscard]] std::vector<double> compute_deltas(const ResidualStats& stats, const Displacement& disp,
                                                 std::size_t k);
void compute_deltas(const ResidualStats& stats, const Displacement& disp, std::span<double> out);

/// rho_i = |delta_{i-1} - delta_{i+1}| inside; one-sided differences at both ends.
[[nodiscard]] std::vector<double> compute_rhos(std::span<const double> deltas);
void compute_rhos(std::span<const double> deltas, std::span<double> out);

struct NsftsConfig {
  FtsConfig fts{};
  std::size_t residual_window = 10;
  SpreadMeasure spread = SpreadMeasure::StdDev;
};

/// Spread of the live perturbations, used for trace output.
struct PerturbationSummary {
  double delta_min = 0.0;
  double delta_max = 0.0;
  double rho_max = 0.0;
};

/// Non-stationary fuzzy time series model.
///
/// Trained once; afterwards every observation updates the residual window and
/// re-derives the displacement and scale of every fuzzy set from the window statistics
/// and the observation's position relative to the universe. Perturbations are absolute
/// offsets from the training-time triangles. The rule base never changes after training.
///
/// Stateful stream consumer: adapt() and forecast() must be called in order from a
/// single thread per instance.
class NsftsModel {
public:
  NsftsModel() = default;
  NsftsModel(FtsModel core, ResidualWindow residuals, std::optional<double> last_forecast,
             SpreadMeasure spread = SpreadMeasure::StdDev);

  [[nodiscard]] const FtsModel& core() const noexcept { return core_; }
  [[nodiscard]] const Partition& partition() const noexcept { return core_.partition_; }
  [[nodiscard]] const RuleBase& rules() const noexcept { return core_.rules_; }
  [[nodiscard]] const ResidualWindow& residuals() const noexcept { return residuals_; }
  [[nodiscard]] std::optional<double> last_forecast() const noexcept { return last_forecast_; }
  [[nodiscard]] SpreadMeasure spread() const noexcept { return spread_; }

  /// Pushes y - last_forecast into the residual window (when a forecast exists) and
  /// overwrites every set's perturbation. Throws PreconditionError on non-finite y.
  void adapt(double y);

  /// One-step-ahead forecast from x using the perturbed sets. Remembers the value
  /// so the next adapt() can score it.
  Forecast forecast(double x);

  /// adapt(y[t]) then forecast(y[t]) for every t; result[t] predicts y[t+1].
  std::vector<Forecast> run_online(std::span<const double> y);

  [[nodiscard]] PerturbationSummary perturbation_summary() const noexcept;

private:
  FtsModel core_;
  ResidualWindow residuals_;
  std::optional<double> last_forecast_;
  SpreadMeasure spread_ = SpreadMeasure::StdDev;
  std::vector<double> deltas_;
  std::vector<double> rhos_;
};

/// Trains the rule base on the whole series, then replays the last w training points
/// with identity perturbations to seed the residual window, and forecasts from the final
/// training point so the first online residual is defined.
/// Throws PreconditionError unless y.size() > w >= 2.
[[nodiscard]] NsftsModel train_nsfts(std::span<const double> y, const NsftsConfig& config = {});

}  // namespace nsfts
