#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "nsfts/fts.hpp"

namespace nsfts {

/// Retraining schedule: rebuild from the last `window` observations every `refresh`
/// observations, starting once `window` observations have been seen.
struct RetrainPolicy {
  std::size_t window = 100;
  std::size_t refresh = 10;

  /// Throws ConfigError unless window >= 2 and refresh >= 1.
  void validate() const;

  /// Number of trainings over a stream of n observations: floor((n - W) / R) + 1, or 0.
  [[nodiscard]] std::size_t trainings_for(std::size_t n) const noexcept {
    return n < window ? 0 : (n - window) / refresh + 1;
  }
};

enum class EnsembleCombiner { Mean, Median };

/// Time-variant policy: one conventional model retrained on a sliding window.
class TimeVariantForecaster {
public:
  explicit TimeVariantForecaster(RetrainPolicy policy, FtsConfig config = {});

  /// Observes y; retrains when the schedule says so and returns the forecast of the
  /// next value. Before the first training returns y itself, flagged as warm-up.
  Forecast step(double y);

  [[nodiscard]] std::size_t trainings() const noexcept { return trainings_; }
  [[nodiscard]] const std::optional<FtsModel>& model() const noexcept { return model_; }

private:
  RetrainPolicy policy_;
  FtsConfig config_;
  std::deque<double> history_;
  std::vector<double> scratch_;
  std::size_t seen_ = 0;
  std::size_t trainings_ = 0;
  std::optional<FtsModel> model_;
};

/// FIFO pool of at most M conventional models, one added per retraining instant.
class IncrementalEnsemble {
public:
  IncrementalEnsemble(RetrainPolicy policy, std::size_t capacity, FtsConfig config = {},
                      EnsembleCombiner combiner = EnsembleCombiner::Mean);

  Forecast step(double y);

  /// Appends a member, discarding the oldest one at capacity.
  void append(FtsModel model);

  /// Combines the members' forecasts from x. Flagged as fallback only when every
  /// member fell back; throws PreconditionError with no members.
  [[nodiscard]] Forecast forecast(double x) const;

  [[nodiscard]] std::size_t trainings() const noexcept { return trainings_; }
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
  [[nodiscard]] const std::deque<FtsModel>& members() const noexcept { return members_; }

private:
  RetrainPolicy policy_;
  std::size_t capacity_;
  FtsConfig config_;
  EnsembleCombiner combiner_;
  std::deque<double> history_;
  std::vector<double> scratch_;
  std::size_t seen_ = 0;
  std::size_t trainings_ = 0;
  std::deque<FtsModel> members_;
};

struct MetaRun {
  std::vector<Forecast> forecasts;  // forecasts[t] predicts y[t+1]
  std::size_t trainings = 0;
};

/// Throws ConfigError when W >= y.size().
[[nodiscard]] MetaRun run_time_variant(std::span<const double> y, const RetrainPolicy& policy,
                                       const FtsConfig& config = {});

[[nodiscard]] MetaRun run_incremental_ensemble(std::span<const double> y, const RetrainPolicy& policy,
                                               std::size_t members, const FtsConfig& config = {},
                                               EnsembleCombiner combiner = EnsembleCombiner::Mean);

}  // namespace nsfts
