#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nsfts/partition.hpp"

namespace nsfts {

/// First-order temporal pattern: the set active at t-1 leads to the set active at t.
struct Pattern {
  std::size_t lhs = 0;
  std::size_t rhs = 0;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct Rule {
  std::size_t lhs = 0;
  std::vector<std::size_t> rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Precedent index -> distinct consequent indices, in first-seen order.
class RuleBase {
public:
  RuleBase() = default;
  explicit RuleBase(std::size_t k) : consequents_(k) {}

  [[nodiscard]] std::size_t k() const noexcept { return consequents_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return rule_count_; }
  [[nodiscard]] bool empty() const noexcept { return rule_count_ == 0; }

  /// Adds a pattern; duplicates are ignored.
  void add(const Pattern& p);

  /// Consequents of the rule for lhs, empty when no rule exists.
  [[nodiscard]] std::span<const std::size_t> consequents(std::size_t lhs) const noexcept {
    return lhs < consequents_.size() ? std::span<const std::size_t>(consequents_[lhs])
                                     : std::span<const std::size_t>{};
  }

  /// All rules in ascending precedent order.
  [[nodiscard]] std::vector<Rule> rules() const;

  friend bool operator==(const RuleBase&, const RuleBase&) = default;

private:
  std::vector<std::vector<std::size_t>> consequents_;
  std::size_t rule_count_ = 0;
};

enum class ForecastSource : std::uint8_t {
  Rules,     // at least one rule fired
  Fallback,  // no rule fired; nearest midpoint returned
  Warmup,    // meta-model not trained yet; last observation returned
};

/// A crisp one-step-ahead forecast.
struct Forecast {
  double value = 0.0;
  ForecastSource source = ForecastSource::Rules;

  [[nodiscard]] bool flagged() const noexcept { return source != ForecastSource::Rules; }
};

/// Extracts (argmax at t-1, argmax at t) for every t >= 1 using base memberships.
/// Throws PreconditionError when y has fewer than two points.
[[nodiscard]] std::vector<Pattern> extract_patterns(std::span<const double> y, const Partition& p);

/// Groups patterns by precedent. Every index must be below k.
[[nodiscard]] RuleBase build_rulebase(std::span<const Pattern> patterns, std::size_t k);

/// Rule matching and defuzzification shared by the static and adaptive models.
///
/// Rules whose precedent has membership > 0 fire; each contributes the mean of its
/// consequent midpoints weighted by that membership. With normalize the sum is divided
/// by the total firing membership. `perturbed` selects effective or base triangles for
/// both the memberships and the consequent midpoints.
[[nodiscard]] Forecast infer(double x, const Partition& p, const RuleBase& rules, bool perturbed,
                             bool normalize);

struct FtsConfig {
  std::size_t partitions = kDefaultPartitions;
  double padding = kDefaultPadding;
  UniverseMode universe_mode = UniverseMode::RangePad;
  bool normalize = true;
};

/// Conventional first-order fuzzy time series model. Immutable after training.
class FtsModel {
public:
  FtsModel() = default;
  FtsModel(Partition partition, RuleBase rules, bool normalize = true);

  [[nodiscard]] const Partition& partition() const noexcept { return partition_; }
  [[nodiscard]] const RuleBase& rules() const noexcept { return rules_; }
  [[nodiscard]] bool normalize() const noexcept { return normalize_; }

  [[nodiscard]] Forecast forecast(double x) const { return infer(x, partition_, rules_, false, normalize_); }

private:
  friend class NsftsModel;

  Partition partition_;
  RuleBase rules_;
  bool normalize_ = true;
};

/// Universe estimation, grid partitioning, pattern extraction and rule grouping.
[[nodiscard]] FtsModel train(std::span<const double> y, const FtsConfig& config = {});

[[nodiscard]] inline Forecast forecast_static(double x, const FtsModel& m) { return m.forecast(x); }

/// Number of train() calls made by this process. Used to verify retraining schedules.
[[nodiscard]] std::uint64_t train_call_count() noexcept;

}  // namespace nsfts
