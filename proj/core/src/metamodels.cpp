#include "nsfts/metamodels.hpp"

#include <algorithm>
#include <string>

#include "nsfts/errors.hpp"

namespace nsfts {

namespace {

// Appends y to a bounded history and reports whether this observation is a
// retraining instant.
bool observe(std::deque<double>& history, std::size_t& seen, const RetrainPolicy& policy, double y) {
  history.push_back(y);
  if (history.size() > policy.window) history.pop_front();
  ++seen;
  return seen >= policy.window && (seen - policy.window) % policy.refresh == 0;
}

FtsModel train_on(const std::deque<double>& history, std::vector<double>& scratch,
                  const FtsConfig& config) {
  scratch.assign(history.begin(), history.end());
  return train(scratch, config);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

void RetrainPolicy::validate() const {
  if (window < 2) throw ConfigError("retrain policy: W must be >= 2, got " + std::to_string(window));
  if (refresh < 1) throw ConfigError("retrain policy: R must be >= 1");
}

TimeVariantForecaster::TimeVariantForecaster(RetrainPolicy policy, FtsConfig config)
    : policy_(policy), config_(config) {
  policy_.validate();
}

Forecast TimeVariantForecaster::step(double y) {
  if (observe(history_, seen_, policy_, y)) {
    model_ = train_on(history_, scratch_, config_);
    ++trainings_;
  }
  if (!model_) return {y, ForecastSource::Warmup};
  return model_->forecast(y);
}

IncrementalEnsemble::IncrementalEnsemble(RetrainPolicy policy, std::size_t capacity, FtsConfig config,
                                         EnsembleCombiner combiner)
    : policy_(policy), capacity_(capacity), config_(config), combiner_(combiner) {
  policy_.validate();
  if (capacity_ < 1) throw ConfigError("incremental ensemble: M must be >= 1");
}

void IncrementalEnsemble::append(FtsModel model) {
  if (members_.size() == capacity_) members_.pop_front();
  members_.push_back(std::move(model));
}

Forecast IncrementalEnsemble::forecast(double x) const {
  if (members_.empty()) throw PreconditionError("incremental ensemble: no members");
  std::vector<double> values;
  values.reserve(members_.size());
  bool all_fallback = true;
  for (const auto& m : members_) {
    const Forecast f = m.forecast(x);
    values.push_back(f.value);
    all_fallback = all_fallback && f.source == ForecastSource::Fallback;
  }
  double combined = 0.0;
  if (combiner_ == EnsembleCombiner::Median) {
    combined = median(std::move(values));
  } else {
    for (double v : values) combined += v;
    combined /= static_cast<double>(values.size());
  }
  return {combined, all_fallback ? ForecastSource::Fallback : ForecastSource::Rules};
}

Forecast IncrementalEnsemble::step(double y) {
  if (observe(history_, seen_, policy_, y)) {
    append(train_on(history_, scratch_, config_));
    ++trainings_;
  }
  if (members_.empty()) return {y, ForecastSource::Warmup};
  return forecast(y);
}

namespace {

void check_length(std::span<const double> y, const RetrainPolicy& policy) {
  policy.validate();
  if (policy.window >= y.size()) {
    throw ConfigError("memory window W = " + std::to_string(policy.window) +
                      " must be shorter than the series (" + std::to_string(y.size()) + " points)");
  }
}

template <typename Stepper>
MetaRun drive(std::span<const double> y, Stepper& stepper) {
  MetaRun run;
  run.forecasts.reserve(y.size());
  for (double v : y) run.forecasts.push_back(stepper.step(v));
  run.trainings = stepper.trainings();
  return run;
}

}  // namespace

MetaRun run_time_variant(std::span<const double> y, const RetrainPolicy& policy, const FtsConfig& config) {
  check_length(y, policy);
  TimeVariantForecaster tv(policy, config);
  return drive(y, tv);
}

MetaRun run_incremental_ensemble(std::span<const double> y, const RetrainPolicy& policy,
                                 std::size_t members, const FtsConfig& config,
                                 EnsembleCombiner combiner) {
  check_length(y, policy);
  IncrementalEnsemble ens(policy, members, config, combiner);
  return drive(y, ens);
}

}  // namespace nsfts
