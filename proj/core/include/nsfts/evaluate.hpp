#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nsfts/adaptive.hpp"
#include "nsfts/metamodels.hpp"
#include "nsfts/metrics.hpp"

namespace nsfts {

enum class Method { Nsfts, TimeVariant, IncrementalEnsemble, StaticFts };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
[[nodiscard]] std::optional<Method> parse_method(std::string_view name) noexcept;

/// Parameters for every method. nsfts.fts (k, padding, universe mode, normalization)
/// is shared by the internal models of the meta-models and the static baseline.
struct MethodParams {
  NsftsConfig nsfts{};
  RetrainPolicy policy{};
  std::size_t members = 2;
  EnsembleCombiner combiner = EnsembleCombiner::Mean;
};

struct EvalOptions {
  double split = 0.75;  // fraction of the series used for training
  bool mape_percent = true;
  bool trace = true;
  // Score no-rule fallback forecasts instead of skipping them. Warm-up is always skipped.
  bool score_fallback = false;
};

/// One scored (or skipped) target of the out-of-sample segment.
struct TraceRow {
  std::size_t t = 0;
  double y = 0.0;
  double forecast = 0.0;
  double residual = 0.0;
  ForecastSource source = ForecastSource::Rules;
  std::optional<PerturbationSummary> perturbation;  // NSFTS only: state that produced the forecast
};

struct Evaluation {
  MetricReport metrics;
  std::size_t trainings = 0;
  std::vector<TraceRow> trace;
};

/// Rolling one-step-ahead evaluation over the last (1 - split) of y.
///
/// NSFTS and the static model are trained on y[0, s) with s = floor(split * T); the
/// meta-models consume the whole stream under their own schedule so that their state at
/// the test boundary reflects the training segment. Targets are y[s..T-1]; each is
/// forecast from the preceding observation. Flagged forecasts (warm-up, no-rule
/// fallback) are counted as skipped.
/// Throws ConfigError on a degenerate split.
[[nodiscard]] Evaluation evaluate(Method method, std::span<const double> y, const MethodParams& params,
                                  const EvalOptions& options = {});

}  // namespace nsfts
