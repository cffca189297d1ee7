#include "nsfts/evaluate.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nsfts/errors.hpp"

namespace nsfts {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 4> kMethodNames{{
    {Method::Nsfts, "nsfts"},
    {Method::TimeVariant, "time-variant"},
    {Method::IncrementalEnsemble, "incremental-ensemble"},
    {Method::StaticFts, "static-fts"},
}};

}  // namespace

std::string_view to_string(Method m) noexcept {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (const auto& [method, n] : kMethodNames) {
    if (n == name) return method;
  }
  return std::nullopt;
}

Evaluation evaluate(Method method, std::span<const double> y, const MethodParams& params,
                    const EvalOptions& options) {
  if (!(options.split > 0.0 && options.split < 1.0)) {
    throw ConfigError("evaluate: split must be in (0, 1)");
  }
  const std::size_t total = y.size();
  const auto s = static_cast<std::size_t>(std::floor(options.split * static_cast<double>(total)));
  if (s < 2 || total - s < 2) {
    throw ConfigError("evaluate: split " + std::to_string(options.split) + " of " + std::to_string(total) +
                      " points leaves too little data on one side");
  }

  const std::size_t n = total - s;
  std::vector<Forecast> preds(n);
  std::vector<std::optional<PerturbationSummary>> perts(n);
  Evaluation ev;

  switch (method) {
    case Method::Nsfts: {
      NsftsModel model = train_nsfts(y.first(s), params.nsfts);
      preds[0] = model.forecast(y[s - 1]);
      perts[0] = model.perturbation_summary();
      for (std::size_t t = s; t + 1 < total; ++t) {
        model.adapt(y[t]);
        perts[t + 1 - s] = model.perturbation_summary();
        preds[t + 1 - s] = model.forecast(y[t]);
      }
      ev.trainings = 1;
      break;
    }
    case Method::StaticFts: {
      const FtsModel model = train(y.first(s), params.nsfts.fts);
      for (std::size_t t = s; t < total; ++t) preds[t - s] = model.forecast(y[t - 1]);
      ev.trainings = 1;
      break;
    }
    case Method::TimeVariant:
    case Method::IncrementalEnsemble: {
      const MetaRun run = method == Method::TimeVariant
                              ? run_time_variant(y, params.policy, params.nsfts.fts)
                              : run_incremental_ensemble(y, params.policy, params.members,
                                                         params.nsfts.fts, params.combiner);
      for (std::size_t t = s; t < total; ++t) preds[t - s] = run.forecasts[t - 1];
      ev.trainings = run.trainings;
      break;
    }
  }

  std::vector<double> target(y.begin() + static_cast<std::ptrdiff_t>(s), y.end());
  std::vector<double> forecast(n);
  std::vector<double> naive(y.begin() + static_cast<std::ptrdiff_t>(s - 1), y.end() - 1);
  std::vector<std::uint8_t> flagged(n);
  for (std::size_t i = 0; i < n; ++i) {
    forecast[i] = preds[i].value;
    flagged[i] = preds[i].source == ForecastSource::Warmup ||
                         (preds[i].source == ForecastSource::Fallback && !options.score_fallback);
  }
  ev.metrics = score(target, forecast, naive, flagged, options.mape_percent);

  if (options.trace) {
    ev.trace.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      ev.trace.push_back({s + i, target[i], forecast[i], target[i] - forecast[i], preds[i].source, perts[i]});
    }
  }
  return ev;
}

}  // namespace nsfts
