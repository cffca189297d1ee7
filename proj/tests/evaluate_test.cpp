#include <gtest/gtest.h>

#include <vector>

#include "generators.hpp"
#include "nsfts/dataset.hpp"
#include "nsfts/errors.hpp"
#include "nsfts/evaluate.hpp"

namespace nsfts {
namespace {

std::vector<double> synthetic(DriftKind kind, std::uint64_t seed = 42) {
  DriftSpec s;
  s.kind = kind;
  s.seed = seed;
  return generate(s).values;
}

TEST(Method, NamesRoundTrip) {
  for (auto m : {Method::Nsfts, Method::TimeVariant, Method::IncrementalEnsemble, Method::StaticFts})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_FALSE(parse_method("pwfts").has_value());
}

TEST(Evaluate, PairsEveryTestTargetWithTheForecastFromItsPredecessor) {
  const auto y = synthetic(DriftKind::Stationary);
  const auto ev = evaluate(Method::Nsfts, y, {});
  ASSERT_EQ(ev.trace.size(), 250u);
  EXPECT_EQ(ev.metrics.n + ev.metrics.skipped, 250u);
  EXPECT_EQ(ev.trace.front().t, 750u);
  EXPECT_EQ(ev.trace.back().t, 999u);
  for (const auto& r : ev.trace) {
    ASSERT_EQ(r.y, y[r.t]);
    ASSERT_EQ(r.residual, r.y - r.forecast);
    ASSERT_TRUE(r.perturbation.has_value());
  }
  EXPECT_EQ(ev.trainings, 1u);
}

TEST(Evaluate, NsftsMatchesAManualStreamingLoop) {
  const auto y = synthetic(DriftKind::IncrementalMean);
  const auto ev = evaluate(Method::Nsfts, y, {});
  auto model = train_nsfts(std::span(y).first(750));
  std::vector<double> expected{model.forecast(y[749]).value};
  for (std::size_t t = 750; t + 1 < y.size(); ++t) {
    model.adapt(y[t]);
    expected.push_back(model.forecast(y[t]).value);
  }
  ASSERT_EQ(expected.size(), ev.trace.size());
  for (std::size_t i = 0; i < expected.size(); ++i) ASSERT_EQ(ev.trace[i].forecast, expected[i]);
}

TEST(Evaluate, StaticModelIsNeverAdapted) {
  const auto y = synthetic(DriftKind::SuddenMean);
  const auto ev = evaluate(Method::StaticFts, y, {});
  const auto model = train(std::span(y).first(750));
  for (const auto& r : ev.trace) ASSERT_EQ(r.forecast, model.forecast(y[r.t - 1]).value);
  EXPECT_FALSE(ev.trace.front().perturbation.has_value());
}

TEST(Evaluate, MetaModelsReportTheirTrainingCount) {
  const auto y = synthetic(DriftKind::Stationary);
  EXPECT_EQ(evaluate(Method::TimeVariant, y, {}).trainings, 91u);
  EXPECT_EQ(evaluate(Method::IncrementalEnsemble, y, {}).trainings, 91u);
}

TEST(Evaluate, WarmupPairsAreSkipped) {
  const auto y = synthetic(DriftKind::Stationary);
  MethodParams p;
  p.policy.window = 800;
  const auto ev = evaluate(Method::TimeVariant, y, p);
  EXPECT_EQ(ev.metrics.skipped, 50u);
  EXPECT_EQ(ev.metrics.n, 200u);
}

TEST(Evaluate, NsftsBeatsTheStaticModelUnderIncrementalDrift) {
  for (std::uint64_t seed : {42u, 1u, 7u}) {
    const auto y = synthetic(DriftKind::IncrementalMean, seed);
    const auto nsfts = evaluate(Method::Nsfts, y, {});
    const auto fixed = evaluate(Method::StaticFts, y, {});
    EXPECT_LT(nsfts.metrics.u2, fixed.metrics.u2) << "seed " << seed;
  }
}

TEST(Evaluate, StationaryNsftsIsNoWorseThanNaive) {
  // On white noise around a constant level the best one-step predictor is the mean,
  // whose U2 is about 1/sqrt(2); a value near 1 would mean the model adds nothing.
  DriftSpec s;
  s.seed = 42;
  const auto y = generate(s).values;
  EvalOptions o;
  o.split = 0.5;
  const auto ev = evaluate(Method::Nsfts, y, {}, o);
  EXPECT_LT(ev.metrics.u2, 1.0);
  EXPECT_GT(ev.metrics.u2, 0.6);
}

TEST(Evaluate, TraceCanBeDisabled) {
  const auto y = synthetic(DriftKind::Stationary);
  EvalOptions o;
  o.trace = false;
  EXPECT_TRUE(evaluate(Method::Nsfts, y, {}, o).trace.empty());
}

TEST(Evaluate, RejectsDegenerateSplits) {
  const auto y = synthetic(DriftKind::Stationary);
  for (double split : {0.0, 1.0, -0.5, 0.001, 0.999}) {
    EvalOptions o;
    o.split = split;
    EXPECT_THROW((void)evaluate(Method::Nsfts, y, {}, o), ConfigError) << split;
  }
}

}  // namespace
}  // namespace nsfts
