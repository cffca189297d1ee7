#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

nsfts::ColumnSelector parse_column(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::stoull(s);
  return s;
}

void add_model_flags(CLI::App* cmd, nsfts::cli::ModelFlags& flags) {
  cmd->add_flag("--no-normalize", flags.no_normalize, "Use the unnormalized weighted sum in defuzzification");
  cmd->add_flag("--sigma-squared", flags.sigma_squared, "Use the residual variance instead of the standard deviation");
  cmd->add_flag("--paper-exact-universe", flags.paper_exact_universe,
                "Pad the universe proportionally to the extremes (positive series only)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nsfts::cli;

  CLI::App app{"Non-stationary fuzzy time series forecasting and benchmarking"};
  app.require_subcommand(1);

  BenchOptions bench;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run every dataset x method cell of a manifest");
  bench_cmd->add_option("--manifest", bench.manifest, "Benchmark manifest (JSON)")->required();
  bench_cmd->add_option("--out", bench_out, "Output directory (overrides the manifest)");
  bench_cmd->add_option("--seed", bench.seed, "Seed (overrides the manifest)");
  bench_cmd->add_option("--workers", bench.workers, "Worker threads; 0 = available parallelism");
  bench_cmd->add_flag("--no-trace", bench.no_trace, "Skip per-cell trace files");
  add_model_flags(bench_cmd, bench.flags);

  ForecastOptions forecast;
  std::string train, model, checkpoint, column = "0";
  auto* forecast_cmd = app.add_subcommand("forecast", "Stream a series through a train-once NSFTS model");
  auto* train_opt = forecast_cmd->add_option("--train", train, "Training series (CSV)");
  auto* model_opt = forecast_cmd->add_option("--model", model, "Checkpoint to resume from");
  train_opt->excludes(model_opt);
  forecast_cmd->add_option("--input", forecast.input, "Series to forecast (CSV)")->required();
  forecast_cmd->add_option("--checkpoint", checkpoint, "Write the final model state here");
  forecast_cmd->add_option("--column", column, "Value column: zero-based index or header name");
  forecast_cmd->add_flag("--header", forecast.header, "Input files have a header row");
  forecast_cmd->add_option("--k", forecast.k, "Number of fuzzy sets")->capture_default_str();
  forecast_cmd->add_option("--w", forecast.w, "Residual window length")->capture_default_str();
  forecast_cmd->add_option("--padding", forecast.padding, "Universe padding fraction")->capture_default_str();
  add_model_flags(forecast_cmd, forecast.flags);

  GenerateOptions gen;
  std::string gen_out;
  double magnitude = 0.0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic concept-drift series as CSV");
  gen_cmd->add_option("--kind", gen.kind, "Drift kind")->required();
  gen_cmd->add_option("--seed", gen.spec.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--length", gen.spec.length, "Number of points")->capture_default_str();
  gen_cmd->add_option("--mean", gen.spec.base_mean, "Base mean")->capture_default_str();
  gen_cmd->add_option("--stdev", gen.spec.base_stdev, "Base standard deviation")->capture_default_str();
  auto* mag_opt = gen_cmd->add_option("--magnitude", magnitude,
                                      "Drift magnitude (mean shift in stdevs, or stdev multiplier)");
  gen_cmd->add_option("--variance-factor", gen.spec.variance_factor,
                      "Stdev multiplier for the combined mean-variance kinds")
      ->capture_default_str();
  gen_cmd->add_option("--onset", gen.spec.onset, "Drift onset as a fraction of the length")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output file (default: standard output)");
  gen_cmd->add_flag("--header", gen.header, "Write a 'value' header row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (bench_cmd->parsed()) {
    if (!bench_out.empty()) bench.out = bench_out;
    return run_bench(bench, std::cerr);
  }
  if (forecast_cmd->parsed()) {
    if (!train.empty()) forecast.train = train;
    if (!model.empty()) forecast.model = model;
    if (!checkpoint.empty()) forecast.checkpoint = checkpoint;
    forecast.column = parse_column(column);
    return run_forecast(forecast, std::cout, std::cerr);
  }
  if (!gen_out.empty()) gen.out = gen_out;
  if (mag_opt->count() > 0) gen.spec.drift_magnitude = magnitude;
  return run_generate(gen, std::cout, std::cerr);
}
