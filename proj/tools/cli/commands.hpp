#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cli/manifest.hpp"
#include "nsfts/partition.hpp"

namespace nsfts::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitCellFailed = 2 };

struct BenchOptions {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;  // 0 = available parallelism
  bool no_trace = false;
  ModelFlags flags;
};

/// Runs every dataset x method cell and writes report.csv, cells.csv, report.json and
/// per-cell traces under the output directory.
int run_bench(const BenchOptions& options, std::ostream& log);

struct ForecastOptions {
  std::optional<std::filesystem::path> train;
  std::optional<std::filesystem::path> model;
  std::filesystem::path input;
  std::optional<std::filesystem::path> checkpoint;
  ColumnSelector column = std::size_t{0};
  bool header = false;
  std::size_t k = kDefaultPartitions;
  std::size_t w = 10;
  double padding = kDefaultPadding;
  ModelFlags flags;
};

/// Streams the input through a trained NSFTS model, writing "t,y,forecast,source" rows;
/// forecast at row t predicts the value at row t + 1.
int run_forecast(const ForecastOptions& options, std::ostream& out, std::ostream& log);

struct GenerateOptions {
  std::string kind;
  DriftSpec spec;  // kind is taken from the string above
  std::optional<std::filesystem::path> out;
  bool header = false;
};

int run_generate(const GenerateOptions& options, std::ostream& out, std::ostream& log);

}  // namespace nsfts::cli
