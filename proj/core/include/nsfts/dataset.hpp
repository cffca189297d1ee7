#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nsfts {

/// A named univariate series with a note on where it came from.
struct Dataset {
  std::string name;
  std::vector<double> values;
  std::string provenance;
};

enum class DriftKind {
  Stationary,
  StationaryBlip,
  SuddenVariance,
  SuddenMean,
  SuddenMeanVariance,
  IncrementalMean,
  IncrementalVariance,
  IncrementalMeanVariance,
};

inline constexpr std::array<DriftKind, 8> kAllDriftKinds{
    DriftKind::Stationary,         DriftKind::StationaryBlip,      DriftKind::SuddenVariance,
    DriftKind::SuddenMean,         DriftKind::SuddenMeanVariance,  DriftKind::IncrementalMean,
    DriftKind::IncrementalVariance, DriftKind::IncrementalMeanVariance,
};

[[nodiscard]] std::string_view to_string(DriftKind kind) noexcept;
[[nodiscard]] std::optional<DriftKind> parse_drift_kind(std::string_view name) noexcept;
/// "stationary, stationary-blip, ..." for diagnostics.
[[nodiscard]] std::string drift_kind_list();

/// Parameters of a synthetic concept-drift series.
///
/// Mean drifts move the mean by magnitude * base_stdev. Variance drifts multiply the
/// standard deviation by the magnitude; the combined kinds shift the mean by
/// magnitude * base_stdev and scale the deviation by variance_factor. Sudden drifts
/// switch at floor(onset * length); incremental drifts ramp linearly from there to the
/// last point. The blip adds a single 10 * base_stdev spike at the onset index.
struct DriftSpec {
  DriftKind kind = DriftKind::Stationary;
  std::size_t length = 1000;
  std::uint64_t seed = 0;
  double base_mean = 10.0;
  double base_stdev = 1.0;
  std::optional<double> drift_magnitude;  // defaults: 10 for mean kinds, 5 for variance kinds
  double variance_factor = 5.0;
  double onset = 0.5;

  [[nodiscard]] double magnitude() const noexcept;
  /// Throws ConfigError on invalid parameters.
  void validate() const;
};

/// Pure function of the spec; identical specs give bit-identical series.
[[nodiscard]] Dataset generate(const DriftSpec& spec);

/// Column by zero-based index or by header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

/// Reads one numeric column from a comma-separated file in row order; may be empty.
/// Same diagnostics as load_csv otherwise.
[[nodiscard]] std::vector<double> read_csv_column(const std::filesystem::path& path,
                                                  const ColumnSelector& column = std::size_t{0},
                                                  bool has_header = false);

/// Reads one numeric column from a comma-separated file in row order.
/// Throws DataError for a missing file or column, blank rows, non-numeric cells
/// (with the 1-based line number) or an empty result.
[[nodiscard]] Dataset load_csv(const std::filesystem::path& path, const ColumnSelector& column = std::size_t{0},
                               bool has_header = false);

}  // namespace nsfts
