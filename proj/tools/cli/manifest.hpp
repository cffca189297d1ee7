#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "nsfts/dataset.hpp"
#include "nsfts/evaluate.hpp"

namespace nsfts::cli {

inline constexpr int kManifestVersion = 1;

struct CsvSource {
  std::filesystem::path path;  // resolved against the manifest directory
  ColumnSelector column = std::size_t{0};
  bool header = false;
};

struct DatasetEntry {
  std::string name;
  std::variant<DriftSpec, CsvSource> source;
};

struct MethodEntry {
  std::string label;  // unique within the manifest; defaults to the method name
  Method method = Method::Nsfts;
  MethodParams params;
};

/// A validated benchmark manifest. See docs/manifest.md for the schema.
struct Manifest {
  std::uint64_t seed = 0;
  std::filesystem::path output = "results";
  EvalOptions options;
  std::vector<DatasetEntry> datasets;
  std::vector<MethodEntry> methods;
};

/// Switches given on the command line; applied on top of every method's parameters.
struct ModelFlags {
  bool no_normalize = false;
  bool sigma_squared = false;
  bool paper_exact_universe = false;
};

void apply_flags(const ModelFlags& flags, MethodParams& params);

/// Parses and validates a manifest document. Relative paths resolve against base_dir.
/// seed_override stands in for a missing or different top-level seed.
/// Throws ConfigError naming the offending entry; referenced CSV files must exist.
[[nodiscard]] Manifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                                      std::optional<std::uint64_t> seed_override = std::nullopt);

[[nodiscard]] Manifest load_manifest(const std::filesystem::path& path,
                                     std::optional<std::uint64_t> seed_override = std::nullopt);

/// Canonical JSON of everything that influences a cell's numbers, keys sorted.
[[nodiscard]] nlohmann::json cell_params(const MethodEntry& method, const EvalOptions& options);

[[nodiscard]] Dataset materialize(const DatasetEntry& entry);

}  // namespace nsfts::cli
