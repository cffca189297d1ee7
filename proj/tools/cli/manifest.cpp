#include "cli/manifest.hpp"

#include <array>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string_view>

#include "cli/format.hpp"
#include "nsfts/errors.hpp"

namespace nsfts::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("manifest: " + where + ": " + what);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) fail(where, "unknown key '" + key + "'");
  }
}

std::size_t get_count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::uint64_t get_seed(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    fail(where, "expected a non-negative integer seed");
  return j.get<std::uint64_t>();
}

double get_real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

constexpr std::array<std::string_view, 10> kModelKeys{"k", "w", "W", "R", "M", "padding",
                                                     "universe", "normalize", "spread", "combiner"};

bool is_model_key(std::string_view key) {
  for (auto k : kModelKeys)
    if (k == key) return true;
  return false;
}

void apply_model_key(const std::string& key, const json& v, const std::string& where, MethodParams& p) {
  const std::string at = where + "." + key;
  if (key == "k") {
    p.nsfts.fts.partitions = get_count(v, at);
  } else if (key == "w") {
    p.nsfts.residual_window = get_count(v, at);
  } else if (key == "W") {
    p.policy.window = get_count(v, at);
  } else if (key == "R") {
    p.policy.refresh = get_count(v, at);
  } else if (key == "M") {
    p.members = get_count(v, at);
  } else if (key == "padding") {
    p.nsfts.fts.padding = get_real(v, at);
  } else if (key == "universe") {
    const auto s = get_string(v, at);
    if (s == "range-pad")
      p.nsfts.fts.universe_mode = UniverseMode::RangePad;
    else if (s == "paper-exact")
      p.nsfts.fts.universe_mode = UniverseMode::PaperExact;
    else
      fail(at, "expected 'range-pad' or 'paper-exact'");
  } else if (key == "normalize") {
    p.nsfts.fts.normalize = get_bool(v, at);
  } else if (key == "spread") {
    const auto s = get_string(v, at);
    if (s == "stdev")
      p.nsfts.spread = SpreadMeasure::StdDev;
    else if (s == "variance")
      p.nsfts.spread = SpreadMeasure::Variance;
    else
      fail(at, "expected 'stdev' or 'variance'");
  } else if (key == "combiner") {
    const auto s = get_string(v, at);
    if (s == "mean")
      p.combiner = EnsembleCombiner::Mean;
    else if (s == "median")
      p.combiner = EnsembleCombiner::Median;
    else
      fail(at, "expected 'mean' or 'median'");
  }
}

void validate_params(const MethodParams& p, const std::string& where) {
  if (p.nsfts.fts.partitions < 3) fail(where, "k must be at least 3");
  if (p.nsfts.residual_window < 2) fail(where, "w must be at least 2");
  if (p.policy.window < 2) fail(where, "W must be at least 2");
  if (p.policy.refresh < 1) fail(where, "R must be at least 1");
  if (p.members < 1) fail(where, "M must be at least 1");
  if (!(p.nsfts.fts.padding >= 0.0)) fail(where, "padding must be non-negative");
}

DriftSpec parse_synthetic(const json& j, const std::string& where, std::uint64_t seed) {
  require_object(j, where);
  reject_unknown(j, where, {"kind", "length", "seed", "mean", "stdev", "magnitude", "variance_factor", "onset"});
  if (!j.contains("kind")) fail(where, "missing 'kind'");
  DriftSpec spec;
  const auto kind = get_string(j.at("kind"), where + ".kind");
  const auto parsed = parse_drift_kind(kind);
  if (!parsed) fail(where + ".kind", "unknown drift kind '" + kind + "'; expected one of: " + drift_kind_list());
  spec.kind = *parsed;
  spec.seed = seed;
  if (j.contains("length")) spec.length = get_count(j.at("length"), where + ".length");
  if (j.contains("seed")) spec.seed = get_seed(j.at("seed"), where + ".seed");
  if (j.contains("mean")) spec.base_mean = get_real(j.at("mean"), where + ".mean");
  if (j.contains("stdev")) spec.base_stdev = get_real(j.at("stdev"), where + ".stdev");
  if (j.contains("magnitude")) spec.drift_magnitude = get_real(j.at("magnitude"), where + ".magnitude");
  if (j.contains("variance_factor"))
    spec.variance_factor = get_real(j.at("variance_factor"), where + ".variance_factor");
  if (j.contains("onset")) spec.onset = get_real(j.at("onset"), where + ".onset");
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return spec;
}

CsvSource parse_csv(const json& j, const std::string& where, const std::filesystem::path& base_dir) {
  require_object(j, where);
  reject_unknown(j, where, {"path", "column", "header"});
  if (!j.contains("path")) fail(where, "missing 'path'");
  CsvSource src;
  src.path = get_string(j.at("path"), where + ".path");
  if (src.path.is_relative()) src.path = base_dir / src.path;
  if (j.contains("column")) {
    const auto& c = j.at("column");
    if (c.is_string())
      src.column = c.get<std::string>();
    else
      src.column = get_count(c, where + ".column");
  }
  if (j.contains("header")) src.header = get_bool(j.at("header"), where + ".header");
  if (std::holds_alternative<std::string>(src.column) && !src.header)
    fail(where, "a column selected by name requires \"header\": true");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(src.path, ec)) fail(where + ".path", "file not found: " + src.path.string());
  return src;
}

}  // namespace

void apply_flags(const ModelFlags& flags, MethodParams& params) {
  if (flags.no_normalize) params.nsfts.fts.normalize = false;
  if (flags.sigma_squared) params.nsfts.spread = SpreadMeasure::Variance;
  if (flags.paper_exact_universe) params.nsfts.fts.universe_mode = UniverseMode::PaperExact;
}

Manifest parse_manifest(const json& doc, const std::filesystem::path& base_dir,
                        std::optional<std::uint64_t> seed_override) {
  require_object(doc, "document");
  reject_unknown(doc, "document", {"version", "seed", "output", "defaults", "datasets", "methods"});

  if (!doc.contains("version")) fail("document", "missing 'version'");
  if (!doc.at("version").is_number_integer() || doc.at("version").get<std::int64_t>() != kManifestVersion)
    fail("version", "unsupported manifest version " + doc.at("version").dump() + " (expected " +
                        std::to_string(kManifestVersion) + ")");

  Manifest m;
  if (seed_override) {
    m.seed = *seed_override;
  } else {
    if (!doc.contains("seed")) fail("document", "missing 'seed' (required for reproducibility)");
    m.seed = get_seed(doc.at("seed"), "seed");
  }
  if (doc.contains("output")) {
    m.output = get_string(doc.at("output"), "output");
    if (m.output.is_relative()) m.output = base_dir / m.output;
  } else {
    m.output = base_dir / "results";
  }

  MethodParams defaults;
  if (doc.contains("defaults")) {
    const auto& d = doc.at("defaults");
    require_object(d, "defaults");
    for (const auto& [key, value] : d.items()) {
      const std::string at = "defaults." + key;
      if (is_model_key(key)) {
        apply_model_key(key, value, "defaults", defaults);
      } else if (key == "split") {
        m.options.split = get_real(value, at);
      } else if (key == "mape_percent") {
        m.options.mape_percent = get_bool(value, at);
      } else if (key == "trace") {
        m.options.trace = get_bool(value, at);
      } else if (key == "score_fallback") {
        m.options.score_fallback = get_bool(value, at);
      } else {
        fail("defaults", "unknown key '" + key + "'");
      }
    }
  }
  if (!(m.options.split > 0.0 && m.options.split < 1.0)) fail("defaults.split", "must lie in (0, 1)");
  validate_params(defaults, "defaults");

  if (!doc.contains("datasets") || !doc.at("datasets").is_array() || doc.at("datasets").empty())
    fail("document", "'datasets' must be a non-empty array");
  std::set<std::string> names;
  std::set<std::string> file_names;
  std::size_t index = 0;
  for (const auto& d : doc.at("datasets")) {
    const std::string where = "datasets[" + std::to_string(index++) + "]";
    require_object(d, where);
    reject_unknown(d, where, {"name", "synthetic", "csv"});
    const bool syn = d.contains("synthetic");
    const bool csv = d.contains("csv");
    if (syn == csv) fail(where, "exactly one of 'synthetic' or 'csv' is required");
    DatasetEntry entry;
    if (syn) {
      auto spec = parse_synthetic(d.at("synthetic"), where + ".synthetic", m.seed);
      entry.name = std::string(to_string(spec.kind));
      entry.source = spec;
    } else {
      entry.source = parse_csv(d.at("csv"), where + ".csv", base_dir);
      if (!d.contains("name")) fail(where, "missing 'name' for a csv dataset");
    }
    if (d.contains("name")) entry.name = get_string(d.at("name"), where + ".name");
    if (entry.name.empty()) fail(where + ".name", "must not be empty");
    if (!names.insert(entry.name).second) fail(where + ".name", "duplicate dataset name '" + entry.name + "'");
    if (!file_names.insert(sanitize_filename(entry.name)).second)
      fail(where + ".name", "dataset name '" + entry.name + "' collides with another after sanitizing");
    m.datasets.push_back(std::move(entry));
  }

  if (!doc.contains("methods") || !doc.at("methods").is_array() || doc.at("methods").empty())
    fail("document", "'methods' must be a non-empty array");
  std::set<std::string> labels;
  index = 0;
  for (const auto& e : doc.at("methods")) {
    const std::string where = "methods[" + std::to_string(index++) + "]";
    MethodEntry entry;
    entry.params = defaults;
    std::string name;
    if (e.is_string()) {
      name = e.get<std::string>();
    } else {
      require_object(e, where);
      reject_unknown(e, where, {"name", "label", "params"});
      if (!e.contains("name")) fail(where, "missing 'name'");
      name = get_string(e.at("name"), where + ".name");
      if (e.contains("params")) {
        const auto& p = e.at("params");
        require_object(p, where + ".params");
        for (const auto& [key, value] : p.items()) {
          if (!is_model_key(key)) fail(where + ".params", "unknown key '" + key + "'");
          apply_model_key(key, value, where + ".params", entry.params);
        }
      }
      if (e.contains("label")) entry.label = get_string(e.at("label"), where + ".label");
    }
    const auto method = parse_method(name);
    if (!method)
      fail(where, "unknown method '" + name + "'; expected nsfts, time-variant, incremental-ensemble or static-fts");
    entry.method = *method;
    if (entry.label.empty()) entry.label = name;
    validate_params(entry.params, where);
    if (!labels.insert(entry.label).second)
      fail(where, "duplicate method label '" + entry.label + "'; set a distinct \"label\"");
    m.methods.push_back(std::move(entry));
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("manifest: cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("manifest: '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_manifest(doc, path.parent_path(), seed_override);
}

nlohmann::json cell_params(const MethodEntry& method, const EvalOptions& options) {
  const auto& p = method.params;
  json j;
  j["method"] = std::string(to_string(method.method));
  j["k"] = p.nsfts.fts.partitions;
  j["padding"] = p.nsfts.fts.padding;
  j["universe"] = p.nsfts.fts.universe_mode == UniverseMode::RangePad ? "range-pad" : "paper-exact";
  j["normalize"] = p.nsfts.fts.normalize;
  j["split"] = options.split;
  j["mape_percent"] = options.mape_percent;
  j["score_fallback"] = options.score_fallback;
  switch (method.method) {
    case Method::Nsfts:
      j["w"] = p.nsfts.residual_window;
      j["spread"] = p.nsfts.spread == SpreadMeasure::StdDev ? "stdev" : "variance";
      break;
    case Method::IncrementalEnsemble:
      j["M"] = p.members;
      j["combiner"] = p.combiner == EnsembleCombiner::Mean ? "mean" : "median";
      [[fallthrough]];
    case Method::TimeVariant:
      j["W"] = p.policy.window;
      j["R"] = p.policy.refresh;
      break;
    case Method::StaticFts:
      break;
  }
  return j;
}

Dataset materialize(const DatasetEntry& entry) {
  Dataset ds;
  if (const auto* spec = std::get_if<DriftSpec>(&entry.source)) {
    ds = generate(*spec);
  } else {
    const auto& src = std::get<CsvSource>(entry.source);
    ds = load_csv(src.path, src.column, src.header);
  }
  ds.name = entry.name;
  return ds;
}

}  // namespace nsfts::cli
