#include "nsfts/dataset.hpp"

#include <cmath>
#include <string>

#include "nsfts/errors.hpp"
#include "nsfts/random.hpp"

namespace nsfts {

namespace {

struct KindName {
  DriftKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 8> kKindNames{{
    {DriftKind::Stationary, "stationary"},
    {DriftKind::StationaryBlip, "stationary-blip"},
    {DriftKind::SuddenVariance, "sudden-variance"},
    {DriftKind::SuddenMean, "sudden-mean"},
    {DriftKind::SuddenMeanVariance, "sudden-mean-variance"},
    {DriftKind::IncrementalMean, "incremental-mean"},
    {DriftKind::IncrementalVariance, "incremental-variance"},
    {DriftKind::IncrementalMeanVariance, "incremental-mean-variance"},
}};

bool drifts_mean(DriftKind k) {
  return k == DriftKind::SuddenMean || k == DriftKind::SuddenMeanVariance ||
         k == DriftKind::IncrementalMean || k == DriftKind::IncrementalMeanVariance;
}

bool drifts_variance(DriftKind k) {
  return k == DriftKind::SuddenVariance || k == DriftKind::SuddenMeanVariance ||
         k == DriftKind::IncrementalVariance || k == DriftKind::IncrementalMeanVariance;
}

bool incremental(DriftKind k) {
  return k == DriftKind::IncrementalMean || k == DriftKind::IncrementalVariance ||
         k == DriftKind::IncrementalMeanVariance;
}

}  // namespace

std::string_view to_string(DriftKind kind) noexcept {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

std::optional<DriftKind> parse_drift_kind(std::string_view name) noexcept {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  return std::nullopt;
}

std::string drift_kind_list() {
  std::string out;
  for (const auto& kn : kKindNames) {
    if (!out.empty()) out += ", ";
    out += kn.name;
  }
  return out;
}

double DriftSpec::magnitude() const noexcept {
  if (drift_magnitude) return *drift_magnitude;
  return drifts_mean(kind) ? 10.0 : 5.0;
}

void DriftSpec::validate() const {
  if (to_string(kind) == "unknown") throw ConfigError("drift spec: unknown kind");
  if (length < 100) throw ConfigError("drift spec: length must be >= 100, got " + std::to_string(length));
  if (!std::isfinite(base_mean)) throw ConfigError("drift spec: base_mean must be finite");
  if (!(base_stdev > 0.0) || !std::isfinite(base_stdev)) {
    throw ConfigError("drift spec: base_stdev must be finite and > 0");
  }
  if (!std::isfinite(magnitude())) throw ConfigError("drift spec: drift_magnitude must be finite");
  if (drifts_variance(kind) && kind != DriftKind::SuddenMeanVariance &&
      kind != DriftKind::IncrementalMeanVariance && !(magnitude() > 0.0)) {
    throw ConfigError("drift spec: variance multiplier must be > 0");
  }
  if (!(variance_factor > 0.0) || !std::isfinite(variance_factor)) {
    throw ConfigError("drift spec: variance_factor must be finite and > 0");
  }
  if (!(onset >= 0.0 && onset < 1.0)) throw ConfigError("drift spec: onset must be in [0, 1)");
}

Dataset generate(const DriftSpec& spec) {
  spec.validate();
  const std::size_t n = spec.length;
  const auto onset = static_cast<std::size_t>(std::floor(spec.onset * static_cast<double>(n)));
  const bool combined =
      spec.kind == DriftKind::SuddenMeanVariance || spec.kind == DriftKind::IncrementalMeanVariance;
  const double mean_shift = drifts_mean(spec.kind) ? spec.magnitude() * spec.base_stdev : 0.0;
  const double stdev_factor =
      drifts_variance(spec.kind) ? (combined ? spec.variance_factor : spec.magnitude()) : 1.0;

  Rng rng(spec.seed);
  Dataset out;
  out.name = std::string(to_string(spec.kind));
  out.provenance = "synthetic:" + out.name + ":seed=" + std::to_string(spec.seed);
  out.values.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    double progress = 0.0;
    if (t >= onset) {
      if (!incremental(spec.kind) || onset + 1 >= n) {
        progress = 1.0;
      } else {
        progress = static_cast<double>(t - onset) / static_cast<double>(n - 1 - onset);
      }
    }
    const double mean = spec.base_mean + progress * mean_shift;
    const double stdev = spec.base_stdev * (1.0 + progress * (stdev_factor - 1.0));
    out.values[t] = mean + stdev * rng.normal();
  }
  if (spec.kind == DriftKind::StationaryBlip) out.values[onset] += 10.0 * spec.base_stdev;
  return out;
}

}  // namespace nsfts
