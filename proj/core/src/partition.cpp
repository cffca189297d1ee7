#include "nsfts/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsfts/errors.hpp"

namespace nsfts {

Universe universe_from_data(std::span<const double> y, double padding, UniverseMode mode) {
  if (y.empty()) throw PreconditionError("universe_from_data: empty series");
  if (!(padding >= 0.0) || !std::isfinite(padding)) {
    throw PreconditionError("universe_from_data: padding must be finite and >= 0");
  }
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw PreconditionError("universe_from_data: series contains non-finite values");
  }

  Universe u;
  if (mode == UniverseMode::PaperExact) {
    if (!(lo > 0.0)) {
      throw PreconditionError(
          "paper-exact universe requires a strictly positive series (min = " + std::to_string(lo) +
          "); use range padding instead");
    }
    u = {lo - lo * padding, hi + hi * padding};
  } else if (hi == lo) {
    const double pad = padding * std::max(std::abs(hi), 1.0);
    u = {lo - pad, hi + pad};
  } else {
    const double pad = padding * (hi - lo);
    u = {lo - pad, hi + pad};
  }
  if (!u.valid()) {
    throw PreconditionError("universe_from_data: degenerate universe [" + std::to_string(u.lower) +
                            ", " + std::to_string(u.upper) + "]");
  }
  return u;
}

Partition::Partition(Universe universe, std::vector<FuzzySet> sets)
    : universe_(universe), sets_(std::move(sets)) {
  if (!universe_.valid()) throw ConfigError("partition: universe lower bound must be below upper");
  if (sets_.size() < 3) {
    throw ConfigError("partition: k must be >= 3, got " + std::to_string(sets_.size()));
  }
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].index() != i) throw ConfigError("partition: sets must be indexed in order");
  }
}

void Partition::fuzzify_into(double x, bool perturbed, std::span<double> out) const {
  for (std::size_t i = 0; i < sets_.size(); ++i) out[i] = membership(i, x, perturbed);
}

std::size_t Partition::argmax(double x) const {
  std::size_t best = 0;
  double best_mu = 0.0;
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const double mu = membership(i, x, false);
    if (mu > best_mu) {
      best_mu = mu;
      best = i;
    }
  }
  return best_mu > 0.0 ? best : nearest(x, false);
}

std::size_t Partition::nearest(double x, bool perturbed) const {
  std::size_t best = 0;
  double best_dist = std::abs(x - midpoint(0, perturbed));
  for (std::size_t i = 1; i < sets_.size(); ++i) {
    const double d = std::abs(x - midpoint(i, perturbed));
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

void Partition::perturb(std::span<const double> displacements, std::span<const double> scales) {
  if (displacements.size() != sets_.size() || scales.size() != sets_.size()) {
    throw PreconditionError("partition: perturbation vectors must have one entry per set");
  }
  for (std::size_t i = 0; i < sets_.size(); ++i) sets_[i].perturb({displacements[i], scales[i]});
}

void Partition::reset_perturbations() {
  for (auto& s : sets_) s.reset();
}

Partition grid_partition(const Universe& universe, std::size_t k) {
  if (k < 3) throw ConfigError("grid_partition: k must be >= 3, got " + std::to_string(k));
  if (!universe.valid()) throw ConfigError("grid_partition: invalid universe");

  const double span = universe.upper - universe.lower;
  const double denom = static_cast<double>(k - 1);
  const double step = span / denom;
  std::vector<double> mids(k);
  for (std::size_t i = 0; i < k; ++i) {
    mids[i] = universe.lower + static_cast<double>(i) * span / denom;
  }

  std::vector<FuzzySet> sets;
  sets.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double lower = i == 0 ? mids[0] - step : mids[i - 1];
    const double upper = i + 1 == k ? mids[k - 1] + step : mids[i + 1];
    sets.emplace_back(i, Triangle{lower, mids[i], upper});
  }
  return Partition(universe, std::move(sets));
}

std::vector<double> fuzzify(double x, const Partition& p, bool perturbed) {
  std::vector<double> out(p.size());
  p.fuzzify_into(x, perturbed, out);
  return out;
}

}  // namespace nsfts
