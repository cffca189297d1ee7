#include "nsfts/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsfts/errors.hpp"

namespace nsfts {

ResidualWindow::ResidualWindow(std::size_t capacity) : buffer_(capacity, 0.0) {
  if (capacity < 2) {
    throw ConfigError("residual window capacity must be >= 2, got " + std::to_string(capacity));
  }
}

void ResidualWindow::push(double residual) {
  if (size_ < buffer_.size()) {
    buffer_[(head_ + size_) % buffer_.size()] = residual;
    ++size_;
    return;
  }
  buffer_[head_] = residual;
  head_ = (head_ + 1) % buffer_.size();
}

std::vector<double> ResidualWindow::values() const {
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

ResidualStats residual_stats(const ResidualWindow& window, SpreadMeasure measure) {
  if (window.empty()) throw PreconditionError("residual_stats: empty residual window");
  const std::size_t size = window.size();
  const auto n = static_cast<double>(size);
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) sum += window[i];
  const double mean = sum / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double d = window[i] - mean;
    ss += d * d;
  }
  const double variance = ss / n;
  return {mean, measure == SpreadMeasure::Variance ? variance : std::sqrt(variance)};
}

Displacement displacements(double y, const Universe& universe) noexcept {
  Displacement d;
  d.below = std::max(universe.lower - y, 0.0);
  d.above = std::max(y - universe.upper, 0.0);
  d.range = d.above - d.below;
  d.range_mid = d.range / 2.0;
  return d;
}

void compute_deltas(const ResidualStats& stats, const Displacement& disp, std::span<double> out) {
  const std::size_t k = out.size();
  if (k < 3) throw PreconditionError("compute_deltas: k must be >= 3");
  const double denom = static_cast<double>(k - 1);
  const double s = stats.spread;
  for (std::size_t i = 0; i < k; ++i) {
    const auto fi = static_cast<double>(i);
    out[i] = stats.mean + (fi * disp.range / denom - disp.range_mid) + (fi * 2.0 * s / denom - s);
  }
}

std::vector<double> compute_deltas(const ResidualStats& stats, const Displacement& disp, std::size_t k) {
  std::vector<double> out(k);
  compute_deltas(stats, disp, out);
  return out;
}

void compute_rhos(std::span<const double> deltas, std::span<double> out) {
  const std::size_t k = deltas.size();
  if (k < 3) throw PreconditionError("compute_rhos: k must be >= 3");
  if (out.size() != k) throw PreconditionError("compute_rhos: output size mismatch");
  out[0] = std::abs(deltas[0] - deltas[1]);
  for (std::size_t i = 1; i + 1 < k; ++i) out[i] = std::abs(deltas[i - 1] - deltas[i + 1]);
  out[k - 1] = std::abs(deltas[k - 2] - deltas[k - 1]);
}

std::vector<double> compute_rhos(std::span<const double> deltas) {
  std::vector<double> out(deltas.size());
  compute_rhos(deltas, out);
  return out;
}

NsftsModel::NsftsModel(FtsModel core, ResidualWindow residuals, std::optional<double> last_forecast,
                       SpreadMeasure spread)
    : core_(std::move(core)),
      residuals_(std::move(residuals)),
      last_forecast_(last_forecast),
      spread_(spread),
      deltas_(core_.partition().size()),
      rhos_(core_.partition().size()) {}

void NsftsModel::adapt(double y) {
  if (!std::isfinite(y)) throw PreconditionError("adapt: observation must be finite");
  if (last_forecast_) residuals_.push(y - *last_forecast_);
  if (residuals_.empty()) return;

  const ResidualStats stats = residual_stats(residuals_, spread_);
  const Displacement disp = displacements(y, core_.partition_.universe());
  compute_deltas(stats, disp, deltas_);
  compute_rhos(deltas_, rhos_);
  core_.partition_.perturb(deltas_, rhos_);
}

Forecast NsftsModel::forecast(double x) {
  const Forecast f = infer(x, core_.partition_, core_.rules_, true, core_.normalize_);
  last_forecast_ = f.value;
  return f;
}

std::vector<Forecast> NsftsModel::run_online(std::span<const double> y) {
  std::vector<Forecast> out;
  out.reserve(y.size());
  for (double v : y) {
    adapt(v);
    out.push_back(forecast(v));
  }
  return out;
}

PerturbationSummary NsftsModel::perturbation_summary() const noexcept {
  const auto& sets = core_.partition_.sets();
  if (sets.empty()) return {};
  PerturbationSummary s{sets[0].perturbation().displacement, sets[0].perturbation().displacement,
                        sets[0].perturbation().scale};
  for (const auto& set : sets) {
    s.delta_min = std::min(s.delta_min, set.perturbation().displacement);
    s.delta_max = std::max(s.delta_max, set.perturbation().displacement);
    s.rho_max = std::max(s.rho_max, set.perturbation().scale);
  }
  return s;
}

NsftsModel train_nsfts(std::span<const double> y, const NsftsConfig& config) {
  const std::size_t w = config.residual_window;
  if (w < 2) throw ConfigError("train_nsfts: residual window w must be >= 2");
  if (y.size() <= w) {
    throw PreconditionError("train_nsfts: series length " + std::to_string(y.size()) +
                            " must exceed the residual window w = " + std::to_string(w));
  }
  FtsModel core = train(y, config.fts);

  ResidualWindow window(w);
  for (std::size_t t = y.size() - w; t < y.size(); ++t) {
    window.push(y[t] - core.forecast(y[t - 1]).value);
  }
  const double seed = core.forecast(y.back()).value;
  return NsftsModel(std::move(core), std::move(window), seed, config.spread);
}

}  // namespace nsfts
