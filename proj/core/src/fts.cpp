#include "nsfts/fts.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "nsfts/errors.hpp"

namespace nsfts {

namespace {
std::atomic<std::uint64_t> g_train_calls{0};
}  // namespace

void RuleBase::add(const Pattern& p) {
  if (p.lhs >= consequents_.size() || p.rhs >= consequents_.size()) {
    throw PreconditionError("rule index out of range: " + std::to_string(p.lhs) + " -> " +
                            std::to_string(p.rhs) + " with k = " + std::to_string(consequents_.size()));
  }
  auto& rhs = consequents_[p.lhs];
  if (std::find(rhs.begin(), rhs.end(), p.rhs) != rhs.end()) return;
  if (rhs.empty()) ++rule_count_;
  rhs.push_back(p.rhs);
}

std::vector<Rule> RuleBase::rules() const {
  std::vector<Rule> out;
  out.reserve(rule_count_);
  for (std::size_t lhs = 0; lhs < consequents_.size(); ++lhs) {
    if (!consequents_[lhs].empty()) out.push_back({lhs, consequents_[lhs]});
  }
  return out;
}

std::vector<Pattern> extract_patterns(std::span<const double> y, const Partition& p) {
  if (y.size() < 2) throw PreconditionError("extract_patterns: series needs at least 2 points");
  std::vector<Pattern> out;
  out.reserve(y.size() - 1);
  std::size_t prev = p.argmax(y[0]);
  for (std::size_t t = 1; t < y.size(); ++t) {
    const std::size_t cur = p.argmax(y[t]);
    out.push_back({prev, cur});
    prev = cur;
  }
  return out;
}

RuleBase build_rulebase(std::span<const Pattern> patterns, std::size_t k) {
  RuleBase rb(k);
  for (const auto& pat : patterns) rb.add(pat);
  return rb;
}

Forecast infer(double x, const Partition& p, const RuleBase& rules, bool perturbed, bool normalize) {
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double mu = p.membership(j, x, perturbed);
    if (mu <= 0.0) continue;
    const auto rhs = rules.consequents(j);
    if (rhs.empty()) continue;
    double sum = 0.0;
    for (std::size_t i : rhs) sum += p.midpoint(i, perturbed);
    weighted += mu * (sum / static_cast<double>(rhs.size()));
    total += mu;
  }
  if (total <= 0.0) return {p.midpoint(p.nearest(x, perturbed), perturbed), ForecastSource::Fallback};
  return {normalize ? weighted / total : weighted, ForecastSource::Rules};
}

FtsModel::FtsModel(Partition partition, RuleBase rules, bool normalize)
    : partition_(std::move(partition)), rules_(std::move(rules)), normalize_(normalize) {
  if (rules_.k() != partition_.size()) {
    throw ConfigError("rule base size " + std::to_string(rules_.k()) +
                      " does not match partition size " + std::to_string(partition_.size()));
  }
}

FtsModel train(std::span<const double> y, const FtsConfig& config) {
  g_train_calls.fetch_add(1, std::memory_order_relaxed);
  if (y.size() < 2) throw PreconditionError("train: series needs at least 2 points");
  if (config.partitions < 3) {
    throw ConfigError("train: k must be >= 3, got " + std::to_string(config.partitions));
  }
  Partition partition =
      grid_partition(universe_from_data(y, config.padding, config.universe_mode), config.partitions);
  const auto patterns = extract_patterns(y, partition);
  RuleBase rules = build_rulebase(patterns, partition.size());
  return FtsModel(std::move(partition), std::move(rules), config.normalize);
}

std::uint64_t train_call_count() noexcept { return g_train_calls.load(std::memory_order_relaxed); }

}  // namespace nsfts
