#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nsfts/fuzzy.hpp"

namespace nsfts {

/// Universe of discourse [lower, upper].
struct Universe {
  double lower = 0.0;
  double upper = 1.0;

  [[nodiscard]] bool valid() const noexcept { return lower < upper; }
  [[nodiscard]] double width() const noexcept { return upper - lower; }

  friend bool operator==(const Universe&, const Universe&) = default;
};

enum class UniverseMode {
  // Pads both ends by padding * (max - min). Works for any sign.
  RangePad,
  // lb = min - min * padding, ub = max + max * padding. Requires min > 0.
  PaperExact,
};

inline constexpr double kDefaultPadding = 0.2;
inline constexpr std::size_t kDefaultPartitions = 35;

/// Estimates the universe from training data.
/// A constant series in RangePad mode is widened by padding * max(|max|, 1) on each side.
[[nodiscard]] Universe universe_from_data(std::span<const double> y, double padding = kDefaultPadding,
                                          UniverseMode mode = UniverseMode::RangePad);

/// The ordered family of k triangular sets covering a universe.
///
/// Base triangles are frozen at construction; perturbations are mutated in place by
/// the adaptive model and require exclusive access while that happens.
class Partition {
public:
  Partition() = default;
  /// Builds a partition from explicit sets (checkpoint restore). Sets must be
  /// indexed 0..k-1 in order and k >= 3.
  Partition(Universe universe, std::vector<FuzzySet> sets);

  [[nodiscard]] const Universe& universe() const noexcept { return universe_; }
  [[nodiscard]] std::size_t size() const noexcept { return sets_.size(); }
  [[nodiscard]] const std::vector<FuzzySet>& sets() const noexcept { return sets_; }
  [[nodiscard]] const FuzzySet& operator[](std::size_t i) const { return sets_[i]; }

  [[nodiscard]] double midpoint(std::size_t i, bool perturbed) const noexcept {
    return perturbed ? sets_[i].effective().mid : sets_[i].base().mid;
  }

  [[nodiscard]] double membership(std::size_t i, double x, bool perturbed) const {
    return nsfts::membership(x, perturbed ? sets_[i].effective() : sets_[i].base());
  }

  /// Membership vector of x over all sets; out.size() must equal size().
  void fuzzify_into(double x, bool perturbed, std::span<double> out) const;

  /// Index of the set with the largest base membership; ties go to the lower index.
  /// Falls back to the nearest base midpoint when x is outside every support.
  [[nodiscard]] std::size_t argmax(double x) const;

  /// Index of the set whose (base or perturbed) midpoint is closest to x; ties go low.
  [[nodiscard]] std::size_t nearest(double x, bool perturbed) const;

  /// Overwrites every set's perturbation. Both spans must have size() entries.
  void perturb(std::span<const double> displacements, std::span<const double> scales);
  void reset_perturbations();

  friend bool operator==(const Partition&, const Partition&) = default;

private:
  Universe universe_{};
  std::vector<FuzzySet> sets_;
};

/// Grid partition: k equally spaced midpoints from lower to upper, each set spanning
/// its neighbours' midpoints. The outermost sets mirror one grid step beyond the universe.
[[nodiscard]] Partition grid_partition(const Universe& universe, std::size_t k);

[[nodiscard]] std::vector<double> fuzzify(double x, const Partition& p, bool perturbed);

}  // namespace nsfts
