#pragma once

#include <cstddef>

namespace nsfts {

/// Triangular membership function support and peak, in series units.
struct Triangle {
  double lower = 0.0;
  double mid = 0.0;
  double upper = 0.0;

  [[nodiscard]] bool valid() const noexcept { return lower <= mid && mid <= upper; }
  [[nodiscard]] double width() const noexcept { return upper - lower; }

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Displacement and scale increment applied to a triangle. The identity is {0, 0}.
struct Perturbation {
  double displacement = 0.0;
  double scale = 0.0;  // >= 0

  [[nodiscard]] bool is_identity() const noexcept { return displacement == 0.0 && scale == 0.0; }

  friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

namespace detail {
[[noreturn]] void throw_invalid_triangle(const Triangle& t);
[[noreturn]] void throw_negative_scale(double scale);
}  // namespace detail

/// Membership grade of x in t. Degenerate branches (mid == lower or mid == upper)
/// yield 1 exactly at the coincident point.
/// Throws PreconditionError when t is not ordered lower <= mid <= upper.
[[nodiscard]] inline double membership(double x, const Triangle& t) {
  if (!t.valid()) detail::throw_invalid_triangle(t);
  if (x < t.lower || x > t.upper) return 0.0;
  if (x == t.mid) return 1.0;
  if (x < t.mid) return (x - t.lower) / (t.mid - t.lower);
  return (t.upper - x) / (t.upper - t.mid);
}

/// Shifts all three parameters by the displacement, then widens the support
/// symmetrically by scale/2 on each side. The midpoint only moves with the displacement.
/// Throws PreconditionError on an invalid triangle or a negative scale.
[[nodiscard]] inline Triangle apply_perturbation(const Triangle& t, const Perturbation& p) {
  if (!t.valid()) detail::throw_invalid_triangle(t);
  if (!(p.scale >= 0.0)) detail::throw_negative_scale(p.scale);
  const double half = p.scale / 2.0;
  return {(t.lower + p.displacement) - half, t.mid + p.displacement, (t.upper + p.displacement) + half};
}

/// A member of a partition: its training-time triangle plus the live perturbation.
class FuzzySet {
public:
  FuzzySet() = default;
  FuzzySet(std::size_t index, const Triangle& base);

  [[nodiscard]] std::size_t index() const noexcept { return index_; }
  [[nodiscard]] const Triangle& base() const noexcept { return base_; }
  [[nodiscard]] const Perturbation& perturbation() const noexcept { return pert_; }

  /// Triangle after applying the current perturbation (cached).
  [[nodiscard]] const Triangle& effective() const noexcept { return effective_; }

  void perturb(const Perturbation& p) {
    effective_ = apply_perturbation(base_, p);
    pert_ = p;
  }
  void reset() { perturb({}); }

  friend bool operator==(const FuzzySet&, const FuzzySet&) = default;

private:
  std::size_t index_ = 0;
  Triangle base_{};
  Perturbation pert_{};
  Triangle effective_{};
};

[[nodiscard]] inline double perturbed_membership(double x, const FuzzySet& s) {
  return membership(x, s.effective());
}

}  // namespace nsfts
