#include "nsfts/fuzzy.hpp"

#include <string>

#include "nsfts/errors.hpp"

namespace nsfts {

void detail::throw_invalid_triangle(const Triangle& t) {
  throw PreconditionError("invalid triangle {" + std::to_string(t.lower) + ", " +
                          std::to_string(t.mid) + ", " + std::to_string(t.upper) +
                          "}: expected lower <= mid <= upper");
}

void detail::throw_negative_scale(double scale) {
  throw PreconditionError("perturbation scale must be >= 0, got " + std::to_string(scale));
}

FuzzySet::FuzzySet(std::size_t index, const Triangle& base)
    : index_(index), base_(base), effective_(base) {
  if (!base.valid()) detail::throw_invalid_triangle(base);
}

}  // namespace nsfts
