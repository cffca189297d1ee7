#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "generators.hpp"
#include "nsfts/errors.hpp"
#include "nsfts/partition.hpp"

namespace nsfts {
namespace {

TEST(Universe, PaddingModes) {
  const std::vector<double> pos{100.0, 150.0, 200.0};
  const auto exact = universe_from_data(pos, 0.2, UniverseMode::PaperExact);
  EXPECT_DOUBLE_EQ(exact.lower, 80.0);
  EXPECT_DOUBLE_EQ(exact.upper, 240.0);

  const std::vector<double> a{0.0, 10.0};
  EXPECT_EQ(universe_from_data(a, 0.0), (Universe{0.0, 10.0}));

  const std::vector<double> b{-10.0, 3.0, 10.0};
  const auto u = universe_from_data(b, 0.2);
  EXPECT_DOUBLE_EQ(u.lower, -14.0);
  EXPECT_DOUBLE_EQ(u.upper, 14.0);
}

TEST(Universe, ConstantSeriesIsWidened) {
  const std::vector<double> c{5.0, 5.0, 5.0};
  const auto u = universe_from_data(c, 0.2);
  EXPECT_DOUBLE_EQ(u.lower, 4.0);
  EXPECT_DOUBLE_EQ(u.upper, 6.0);
  const std::vector<double> z{0.0, 0.0};
  EXPECT_EQ(universe_from_data(z, 0.2), (Universe{-0.2, 0.2}));
}

TEST(Universe, Errors) {
  const std::vector<double> neg{-1.0, 2.0};
  EXPECT_THROW((void)universe_from_data(neg, 0.2, UniverseMode::PaperExact), PreconditionError);
  EXPECT_THROW((void)universe_from_data(std::vector<double>{}, 0.2), PreconditionError);
  EXPECT_THROW((void)universe_from_data(neg, -0.1), PreconditionError);
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_THROW((void)universe_from_data(zero, 0.0), PreconditionError);
}

TEST(Universe, RangePadCoversData) {
  testing::Gen g(3);
  for (int i = 0; i < 200; ++i) {
    const auto y = g.series(g.index(1, 50), g.real(-100.0, 100.0), g.real(0.01, 10.0));
    const auto u = universe_from_data(y, g.real(0.0, 0.5));
    EXPECT_LE(u.lower, *std::min_element(y.begin(), y.end()));
    EXPECT_GE(u.upper, *std::max_element(y.begin(), y.end()));
  }
}

TEST(GridPartition, MidpointsAndBoundaryMirror) {
  const auto p = grid_partition({0.0, 10.0}, 6);
  ASSERT_EQ(p.size(), 6u);
  const double mids[] = {0, 2, 4, 6, 8, 10};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(p.midpoint(i, false), mids[i]);
  EXPECT_EQ(p[2].base(), (Triangle{2.0, 4.0, 6.0}));
  EXPECT_EQ(p[0].base(), (Triangle{-2.0, 0.0, 2.0}));
  EXPECT_EQ(p[5].base(), (Triangle{8.0, 10.0, 12.0}));
  for (const auto& s : p.sets()) EXPECT_TRUE(s.perturbation().is_identity());
}

TEST(GridPartition, RejectsSmallK) {
  EXPECT_THROW((void)grid_partition({0.0, 1.0}, 2), ConfigError);
  EXPECT_THROW((void)grid_partition({1.0, 1.0}, 5), ConfigError);
}

TEST(Fuzzify, Examples) {
  const auto p = grid_partition({0.0, 10.0}, 6);
  EXPECT_EQ(fuzzify(4.0, p, false), (std::vector<double>{0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(fuzzify(3.0, p, false), (std::vector<double>{0, 0.5, 0.5, 0, 0, 0}));
  EXPECT_EQ(fuzzify(11.0, p, false), (std::vector<double>{0, 0, 0, 0, 0, 0.5}));
  EXPECT_EQ(fuzzify(13.0, p, false), (std::vector<double>(6, 0.0)));
}

TEST(Partition, ArgmaxTiesLowAndFallsBackToNearest) {
  const auto p = grid_partition({0.0, 10.0}, 6);
  EXPECT_EQ(p.argmax(3.0), 1u);
  EXPECT_EQ(p.argmax(3.1), 2u);
  EXPECT_EQ(p.argmax(-50.0), 0u);
  EXPECT_EQ(p.argmax(50.0), 5u);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p.argmax(p.midpoint(i, false)), i);
}

TEST(Partition, PerturbOverwritesAndValidatesSizes) {
  auto p = grid_partition({0.0, 10.0}, 3);
  const std::vector<double> d{1.0, 1.0, 1.0};
  const std::vector<double> r{0.0, 0.0, 0.0};
  p.perturb(d, r);
  p.perturb(d, r);
  EXPECT_DOUBLE_EQ(p.midpoint(1, true), 6.0);
  EXPECT_DOUBLE_EQ(p.midpoint(1, false), 5.0);
  const std::vector<double> shorter{1.0};
  EXPECT_THROW(p.perturb(shorter, r), PreconditionError);
  p.reset_perturbations();
  EXPECT_DOUBLE_EQ(p.midpoint(1, true), 5.0);
}

TEST(Partition, ExplicitConstructionValidates) {
  std::vector<FuzzySet> sets{FuzzySet(0, {0, 1, 2}), FuzzySet(2, {1, 2, 3}), FuzzySet(1, {2, 3, 4})};
  EXPECT_THROW(Partition({0.0, 4.0}, sets), ConfigError);
  EXPECT_THROW(Partition({0.0, 4.0}, {FuzzySet(0, {0, 1, 2})}), ConfigError);
}

TEST(PartitionProperties, UnitySumOnTheGrid) {
  testing::Gen g(4);
  for (std::size_t k : {3u, 5u, 35u, 100u}) {
    const auto u = g.universe();
    const auto p = grid_partition(u, k);
    for (int i = 0; i < 500; ++i) {
      const double x = g.real(p.midpoint(0, false), p.midpoint(k - 1, false));
      const auto m = fuzzify(x, p, false);
      ASSERT_NEAR(std::accumulate(m.begin(), m.end(), 0.0), 1.0, 1e-9) << "k=" << k << " x=" << x;
    }
  }
}

}  // namespace
}  // namespace nsfts
