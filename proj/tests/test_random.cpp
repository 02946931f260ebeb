#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "synchro/random.hpp"

using namespace synchro;

TEST(Rng, DeterministicForSeed) {
  Rng a(99), b(99), c(100);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.below(1000);
    EXPECT_EQ(x, b.below(1000));
    differs = differs || x != c.below(1000);
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BelowStaysInRange) {
  Rng rng(1);
  for (std::uint64_t bound : {1u, 2u, 7u, 1000u})
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(bound), bound);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RandomMapOfRank, RankIsExact) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.below(40);
    const std::size_t r = 1 + rng.below(n);
    EXPECT_EQ(random_map_of_rank(n, r, rng).rank(), r);
  }
  EXPECT_THROW(random_map_of_rank(5, 0, rng), Error);
  EXPECT_THROW(random_map_of_rank(5, 6, rng), Error);
}

TEST(RandomMapOfRank, RoughlyUniform) {
  // 4 points, rank 2: C(4,2) * S(4,2) * 2! = 84 maps.
  Rng rng(3);
  std::map<std::vector<point>, int> counts;
  const int per = 1000;
  for (int i = 0; i < 84 * per; ++i) ++counts[random_map_of_rank(4, 2, rng).images()];
  EXPECT_EQ(counts.size(), 84u);
  for (const auto& [m, c] : counts) {
    EXPECT_GT(c, per * 8 / 10);
    EXPECT_LT(c, per * 12 / 10);
  }
}

TEST(RandomTransformation, RoughlyUniform) {
  Rng rng(4);
  std::map<std::vector<point>, int> counts;
  for (int i = 0; i < 27 * 1000; ++i) ++counts[random_transformation(3, rng).images()];
  EXPECT_EQ(counts.size(), 27u);
  for (const auto& [m, c] : counts) {
    EXPECT_GT(c, 800);
    EXPECT_LT(c, 1200);
  }
}

TEST(RandomPermutation, IsBijectionAndCoversSymmetricGroup) {
  Rng rng(5);
  std::map<std::vector<point>, int> counts;
  for (int i = 0; i < 24 * 500; ++i) ++counts[random_permutation(4, rng).images()];
  EXPECT_EQ(counts.size(), 24u);
  for (const auto& [m, c] : counts) {
    EXPECT_GT(c, 350);
    EXPECT_LT(c, 650);
  }
}
