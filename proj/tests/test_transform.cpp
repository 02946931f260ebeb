#include <gtest/gtest.h>

#include <algorithm>

#include "synchro/catalog.hpp"
#include "synchro/random.hpp"
#include "synchro/transform.hpp"

using namespace synchro;

namespace {

Transformation witness_t() {
  std::vector<point> im;
  for (auto x : catalog::gap_rank7_witness()) im.push_back(x - 1);
  return Transformation(im);
}

}  // namespace

TEST(Transformation, RejectsOutOfRangeImages) { EXPECT_THROW(Transformation({0, 3, 1}), Error); }

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(Transformation::identity(5)), (Partition{{0}, {1}, {2}, {3}, {4}}));
  EXPECT_EQ(kernel(Transformation::constant(5, 2)), (Partition{{0, 1, 2, 3, 4}}));
  EXPECT_EQ(kernel(witness_t()).size(), 7u);
}

TEST(KernelType, Examples) {
  EXPECT_EQ(kernel_type(witness_t()).part_sizes, (std::vector<std::size_t>{10, 10, 5, 5, 5, 5, 5}));
  EXPECT_EQ(kernel_type(witness_t()).to_string(), "(10,10,5,5,5,5,5)");
  EXPECT_EQ(kernel_type(Transformation::identity(4)).part_sizes, (std::vector<std::size_t>(4, 1)));
  EXPECT_EQ(kernel_type(Transformation{0, 0, 2, 2}).part_sizes, (std::vector<std::size_t>{2, 2}));
}

TEST(Uniform, Examples) {
  EXPECT_FALSE(is_uniform(witness_t()));
  Rng rng(1);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(is_uniform(random_permutation(7, rng).as_transformation()));
  // Kernel type (15,10,10,5,5).
  std::vector<point> im;
  const std::size_t sizes[] = {5, 5, 10, 10, 15};
  for (point c = 0; c < 5; ++c) im.insert(im.end(), sizes[c], c);
  EXPECT_FALSE(is_uniform(Transformation(im)));
  EXPECT_EQ(kernel_type(Transformation(im)).to_string(), "(15,10,10,5,5)");
}

TEST(Compose, Examples) {
  Rng rng(2);
  const auto g = random_transformation(6, rng);
  EXPECT_EQ(compose(Transformation::constant(6, 0), g), Transformation::constant(6, g[0]));
  EXPECT_EQ(compose(g, Transformation::identity(6)), g);
  const Transformation f3{0, 1, 2, 2}, f2{3, 3, 1, 1};
  const auto h = compose(f3, f2);
  for (point x = 0; x < 4; ++x) EXPECT_EQ(h[x], f2[f3[x]]);
  EXPECT_LE(h.rank(), 2u);
  EXPECT_THROW(compose(Transformation::identity(3), Transformation::identity(4)), Error);
}

TEST(Compose, RankBound) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_transformation(8, rng), g = random_transformation(8, rng);
    EXPECT_LE(compose(f, g).rank(), std::min(f.rank(), g.rank()));
  }
}

TEST(Kernel, PartsCoverAndAgreeWithFibres) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_transformation(9, rng);
    const auto k = kernel(f);
    EXPECT_EQ(k.size(), f.rank());
    std::vector<int> seen(9, 0);
    for (const auto& part : k)
      for (point x : part) {
        ++seen[x];
        EXPECT_EQ(f[x], f[part.front()]);
      }
    for (int s : seen) EXPECT_EQ(s, 1);
    const auto kt = kernel_type(f);
    EXPECT_EQ(kt.total(), 9u);
    EXPECT_EQ(kt.uniform(), kt.part_sizes.front() == kt.part_sizes.back());
    EXPECT_TRUE(std::is_sorted(kt.part_sizes.rbegin(), kt.part_sizes.rend()));
  }
}

TEST(Conjugacy, FindsRelabelling) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_transformation(10, rng);
    const auto s = random_permutation(10, rng);
    // g = s^-1 f s: g[s[x]] = s[f[x]].
    std::vector<point> g(10);
    for (point x = 0; x < 10; ++x) g[s[x]] = s[f[x]];
    auto c = conjugating_bijection(f, Transformation(g));
    ASSERT_TRUE(c.has_value());
    for (point x = 0; x < 10; ++x) EXPECT_EQ((*c)[f[x]], g[(*c)[x]]);
  }
  EXPECT_FALSE(conjugating_bijection(Transformation{0, 0, 1}, Transformation{0, 0, 0}).has_value());
  EXPECT_FALSE(conjugating_bijection(Transformation{1, 0, 2}, Transformation{0, 1, 2}).has_value());
}
