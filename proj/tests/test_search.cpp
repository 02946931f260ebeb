#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "oracles.hpp"
#include "synchro/catalog.hpp"
#include "synchro/random.hpp"
#include "synchro/search.hpp"

using namespace synchro;
using namespace std::chrono_literals;

namespace {

Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (point u = 0; u < n; ++u)
    for (point v = u + 1; v < n; ++v)
      if (rng.unit() < p) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST(Clique, Examples) {
  for (std::size_t n = 1; n < 8; ++n) EXPECT_EQ(clique_number(complete_graph(n)).size, n);
  EXPECT_EQ(clique_number(catalog::tutte_coxeter_line_graph()).size, 3u);
  EXPECT_EQ(clique_number(triangular_graph(6)).size, 5u);
  EXPECT_EQ(clique_number(null_graph(4)).size, 1u);
  EXPECT_EQ(clique_number(Graph(0)).size, 0u);
}

TEST(Clique, AgreesWithSubsetOracle) {
  Rng rng(1);
  for (int i = 0; i < 80; ++i) {
    const auto g = random_graph(4 + rng.below(12), 0.2 + 0.6 * rng.unit(), rng);
    const auto r = clique_number(g);
    EXPECT_EQ(r.size, oracle::clique_number(g));
    EXPECT_EQ(r.witness.size(), r.size);
    EXPECT_TRUE(is_clique(g, r.witness));
  }
}

TEST(Chromatic, Examples) {
  const auto lt = chromatic_number(catalog::tutte_coxeter_line_graph());
  EXPECT_EQ(lt.colours, 3u);
  std::vector<std::size_t> sizes(3, 0);
  for (auto c : lt.colouring) ++sizes[c];
  EXPECT_EQ(sizes, (std::vector<std::size_t>{15, 15, 15}));
  EXPECT_EQ(chromatic_number(cycle_graph(5)).colours, 3u);
  EXPECT_EQ(chromatic_number(box_product(complete_graph(3), complete_graph(3))).colours, 3u);
  EXPECT_EQ(chromatic_number(null_graph(3)).colours, 1u);
}

TEST(Chromatic, AgreesWithExhaustiveColouring) {
  Rng rng(2);
  for (int i = 0; i < 60; ++i) {
    const auto g = random_graph(3 + rng.below(6), 0.3 + 0.5 * rng.unit(), rng);
    const auto r = chromatic_number(g);
    EXPECT_EQ(r.colours, oracle::chromatic_number(g));
    EXPECT_TRUE(is_proper_colouring(g, r.colouring));
    EXPECT_GE(r.colours, clique_number(g).size);
  }
}

TEST(FindHomomorphism, Examples) {
  auto k3 = find_homomorphism(complete_graph(3), complete_graph(3), {});
  ASSERT_TRUE(k3.found);
  EXPECT_EQ(k3.found->rank(), 3u);
  auto c5 = find_homomorphism(cycle_graph(5), complete_graph(2), {});
  EXPECT_FALSE(c5.found);
  EXPECT_EQ(c5.status, SearchStatus::Complete);
  const auto r4 = box_product(complete_graph(4), complete_graph(4));
  SearchOptions six;
  six.rank_filter = {6};
  auto h = find_homomorphism(r4, complement(r4), six);
  ASSERT_TRUE(h.found);
  EXPECT_EQ(h.found->rank(), 6u);
  EXPECT_TRUE(is_homomorphism(r4, complement(r4), h.found->images));
}

TEST(Enumerate, AgreesWithBruteForceOnSmallGraphs) {
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const auto g = random_graph(2 + rng.below(5), 0.5, rng);
    const auto expect = oracle::hom_histogram(g, g);
    const auto got = enumerate_endomorphisms(g, {});
    EXPECT_EQ(got.by_rank, (std::map<std::size_t, std::uint64_t>(expect.begin(), expect.end())));
  }
  const auto p3 = path_graph(3);
  std::uint64_t brute = 0;
  for (auto [r, c] : oracle::hom_histogram(p3, p3)) brute += c;
  EXPECT_EQ(enumerate_endomorphisms(p3, {}).total, brute);
}

TEST(Enumerate, HomomorphismsBetweenDifferentGraphs) {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_graph(2 + rng.below(5), 0.5, rng);
    const auto b = random_graph(2 + rng.below(4), 0.6, rng);
    const auto expect = oracle::hom_histogram(a, b);
    EXPECT_EQ(enumerate_homomorphisms(a, b, {}).by_rank, (std::map<std::size_t, std::uint64_t>(expect.begin(), expect.end())));
  }
}

TEST(Enumerate, FiltersAndVisitor) {
  SearchOptions proper;
  proper.proper_only = true;
  EXPECT_EQ(enumerate_endomorphisms(complete_graph(3), proper).total, 0u);
  const auto b = butterfly();
  SearchOptions opts;
  opts.rank_filter = {3};
  std::size_t seen = 0;
  auto res = enumerate_endomorphisms(b, opts, [&](std::span<const point> s) {
    ++seen;
    EXPECT_TRUE(is_endomorphism(b, Transformation(std::vector<point>(s.begin(), s.end()))));
    EXPECT_EQ(Transformation(std::vector<point>(s.begin(), s.end())).rank(), 3u);
    return true;
  });
  EXPECT_EQ(seen, res.total);
  EXPECT_EQ(res.total, oracle::hom_histogram(b, b)[3]);
  std::size_t calls = 0;
  enumerate_endomorphisms(b, {}, [&](std::span<const point>) { return ++calls < 5; });
  EXPECT_EQ(calls, 5u);
}

TEST(Enumerate, ParallelMatchesSerial) {
  const auto g = box_product(complete_graph(3), complete_graph(3));
  std::vector<std::vector<point>> serial, parallel;
  auto r1 = enumerate_endomorphisms(g, {}, [&](std::span<const point> s) {
    serial.emplace_back(s.begin(), s.end());
    return true;
  });
  SearchOptions par;
  par.parallelism = 4;
  auto r4 = enumerate_endomorphisms(g, par, [&](std::span<const point> s) {
    parallel.emplace_back(s.begin(), s.end());
    return true;
  });
  EXPECT_EQ(r1.by_rank, r4.by_rank);
  EXPECT_EQ(serial, parallel);
}

TEST(Enumerate, BudgetIsReportedNotSilentlyDropped) {
  SearchOptions opts;
  opts.time_budget = 1ms;
  opts.count_only = true;
  auto res = enumerate_endomorphisms(catalog::tutte_coxeter_line_graph(), opts);
  EXPECT_FALSE(res.complete());
  opts.time_budget = std::chrono::duration<double>(-1.0);
  EXPECT_THROW(enumerate_endomorphisms(complete_graph(3), opts), Error);
}

TEST(Endomorphism, Examples) {
  EXPECT_FALSE(is_endomorphism(complete_graph(2), Transformation::constant(2, 0)));
  const auto p = petersen_graph();
  EXPECT_TRUE(is_endomorphism(p, Transformation::identity(10)));
  EXPECT_THROW(is_endomorphism(p, Transformation::identity(9)), Error);
}

TEST(Automorphisms, Examples) {
  EXPECT_EQ(automorphism_count(complete_graph(4)), 24u);
  EXPECT_EQ(automorphism_count(butterfly()), 8u);
  EXPECT_EQ(automorphism_count(petersen_graph()), 120u);
  EXPECT_EQ(automorphism_count(catalog::tutte_coxeter()), 1440u);
}

TEST(Isomorphism, FindsAndRejects) {
  Rng rng(6);
  const auto g = random_graph(9, 0.4, rng);
  const auto s = random_permutation(9, rng);
  Graph h(9);
  for (auto [u, v] : g.edges()) h.add_edge(s[u], s[v]);
  auto iso = find_isomorphism(g, h);
  ASSERT_TRUE(iso);
  for (auto [u, v] : g.edges()) EXPECT_TRUE(h.adjacent((*iso)[u], (*iso)[v]));
  EXPECT_FALSE(find_isomorphism(cycle_graph(6), box_product(complete_graph(2), complete_graph(3))));
}

TEST(Census, TutteCoxeterLineGraph) {
  const auto g = catalog::tutte_coxeter_line_graph();
  SearchOptions opts;
  opts.proper_only = true;
  std::map<std::size_t, std::set<std::uint64_t>> image_aut;
  std::map<std::size_t, std::set<std::string>> kernel_types;
  std::set<std::vector<point>> images;
  auto res = enumerate_endomorphisms(g, opts, [&](std::span<const point> s) {
    const Transformation f(std::vector<point>(s.begin(), s.end()));
    kernel_types[f.rank()].insert(kernel_type(f).to_string());
    if (images.insert(f.image()).second)
      image_aut[f.rank()].insert(automorphism_count(induced_subgraph(g, f.image()).graph));
    return true;
  });
  EXPECT_EQ(res.total, 103680u);
  EXPECT_EQ(res.by_rank, (std::map<std::size_t, std::uint64_t>{{3, 25920}, {5, 51840}, {7, 25920}}));
  EXPECT_EQ(image_aut[3], std::set<std::uint64_t>{6});
  EXPECT_EQ(image_aut[5], std::set<std::uint64_t>{8});
  EXPECT_EQ(image_aut[7], std::set<std::uint64_t>{8});
  EXPECT_EQ(kernel_types[3], std::set<std::string>{"(15,15,15)"});
  EXPECT_EQ(kernel_types[5], std::set<std::string>{"(15,10,10,5,5)"});
  EXPECT_EQ(kernel_types[7], std::set<std::string>{"(10,10,5,5,5,5,5)"});
}

TEST(Homomorphism, RankCountsDistinctImagesInLargerTarget) {
  Homomorphism h;
  h.images = {7, 9, 7};
  EXPECT_EQ(h.rank(), 2u);
  auto k3 = find_homomorphism(complete_graph(3), complete_graph(10), {});
  ASSERT_TRUE(k3.found);
  EXPECT_EQ(k3.found->rank(), 3u);
}
