#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "synchro/catalog.hpp"
#include "synchro/search.hpp"
#include "synchro/synchro.hpp"

using namespace synchro;

TEST(Catalog, EveryEntryVerifies) {
  const auto names = catalog::names();
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  for (const auto& name : names) {
    for (const auto& c : catalog::verify(name)) EXPECT_TRUE(c.ok()) << name << " " << c.property << ": " << c.expected << " vs " << c.actual;
    EXPECT_NO_THROW(catalog::build(name)) << name;
  }
}

TEST(Catalog, LookupErrors) {
  EXPECT_THROW(catalog::find("no_such_thing"), Error);
  EXPECT_THROW(catalog::build_group("petersen"), Error);
  EXPECT_THROW(catalog::build_graph("pgammal_2_9_deg45"), Error);
}

TEST(Gf9, FieldAxioms) {
  using namespace catalog::detail;
  for (point a = 0; a < 9; ++a) {
    EXPECT_EQ(gf9_add(a, 0), a);
    EXPECT_EQ(gf9_mul(a, 1), a);
    if (a) {
      EXPECT_EQ(gf9_mul(a, gf9_inv(a)), 1u);
    }
    for (point b = 0; b < 9; ++b) {
      EXPECT_EQ(gf9_mul(a, b), gf9_mul(b, a));
      for (point c = 0; c < 9; ++c) EXPECT_EQ(gf9_mul(a, gf9_add(b, c)), gf9_add(gf9_mul(a, b), gf9_mul(a, c)));
    }
  }
  // lambda = 1 + i generates the multiplicative group.
  std::set<point> powers;
  point x = 1;
  for (int i = 0; i < 8; ++i) {
    powers.insert(x);
    x = gf9_mul(x, lambda9);
  }
  EXPECT_EQ(powers.size(), 8u);
}

TEST(Pgammal, ActionOnPairs) {
  const auto g = catalog::pgammal_2_9_deg45();
  EXPECT_EQ(g.degree(), 45u);
  EXPECT_TRUE(is_primitive(g));
  auto lengths = suborbit_lengths(g);
  std::sort(lengths.begin(), lengths.end());
  EXPECT_EQ(lengths, (std::vector<std::size_t>{1, 4, 8, 16, 16}));
}

TEST(Pgammal, CanonicalMatchingCarriesOrbitalGraphOntoLineGraph) {
  const auto og = catalog::pgammal_orbital_graph();
  const auto line = catalog::tutte_coxeter_line_graph();
  const auto& m = catalog::canonical_matching();
  ASSERT_EQ(m.size(), 45u);
  EXPECT_EQ(std::set<point>(m.begin(), m.end()).size(), 45u);
  for (auto [u, v] : og.edges()) EXPECT_TRUE(line.adjacent(m[u], m[v]));
  EXPECT_EQ(og.edge_count(), line.edge_count());
  const auto g = catalog::pgammal_2_9_on_line_graph();
  for (const auto& p : g.generators()) EXPECT_TRUE(is_automorphism(line, p.as_transformation()));
  EXPECT_EQ(&catalog::canonical_matching(), &m);
}

TEST(TutteCoxeter, Structure) {
  const auto tc = catalog::tutte_coxeter();
  EXPECT_EQ(tc.order(), 30u);
  EXPECT_EQ(tc.valency(), std::optional<std::size_t>{3});
  EXPECT_EQ(girth(tc), std::optional<std::size_t>{8});
  // Bipartite: duads 0..14 only meet synthemes 15..29.
  for (auto [u, v] : tc.edges()) EXPECT_TRUE(u < 15 && v >= 15);
  const auto line = catalog::tutte_coxeter_line_graph();
  EXPECT_EQ(line, line_graph(tc).graph);
  for (point v = 0; v < 45; ++v) {
    const auto nb = induced_subgraph(line, closed_neighbourhood(line, v)).graph;
    EXPECT_TRUE(oracle::isomorphic(nb, butterfly())) << v;
  }
}

TEST(PrimitiveGroups, ArePrimitiveWithExpectedOrders) {
  const std::map<std::string, std::size_t> orders{
      {"s3wrs2_deg9", 72},  {"s5_pairs_deg10", 120}, {"c11", 11},      {"d11", 22},
      {"agl1_11", 110},     {"pgl2_11_deg12", 1320}, {"c13", 13},      {"d13", 26},
      {"agl1_13", 156},     {"pgl2_13_deg14", 2184}};
  const auto groups = catalog::primitive_groups_9_to_28();
  for (std::size_t i = 1; i < groups.size(); ++i) EXPECT_LE(groups[i - 1].group.degree(), groups[i].group.degree());
  for (const auto& ng : groups) {
    EXPECT_GE(ng.group.degree(), 9u);
    EXPECT_LE(ng.group.degree(), 28u);
    EXPECT_TRUE(is_primitive(ng.group)) << ng.name;
    if (ng.group.degree() <= 10) {
      EXPECT_TRUE(oracle::is_primitive(ng.group)) << ng.name;
    }
    auto it = orders.find(ng.name);
    if (it != orders.end()) {
      EXPECT_EQ(oracle::group_elements(ng.group).size(), it->second) << ng.name;
    }
  }
  for (const auto& [name, order] : orders)
    EXPECT_TRUE(std::any_of(groups.begin(), groups.end(), [&](const auto& ng) { return ng.name == name; })) << name;
}

TEST(Corpus, TableRows) {
  for (const auto& cg : catalog::small_primitive_graph_corpus()) {
    EXPECT_EQ(cg.graph.order(), cg.n) << cg.name;
    EXPECT_EQ(cg.graph.valency(), std::optional<std::size_t>{cg.k}) << cg.name;
    EXPECT_EQ(clique_number(cg.graph).size, cg.chi) << cg.name;
    EXPECT_EQ(chromatic_number(cg.graph).colours, cg.chi) << cg.name;
  }
}

TEST(Corpus, TwentySevenVertexGraphsHaveRankNinePaleyImages) {
  const auto p9 = box_product(complete_graph(3), complete_graph(3));
  for (const auto& name : {"k3_box_k3_box_k3", "k3_cross_k3_cross_k3"}) {
    const auto g = catalog::build_graph(name);
    SearchOptions opts;
    opts.rank_filter = {9};
    bool found = false;
    enumerate_endomorphisms(g, opts, [&](std::span<const point> s) {
      const Transformation f(std::vector<point>(s.begin(), s.end()));
      found = oracle::isomorphic(induced_subgraph(g, f.image()).graph, p9);
      return !found;
    });
    EXPECT_TRUE(found) << name;
  }
}
