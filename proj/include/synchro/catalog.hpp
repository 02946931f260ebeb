#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "synchro/error.hpp"
#include "synchro/graph.hpp"
#include "synchro/perm.hpp"
#include "synchro/search.hpp"
#include "synchro/srg.hpp"
#include "synchro/transform.hpp"

// Named groups and graphs with fixed, reproducible vertex numbering.

namespace synchro::catalog {

namespace detail {

// GF(9) = GF(3)[i]/(i^2 + 1); element a + b*i has index a + 3b.
inline point gf9_add(point x, point y) { return static_cast<point>((x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3)); }

inline point gf9_mul(point x, point y) {
  const int a = static_cast<int>(x % 3), b = static_cast<int>(x / 3);
  const int c = static_cast<int>(y % 3), d = static_cast<int>(y / 3);
  const int re = ((a * c - b * d) % 3 + 3) % 3, im = (a * d + b * c) % 3;
  return static_cast<point>(re + 3 * im);
}

inline point gf9_inv(point x) {
  for (point y = 1; y < 9; ++y)
    if (gf9_mul(x, y) == 1) return y;
  throw Error(ErrorCode::Internal, "zero has no inverse");
}

// Points of PG(1,9): field elements 0..8 and infinity = 9.
inline constexpr point infinity9 = 9;
inline constexpr point lambda9 = 4;  // 1 + i, a generator of GF(9)^*

/// Lifts a permutation of the 10 projective points to the 45 unordered pairs.
inline Permutation on_pairs(std::size_t m, const std::vector<point>& pts) {
  std::vector<point> im(m * (m - 1) / 2);
  for (point a = 0; a < m; ++a)
    for (point b = a + 1; b < m; ++b) im[pair_index(m, a, b)] = static_cast<point>(pair_index(m, pts[a], pts[b]));
  return Permutation(std::move(im));
}

inline std::vector<point> projective_map(const std::function<point(point)>& f) {
  std::vector<point> pts(10);
  for (point x = 0; x < 10; ++x) pts[x] = f(x);
  return pts;
}

/// The 15 perfect matchings of {0..5}, each as three duad indices, in lexicographic order.
inline std::vector<std::vector<point>> synthemes() {
  std::vector<std::vector<point>> out;
  for (point b = 1; b < 6; ++b) {
    std::vector<point> rest;
    for (point x = 1; x < 6; ++x)
      if (x != b) rest.push_back(x);
    for (std::size_t j = 1; j < 4; ++j) {
      std::vector<point> others;
      for (std::size_t t = 1; t < 4; ++t)
        if (t != j) others.push_back(rest[t]);
      std::vector<point> s{static_cast<point>(pair_index(6, 0, b)), static_cast<point>(pair_index(6, rest[0], rest[j])),
                           static_cast<point>(pair_index(6, others[0], others[1]))};
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// PΓL(2,9) on the 45 unordered pairs of points of PG(1,9); the pair {a, b}
/// is point pair_index(10, a, b), with infinity as projective point 9.
inline PermGroup pgammal_2_9_deg45() {
  using namespace detail;
  auto mobius = [](point a, point b, point c, point d) {
    // x -> (a x + b) / (c x + d)
    return projective_map([=](point x) -> point {
      if (x == infinity9) return c == 0 ? infinity9 : gf9_mul(a, gf9_inv(c));
      const point num = gf9_add(gf9_mul(a, x), b), den = gf9_add(gf9_mul(c, x), d);
      return den == 0 ? infinity9 : gf9_mul(num, gf9_inv(den));
    });
  };
  std::vector<Permutation> gens;
  gens.push_back(on_pairs(10, mobius(1, 1, 0, 1)));        // x + 1
  gens.push_back(on_pairs(10, mobius(lambda9, 0, 0, 1)));  // λx
  gens.push_back(on_pairs(10, mobius(0, 1, 1, 0)));        // 1/x
  gens.push_back(on_pairs(10, projective_map([](point x) -> point {
                            return x == infinity9 ? infinity9 : gf9_mul(x, gf9_mul(x, x));
                          })));  // x^3
  return PermGroup(std::move(gens));
}

/// Incidence graph of duads (vertices 0..14, lexicographic) and synthemes
/// (vertices 15..29) of a 6-set.
inline Graph tutte_coxeter() {
  Graph g(30);
  const auto synth = detail::synthemes();
  for (std::size_t s = 0; s < synth.size(); ++s)
    for (point d : synth[s]) g.add_edge(d, static_cast<point>(15 + s));
  return g;
}

/// Vertex i is the i-th edge of tutte_coxeter() in lexicographic order.
inline Graph tutte_coxeter_line_graph() { return line_graph(tutte_coxeter()).graph; }

/// Orbital graph of the length-4 suborbit of pgammal_2_9_deg45(), in pair numbering.
inline Graph pgammal_orbital_graph() {
  const auto g = pgammal_2_9_deg45();
  for (const auto& s : suborbits(g))
    if (s.size() == 4) return orbital_graph(g, 0, s.front());
  throw Error(ErrorCode::Internal, "no suborbit of length 4");
}

/// Pair -> line-graph vertex, an isomorphism from the orbital graph onto the
/// Tutte-Coxeter line graph. First one in the search order; computed once.
inline const std::vector<point>& canonical_matching() {
  static const std::vector<point> matching = [] {
    auto iso = find_isomorphism(pgammal_orbital_graph(), tutte_coxeter_line_graph());
    if (!iso) throw Error(ErrorCode::Internal, "orbital graph is not the Tutte-Coxeter line graph");
    return *iso;
  }();
  return matching;
}

/// pgammal_2_9_deg45() acting on the vertices of tutte_coxeter_line_graph().
inline PermGroup pgammal_2_9_on_line_graph() { return pgammal_2_9_deg45().relabelled(canonical_matching()); }

/// Rank-7 witness for PΓL(2,9) of degree 45 as printed for GAP's numbering
/// of the action (1-based).
inline std::vector<point> gap_rank7_witness() {
  return {1, 1, 1, 14, 9, 14, 28, 41, 41, 1, 43, 28, 28, 41, 9, 1, 1, 25, 25, 28, 28, 25, 41,
          28, 1, 1, 9, 43, 14, 9, 43, 28, 28, 25, 41, 43, 14, 28, 43, 25, 14, 1, 28, 1, 9};
}

// ------------------------------------------------------------ primitive groups

namespace detail {

inline Permutation affine(std::size_t p, std::size_t a, std::size_t b) {
  std::vector<point> im(p);
  for (std::size_t x = 0; x < p; ++x) im[x] = static_cast<point>((a * x + b) % p);
  return Permutation(std::move(im));
}

inline std::size_t primitive_root(std::size_t p) {
  for (std::size_t g = 2; g < p; ++g) {
    std::size_t x = 1, ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  throw Error(ErrorCode::BadPrime, "no primitive root");
}

/// PGL(2,p) on the projective line: 0..p-1 and infinity = p.
inline PermGroup pgl2(std::size_t p) {
  const std::size_t g = primitive_root(p);
  auto inv = [p](std::size_t x) {
    for (std::size_t y = 1; y < p; ++y)
      if (x * y % p == 1) return y;
    return std::size_t{0};
  };
  std::vector<point> t(p + 1), m(p + 1), s(p + 1);
  for (std::size_t x = 0; x < p; ++x) {
    t[x] = static_cast<point>((x + 1) % p);
    m[x] = static_cast<point>(g * x % p);
    s[x] = static_cast<point>(x == 0 ? p : (p - inv(x)) % p);  // -1/x
  }
  t[p] = m[p] = static_cast<point>(p);
  s[p] = 0;
  return PermGroup({Permutation(t), Permutation(m), Permutation(s)});
}

/// Symmetric group S_m acting on 2-subsets.
inline PermGroup sym_on_pairs(std::size_t m) {
  std::vector<point> swap(m), cycle(m);
  for (point x = 0; x < m; ++x) {
    swap[x] = x;
    cycle[x] = static_cast<point>((x + 1) % m);
  }
  std::swap(swap[0], swap[1]);
  return PermGroup({on_pairs(m, swap), on_pairs(m, cycle)});
}

/// S_m wr S_d in product action on m^d points; (x_0..x_{d-1}) -> sum x_i m^(d-1-i).
inline PermGroup product_action(std::size_t m, std::size_t d) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < d; ++i) n *= m;
  auto digits = [&](std::size_t v) {
    std::vector<std::size_t> out(d);
    for (std::size_t i = d; i-- > 0;) {
      out[i] = v % m;
      v /= m;
    }
    return out;
  };
  auto number = [&](const std::vector<std::size_t>& ds) {
    std::size_t v = 0;
    for (auto x : ds) v = v * m + x;
    return static_cast<point>(v);
  };
  auto make = [&](auto&& fn) {
    std::vector<point> im(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto ds = digits(v);
      fn(ds);
      im[v] = number(ds);
    }
    return Permutation(std::move(im));
  };
  std::vector<Permutation> gens;
  gens.push_back(make([](auto& ds) { std::swap(ds[0], ds[1]); }));
  if (d > 2) gens.push_back(make([&](auto& ds) { std::rotate(ds.begin(), ds.begin() + 1, ds.end()); }));
  gens.push_back(make([](auto& ds) {
    if (ds[0] < 2) ds[0] ^= 1;
  }));
  gens.push_back(make([m](auto& ds) { ds[0] = (ds[0] + 1) % m; }));
  return PermGroup(std::move(gens));
}

}  // namespace detail

struct NamedGroup {
  std::string name;
  PermGroup group;
};

/// Primitive groups of degree 9..28 used for property testing.
inline std::vector<NamedGroup> primitive_groups_9_to_28() {
  std::vector<NamedGroup> out;
  out.push_back({"s3wrs2_deg9", detail::product_action(3, 2)});
  out.push_back({"s5_pairs_deg10", detail::sym_on_pairs(5)});
  for (std::size_t p : {11, 13, 17, 19, 23}) {
    const auto g = detail::primitive_root(p);
    const auto s = std::to_string(p);
    out.push_back({"c" + s, PermGroup({detail::affine(p, 1, 1)})});
    out.push_back({"d" + s, PermGroup({detail::affine(p, 1, 1), detail::affine(p, p - 1, 0)})});
    out.push_back({"agl1_" + s, PermGroup({detail::affine(p, 1, 1), detail::affine(p, g, 0)})});
    out.push_back({"pgl2_" + s + "_deg" + std::to_string(p + 1), detail::pgl2(p)});
  }
  out.push_back({"s6_pairs_deg15", detail::sym_on_pairs(6)});
  out.push_back({"s4wrs2_deg16", detail::product_action(4, 2)});
  out.push_back({"s7_pairs_deg21", detail::sym_on_pairs(7)});
  out.push_back({"s3wrs3_deg27", detail::product_action(3, 3)});
  out.push_back({"s8_pairs_deg28", detail::sym_on_pairs(8)});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.group.degree() != b.group.degree() ? a.group.degree() < b.group.degree() : a.name < b.name;
  });
  return out;
}

// ------------------------------------------------------------------ graph corpus

struct CorpusGraph {
  std::string name;
  Graph graph;
  std::size_t n = 0, k = 0, chi = 0;
};

/// Primitive graphs with ω = χ and their (n, valency, χ).
inline std::vector<CorpusGraph> small_primitive_graph_corpus() {
  const auto k3 = complete_graph(3), k4 = complete_graph(4);
  const auto k3k3 = box_product(k3, k3);
  return {
      {"k3_box_k3", k3k3, 9, 4, 3},
      {"k4_box_k4", box_product(k4, k4), 16, 6, 4},
      {"k3_box_k3_box_k3", box_product(k3k3, k3), 27, 6, 3},
      {"k3_cross_k3_cross_k3", direct_product(direct_product(k3, k3), k3), 27, 8, 3},
      {"t8", triangular_graph(8), 28, 12, 7},
  };
}

// ---------------------------------------------------------------------- registry

struct PropertyCheck {
  std::string property;
  std::string expected;
  std::string actual;
  bool ok() const { return expected == actual; }
};

using Object = std::variant<Graph, PermGroup>;

struct Entry {
  std::string name;
  std::string description;
  std::function<Object()> build;
  std::function<std::vector<PropertyCheck>(const Object&)> certify;
};

namespace detail {

inline std::string yes(bool b) { return b ? "true" : "false"; }

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "none"; }

inline std::vector<PropertyCheck> graph_basics(const Graph& g, std::size_t n, std::optional<std::size_t> k,
                                               std::optional<std::size_t> omega, std::optional<std::size_t> chi) {
  std::vector<PropertyCheck> out;
  out.push_back({"order", std::to_string(n), std::to_string(g.order())});
  out.push_back({"valency", opt(k), opt(g.valency())});
  if (omega) out.push_back({"clique_number", std::to_string(*omega), std::to_string(clique_number(g).size)});
  if (chi) out.push_back({"chromatic_number", std::to_string(*chi), std::to_string(chromatic_number(g).colours)});
  return out;
}

inline std::vector<PropertyCheck> srg_check(const Graph& g, const std::string& expected) {
  const auto p = srg_params(g);
  const std::string actual =
      p ? std::to_string(p->n) + "," + std::to_string(p->k) + "," + std::to_string(p->lambda) + "," + std::to_string(p->mu)
        : "none";
  return {{"srg_params", expected, actual}};
}

/// Every closed neighbourhood induces a butterfly (degree sequence 4,2,2,2,2 with 6 edges).
inline bool butterfly_neighbourhoods(const Graph& g) {
  for (point v = 0; v < g.order(); ++v) {
    const auto sub = induced_subgraph(g, closed_neighbourhood(g, v)).graph;
    auto deg = sub.degrees();
    std::sort(deg.begin(), deg.end());
    if (sub.order() != 5 || sub.edge_count() != 6 || deg != std::vector<std::size_t>{2, 2, 2, 2, 4}) return false;
  }
  return true;
}

/// An independent set of size 15 whose complement induces C10 + C20, taken
/// from the colour classes of the proper 3-colourings.
inline bool has_c10_c20_split(const Graph& g) {
  bool found = false;
  enumerate_homomorphisms(g, complete_graph(3), {}, [&](std::span<const point> colour) {
    for (point c = 0; c < 3 && !found; ++c) {
      std::vector<point> rest;
      std::size_t size = 0;
      for (point v = 0; v < g.order(); ++v) {
        if (colour[v] == c) ++size;
        else rest.push_back(v);
      }
      if (size != 15) continue;
      const auto sub = induced_subgraph(g, rest).graph;
      if (sub.valency() != std::optional<std::size_t>{2}) continue;
      std::vector<std::size_t> sizes;
      for (const auto& comp : connected_components(sub)) sizes.push_back(comp.size());
      std::sort(sizes.begin(), sizes.end());
      found = sizes == std::vector<std::size_t>{10, 20};
    }
    return !found;
  });
  return found;
}

inline std::vector<PropertyCheck> group_basics(const PermGroup& g, std::size_t degree) {
  return {{"degree", std::to_string(degree), std::to_string(g.degree())},
          {"transitive", "true", yes(is_transitive(g))},
          {"primitive", "true", yes(is_primitive(g))}};
}

inline void append(std::vector<PropertyCheck>& a, std::vector<PropertyCheck> b) {
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
}

}  // namespace detail

inline const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = [] {
    using detail::append;
    std::vector<Entry> out;
    auto graph_entry = [&](std::string name, std::string description, std::function<Graph()> build,
                           std::function<std::vector<PropertyCheck>(const Graph&)> certify) {
      out.push_back({std::move(name), std::move(description), [build] { return Object(build()); },
                     [certify](const Object& o) { return certify(std::get<Graph>(o)); }});
    };
    auto group_entry = [&](std::string name, std::string description, std::function<PermGroup()> build,
                           std::function<std::vector<PropertyCheck>(const PermGroup&)> certify) {
      out.push_back({std::move(name), std::move(description), [build] { return Object(build()); },
                     [certify](const Object& o) { return certify(std::get<PermGroup>(o)); }});
    };

    group_entry("pgammal_2_9_deg45", "PΓL(2,9) on pairs of PG(1,9), numbered as tutte_coxeter_line vertices",
                pgammal_2_9_on_line_graph, [](const PermGroup& g) {
                  auto c = detail::group_basics(g, 45);
                  const auto lengths = suborbit_lengths(g);
                  c.push_back({"has_suborbit_4", "true", detail::yes(std::count(lengths.begin(), lengths.end(), 4) > 0)});
                  const auto line = tutte_coxeter_line_graph();
                  bool preserves = true;
                  for (const auto& p : g.generators()) preserves = preserves && is_automorphism(line, p.as_transformation());
                  c.push_back({"automorphisms_of_tutte_coxeter_line", "true", detail::yes(preserves)});
                  return c;
                });
    group_entry("pgammal_2_9_pairs", "PΓL(2,9) on pairs of PG(1,9), pair {a,b} numbered lexicographically",
                pgammal_2_9_deg45, [](const PermGroup& g) {
                  auto c = detail::group_basics(g, 45);
                  c.push_back({"suborbit_lengths", "1,4,8,16,16", detail::join(suborbit_lengths(g))});
                  return c;
                });
    for (auto& ng : primitive_groups_9_to_28()) {
      const auto degree = ng.group.degree();
      group_entry(ng.name, "primitive group of degree " + std::to_string(degree), [g = ng.group] { return g; },
                  [degree](const PermGroup& g) { return detail::group_basics(g, degree); });
    }

    graph_entry("tutte_coxeter", "duad/syntheme incidence graph of a 6-set", tutte_coxeter, [](const Graph& g) {
      auto c = detail::graph_basics(g, 30, 3, std::nullopt, std::nullopt);
      c.push_back({"girth", "8", detail::opt(girth(g))});
      c.push_back({"automorphism_count", "1440", std::to_string(automorphism_count(g))});
      return c;
    });
    graph_entry("tutte_coxeter_line", "line graph of the Tutte-Coxeter graph", tutte_coxeter_line_graph,
                [](const Graph& g) {
                  auto c = detail::graph_basics(g, 45, 4, 3, 3);
                  c.push_back({"butterfly_neighbourhoods", "true", detail::yes(detail::butterfly_neighbourhoods(g))});
                  c.push_back({"independent_15_with_c10_c20_complement", "true", detail::yes(detail::has_c10_c20_split(g))});
                  return c;
                });
    graph_entry("pgammal_orbital_graph", "orbital graph of the length-4 suborbit, pair numbering",
                pgammal_orbital_graph, [](const Graph& g) {
                  auto c = detail::graph_basics(g, 45, 4, 3, 3);
                  c.push_back({"isomorphic_to_tutte_coxeter_line", "true",
                               detail::yes(find_isomorphism(g, tutte_coxeter_line_graph()).has_value())});
                  return c;
                });
    for (auto& cg : small_primitive_graph_corpus()) {
      graph_entry(cg.name, "primitive graph with clique number equal to chromatic number", [g = cg.graph] { return g; },
                  [cg](const Graph& g) { return detail::graph_basics(g, cg.n, cg.k, cg.chi, cg.chi); });
    }
    graph_entry("petersen", "Petersen graph", petersen_graph, [](const Graph& g) {
      auto c = detail::graph_basics(g, 10, 3, 2, 3);
      detail::append(c, detail::srg_check(g, "10,3,0,1"));
      return c;
    });
    graph_entry("c5", "5-cycle", [] { return cycle_graph(5); }, [](const Graph& g) {
      auto c = detail::graph_basics(g, 5, 2, 2, 3);
      detail::append(c, detail::srg_check(g, "5,2,0,1"));
      return c;
    });
    graph_entry("t6", "triangular graph T(6)", [] { return triangular_graph(6); }, [](const Graph& g) {
      auto c = detail::graph_basics(g, 15, 8, 5, 5);
      detail::append(c, detail::srg_check(g, "15,8,4,4"));
      return c;
    });
    graph_entry("k4_box_k4_complement", "complement of the 4x4 rook's graph",
                [] { return complement(box_product(complete_graph(4), complete_graph(4))); }, [](const Graph& g) {
                  auto c = detail::graph_basics(g, 16, 9, 4, 4);
                  detail::append(c, detail::srg_check(g, "16,9,4,6"));
                  return c;
                });
    graph_entry("butterfly", "two triangles sharing a vertex", butterfly,
                [](const Graph& g) { return detail::graph_basics(g, 5, std::nullopt, 3, 3); });
    return out;
  }();
  return all;
}

inline const Entry& find(const std::string& name) {
  for (const auto& e : entries())
    if (e.name == name) return e;
  throw Error(ErrorCode::BadInput, "unknown catalog entry '" + name + "'");
}

inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.push_back(e.name);
  return out;
}

inline std::vector<PropertyCheck> verify(const std::string& name) {
  const auto& e = find(name);
  return e.certify(e.build());
}

/// Builds an entry and re-verifies its certified properties; throws on any mismatch.
inline Object build(const std::string& name) {
  const auto& e = find(name);
  auto obj = e.build();
  for (const auto& c : e.certify(obj))
    if (!c.ok())
      throw Error(ErrorCode::Internal, name + ": certified " + c.property + " = " + c.expected + ", computed " + c.actual);
  return obj;
}

inline Graph build_graph(const std::string& name) {
  auto obj = build(name);
  if (!std::holds_alternative<Graph>(obj)) throw Error(ErrorCode::BadInput, name + " is a group, not a graph");
  return std::get<Graph>(std::move(obj));
}

inline PermGroup build_group(const std::string& name) {
  auto obj = build(name);
  if (!std::holds_alternative<PermGroup>(obj)) throw Error(ErrorCode::BadInput, name + " is a graph, not a group");
  return std::get<PermGroup>(std::move(obj));
}

}  // namespace synchro::catalog
