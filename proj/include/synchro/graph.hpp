#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "synchro/bits.hpp"
#include "synchro/error.hpp"

namespace synchro {

/// Simple undirected graph on {0..n-1}. Adjacency is stored as one packed
/// bitset row per vertex, so adjacency tests are O(1) and neighbourhood
/// intersections are word-parallel.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), words_(bits::words_for(n)), rows_(n * bits::words_for(n), 0) {}

  std::size_t order() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool adjacent(point u, point v) const noexcept { return bits::test(row(u), v); }

  void add_edge(point u, point v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw Error(ErrorCode::BadInput, "loops are not allowed");
    bits::set(mutable_row(u), v);
    bits::set(mutable_row(v), u);
  }

  void remove_edge(point u, point v) {
    check_vertex(u);
    check_vertex(v);
    bits::reset(mutable_row(u), v);
    bits::reset(mutable_row(v), u);
  }

  std::span<const bits::word> row(point v) const noexcept {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }

  std::size_t degree(point v) const noexcept { return bits::count(row(v)); }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> out(n_);
    for (point v = 0; v < n_; ++v) out[v] = degree(v);
    return out;
  }

  /// Common valency if the graph is regular.
  std::optional<std::size_t> valency() const {
    if (n_ == 0) return 0;
    const std::size_t k = degree(0);
    for (point v = 1; v < n_; ++v)
      if (degree(v) != k) return std::nullopt;
    return k;
  }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (point v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
  }

  bool is_null() const noexcept { return bits::none(rows_); }

  std::vector<point> neighbours(point v) const { return bits::to_points(row(v)); }

  /// Edges (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<point, point>> edges() const {
    std::vector<std::pair<point, point>> out;
    for (point u = 0; u < n_; ++u)
      bits::for_each(row(u), [&](std::size_t v) {
        if (v > u) out.emplace_back(u, static_cast<point>(v));
      });
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::span<bits::word> mutable_row(point v) noexcept {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  void check_vertex(point v) const {
    if (v >= n_) throw Error(ErrorCode::BadInput, "vertex " + std::to_string(v) + " out of range");
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<bits::word> rows_;
};

inline Graph null_graph(std::size_t n) { return Graph(n); }

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (point u = 0; u < n; ++u)
    for (point v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::BadParameter, "cycle needs at least 3 vertices");
  Graph g(n);
  for (point v = 0; v < n; ++v) g.add_edge(v, static_cast<point>((v + 1) % n));
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (point v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

/// Outer 5-cycle 0..4, spokes i ~ i+5, inner pentagram on 5..9.
inline Graph petersen_graph() {
  Graph g(10);
  for (point i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

inline Graph complement(const Graph& g) {
  const auto n = g.order();
  Graph out(n);
  for (point u = 0; u < n; ++u)
    for (point v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) out.add_edge(u, v);
  return out;
}

/// Cartesian product. Vertex (x, y) has index x * |Y| + y.
inline Graph box_product(const Graph& x, const Graph& y) {
  const auto nx = x.order();
  const auto ny = y.order();
  Graph out(nx * ny);
  auto idx = [ny](std::size_t a, std::size_t b) { return static_cast<point>(a * ny + b); };
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      for (point b2 : y.neighbours(static_cast<point>(b)))
        if (b2 > b) out.add_edge(idx(a, b), idx(a, b2));
      for (point a2 : x.neighbours(static_cast<point>(a)))
        if (a2 > a) out.add_edge(idx(a, b), idx(a2, b));
    }
  return out;
}

/// Direct (tensor) product: adjacent iff adjacent in both coordinates.
/// Vertex (x, y) has index x * |Y| + y.
inline Graph direct_product(const Graph& x, const Graph& y) {
  const auto ny = y.order();
  Graph out(x.order() * ny);
  for (auto [a, a2] : x.edges())
    for (auto [b, b2] : y.edges()) {
      out.add_edge(static_cast<point>(a * ny + b), static_cast<point>(a2 * ny + b2));
      out.add_edge(static_cast<point>(a * ny + b2), static_cast<point>(a2 * ny + b));
    }
  return out;
}

struct LineGraph {
  Graph graph;
  /// Vertex i of `graph` is the edge edge_of_vertex[i] of the source graph.
  std::vector<std::pair<point, point>> edge_of_vertex;
};

inline LineGraph line_graph(const Graph& g) {
  auto es = g.edges();
  if (es.empty()) throw Error(ErrorCode::EmptyGraph, "line graph of an edgeless graph");
  Graph out(es.size());
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const auto [a, b] = es[i];
      const auto [c, d] = es[j];
      if (a == c || a == d || b == c || b == d) out.add_edge(static_cast<point>(i), static_cast<point>(j));
    }
  return {std::move(out), std::move(es)};
}

/// Index of the 2-subset {a, b} (a < b) of {0..m-1} in lexicographic order.
constexpr std::size_t pair_index(std::size_t m, std::size_t a, std::size_t b) noexcept {
  if (a > b) std::swap(a, b);
  return a * (2 * m - a - 1) / 2 + (b - a - 1);
}

/// T(m) = L(K_m); vertex pair_index(m, x, y) is the 2-subset {x, y}.
inline Graph triangular_graph(std::size_t m) {
  if (m < 3) throw Error(ErrorCode::BadParameter, "triangular graph needs m >= 3");
  return line_graph(complete_graph(m)).graph;
}

struct InducedSubgraph {
  Graph graph;
  /// Vertex i of `graph` is vertices[i] of the parent graph.
  std::vector<point> vertices;
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::vector<point> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (point v : vertices)
    if (v >= g.order()) throw Error(ErrorCode::BadInput, "vertex out of range");
  Graph out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.adjacent(vertices[i], vertices[j])) out.add_edge(static_cast<point>(i), static_cast<point>(j));
  return {std::move(out), std::move(vertices)};
}

/// Two triangles sharing vertex A, labelled A=0, B=1, C=2, D=3, E=4.
inline Graph butterfly() {
  Graph g(5);
  for (point v = 1; v < 5; ++v) g.add_edge(0, v);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  return g;
}

inline constexpr std::size_t max_cayley_dimension = 13;

/// Cayley graph on GF(2)^dim; vertex index is the integer value of the vector.
inline Graph cayley_gf2(std::size_t dim, std::vector<std::uint64_t> connection_set) {
  if (dim > max_cayley_dimension) throw Error(ErrorCode::TooLarge, "dimension " + std::to_string(dim));
  const std::uint64_t n = std::uint64_t{1} << dim;
  std::sort(connection_set.begin(), connection_set.end());
  connection_set.erase(std::unique(connection_set.begin(), connection_set.end()), connection_set.end());
  for (auto s : connection_set) {
    if (s == 0) throw Error(ErrorCode::ZeroInConnectionSet, "connection set contains zero");
    if (s >= n) throw Error(ErrorCode::BadInput, "connection vector outside GF(2)^dim");
  }
  Graph g(n);
  for (std::uint64_t v = 0; v < n; ++v)
    for (auto s : connection_set)
      if ((v ^ s) > v) g.add_edge(static_cast<point>(v), static_cast<point>(v ^ s));
  return g;
}

inline std::vector<point> neighbourhood(const Graph& g, point v) { return g.neighbours(v); }

inline std::vector<point> closed_neighbourhood(const Graph& g, point v) {
  auto out = g.neighbours(v);
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

/// Connected components, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<point>> connected_components(const Graph& g) {
  const auto n = g.order();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<point>> out;
  for (point s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<point> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (point w : g.neighbours(comp[i]))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Length of a shortest cycle; nullopt for forests.
inline std::optional<std::size_t> girth(const Graph& g) {
  const auto n = g.order();
  std::optional<std::size_t> best;
  for (point s = 0; s < n; ++s) {
    std::vector<long> dist(n, -1), parent(n, -1);
    std::queue<point> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const point u = q.front();
      q.pop();
      for (point w : g.neighbours(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (parent[u] != static_cast<long>(w)) {
          const auto len = static_cast<std::size_t>(dist[u] + dist[w] + 1);
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

/// True iff no two distinct vertices have the same open neighbourhood
/// (a necessary condition for a non-trivial graph with primitive automorphisms).
inline bool has_distinct_neighbourhoods(const Graph& g) {
  const auto n = g.order();
  for (point u = 0; u < n; ++u)
    for (point v = u + 1; v < n; ++v)
      if (std::equal(g.row(u).begin(), g.row(u).end(), g.row(v).begin())) return false;
  return true;
}

}  // namespace synchro
