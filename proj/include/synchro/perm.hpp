#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "synchro/error.hpp"
#include "synchro/graph.hpp"
#include "synchro/transform.hpp"

namespace synchro {

/// Bijection on {0..n-1}, acting on the right like Transformation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<point> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (point y : images_) {
      if (y >= images_.size() || seen[y]) throw Error(ErrorCode::BadInput, "not a bijection");
      seen[y] = 1;
    }
  }
  Permutation(std::initializer_list<point> images) : Permutation(std::vector<point>(images)) {}

  static Permutation identity(std::size_t n) {
    std::vector<point> im(n);
    std::iota(im.begin(), im.end(), point{0});
    return Permutation(std::move(im));
  }

  /// Builds a permutation of degree n from 0-based cycles.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<point>>& cycles) {
    std::vector<point> im(n);
    std::iota(im.begin(), im.end(), point{0});
    std::vector<char> used(n, 0);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= n || used[c[i]]) throw Error(ErrorCode::BadInput, "bad cycle");
        used[c[i]] = 1;
        im[c[i]] = c[(i + 1) % c.size()];
      }
    return Permutation(std::move(im));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  point operator[](point x) const noexcept { return images_[x]; }
  const std::vector<point>& images() const noexcept { return images_; }

  Permutation inverse() const {
    std::vector<point> inv(images_.size());
    for (point x = 0; x < images_.size(); ++x) inv[images_[x]] = x;
    return Permutation(std::move(inv));
  }

  bool is_identity() const {
    for (point x = 0; x < images_.size(); ++x)
      if (images_[x] != x) return false;
    return true;
  }

  Transformation as_transformation() const { return Transformation(images_); }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<point> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw Error(ErrorCode::DegreeMismatch, "compose: degrees differ");
  std::vector<point> out(p.degree());
  for (point x = 0; x < p.degree(); ++x) out[x] = q[p[x]];
  return Permutation(std::move(out));
}

/// Permutation group given by a finite, non-empty generating list.
class PermGroup {
 public:
  PermGroup() = default;
  explicit PermGroup(std::vector<Permutation> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw Error(ErrorCode::BadInput, "group needs at least one generator");
    for (const auto& g : gens_)
      if (g.degree() != gens_.front().degree()) throw Error(ErrorCode::DegreeMismatch, "generator degrees differ");
  }

  std::size_t degree() const noexcept { return gens_.empty() ? 0 : gens_.front().degree(); }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }

  /// Same group with points renamed: point x becomes relabel[x].
  PermGroup relabelled(const std::vector<point>& relabel) const {
    std::vector<Permutation> out;
    for (const auto& g : gens_) {
      std::vector<point> im(degree());
      for (point x = 0; x < degree(); ++x) im[relabel[x]] = relabel[g[x]];
      out.emplace_back(std::move(im));
    }
    return PermGroup(std::move(out));
  }

 private:
  std::vector<Permutation> gens_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// Merges the classes; the smaller root survives. Returns false if already merged.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline Partition partition_from_roots(std::size_t n, UnionFind& uf) {
  std::map<std::size_t, std::vector<point>> by_root;
  for (point x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x);
  Partition out;
  for (auto& [root, part] : by_root) out.push_back(std::move(part));
  std::sort(out.begin(), out.end());
  return out;
}

/// Finest G-invariant partition joining a and b (Atkinson's algorithm).
inline Partition minimal_block_system(const PermGroup& g, point a, point b) {
  const auto n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<point, point>> queue;
  if (uf.unite(a, b)) queue.emplace_back(a, b);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [x, y] = queue[head];
    for (const auto& gen : g.generators()) {
      const point gx = gen[x], gy = gen[y];
      if (uf.unite(gx, gy)) queue.emplace_back(gx, gy);
    }
  }
  return partition_from_roots(n, uf);
}

}  // namespace detail

inline std::vector<point> orbit(const PermGroup& g, point x) {
  if (x >= g.degree()) throw Error(ErrorCode::BadInput, "point out of range");
  std::vector<char> seen(g.degree(), 0);
  std::vector<point> out{x};
  seen[x] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& gen : g.generators()) {
      const point y = gen[out[i]];
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// All orbits, ordered by smallest point.
inline Partition orbits(const PermGroup& g) {
  detail::UnionFind uf(g.degree());
  for (const auto& gen : g.generators())
    for (point x = 0; x < g.degree(); ++x) uf.unite(x, gen[x]);
  return detail::partition_from_roots(g.degree(), uf);
}

inline bool is_transitive(const PermGroup& g) { return g.degree() >= 1 && orbit(g, 0).size() == g.degree(); }

inline Partition block_system(const PermGroup& g, point a, point b) {
  if (a >= g.degree() || b >= g.degree() || a == b) throw Error(ErrorCode::BadInput, "seed points must be distinct");
  if (!is_transitive(g)) throw Error(ErrorCode::NotTransitive, "block_system needs a transitive group");
  return detail::minimal_block_system(g, a, b);
}

/// Transitive and every minimal block through (0, x) is everything. Degree 1
/// and transitive degree 2 are primitive by convention.
inline bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g)) return false;
  for (point x = 1; x < g.degree(); ++x)
    if (detail::minimal_block_system(g, 0, x).size() != 1) return false;
  return true;
}

namespace detail {

/// Union-find over ordered pairs (x, y) -> x * n + y joined under the generators.
inline UnionFind pair_orbits(const PermGroup& g) {
  const std::size_t n = g.degree();
  UnionFind uf(n * n);
  for (const auto& gen : g.generators())
    for (point x = 0; x < n; ++x)
      for (point y = 0; y < n; ++y) uf.unite(std::size_t{x} * n + y, std::size_t{gen[x]} * n + gen[y]);
  return uf;
}

}  // namespace detail

/// Orbits of the stabiliser of 0, as lists of points ordered by smallest point.
inline Partition suborbits(const PermGroup& g) {
  if (!is_transitive(g)) throw Error(ErrorCode::NotTransitive, "suborbits need a transitive group");
  const std::size_t n = g.degree();
  auto uf = detail::pair_orbits(g);
  std::map<std::size_t, std::vector<point>> by_root;
  for (point y = 0; y < n; ++y) by_root[uf.find(y)].push_back(y);
  Partition out;
  for (auto& [root, part] : by_root) out.push_back(std::move(part));
  std::sort(out.begin(), out.end());
  return out;
}

/// Suborbit lengths in ascending order; their count is the permutation rank.
inline std::vector<std::size_t> suborbit_lengths(const PermGroup& g) {
  std::vector<std::size_t> out;
  for (const auto& s : suborbits(g)) out.push_back(s.size());
  std::sort(out.begin(), out.end());
  return out;
}

/// Graph whose edges are the G-orbit of the unordered pair {a, b}.
inline Graph orbital_graph(const PermGroup& g, point a, point b) {
  if (a >= g.degree() || b >= g.degree() || a == b) throw Error(ErrorCode::BadInput, "pair points must be distinct");
  if (!is_transitive(g)) throw Error(ErrorCode::NotTransitive, "orbital_graph needs a transitive group");
  Graph out(g.degree());
  std::vector<std::pair<point, point>> queue{{a, b}};
  out.add_edge(a, b);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& gen : g.generators()) {
      const point x = gen[queue[head].first], y = gen[queue[head].second];
      if (!out.adjacent(x, y)) {
        out.add_edge(x, y);
        queue.emplace_back(x, y);
      }
    }
  return out;
}

/// True iff every generator maps each part onto a part.
inline bool is_invariant_partition(const PermGroup& g, const Partition& p) {
  std::vector<std::size_t> part_of(g.degree());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (point x : p[i]) part_of[x] = i;
  for (const auto& gen : g.generators())
    for (const auto& part : p)
      for (point x : part)
        if (part_of[gen[x]] != part_of[gen[part.front()]]) return false;
  return true;
}

}  // namespace synchro
