#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "synchro/bits.hpp"
#include "synchro/error.hpp"
#include "synchro/graph.hpp"
#include "synchro/perm.hpp"
#include "synchro/random.hpp"
#include "synchro/search.hpp"
#include "synchro/transform.hpp"

namespace synchro {

/// Which unordered pairs some element of the semigroup generated by a list of
/// transformations maps to a single point. Built in one backward sweep over
/// the pair graph from the pairs that a generator collapses directly.
class PairClosure {
 public:
  explicit PairClosure(std::span<const Transformation> generators) {
    if (generators.empty()) throw Error(ErrorCode::BadInput, "no generators");
    n_ = generators.front().degree();
    for (const auto& g : generators)
      if (g.degree() != n_) throw Error(ErrorCode::DegreeMismatch, "generator degrees differ");
    const std::size_t pairs = n_ < 2 ? 0 : n_ * (n_ - 1) / 2;
    collapsible_.assign(pairs, 0);

    // Reverse edges of the pair graph in CSR form: q -> p whenever p·g = q.
    std::vector<std::uint32_t> start(pairs + 1, 0);
    std::vector<std::uint32_t> queue;
    auto each_edge = [&](auto&& fn) {
      for (point x = 0; x < n_; ++x)
        for (point y = x + 1; y < n_; ++y) {
          const auto p = static_cast<std::uint32_t>(pair_index(n_, x, y));
          for (const auto& g : generators) {
            const point a = g[x], b = g[y];
            fn(p, a, b);
          }
        }
    };
    each_edge([&](std::uint32_t p, point a, point b) {
      if (a == b) {
        if (!collapsible_[p]) {
          collapsible_[p] = 1;
          queue.push_back(p);
        }
      } else {
        ++start[pair_index(n_, a, b) + 1];
      }
    });
    for (std::size_t i = 0; i < pairs; ++i) start[i + 1] += start[i];
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    std::vector<std::uint32_t> preimages(start.back());
    each_edge([&](std::uint32_t p, point a, point b) {
      if (a != b) preimages[fill[pair_index(n_, a, b)]++] = p;
    });
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto q = queue[head];
      for (auto i = start[q]; i < start[q + 1]; ++i) {
        const auto p = preimages[i];
        if (!collapsible_[p]) {
          collapsible_[p] = 1;
          queue.push_back(p);
        }
      }
    }
  }

  std::size_t degree() const noexcept { return n_; }

  bool collapsible(point x, point y) const { return x == y || collapsible_[pair_index(n_, x, y)]; }

  bool all_collapsible() const {
    for (char c : collapsible_)
      if (!c) return false;
    return true;
  }

  std::vector<std::pair<point, point>> collapsible_pairs() const {
    std::vector<std::pair<point, point>> out;
    for (point x = 0; x < n_; ++x)
      for (point y = x + 1; y < n_; ++y)
        if (collapsible_[pair_index(n_, x, y)]) out.emplace_back(x, y);
    return out;
  }

  /// Gr(S): the non-collapsible pairs.
  Graph graph() const {
    Graph g(n_);
    for (point x = 0; x < n_; ++x)
      for (point y = x + 1; y < n_; ++y)
        if (!collapsible_[pair_index(n_, x, y)]) g.add_edge(x, y);
    return g;
  }

 private:
  std::size_t n_ = 0;
  std::vector<char> collapsible_;
};

namespace detail {

inline std::vector<Transformation> semigroup_generators(const PermGroup& g, const Transformation& f) {
  if (g.degree() != f.degree()) throw Error(ErrorCode::DegreeMismatch, "group and map degrees differ");
  std::vector<Transformation> gens;
  for (const auto& p : g.generators()) gens.push_back(p.as_transformation());
  gens.push_back(f);
  return gens;
}

}  // namespace detail

inline PairClosure pair_closure(const PermGroup& g, const Transformation& f) {
  return PairClosure(detail::semigroup_generators(g, f));
}

/// True iff <G, f> contains a constant map.
inline bool synchronizes(const PermGroup& g, const Transformation& f) {
  if (g.degree() != f.degree()) throw Error(ErrorCode::DegreeMismatch, "group and map degrees differ");
  if (f.is_permutation()) throw Error(ErrorCode::IsPermutation, "f must not be a permutation");
  return pair_closure(g, f).all_collapsible();
}

/// Gr(<G, f>).
inline Graph graph_of(const PermGroup& g, const Transformation& f) { return pair_closure(g, f).graph(); }

/// Gr(S) for the semigroup generated by an arbitrary list of maps.
inline Graph graph_of_semigroup(std::span<const Transformation> generators) {
  return PairClosure(generators).graph();
}

/// Gr'(Γ): keeps exactly the edges that lie in a clique of size ω(Γ).
inline Graph derived_graph(const Graph& g) {
  if (g.is_null()) throw Error(ErrorCode::NullGraph, "derived graph of a null graph");
  const std::size_t r = clique_number(g).size;
  Graph out(g.order());
  std::vector<bits::word> common(g.words_per_row());
  for (auto [u, v] : g.edges()) {
    auto ru = g.row(u), rv = g.row(v);
    for (std::size_t i = 0; i < common.size(); ++i) common[i] = ru[i] & rv[i];
    if (find_clique_in(g, common, r - 2)) out.add_edge(u, v);
  }
  return out;
}

/// Minimum rank in <G, f>, read off as ω(Gr(S)); ω = χ is asserted.
inline std::size_t min_rank(const PermGroup& g, const Transformation& f,
                            std::optional<std::chrono::duration<double>> budget = std::nullopt) {
  const Graph gr = graph_of(g, f);
  if (gr.is_null()) return 1;
  const auto omega = clique_number(gr, budget);
  if (omega.status != SearchStatus::Complete) throw Error(ErrorCode::TimeBudgetExceeded, "min_rank: clique search");
  const auto chi = chromatic_number(gr, budget);
  if (chi.status != SearchStatus::Complete) throw Error(ErrorCode::TimeBudgetExceeded, "min_rank: colouring search");
  if (chi.colours != omega.size)
    throw Error(ErrorCode::Internal, "clique number " + std::to_string(omega.size) + " differs from chromatic number " +
                                         std::to_string(chi.colours) + " on Gr(S)");
  return omega.size;
}

/// For a k-regular graph: every two distinct vertices share at most k-2 neighbours.
inline bool neighbourhood_bound_check(const Graph& g) {
  const auto k = g.valency();
  if (!k) throw Error(ErrorCode::NotRegular, "graph is not regular");
  for (point x = 0; x < g.order(); ++x)
    for (point y = x + 1; y < g.order(); ++y)
      if (bits::count_and(g.row(x), g.row(y)) + 2 > *k) return false;
  return true;
}

inline constexpr std::size_t default_orbit_budget = 1'000'000;

/// True iff every G-image of `section` meets each part of `partition` exactly once.
inline bool is_g_section(const PermGroup& g, const std::vector<point>& section, const Partition& partition,
                         std::size_t orbit_budget = default_orbit_budget) {
  const auto n = g.degree();
  if (section.size() != partition.size()) throw Error(ErrorCode::SizeMismatch, "section size differs from part count");
  std::vector<long> part_of(n, -1);
  for (std::size_t i = 0; i < partition.size(); ++i)
    for (point x : partition[i]) {
      if (x >= n || part_of[x] >= 0) throw Error(ErrorCode::BadInput, "not a partition of the points");
      part_of[x] = static_cast<long>(i);
    }
  for (auto p : part_of)
    if (p < 0) throw Error(ErrorCode::BadInput, "partition does not cover the points");

  auto is_section = [&](std::span<const bits::word> set) {
    std::vector<int> hits(partition.size(), 0);
    bool ok = true;
    bits::for_each(set, [&](std::size_t x) { ok = ok && ++hits[static_cast<std::size_t>(part_of[x])] == 1; });
    return ok && bits::count(set) == partition.size();
  };

  std::vector<bits::word> start(bits::words_for(n), 0);
  for (point x : section) {
    if (x >= n) throw Error(ErrorCode::BadInput, "section point out of range");
    bits::set(start, x);
  }
  if (bits::count(start) != section.size()) return false;
  std::set<std::vector<bits::word>> seen{start};
  std::vector<std::vector<bits::word>> queue{start};
  std::size_t images = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (!is_section(queue[head])) return false;
    for (const auto& gen : g.generators()) {
      if (++images > orbit_budget) throw Error(ErrorCode::OrbitBudgetExceeded, "set orbit too large");
      std::vector<bits::word> img(start.size(), 0);
      bits::for_each(queue[head], [&](std::size_t x) { bits::set(img, gen[static_cast<point>(x)]); });
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return true;
}

struct RankScanEntry {
  std::size_t rank = 0;
  Transformation map;
  bool synchronized = false;
};

struct RankScanReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<RankScanEntry> entries;

  /// rank -> (synchronized count, total count)
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> summary() const {
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : entries) {
      auto& s = out[e.rank];
      s.first += e.synchronized ? 1 : 0;
      ++s.second;
    }
    return out;
  }
  bool all_synchronized() const {
    for (const auto& e : entries)
      if (!e.synchronized) return false;
    return true;
  }
};

/// Tests `samples` uniformly random maps of each requested rank against G.
inline RankScanReport synchronization_rank_scan(const PermGroup& g, std::size_t samples,
                                                const std::set<std::size_t>& ranks, std::uint64_t seed) {
  const auto n = g.degree();
  for (auto r : ranks)
    if (r < 2 || r + 1 > n) throw Error(ErrorCode::BadParameter, "ranks must lie in 2..n-1");
  if (!is_primitive(g)) throw Error(ErrorCode::NotPrimitive, "rank scan needs a primitive group");
  RankScanReport report;
  report.seed = seed;
  report.samples = samples;
  Rng rng(seed);
  for (auto r : ranks)
    for (std::size_t i = 0; i < samples; ++i) {
      auto f = random_map_of_rank(n, r, rng);
      const bool s = synchronizes(g, f);
      report.entries.push_back({r, std::move(f), s});
    }
  return report;
}

}  // namespace synchro
