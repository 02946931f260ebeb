#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <thread>
#include <vector>

#include "synchro/bits.hpp"
#include "synchro/error.hpp"
#include "synchro/graph.hpp"
#include "synchro/transform.hpp"

namespace synchro {

enum class SearchStatus { Complete, BudgetExceeded };

namespace detail {

class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::optional<std::chrono::duration<double>> budget) {
    if (budget) {
      if (budget->count() <= 0) throw Error(ErrorCode::BadParameter, "time budget must be positive");
      end_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(*budget);
    }
  }
  bool expired() const { return end_ && std::chrono::steady_clock::now() >= *end_; }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Maximum clique

struct CliqueResult {
  std::size_t size = 0;
  std::vector<point> witness;
  SearchStatus status = SearchStatus::Complete;
};

namespace detail {

/// Branch and bound with greedy-colouring bounds (Tomita-style) over bitsets.
/// `stop_at` ends the search as soon as a clique of that size is found.
class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, const Deadline& deadline, std::size_t stop_at)
      : g_(g), words_(g.words_per_row()), deadline_(deadline), stop_at_(stop_at) {}

  CliqueResult run(std::span<const bits::word> candidates) {
    std::vector<bits::word> p(candidates.begin(), candidates.end());
    std::vector<point> current;
    expand(current, p);
    result_.status = aborted_ ? SearchStatus::BudgetExceeded : SearchStatus::Complete;
    result_.size = result_.witness.size();
    return result_;
  }

 private:
  bool done() const { return aborted_ || (stop_at_ && result_.witness.size() >= stop_at_); }

  void expand(std::vector<point>& current, std::vector<bits::word>& p) {
    if ((++nodes_ & 1023) == 0 && deadline_.expired()) aborted_ = true;
    if (done()) return;
    // Greedy colouring of p gives an order with colour bounds.
    std::vector<point> order;
    std::vector<std::size_t> bound;
    {
      std::vector<bits::word> uncoloured(p);
      std::size_t colour = 0;
      while (!bits::none(uncoloured)) {
        ++colour;
        std::vector<bits::word> q(uncoloured);
        while (!bits::none(q)) {
          point v = 0;
          for (std::size_t w = 0; w < q.size(); ++w)
            if (q[w]) {
              v = static_cast<point>(w * bits::word_bits + static_cast<std::size_t>(std::countr_zero(q[w])));
              break;
            }
          bits::reset(uncoloured, v);
          bits::reset(q, v);
          auto row = g_.row(v);
          for (std::size_t w = 0; w < q.size(); ++w) q[w] &= ~row[w];
          order.push_back(v);
          bound.push_back(colour);
        }
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= result_.witness.size()) return;
      const point v = order[i];
      current.push_back(v);
      std::vector<bits::word> np(words_);
      auto row = g_.row(v);
      for (std::size_t w = 0; w < words_; ++w) np[w] = p[w] & row[w];
      if (bits::none(np)) {
        if (current.size() > result_.witness.size()) result_.witness = current;
      } else {
        expand(current, np);
      }
      current.pop_back();
      bits::reset(p, v);
      if (done()) return;
    }
  }

  const Graph& g_;
  std::size_t words_;
  const Deadline& deadline_;
  std::size_t stop_at_;
  CliqueResult result_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

inline std::vector<bits::word> all_vertices(std::size_t n) {
  std::vector<bits::word> out(bits::words_for(n), 0);
  for (std::size_t v = 0; v < n; ++v) bits::set(out, v);
  return out;
}

}  // namespace detail

inline CliqueResult clique_number(const Graph& g,
                                  std::optional<std::chrono::duration<double>> budget = std::nullopt) {
  detail::Deadline deadline(budget);
  auto all = detail::all_vertices(g.order());
  auto res = detail::CliqueSearch(g, deadline, 0).run(all);
  std::sort(res.witness.begin(), res.witness.end());
  return res;
}

/// A clique of exactly `size` vertices inside `candidates`, if one exists.
inline std::optional<std::vector<point>> find_clique_in(const Graph& g, std::span<const bits::word> candidates,
                                                        std::size_t size) {
  if (size == 0) return std::vector<point>{};
  detail::Deadline deadline;
  auto res = detail::CliqueSearch(g, deadline, size).run(candidates);
  if (res.size < size) return std::nullopt;
  res.witness.resize(size);
  std::sort(res.witness.begin(), res.witness.end());
  return res.witness;
}

inline bool is_clique(const Graph& g, std::span<const point> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.adjacent(vs[i], vs[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Chromatic number

struct ColouringResult {
  std::size_t colours = 0;
  std::vector<std::size_t> colouring;
  SearchStatus status = SearchStatus::Complete;
};

inline bool is_proper_colouring(const Graph& g, std::span<const std::size_t> colouring) {
  if (colouring.size() != g.order()) return false;
  for (auto [u, v] : g.edges())
    if (colouring[u] == colouring[v]) return false;
  return true;
}

namespace detail {

/// DSATUR-ordered backtracking k-colouring; vertices in `fixed` are
/// precoloured 0, 1, 2, ... (a clique, so this breaks colour symmetry).
class ColouringSearch {
 public:
  ColouringSearch(const Graph& g, std::size_t k, const Deadline& deadline)
      : g_(g), n_(g.order()), k_(k), deadline_(deadline), colour_(g.order(), npos),
        forbidden_(g.order(), std::vector<std::uint32_t>(k, 0)) {}

  std::optional<std::vector<std::size_t>> run(std::span<const point> fixed) {
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      if (i >= k_) return std::nullopt;
      if (forbidden_[fixed[i]][i]) return std::nullopt;
      assign(fixed[i], i);
    }
    std::size_t used = std::min(fixed.size(), k_);
    if (solve(fixed.size(), used)) return colour_;
    return std::nullopt;
  }

  bool aborted() const { return aborted_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void assign(point v, std::size_t c) {
    colour_[v] = c;
    for (point w : g_.neighbours(v)) ++forbidden_[w][c];
  }
  void unassign(point v) {
    const auto c = colour_[v];
    for (point w : g_.neighbours(v)) --forbidden_[w][c];
    colour_[v] = npos;
  }
  std::size_t saturation(point v) const {
    std::size_t s = 0;
    for (auto f : forbidden_[v]) s += f ? 1 : 0;
    return s;
  }

  bool solve(std::size_t coloured, std::size_t used) {
    if (coloured == n_) return true;
    if ((++nodes_ & 1023) == 0 && deadline_.expired()) aborted_ = true;
    if (aborted_) return false;
    point best = 0;
    long best_sat = -1;
    std::size_t best_deg = 0;
    for (point v = 0; v < n_; ++v) {
      if (colour_[v] != npos) continue;
      const auto sat = static_cast<long>(saturation(v));
      const auto deg = g_.degree(v);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    if (static_cast<std::size_t>(best_sat) >= k_) return false;
    const std::size_t limit = std::min(k_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      if (forbidden_[best][c]) continue;
      assign(best, c);
      if (solve(coloured + 1, std::max(used, c + 1))) return true;
      unassign(best);
      if (aborted_) return false;
    }
    return false;
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t k_;
  const Deadline& deadline_;
  std::vector<std::size_t> colour_;
  std::vector<std::vector<std::uint32_t>> forbidden_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

inline std::vector<std::size_t> greedy_dsatur(const Graph& g) {
  const auto n = g.order();
  std::vector<std::size_t> colour(n, static_cast<std::size_t>(-1));
  std::vector<std::set<std::size_t>> seen(n);
  for (std::size_t step = 0; step < n; ++step) {
    point best = 0;
    long best_sat = -1;
    std::size_t best_deg = 0;
    for (point v = 0; v < n; ++v) {
      if (colour[v] != static_cast<std::size_t>(-1)) continue;
      const auto sat = static_cast<long>(seen[v].size());
      if (sat > best_sat || (sat == best_sat && g.degree(v) > best_deg)) {
        best = v;
        best_sat = sat;
        best_deg = g.degree(v);
      }
    }
    std::size_t c = 0;
    while (seen[best].count(c)) ++c;
    colour[best] = c;
    for (point w : g.neighbours(best)) seen[w].insert(c);
  }
  return colour;
}

}  // namespace detail

/// Exact chromatic number: clique lower bound, DSATUR upper bound, then
/// k-colourability tests from the bottom.
inline ColouringResult chromatic_number(const Graph& g,
                                        std::optional<std::chrono::duration<double>> budget = std::nullopt) {
  ColouringResult out;
  if (g.order() == 0) return out;
  detail::Deadline deadline(budget);
  auto all = detail::all_vertices(g.order());
  auto clique = detail::CliqueSearch(g, deadline, 0).run(all);
  auto upper = detail::greedy_dsatur(g);
  std::size_t ub = 0;
  for (auto c : upper) ub = std::max(ub, c + 1);
  out.colours = ub;
  out.colouring = upper;
  if (clique.status == SearchStatus::BudgetExceeded) {
    out.status = SearchStatus::BudgetExceeded;
    return out;
  }
  for (std::size_t k = std::max<std::size_t>(clique.size, 1); k < ub; ++k) {
    detail::ColouringSearch search(g, k, deadline);
    auto found = search.run(clique.witness);
    if (search.aborted()) {
      out.status = SearchStatus::BudgetExceeded;
      return out;
    }
    if (found) {
      out.colours = k;
      out.colouring = *found;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct SearchOptions {
  /// Accepted ranks (sizes of the image); empty means any.
  std::set<std::size_t> rank_filter;
  /// Only maps of rank < |source| (for endomorphisms: non-automorphisms).
  bool proper_only = false;
  bool count_only = false;
  std::optional<std::chrono::duration<double>> time_budget;
  unsigned parallelism = 1;
};

struct Homomorphism {
  std::vector<point> images;
  std::size_t rank() const {
    std::vector<point> s = images;
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }
};

inline bool is_homomorphism(const Graph& src, const Graph& dst, std::span<const point> images) {
  if (images.size() != src.order()) return false;
  for (point v : images)
    if (v >= dst.order()) return false;
  for (auto [u, v] : src.edges())
    if (!dst.adjacent(images[u], images[v])) return false;
  return true;
}

inline bool is_endomorphism(const Graph& g, const Transformation& f) {
  if (f.degree() != g.order()) throw Error(ErrorCode::DegreeMismatch, "is_endomorphism: degree differs");
  return is_homomorphism(g, g, f.images());
}

inline bool is_automorphism(const Graph& g, const Transformation& f) { return f.is_permutation() && is_endomorphism(g, f); }

struct EnumerationResult {
  std::map<std::size_t, std::uint64_t> by_rank;
  std::uint64_t total = 0;
  SearchStatus status = SearchStatus::Complete;
  bool complete() const { return status == SearchStatus::Complete; }
};

/// Called for every solution; return false to stop the search.
using HomomorphismVisitor = std::function<bool(std::span<const point>)>;

namespace detail {

/// Forward-checking backtracking over candidate bitsets. Variable order:
/// smallest candidate set first, ties by vertex index; values ascending.
class HomSearch {
 public:
  HomSearch(const Graph& src, const Graph& dst, const SearchOptions& opts)
      : src_(src), dst_(dst), n_(src.order()), w_(dst.words_per_row()), adj_(src.order()) {
    for (point v = 0; v < n_; ++v) adj_[v] = src.neighbours(v);
    max_rank_ = std::min(n_, dst.order());
    min_rank_ = n_ == 0 ? 0 : 1;
    if (opts.proper_only) max_rank_ = n_ == 0 ? 0 : std::min(max_rank_, n_ - 1);
    if (!opts.rank_filter.empty()) {
      min_rank_ = std::max(min_rank_, *opts.rank_filter.begin());
      max_rank_ = std::min(max_rank_, *opts.rank_filter.rbegin());
    }
    filter_ = opts.rank_filter;
    injective_ = n_ > 0 && min_rank_ >= n_;
  }

  std::size_t order() const { return n_; }
  bool infeasible() const { return min_rank_ > max_rank_; }

  struct Worker {
    std::vector<bits::word> domains;  // (n_ + 1) levels of n_ * w_ words
    std::vector<point> images;
    std::vector<char> assigned;
    std::vector<std::uint32_t> uses;
    std::size_t distinct = 0;
    EnumerationResult result;
    std::uint64_t nodes = 0;
    bool stop = false;
  };

  Worker make_worker() const {
    Worker wk;
    wk.domains.assign((n_ + 1) * n_ * w_, 0);
    for (point v = 0; v < n_; ++v)
      for (std::size_t d = 0; d < dst_.order(); ++d) bits::set(domain(wk, 0, v), d);
    wk.images.assign(n_, 0);
    wk.assigned.assign(n_, 0);
    wk.uses.assign(dst_.order(), 0);
    return wk;
  }

  /// Chooses the root branching variable; returns nullopt if n_ == 0.
  std::optional<point> root_variable(const Worker& wk) const { return choose(wk, 0); }

  std::span<bits::word> domain(Worker& wk, std::size_t level, point v) const {
    return {wk.domains.data() + (level * n_ + v) * w_, w_};
  }
  std::span<const bits::word> domain(const Worker& wk, std::size_t level, point v) const {
    return {wk.domains.data() + (level * n_ + v) * w_, w_};
  }

  /// Assigns v := a at `level` and recurses.
  template <typename Emit>
  void branch(Worker& wk, std::size_t level, point v, point a, const Deadline& deadline, const std::atomic<bool>& halt,
              Emit& emit) const {
    const std::size_t remaining = n_ - level - 1;
    const std::size_t nd = wk.distinct + (wk.uses[a] == 0 ? 1 : 0);
    if (nd > max_rank_ || nd + remaining < min_rank_) return;
    // Next level starts as a copy of this one.
    std::copy_n(wk.domains.data() + level * n_ * w_, n_ * w_, wk.domains.data() + (level + 1) * n_ * w_);
    auto arow = dst_.row(a);
    for (point u : adj_[v]) {
      if (wk.assigned[u]) continue;
      auto d = domain(wk, level + 1, u);
      bool empty = true;
      for (std::size_t i = 0; i < w_; ++i) {
        d[i] &= arow[i];
        empty = empty && d[i] == 0;
      }
      if (empty) return;
    }
    if (injective_) {
      for (point u = 0; u < n_; ++u) {
        if (wk.assigned[u] || u == v) continue;
        auto d = domain(wk, level + 1, u);
        bits::reset(d, a);
        if (bits::none(d)) return;
      }
    }
    wk.assigned[v] = 1;
    wk.images[v] = a;
    if (wk.uses[a]++ == 0) ++wk.distinct;
    descend(wk, level + 1, deadline, halt, emit);
    if (--wk.uses[a] == 0) --wk.distinct;
    wk.assigned[v] = 0;
  }

  template <typename Emit>
  void descend(Worker& wk, std::size_t level, const Deadline& deadline, const std::atomic<bool>& halt,
               Emit& emit) const {
    if (wk.stop) return;
    if ((++wk.nodes & 4095) == 0) {
      if (halt.load(std::memory_order_relaxed)) {
        wk.stop = true;
        return;
      }
      if (deadline.expired()) {
        wk.stop = true;
        wk.result.status = SearchStatus::BudgetExceeded;
        return;
      }
    }
    if (level == n_) {
      if (!filter_.empty() && !filter_.count(wk.distinct)) return;
      ++wk.result.total;
      ++wk.result.by_rank[wk.distinct];
      if (!emit(std::span<const point>(wk.images))) wk.stop = true;
      return;
    }
    auto v = choose(wk, level);
    if (!v) return;
    std::vector<point> values;
    bits::for_each(domain(wk, level, *v), [&](std::size_t a) { values.push_back(static_cast<point>(a)); });
    for (point a : values) {
      branch(wk, level, *v, a, deadline, halt, emit);
      if (wk.stop) return;
    }
  }

 private:
  std::optional<point> choose(const Worker& wk, std::size_t level) const {
    std::optional<point> best;
    std::size_t best_size = 0;
    for (point v = 0; v < n_; ++v) {
      if (wk.assigned[v]) continue;
      const auto s = bits::count(domain(wk, level, v));
      if (!best || s < best_size) {
        best = v;
        best_size = s;
        if (s <= 1) break;
      }
    }
    return best;
  }

  const Graph& src_;
  const Graph& dst_;
  std::size_t n_;
  std::size_t w_;
  std::vector<std::vector<point>> adj_;
  std::size_t min_rank_ = 0;
  std::size_t max_rank_ = 0;
  std::set<std::size_t> filter_;
  bool injective_ = false;
};

inline void merge_into(EnumerationResult& into, const EnumerationResult& from) {
  into.total += from.total;
  for (auto [r, c] : from.by_rank) into.by_rank[r] += c;
  if (from.status == SearchStatus::BudgetExceeded) into.status = SearchStatus::BudgetExceeded;
}

}  // namespace detail

/// Enumerates every homomorphism src -> dst accepted by the options, each
/// exactly once. With parallelism 1 the visitor sees solutions in the
/// deterministic search order; with more workers the root branches run
/// concurrently and the visitor is called in root-branch order once all
/// workers have finished (so the order is still deterministic).
inline EnumerationResult enumerate_homomorphisms(const Graph& src, const Graph& dst, const SearchOptions& opts,
                                                 const HomomorphismVisitor& visit = {}) {
  detail::HomSearch search(src, dst, opts);
  detail::Deadline deadline(opts.time_budget);
  EnumerationResult total;
  if (search.infeasible()) return total;
  if (search.order() == 0) {
    if (opts.rank_filter.empty() || opts.rank_filter.count(0)) {
      total.total = 1;
      total.by_rank[0] = 1;
      if (visit) visit({});
    }
    return total;
  }
  std::atomic<bool> halt{false};
  auto root = search.make_worker();
  const point v = *search.root_variable(root);
  std::vector<point> values;
  bits::for_each(search.domain(root, 0, v), [&](std::size_t a) { values.push_back(static_cast<point>(a)); });

  const unsigned workers = std::max(1U, std::min<unsigned>(opts.parallelism, static_cast<unsigned>(values.size())));
  const bool want_solutions = visit && !opts.count_only;

  if (workers == 1) {
    auto emit = [&](std::span<const point> s) { return want_solutions ? visit(s) : true; };
    for (point a : values) {
      search.branch(root, 0, v, a, deadline, halt, emit);
      if (root.stop) break;
    }
    return root.result;
  }

  // One bucket per root value; workers pull values from a shared counter.
  std::vector<EnumerationResult> results(values.size());
  std::vector<std::vector<point>> buffers(values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    auto wk = search.make_worker();
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size() || halt.load()) return;
      wk.result = {};
      wk.stop = false;
      auto& buf = buffers[i];
      auto emit = [&](std::span<const point> s) {
        if (want_solutions) buf.insert(buf.end(), s.begin(), s.end());
        return true;
      };
      search.branch(wk, 0, v, values[i], deadline, halt, emit);
      results[i] = wk.result;
      if (wk.result.status == SearchStatus::BudgetExceeded) halt = true;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& r : results) detail::merge_into(total, r);
  if (halt.load()) total.status = SearchStatus::BudgetExceeded;
  if (want_solutions) {
    const std::size_t n = src.order();
    bool go = true;
    for (std::size_t i = 0; i < values.size() && go; ++i)
      for (std::size_t off = 0; off + n <= buffers[i].size() && go; off += n)
        go = visit(std::span<const point>(buffers[i].data() + off, n));
  }
  return total;
}

inline EnumerationResult enumerate_endomorphisms(const Graph& g, const SearchOptions& opts,
                                                 const HomomorphismVisitor& visit = {}) {
  return enumerate_homomorphisms(g, g, opts, visit);
}

struct FindResult {
  std::optional<Homomorphism> found;
  SearchStatus status = SearchStatus::Complete;
};

/// First homomorphism in search order satisfying the options. An empty
/// result with status Complete proves absence.
inline FindResult find_homomorphism(const Graph& src, const Graph& dst, SearchOptions opts) {
  opts.parallelism = 1;
  opts.count_only = false;
  FindResult out;
  auto res = enumerate_homomorphisms(src, dst, opts, [&](std::span<const point> s) {
    out.found = Homomorphism{std::vector<point>(s.begin(), s.end())};
    return false;
  });
  if (!out.found) out.status = res.status;
  return out;
}

/// |Aut(g)|, counted as the rank-n endomorphisms.
inline std::uint64_t automorphism_count(const Graph& g,
                                        std::optional<std::chrono::duration<double>> budget = std::nullopt) {
  SearchOptions opts;
  opts.rank_filter = {g.order()};
  opts.count_only = true;
  opts.time_budget = budget;
  auto res = enumerate_endomorphisms(g, opts);
  if (!res.complete()) throw Error(ErrorCode::TimeBudgetExceeded, "automorphism_count");
  return res.total;
}

/// Brute-force-free isomorphism test via injective homomorphism search
/// (requires equal order and edge count).
inline std::optional<std::vector<point>> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return std::nullopt;
  SearchOptions opts;
  opts.rank_filter = {a.order()};
  auto res = find_homomorphism(a, b, opts);
  if (!res.found) return std::nullopt;
  return res.found->images;
}

}  // namespace synchro
