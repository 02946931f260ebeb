#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "synchro/bits.hpp"
#include "synchro/error.hpp"

namespace synchro {

/// A set partition of {0..n-1}: parts sorted, ordered by their smallest point.
using Partition = std::vector<std::vector<point>>;

/// Arbitrary self-map of {0..n-1}, acting on the right: x·(fg) = (x·f)·g.
class Transformation {
 public:
  Transformation() = default;
  explicit Transformation(std::vector<point> images) : images_(std::move(images)) {
    for (point y : images_)
      if (y >= images_.size()) throw Error(ErrorCode::BadInput, "image " + std::to_string(y) + " out of range");
  }
  Transformation(std::initializer_list<point> images) : Transformation(std::vector<point>(images)) {}

  static Transformation identity(std::size_t n) {
    std::vector<point> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<point>(i);
    return Transformation(std::move(im));
  }
  static Transformation constant(std::size_t n, point value) { return Transformation(std::vector<point>(n, value)); }

  std::size_t degree() const noexcept { return images_.size(); }
  point operator[](point x) const noexcept { return images_[x]; }
  const std::vector<point>& images() const noexcept { return images_; }

  /// Sorted list of image points.
  std::vector<point> image() const {
    std::vector<point> out(images_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::size_t rank() const { return image().size(); }
  bool is_permutation() const { return rank() == degree(); }

  friend bool operator==(const Transformation&, const Transformation&) = default;
  friend auto operator<=>(const Transformation&, const Transformation&) = default;

 private:
  std::vector<point> images_;
};

/// x·compose(f, g) = (x·f)·g.
inline Transformation compose(const Transformation& f, const Transformation& g) {
  if (f.degree() != g.degree()) throw Error(ErrorCode::DegreeMismatch, "compose: degrees differ");
  std::vector<point> out(f.degree());
  for (point x = 0; x < f.degree(); ++x) out[x] = g[f[x]];
  return Transformation(std::move(out));
}

/// Fibres of f.
inline Partition kernel(const Transformation& f) {
  const auto n = f.degree();
  std::vector<long> part_of_image(n, -1);
  Partition parts;
  for (point x = 0; x < n; ++x) {
    auto& slot = part_of_image[f[x]];
    if (slot < 0) {
      slot = static_cast<long>(parts.size());
      parts.emplace_back();
    }
    parts[static_cast<std::size_t>(slot)].push_back(x);
  }
  return parts;
}

/// Multiset of kernel class sizes, in descending order.
struct KernelType {
  std::vector<std::size_t> part_sizes;

  std::size_t total() const {
    std::size_t s = 0;
    for (auto p : part_sizes) s += p;
    return s;
  }
  bool uniform() const {
    return part_sizes.empty() || part_sizes.front() == part_sizes.back();
  }
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < part_sizes.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(part_sizes[i]);
    }
    return s + ")";
  }

  friend bool operator==(const KernelType&, const KernelType&) = default;
};

inline KernelType kernel_type_of(const Partition& p) {
  KernelType kt;
  for (const auto& part : p) kt.part_sizes.push_back(part.size());
  std::sort(kt.part_sizes.begin(), kt.part_sizes.end(), std::greater<>());
  return kt;
}

inline KernelType kernel_type(const Transformation& f) { return kernel_type_of(kernel(f)); }

inline bool is_uniform(const Transformation& f) { return kernel_type(f).uniform(); }

namespace detail {

/// Steps from x until the orbit of x under f reaches a point on a cycle.
inline std::vector<std::size_t> depths(const Transformation& f) {
  const std::size_t n = f.degree();
  std::vector<char> cyclic(n, 0);
  for (point x = 0; x < n; ++x) {
    point y = x;
    for (std::size_t i = 0; i < n; ++i) y = f[y];
    cyclic[y] = 1;
  }
  for (point x = 0; x < n; ++x)
    if (cyclic[x])
      for (point y = f[x]; y != x; y = f[y]) cyclic[y] = 1;
  std::vector<std::size_t> out(n, 0);
  for (point x = 0; x < n; ++x)
    for (point y = x; !cyclic[y]; y = f[y]) ++out[x];
  return out;
}

}  // namespace detail

/// A bijection s with s[f[x]] = g[s[x]] for all x, i.e. an isomorphism of the
/// functional digraphs of f and g, if one exists.
inline std::optional<std::vector<point>> conjugating_bijection(const Transformation& f, const Transformation& g) {
  const std::size_t n = f.degree();
  if (g.degree() != n) return std::nullopt;
  auto signature = [](const Transformation& h) {
    std::vector<std::pair<std::size_t, std::size_t>> sig(h.degree());
    const auto d = detail::depths(h);
    for (point x = 0; x < h.degree(); ++x) sig[x].second = d[x];
    for (point x = 0; x < h.degree(); ++x) ++sig[h[x]].first;
    return sig;
  };
  const auto sf = signature(f), sg = signature(g);
  {
    auto a = sf, b = sg;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<std::vector<point>> g_pre(n);
  for (point y = 0; y < n; ++y) g_pre[g[y]].push_back(y);
  std::vector<point> order(n);
  for (point x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](point a, point b) { return sf[a].second < sf[b].second; });

  constexpr point unset = static_cast<point>(-1);
  std::vector<point> s(n, unset);
  std::vector<char> used(n, 0);
  std::vector<point> trail;
  auto assign = [&](point x, point y) {
    for (;;) {
      if (s[x] != unset) return s[x] == y;
      if (used[y] || sf[x] != sg[y]) return false;
      s[x] = y;
      used[y] = 1;
      trail.push_back(x);
      x = f[x];
      y = g[y];
    }
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      used[s[trail.back()]] = 0;
      s[trail.back()] = unset;
      trail.pop_back();
    }
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    while (i < n && s[order[i]] != unset) ++i;
    if (i == n) return true;
    const point x = order[i];
    std::vector<point> candidates;
    if (s[f[x]] != unset) candidates = g_pre[s[f[x]]];
    else
      for (point y = 0; y < n; ++y) candidates.push_back(y);
    for (point y : candidates) {
      if (used[y] || sf[x] != sg[y]) continue;
      const auto mark = trail.size();
      if (assign(x, y) && search(i + 1)) return true;
      undo(mark);
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return s;
}

}  // namespace synchro
