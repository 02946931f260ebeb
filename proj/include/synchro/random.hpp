#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "synchro/error.hpp"
#include "synchro/perm.hpp"
#include "synchro/transform.hpp"

namespace synchro {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, mt19937_64 itself is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorCode::BadParameter, "empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<point> im(n);
  std::iota(im.begin(), im.end(), point{0});
  rng.shuffle(im);
  return Permutation(std::move(im));
}

inline Transformation random_transformation(std::size_t n, Rng& rng) {
  std::vector<point> im(n);
  for (auto& x : im) x = static_cast<point>(rng.below(n));
  return Transformation(std::move(im));
}

/// Uniformly random map of {0..n-1} with image size exactly `rank`: a uniform
/// set partition into `rank` blocks (sampled through the Stirling recurrence
/// in log space), matched bijectively to a uniform `rank`-subset of points.
inline Transformation random_map_of_rank(std::size_t n, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > n) throw Error(ErrorCode::BadParameter, "rank must lie in 1..n");
  // log S(i, j) for i <= n, j <= rank.
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> log_s(n + 1, std::vector<double>(rank + 1, ninf));
  log_s[0][0] = 0.0;
  auto logadd = [](double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
  };
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= std::min(i, rank); ++j)
      log_s[i][j] = logadd(std::log(static_cast<double>(j)) + log_s[i - 1][j], log_s[i - 1][j - 1]);

  // Walk elements n-1 down to 0. Element i either opens a new block (it is
  // the smallest member of its block) or joins one of the j blocks opened by
  // smaller elements.
  std::vector<std::size_t> block(n, 0);
  std::vector<char> opens(n, 0);
  std::vector<std::size_t> join_choice(n, 0);
  std::size_t j = rank;
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t m = i + 1;
    const double p_new = j == 0 ? 0.0 : std::exp(log_s[m - 1][j - 1] - log_s[m][j]);
    if (j > 0 && (j == m || rng.unit() < p_new)) {
      opens[i] = 1;
      --j;
    } else {
      join_choice[i] = static_cast<std::size_t>(rng.below(j));
    }
  }
  std::vector<std::size_t> opened;
  for (std::size_t i = 0; i < n; ++i) {
    if (opens[i]) {
      block[i] = opened.size();
      opened.push_back(block[i]);
    } else {
      block[i] = opened[join_choice[i]];
    }
  }
  // Uniform image set, matched by a uniform bijection to blocks.
  std::vector<point> pts(n);
  std::iota(pts.begin(), pts.end(), point{0});
  rng.shuffle(pts);
  std::vector<point> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = pts[block[i]];
  return Transformation(std::move(images));
}

}  // namespace synchro
