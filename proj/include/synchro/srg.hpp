#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "synchro/bits.hpp"
#include "synchro/error.hpp"
#include "synchro/graph.hpp"

namespace synchro {

inline constexpr double srg_tolerance = 1e-9;

struct SrgParams {
  std::size_t n = 0, k = 0, lambda = 0, mu = 0;
  double r_eig = 0.0, s_eig = 0.0;

  std::size_t k_complement() const noexcept { return n - k - 1; }
  bool feasible() const noexcept { return k * (k - lambda - 1) == k_complement() * mu; }
  bool non_trivial() const noexcept { return mu > 0 && k > mu; }

  friend bool operator==(const SrgParams& a, const SrgParams& b) {
    return a.n == b.n && a.k == b.k && a.lambda == b.lambda && a.mu == b.mu;
  }
};

/// Fills the two restricted eigenvalues, roots of x^2 - (λ-μ)x - (k-μ).
inline SrgParams make_srg_params(std::size_t n, std::size_t k, std::size_t lambda, std::size_t mu) {
  if (n == 0 || k >= n) throw Error(ErrorCode::BadParameter, "need 0 <= k < n");
  SrgParams p{n, k, lambda, mu, 0.0, 0.0};
  const double b = static_cast<double>(lambda) - static_cast<double>(mu);
  const double c = static_cast<double>(k) - static_cast<double>(mu);
  const double disc = std::sqrt(b * b + 4.0 * c);
  p.r_eig = (b + disc) / 2.0;
  p.s_eig = (b - disc) / 2.0;
  return p;
}

/// Parameters if g is strongly regular, else nothing. Complete and null graphs
/// count as degenerate SRGs (μ = 0, or λ = 0 with k = 0).
inline std::optional<SrgParams> srg_params(const Graph& g) {
  const auto n = g.order();
  const auto k = g.valency();
  if (n == 0 || !k) return std::nullopt;
  std::optional<std::size_t> lambda, mu;
  for (point x = 0; x < n; ++x)
    for (point y = x + 1; y < n; ++y) {
      const std::size_t c = bits::count_and(g.row(x), g.row(y));
      auto& slot = g.adjacent(x, y) ? lambda : mu;
      if (!slot) slot = c;
      else if (*slot != c) return std::nullopt;
    }
  return make_srg_params(n, *k, lambda.value_or(0), mu.value_or(0));
}

inline bool is_conference(const SrgParams& p) { return p.n == 4 * p.mu + 1 && p.k == 2 * p.mu; }

/// Non-negative exact fraction in lowest terms.
struct Rational {
  std::uint64_t num = 0, den = 1;

  static Rational of(std::uint64_t a, std::uint64_t b) {
    if (b == 0) throw Error(ErrorCode::BadParameter, "zero denominator");
    const auto g = std::gcd(a, b);
    return {a / g, b / g};
  }
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

namespace detail {

inline void require_non_trivial(const SrgParams& p) {
  if (!p.non_trivial()) throw Error(ErrorCode::TrivialSrg, "need mu > 0 and k > mu");
}

}  // namespace detail

/// Every proper endomorphism of rank r satisfies n - r >= (k - μ + 4)/4.
inline Rational defect_lower_bound(const SrgParams& p) {
  detail::require_non_trivial(p);
  return Rational::of(p.k - p.mu + 4, 4);
}

/// k - μ >= min(k, k')/3, compared exactly as 3(k - μ) >= min(k, k').
inline bool kmu_bound_check(const SrgParams& p) {
  detail::require_non_trivial(p);
  return 3 * (p.k - p.mu) >= std::min(p.k, p.k_complement());
}

/// min(k, k')^2 >= n - 1.
inline bool moore_min_valency_check(const SrgParams& p) {
  detail::require_non_trivial(p);
  const auto m = std::min(p.k, p.k_complement());
  return m * m >= p.n - 1;
}

/// 1 + min(k, k')/12: the defect bound after substituting the k-μ inequality.
inline double chained_defect_bound(const SrgParams& p) {
  detail::require_non_trivial(p);
  return 1.0 + static_cast<double>(std::min(p.k, p.k_complement())) / 12.0;
}

inline double srg_defect_theorem_bound(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadParameter, "n must be at least 2");
  return 1.0 + std::sqrt(static_cast<double>(n - 1)) / 12.0;
}

/// Maps of rank strictly above this are synchronized by any primitive group of
/// permutation rank 3 on n points.
inline double rank3_sync_threshold(std::size_t n) {
  return static_cast<double>(n) - srg_defect_theorem_bound(n);
}

}  // namespace synchro
