#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace synchro {

using point = std::uint32_t;

namespace bits {

using word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t n) noexcept { return (n + word_bits - 1) / word_bits; }

inline bool test(std::span<const word> row, std::size_t i) noexcept {
  return (row[i / word_bits] >> (i % word_bits)) & 1U;
}
inline void set(std::span<word> row, std::size_t i) noexcept { row[i / word_bits] |= word{1} << (i % word_bits); }
inline void reset(std::span<word> row, std::size_t i) noexcept {
  row[i / word_bits] &= ~(word{1} << (i % word_bits));
}

inline std::size_t count(std::span<const word> row) noexcept {
  std::size_t c = 0;
  for (word w : row) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

inline bool none(std::span<const word> row) noexcept {
  for (word w : row)
    if (w) return false;
  return true;
}

inline std::size_t count_and(std::span<const word> a, std::span<const word> b) noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// Calls fn(index) for every set bit, in ascending order.
template <typename Fn>
void for_each(std::span<const word> row, Fn&& fn) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    word x = row[w];
    while (x) {
      const auto b = static_cast<std::size_t>(std::countr_zero(x));
      fn(w * word_bits + b);
      x &= x - 1;
    }
  }
}

inline std::vector<point> to_points(std::span<const word> row) {
  std::vector<point> out;
  for_each(row, [&](std::size_t i) { out.push_back(static_cast<point>(i)); });
  return out;
}

}  // namespace bits
}  // namespace synchro
