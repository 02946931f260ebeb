#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <bit>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "synchro/error.hpp"
#include "synchro/graph.hpp"
#include "synchro/random.hpp"
#include "synchro/search.hpp"
#include "synchro/transform.hpp"

namespace synchro {

/// k x k array over {0..k-1}; every row and column is a permutation.
class LatinSquare {
 public:
  LatinSquare() = default;
  LatinSquare(std::size_t k, std::vector<point> cells) : k_(k), cells_(std::move(cells)) {
    if (k == 0 || cells_.size() != k * k) throw Error(ErrorCode::BadInput, "latin square needs k*k cells");
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<char> row(k, 0), col(k, 0);
      for (std::size_t j = 0; j < k; ++j) {
        const point r = at(i, j), c = at(j, i);
        if (r >= k || c >= k || row[r]++ || col[c]++) throw Error(ErrorCode::BadInput, "not a latin square");
      }
    }
  }

  std::size_t order() const noexcept { return k_; }
  point at(std::size_t i, std::size_t j) const noexcept { return cells_[i * k_ + j]; }
  const std::vector<point>& cells() const noexcept { return cells_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<point> cells_;
};

/// k lines of k whitespace-separated symbols 0..k-1.
inline LatinSquare parse_latin_square(std::string_view text) {
  std::vector<point> cells;
  std::size_t rows = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::size_t before = cells.size();
    for (long v; ls >> v;) {
      if (v < 0) throw Error(ErrorCode::BadInput, "negative symbol");
      cells.push_back(static_cast<point>(v));
    }
    if (cells.size() > before) ++rows;
  }
  if (rows == 0 || cells.size() != rows * rows) throw Error(ErrorCode::BadInput, "latin square must be k lines of k symbols");
  return LatinSquare(rows, std::move(cells));
}

inline std::string format_latin_square(const LatinSquare& l) {
  std::string s;
  for (std::size_t i = 0; i < l.order(); ++i) {
    for (std::size_t j = 0; j < l.order(); ++j) s += (j ? " " : "") + std::to_string(l.at(i, j));
    s += "\n";
  }
  return s;
}

namespace detail {

template <typename Visit>
void latin_backtrack(std::size_t k, std::vector<point>& cells, std::size_t cell, std::vector<std::uint32_t>& row_used,
                     std::vector<std::uint32_t>& col_used, Visit& visit, const std::vector<point>* order) {
  if (cell == k * k) {
    visit(cells);
    return;
  }
  const std::size_t i = cell / k, j = cell % k;
  for (std::size_t t = 0; t < k; ++t) {
    const point s = order ? (*order)[cell * k + t] : static_cast<point>(t);
    const std::uint32_t bit = 1U << s;
    if ((row_used[i] & bit) || (col_used[j] & bit)) continue;
    row_used[i] |= bit;
    col_used[j] |= bit;
    cells[cell] = s;
    latin_backtrack(k, cells, cell + 1, row_used, col_used, visit, order);
    row_used[i] &= ~bit;
    col_used[j] &= ~bit;
  }
}

}  // namespace detail

inline constexpr std::size_t max_enumerated_latin_order = 5;

/// Every Latin square of order k, in lexicographic order of cells.
inline std::vector<LatinSquare> all_latin_squares(std::size_t k) {
  if (k < 1 || k > max_enumerated_latin_order) throw Error(ErrorCode::BadParameter, "enumeration supports 1 <= k <= 5");
  std::vector<LatinSquare> out;
  std::vector<point> cells(k * k);
  std::vector<std::uint32_t> rows(k, 0), cols(k, 0);
  auto visit = [&](const std::vector<point>& c) { out.emplace_back(k, c); };
  detail::latin_backtrack(k, cells, 0, rows, cols, visit, nullptr);
  return out;
}

/// A Latin square built by backtracking with a random symbol order per cell.
inline LatinSquare random_latin_square(std::size_t k, Rng& rng) {
  if (k < 1 || k > 31) throw Error(ErrorCode::BadParameter, "order out of range");
  std::vector<point> order(k * k * k);
  for (std::size_t c = 0; c < k * k; ++c) {
    std::vector<point> perm(k);
    std::iota(perm.begin(), perm.end(), point{0});
    rng.shuffle(perm);
    std::copy(perm.begin(), perm.end(), order.begin() + static_cast<long>(c * k));
  }
  std::vector<point> cells(k * k);
  std::vector<std::uint32_t> rows(k, 0), cols(k, 0);
  std::optional<LatinSquare> found;
  struct Stop {};
  auto visit = [&](const std::vector<point>& c) {
    found.emplace(k, c);
    throw Stop{};
  };
  try {
    detail::latin_backtrack(k, cells, 0, rows, cols, visit, &order);
  } catch (const Stop&) {
  }
  return *found;
}

/// Number of distinct symbol pairs when the squares are superimposed.
inline std::size_t r_orthogonality(const LatinSquare& a, const LatinSquare& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::OrderMismatch, "squares have different orders");
  const auto k = a.order();
  std::vector<char> seen(k * k, 0);
  std::size_t r = 0;
  for (std::size_t i = 0; i < k * k; ++i) {
    auto& s = seen[a.cells()[i] * k + b.cells()[i]];
    if (!s) {
      s = 1;
      ++r;
    }
  }
  return r;
}

/// Cell (i, j) of K_k □ K_k (vertex i*k+j) goes to the pair (a[i][j], b[i][j])
/// of the complement of K_k □ K_k (vertex a*k+b).
inline Homomorphism superposition_hom(const LatinSquare& a, const LatinSquare& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::OrderMismatch, "squares have different orders");
  const auto k = a.order();
  if (k < 2) throw Error(ErrorCode::BadParameter, "order must be at least 2");
  Homomorphism h;
  h.images.resize(k * k);
  for (std::size_t i = 0; i < k * k; ++i) h.images[i] = static_cast<point>(a.cells()[i] * k + b.cells()[i]);
  const Graph rook = box_product(complete_graph(k), complete_graph(k));
  if (!is_homomorphism(rook, complement(rook), h.images))
    throw Error(ErrorCode::Internal, "superposition is not a homomorphism");
  return h;
}

/// Ranks r for which an r-orthogonal pair of order k exists, as predicted by
/// the Colbourn-Zhu / Zhu-Zhang classification.
inline std::set<std::size_t> predicted_r_spectrum(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::BadParameter, "k must be at least 2");
  std::set<std::size_t> out{k, k * k};
  for (std::size_t r = k + 2; r + 2 <= k * k; ++r) out.insert(r);
  std::set<std::size_t> except;
  switch (k) {
    case 2: except = {4}; break;
    case 3: except = {5, 6, 7}; break;
    case 4: except = {7, 10, 11, 13, 14}; break;
    case 5: except = {8, 9, 20, 22, 23}; break;
    case 6: except = {33, 36}; break;
    default: break;
  }
  for (auto r : except) out.erase(r);
  return out;
}

struct SpectrumResult {
  std::set<std::size_t> achievable;
  bool exhaustive = false;
};

inline constexpr std::size_t max_exhaustive_spectrum_order = 4;

/// Achievable r for order-k pairs: exhaustive over all ordered pairs for
/// k <= 4, random sampling otherwise (a lower approximation).
inline SpectrumResult r_orthogonal_spectrum(std::size_t k, std::size_t samples = 20000, std::uint64_t seed = 0) {
  if (k < 2) throw Error(ErrorCode::BadParameter, "k must be at least 2");
  SpectrumResult out;
  if (k <= max_exhaustive_spectrum_order) {
    const auto squares = all_latin_squares(k);
    for (const auto& a : squares)
      for (const auto& b : squares) out.achievable.insert(r_orthogonality(a, b));
    out.exhaustive = true;
    return out;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = random_latin_square(k, rng);
    const auto b = random_latin_square(k, rng);
    out.achievable.insert(r_orthogonality(a, b));
  }
  return out;
}

/// K_{m-1} □ K_{m-1} -> T(m): (a, b) -> {a+1, b+1} for a != b, (a, a) -> {0, a+1}.
inline Homomorphism triangular_hom(std::size_t m) {
  if (m < 4) throw Error(ErrorCode::BadParameter, "triangular_hom needs m >= 4");
  const std::size_t k = m - 1;
  Homomorphism h;
  h.images.resize(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      h.images[a * k + b] = static_cast<point>(a == b ? pair_index(m, 0, a + 1) : pair_index(m, a + 1, b + 1));
  if (!is_homomorphism(box_product(complete_graph(k), complete_graph(k)), triangular_graph(m), h.images))
    throw Error(ErrorCode::Internal, "triangular map is not a homomorphism");
  return h;
}

/// Endomorphism of X □ X obtained as
///   X □ X -> K_k □ K_k -> X -> X □ X
/// where the first map sends (u, v) to (colour(u), colour(v)), the second is
/// h, and the last embeds X as the fibre X × {0}.
inline Transformation box_power_endomorphism(const Graph& x, const std::vector<std::size_t>& colouring,
                                             const Homomorphism& h) {
  const std::size_t n = x.order();
  const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(h.images.size()))));
  if (k * k != h.images.size() || k == 0) throw Error(ErrorCode::HomomorphismInvalid, "h must be defined on K_k □ K_k");
  if (colouring.size() != n || !is_proper_colouring(x, colouring))
    throw Error(ErrorCode::ColouringInvalid, "colouring is not proper");
  for (auto c : colouring)
    if (c >= k) throw Error(ErrorCode::ColouringInvalid, "colouring uses more than k colours");
  if (!is_homomorphism(box_product(complete_graph(k), complete_graph(k)), x, h.images))
    throw Error(ErrorCode::HomomorphismInvalid, "h is not a homomorphism K_k □ K_k -> X");
  std::vector<point> images(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      images[u * n + v] = static_cast<point>(std::size_t{h.images[colouring[u] * k + colouring[v]]} * n);
  Transformation f(std::move(images));
  if (!is_endomorphism(box_product(x, x), f)) throw Error(ErrorCode::Internal, "box power map is not an endomorphism");
  return f;
}

// ----------------------------------------------------------------------------
// GF(2) Cayley family with rank-6 non-uniform endomorphisms.

struct CayleyFamily {
  std::size_t prime = 0;
  Graph graph;
  PermGroup group;
  Transformation endomorphism;
  std::vector<std::uint64_t> connection_set;
  /// Index 0..5 of the kernel class of each vertex.
  std::vector<std::size_t> kernel_class;
  /// The six image vertices 0, e0, e1, e0+e1, e_{p-1}, e0+e_{p-1}.
  std::vector<point> image_vertices;
};

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::size_t multiplicative_order(std::size_t a, std::size_t p) {
  std::size_t x = a % p, ord = 1;
  while (x != 1) {
    x = x * a % p;
    ++ord;
    if (ord > p) return 0;
  }
  return ord;
}

/// Vertices are GF(2)^{p-1} with basis e_0..e_{p-2}; e_{p-1} is the sum of
/// the other basis vectors, so e_0 + ... + e_{p-1} = 0.
inline CayleyFamily cayley_family(std::size_t p) {
  if (!is_prime(p) || p <= 5) throw Error(ErrorCode::BadPrime, "p must be a prime greater than 5");
  if (multiplicative_order(2, p) != p - 1) throw Error(ErrorCode::BadPrime, "2 is not a primitive root mod " + std::to_string(p));
  const std::size_t dim = p - 1;
  if (dim > max_cayley_dimension) throw Error(ErrorCode::TooLarge, "p = " + std::to_string(p) + " gives too many vertices");
  const std::uint64_t all = (std::uint64_t{1} << dim) - 1;
  auto e = [&](std::size_t i) -> std::uint64_t {
    i %= p;
    return i == p - 1 ? all : std::uint64_t{1} << i;
  };

  CayleyFamily out;
  out.prime = p;
  for (std::size_t i = 0; i < p; ++i) {
    out.connection_set.push_back(e(i));
    out.connection_set.push_back(e(i) ^ e(i + 1));
  }
  out.graph = cayley_gf2(dim, out.connection_set);
  const std::uint64_t n = std::uint64_t{1} << dim;

  // Translations by e_0..e_{p-2}, index rotation i -> i+1, reflection i -> -i.
  auto linear = [&](auto&& image_of_index) {
    std::vector<std::uint64_t> basis_image(dim);
    for (std::size_t i = 0; i < dim; ++i) basis_image[i] = image_of_index(i);
    std::vector<point> im(n);
    for (std::uint64_t v = 0; v < n; ++v) {
      std::uint64_t w = 0;
      for (std::size_t i = 0; i < dim; ++i)
        if ((v >> i) & 1U) w ^= basis_image[i];
      im[v] = static_cast<point>(w);
    }
    return Permutation(std::move(im));
  };
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<point> im(n);
    for (std::uint64_t v = 0; v < n; ++v) im[v] = static_cast<point>(v ^ e(i));
    gens.emplace_back(std::move(im));
  }
  gens.push_back(linear([&](std::size_t i) { return e(i + 1); }));
  gens.push_back(linear([&](std::size_t i) { return e(p - i); }));
  out.group = PermGroup(std::move(gens));

  // Subspace spanned by e_i + e_{i+2}, i = 0..p-5, in echelon form keyed by top bit.
  std::vector<std::uint64_t> pivot(dim, 0);
  auto reduce = [&](std::uint64_t v) {
    for (std::size_t b = dim; b-- > 0;)
      if (((v >> b) & 1U) && pivot[b]) v ^= pivot[b];
    return v;
  };
  for (std::size_t i = 0; i + 4 < p; ++i) {
    std::uint64_t v = reduce(e(i) ^ e(i + 2));
    if (v == 0) throw Error(ErrorCode::Internal, "subspace generators are dependent");
    pivot[static_cast<std::size_t>(63 - std::countl_zero(v))] = v;
  }
  const std::uint64_t top = e(p - 2);
  const std::uint64_t reps[8] = {0, e(0), e(1), e(0) ^ e(1), top, top ^ e(0), top ^ e(1), top ^ e(0) ^ e(1)};
  // Coset -> kernel class: X+e1 with X+e_{p-2}, and X+e0+e1 with X+e0+e_{p-2}, are merged.
  const std::size_t class_of_rep[8] = {0, 1, 2, 3, 2, 3, 4, 5};
  std::vector<std::pair<std::uint64_t, std::size_t>> canon;
  for (int r = 0; r < 8; ++r) canon.emplace_back(reduce(reps[r]), class_of_rep[r]);
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      if (canon[a].first == canon[b].first) throw Error(ErrorCode::Internal, "coset representatives coincide");
  out.kernel_class.resize(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    const auto c = reduce(v);
    auto it = std::find_if(canon.begin(), canon.end(), [&](const auto& pr) { return pr.first == c; });
    if (it == canon.end()) throw Error(ErrorCode::Internal, "vector outside the eight cosets");
    out.kernel_class[v] = it->second;
  }

  // Quotient graph on the six classes, then the first bijection onto the
  // butterfly-like target that is a homomorphism.
  Graph quotient(6);
  for (auto [u, v] : out.graph.edges()) {
    const auto cu = out.kernel_class[u], cv = out.kernel_class[v];
    if (cu == cv) throw Error(ErrorCode::Internal, "kernel class contains an edge");
    if (!quotient.adjacent(static_cast<point>(cu), static_cast<point>(cv)))
      quotient.add_edge(static_cast<point>(cu), static_cast<point>(cv));
  }
  out.image_vertices = {0, static_cast<point>(e(0)), static_cast<point>(e(1)), static_cast<point>(e(0) ^ e(1)),
                        static_cast<point>(e(p - 1)), static_cast<point>(e(0) ^ e(p - 1))};
  std::vector<point> assign{0, 1, 2, 3, 4, 5};
  bool found = false;
  do {
    bool ok = true;
    for (auto [a, b] : quotient.edges())
      ok = ok && out.graph.adjacent(out.image_vertices[assign[a]], out.image_vertices[assign[b]]);
    if (ok) {
      found = true;
      break;
    }
  } while (std::next_permutation(assign.begin(), assign.end()));
  if (!found) throw Error(ErrorCode::Internal, "quotient does not embed on the target vertices");
  std::vector<point> images(n);
  for (std::uint64_t v = 0; v < n; ++v) images[v] = out.image_vertices[assign[out.kernel_class[v]]];
  out.endomorphism = Transformation(std::move(images));
  if (!is_endomorphism(out.graph, out.endomorphism)) throw Error(ErrorCode::Internal, "cayley map is not an endomorphism");
  return out;
}

}  // namespace synchro
