#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "synchro/error.hpp"
#include "synchro/graph.hpp"
#include "synchro/perm.hpp"
#include "synchro/transform.hpp"

// Text formats. Points are 1-based in every external format and 0-based in
// memory.

namespace synchro::io {

namespace detail {

inline std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  std::string s(line.substr(0, hash));
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<long> integers_in(std::string_view s) {
  std::vector<long> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isdigit(static_cast<unsigned char>(s[i])) || (s[i] == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t used = 0;
      out.push_back(std::stol(std::string(s.substr(i)), &used));
      i += used;
    } else {
      ++i;
    }
  }
  return out;
}

inline point to_point(long one_based, std::size_t bound) {
  if (one_based < 1 || static_cast<std::size_t>(one_based) > bound)
    throw Error(ErrorCode::BadInput, "point " + std::to_string(one_based) + " out of range 1.." + std::to_string(bound));
  return static_cast<point>(one_based - 1);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// ---------------------------------------------------------------- transformations

/// "[1,2,3]" (1-based), as printed by GAP without the Transformation() wrapper.
inline std::string format_image_list(std::span<const point> images) {
  std::string s = "[";
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(images[i] + 1);
  }
  return s + "]";
}

inline std::string format_transformation(const Transformation& f) { return format_image_list(f.images()); }

/// Accepts "[ 1, 1, 14, ... ]" or "Transformation( [ ... ] )", whitespace-insensitive.
inline Transformation parse_transformation(std::string_view text) {
  const auto open = text.find('[');
  const auto close = text.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw Error(ErrorCode::BadInput, "transformation must be a bracketed image list");
  const auto values = detail::integers_in(text.substr(open + 1, close - open - 1));
  std::vector<point> images;
  images.reserve(values.size());
  for (long v : values) images.push_back(detail::to_point(v, values.size()));
  return Transformation(std::move(images));
}

// ------------------------------------------------------------------ permutations

inline std::string format_cycles(const Permutation& p) {
  std::string s;
  std::vector<char> seen(p.degree(), 0);
  for (point x = 0; x < p.degree(); ++x) {
    if (seen[x] || p[x] == x) continue;
    s += "(";
    point y = x;
    bool first = true;
    do {
      seen[y] = 1;
      if (!first) s += " ";
      s += std::to_string(y + 1);
      first = false;
      y = p[y];
    } while (y != x);
    s += ")";
  }
  return s.empty() ? "()" : s;
}

/// Largest point mentioned (1-based) or list length; used to infer a degree.
inline std::size_t implied_degree(std::string_view text) {
  if (text.find('[') != std::string_view::npos) return detail::integers_in(text).size();
  std::size_t m = 0;
  for (long v : detail::integers_in(text)) m = std::max(m, static_cast<std::size_t>(std::max(v, 0L)));
  return m;
}

/// Cycle notation "(1 2 3)(4 5)" (commas optional) or image list "[2,3,1]".
inline Permutation parse_permutation(std::string_view text, std::size_t degree) {
  if (text.find('[') != std::string_view::npos) {
    auto f = parse_transformation(text);
    if (f.degree() != degree) throw Error(ErrorCode::DegreeMismatch, "image list length differs from degree");
    return Permutation(f.images());
  }
  std::vector<std::vector<point>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '(') {
      const auto close = text.find(')', i);
      if (close == std::string_view::npos) throw Error(ErrorCode::BadInput, "unbalanced cycle");
      std::vector<point> cycle;
      for (long v : detail::integers_in(text.substr(i + 1, close - i - 1))) cycle.push_back(detail::to_point(v, degree));
      if (!cycle.empty()) cycles.push_back(std::move(cycle));
      i = close + 1;
    } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else {
      throw Error(ErrorCode::BadInput, "unexpected character in cycle notation");
    }
  }
  return Permutation::from_cycles(degree, cycles);
}

/// One generator per line; '#' comments; optional "degree N" line.
inline PermGroup parse_group(std::string_view text) {
  std::vector<std::string> lines;
  std::optional<std::size_t> degree;
  std::size_t inferred = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (line.rfind("degree", 0) == 0) {
      auto v = detail::integers_in(line);
      if (v.size() != 1 || v[0] < 1) throw Error(ErrorCode::BadInput, "bad degree line");
      degree = static_cast<std::size_t>(v[0]);
      continue;
    }
    inferred = std::max(inferred, implied_degree(line));
    lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorCode::BadInput, "group file has no generators");
  const std::size_t n = degree.value_or(inferred);
  std::vector<Permutation> gens;
  for (const auto& l : lines) gens.push_back(parse_permutation(l, n));
  return PermGroup(std::move(gens));
}

inline std::string format_group(const PermGroup& g) {
  std::string s = "degree " + std::to_string(g.degree()) + "\n";
  for (const auto& p : g.generators()) s += format_cycles(p) + "\n";
  return s;
}

// ------------------------------------------------------------------------ graphs

namespace detail {

inline void put_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
}

}  // namespace detail

/// graph6 encoding (no header, no trailing newline).
inline std::string to_graph6(const Graph& g) {
  std::string out;
  const auto n = g.order();
  detail::put_size(out, n);
  int acc = 0, nbits = 0;
  for (point j = 1; j < n; ++j)
    for (point i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
  return out;
}

inline Graph from_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  for (char c : text)
    if (c < 63 || c > 126) throw Error(ErrorCode::BadInput, "graph6: byte outside 63..126");
  if (text.empty()) throw Error(ErrorCode::BadInput, "graph6: empty input");
  std::size_t pos = 0;
  auto take = [&](int count) {
    std::uint64_t v = 0;
    for (int i = 0; i < count; ++i) {
      if (pos >= text.size()) throw Error(ErrorCode::BadInput, "graph6: truncated size");
      v = (v << 6) | static_cast<std::uint64_t>(text[pos++] - 63);
    }
    return v;
  };
  std::uint64_t n = 0;
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] != 126) {
    pos = 1;
    n = take(3);
  } else {
    pos = 2;
    n = take(6);
  }
  const std::uint64_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t expected = (nbits + 5) / 6;
  if (text.size() - pos != expected) throw Error(ErrorCode::BadInput, "graph6: wrong length for order " + std::to_string(n));
  Graph g(n);
  std::uint64_t k = 0;
  for (point j = 1; j < n; ++j)
    for (point i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  return g;
}

/// One line per vertex: "v: a b c" with 1-based labels.
inline std::string to_adjacency_list(const Graph& g) {
  std::string s;
  for (point v = 0; v < g.order(); ++v) {
    s += std::to_string(v + 1) + ":";
    for (point w : g.neighbours(v)) s += " " + std::to_string(w + 1);
    s += "\n";
  }
  return s;
}

inline Graph from_adjacency_list(std::string_view text) {
  std::vector<std::pair<long, std::vector<long>>> rows;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::BadInput, "adjacency list line needs 'v:'");
    auto head = detail::integers_in(line.substr(0, colon));
    if (head.size() != 1) throw Error(ErrorCode::BadInput, "adjacency list line needs one vertex label");
    rows.emplace_back(head[0], detail::integers_in(line.substr(colon + 1)));
  }
  const std::size_t n = rows.size();
  std::vector<char> seen(n, 0);
  Graph g(n);
  for (const auto& [v, nbrs] : rows) {
    const point pv = detail::to_point(v, n);
    if (seen[pv]) throw Error(ErrorCode::BadInput, "vertex listed twice");
    seen[pv] = 1;
    for (long w : nbrs) g.add_edge(pv, detail::to_point(w, n));
  }
  return g;
}

enum class GraphFormat { Graph6, AdjacencyList };

/// Adjacency lists contain ':'; anything else is read as graph6.
inline Graph parse_graph(std::string_view text) {
  if (text.find(':') != std::string_view::npos) return from_adjacency_list(text);
  auto s = detail::strip_comment(text);
  return from_graph6(s);
}

inline std::string format_graph(const Graph& g, GraphFormat fmt) {
  return fmt == GraphFormat::Graph6 ? to_graph6(g) + "\n" : to_adjacency_list(g);
}

inline std::string format_partition(const Partition& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += "{";
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(p[i][j] + 1);
    }
    s += "}";
  }
  return s + "}";
}

inline std::string read_file(const std::string& path) { return detail::read_file(path); }

}  // namespace synchro::io
