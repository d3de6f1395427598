#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monochrome/errors.hpp"
#include "monochrome/random.hpp"
#include "monochrome/rational.hpp"

namespace monochrome {

using Vertex = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1 in compressed adjacency form.
///
/// Neighbor lists are sorted ascending and every adjacency slot carries the id
/// of its edge in `edges()`, so per-edge data can live in flat vectors.
class Graph {
 public:
  Graph() = default;

  /// Builds the graph from arbitrary (u, v) pairs. Pairs are normalized to
  /// u < v and duplicates collapsed; self-loops and out-of-range ids throw.
  Graph(std::size_t vertex_count, std::span<const Edge> edges) : n_(vertex_count) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u == e.v) {
        throw Error(ErrorKind::SelfLoop, "graph: self-loop at vertex " + std::to_string(e.u));
      }
      if (e.u >= n_ || e.v >= n_) {
        throw Error(ErrorKind::BadParams, "graph: edge (" + std::to_string(e.u) + ", " +
                                              std::to_string(e.v) + ") outside " +
                                              std::to_string(n_) + " vertices");
      }
      edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(edges_.begin(), edges_.end());
    const auto last = std::unique(edges_.begin(), edges_.end());
    duplicates_ = static_cast<std::size_t>(edges_.end() - last);
    edges_.erase(last, edges_.end());
    build_adjacency();
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Number of duplicate pairs collapsed during construction.
  std::size_t duplicates_collapsed() const { return duplicates_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  /// Edge ids aligned with neighbors(v).
  std::span<const std::uint32_t> incident_edges(Vertex v) const {
    return {slot_edge_.data() + offsets_[v], slot_edge_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<std::uint32_t> edge_id(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_) return std::nullopt;
    if (degree(a) > degree(b)) std::swap(a, b);
    const auto nb = neighbors(a);
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return slot_edge_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
  }

  bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }

  /// External id of vertex v as read from an input file (identity otherwise).
  std::uint64_t original_id(Vertex v) const {
    return original_ids_.empty() ? v : original_ids_[v];
  }

  const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }

  void set_original_ids(std::vector<std::uint64_t> ids) { original_ids_ = std::move(ids); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    neighbors_.resize(2 * edges_.size());
    slot_edge_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted by (u, v). Filling the smaller-neighbor side first and
    // the larger side second leaves every list ascending.
    for (std::uint32_t id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      neighbors_[cursor[e.v]] = e.u;
      slot_edge_[cursor[e.v]++] = id;
    }
    for (std::uint32_t id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      neighbors_[cursor[e.u]] = e.v;
      slot_edge_[cursor[e.u]++] = id;
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::size_t duplicates_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  std::vector<std::uint32_t> slot_edge_;
  std::vector<std::uint64_t> original_ids_;
};

// ---------------------------------------------------------------------------
// Edge-list text format

struct ParseResult {
  Graph graph;
  std::size_t duplicate_count = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::optional<std::uint64_t> parse_id(std::string_view token) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

/// Reads "# vertices=N" from a comment, if present.
inline std::optional<std::uint64_t> header_vertex_count(std::string_view comment) {
  const auto pos = comment.find("vertices=");
  if (pos == std::string_view::npos) return std::nullopt;
  auto rest = comment.substr(pos + 9);
  const auto stop = rest.find_first_not_of("0123456789");
  return parse_id(rest.substr(0, stop));
}

}  // namespace detail

/// Parses whitespace-separated "u v" lines; '#' starts a comment.
///
/// Vertex ids are compacted to 0..k-1 in ascending order of the original ids,
/// which are kept on the graph. A "# vertices=N" header with every id below N
/// keeps the ids as they are, so isolated vertices survive a round trip.
inline ParseResult parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::optional<std::uint64_t> declared;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      if (!declared) declared = detail::header_vertex_count(view.substr(hash));
      view = view.substr(0, hash);
    }
    view = detail::trim(view);
    if (view.empty()) continue;
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < view.size()) {
      while (i < view.size() && (view[i] == ' ' || view[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < view.size() && view[j] != ' ' && view[j] != '\t') ++j;
      if (j > i) tokens.push_back(view.substr(i, j - i));
      i = j;
    }
    if (tokens.size() != 2) {
      throw Error(ErrorKind::Malformed, "parse_edge_list: line " + std::to_string(line_no));
    }
    const auto a = detail::parse_id(tokens[0]);
    const auto b = detail::parse_id(tokens[1]);
    if (!a || !b) {
      throw Error(ErrorKind::Malformed, "parse_edge_list: line " + std::to_string(line_no));
    }
    if (*a == *b) {
      throw Error(ErrorKind::SelfLoop, "parse_edge_list: self-loop at vertex " +
                                           std::to_string(*a) + " (line " +
                                           std::to_string(line_no) + ")");
    }
    raw.emplace_back(*a, *b);
  }

  std::uint64_t max_id = 0;
  for (const auto& [a, b] : raw) max_id = std::max({max_id, a, b});
  const bool keep_ids = declared && (raw.empty() || max_id < *declared);

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::size_t n = 0;
  std::vector<std::uint64_t> ids;
  if (keep_ids) {
    n = static_cast<std::size_t>(*declared);
    for (const auto& [a, b] : raw)
      edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  } else {
    for (const auto& [a, b] : raw) {
      ids.push_back(a);
      ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto compact = [&](std::uint64_t id) {
      return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& [a, b] : raw) edges.push_back({compact(a), compact(b)});
    n = ids.size();
  }

  ParseResult result{Graph(n, edges), 0};
  result.duplicate_count = result.graph.duplicates_collapsed();
  bool identity = true;
  for (std::size_t i = 0; i < ids.size(); ++i) identity = identity && ids[i] == i;
  if (!keep_ids && !identity) result.graph.set_original_ids(std::move(ids));
  return result;
}

inline ParseResult parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

/// Canonical text form: header comment, then "u v" lines in ascending order.
inline std::string serialize(const Graph& g) {
  std::string out = "# vertices=" + std::to_string(g.vertex_count()) +
                    " edges=" + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

/// 64-bit FNV-1a digest of the canonical serialization, as 16 hex digits.
inline std::string graph_digest(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize(g)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

/// Maps vertex v to perm[v].
inline Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return Graph(g.vertex_count(), edges);
}

/// a on vertices 0..|a|-1, b shifted to follow it.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const auto shift = static_cast<Vertex>(a.vertex_count());
  for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(a.vertex_count() + b.vertex_count(), edges);
}

// ---------------------------------------------------------------------------
// Families

enum class Family {
  Complete,
  Star,
  Cycle,
  Path,
  Pyramid,
  BipyramidChain,
  Composite,
  Gnp,
  DisjointUnion,
};

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::Complete: return "complete";
    case Family::Star: return "star";
    case Family::Cycle: return "cycle";
    case Family::Path: return "path";
    case Family::Pyramid: return "pyramid";
    case Family::BipyramidChain: return "bipyramid_chain";
    case Family::Composite: return "composite";
    case Family::Gnp: return "gnp";
    case Family::DisjointUnion: return "disjoint_union";
  }
  return "unknown";
}

inline std::optional<Family> family_from_string(std::string_view name) {
  for (Family f : {Family::Complete, Family::Star, Family::Cycle, Family::Path, Family::Pyramid,
                   Family::BipyramidChain, Family::Composite, Family::Gnp,
                   Family::DisjointUnion}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

/// Parameters for one generated family. `n` is the size parameter of every
/// family; `p`/`seed` apply to gnp, `colors` to composite, `parts` to
/// disjoint_union.
struct FamilySpec {
  Family family = Family::Complete;
  std::int64_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::int64_t colors = 0;
  std::vector<FamilySpec> parts;

  static FamilySpec complete(std::int64_t n) { return {Family::Complete, n}; }
  static FamilySpec star(std::int64_t leaves) { return {Family::Star, leaves}; }
  static FamilySpec cycle(std::int64_t n) { return {Family::Cycle, n}; }
  static FamilySpec path(std::int64_t n) { return {Family::Path, n}; }
  static FamilySpec pyramid(std::int64_t n) { return {Family::Pyramid, n}; }
  static FamilySpec bipyramid_chain(std::int64_t n) { return {Family::BipyramidChain, n}; }
  static FamilySpec composite(std::int64_t n, std::int64_t colors) {
    FamilySpec s{Family::Composite, n};
    s.colors = colors;
    return s;
  }
  static FamilySpec gnp(std::int64_t n, double p, std::uint64_t seed) {
    FamilySpec s{Family::Gnp, n};
    s.p = p;
    s.seed = seed;
    return s;
  }
  static FamilySpec disjoint_union(std::vector<FamilySpec> parts) {
    FamilySpec s{Family::DisjointUnion, 0};
    s.parts = std::move(parts);
    return s;
  }
};

/// Ratio 2|q4(c)| / q16(c) for the two opposing fourth-cumulant coefficients
/// used to balance the composite family: q4 is the coefficient of four
/// triangles on one edge, q16 that of the alternating 4-cycle of triangles.
/// Both share the factor 24/c^8, leaving 2|c^3 - 7c^2 + 12c - 6| / (c - 1).
inline Rational composite_balance_ratio(std::int64_t colors) {
  const BigInt c = colors;
  const BigInt cubic = c * c * c - 7 * c * c + 12 * c - 6;
  return Rational(2 * boost::multiprecision::abs(cubic), c - 1);
}

/// Bipyramid-chain length paired with pyramid(n) in composite(n, c):
/// ceil(sqrt(ratio * C(n, 4))). Defined for 2 <= c <= 4 only.
inline std::uint64_t composite_partner_size(std::int64_t n, std::int64_t colors) {
  if (colors < 2) {
    throw Error(ErrorKind::BadParams, "composite: colors must be >= 2, got " + std::to_string(colors));
  }
  if (colors >= 5) {
    throw Error(ErrorKind::CompositeUndefined,
                "composite: four-on-an-edge coefficient is nonnegative for colors=" +
                    std::to_string(colors) + "; construction needs 2 <= colors <= 4");
  }
  if (n < 1) throw Error(ErrorKind::BadParams, "composite: n must be >= 1");
  const Rational target = composite_balance_ratio(colors) * Rational(binomial(static_cast<std::uint64_t>(n), 4));
  return ceil_sqrt(target).convert_to<std::uint64_t>();
}

namespace detail {

inline void require(bool ok, std::string_view family, const std::string& what) {
  if (!ok) throw Error(ErrorKind::BadParams, std::string(family) + ": " + what);
}

}  // namespace detail

/// Deterministic generator for every supported family.
///
/// Numbering: pyramid(n) uses 0,1 for the shared edge and 2..n+1 for the
/// apexes. bipyramid_chain(n) uses 0 (a), 1 (b), 2..n+1 for the middle
/// vertices s, n+2..2n+1 for u_{a,s} and 2n+2..3n+1 for u_{b,s}. star(k) has
/// center 0 and k leaves.
inline Graph generate(const FamilySpec& spec) {
  const auto name = to_string(spec.family);
  std::vector<Edge> edges;
  const auto n = spec.n;
  switch (spec.family) {
    case Family::Complete: {
      detail::require(n >= 0, name, "n must be >= 0");
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
      return Graph(static_cast<std::size_t>(n), edges);
    }
    case Family::Star: {
      detail::require(n >= 1, name, "leaf count must be >= 1");
      for (Vertex v = 1; v <= n; ++v) edges.push_back({0, v});
      return Graph(static_cast<std::size_t>(n + 1), edges);
    }
    case Family::Cycle: {
      detail::require(n >= 3, name, "n must be >= 3");
      for (Vertex v = 0; v < n; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
      return Graph(static_cast<std::size_t>(n), edges);
    }
    case Family::Path: {
      detail::require(n >= 1, name, "n must be >= 1");
      for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
      return Graph(static_cast<std::size_t>(n), edges);
    }
    case Family::Pyramid: {
      detail::require(n >= 1, name, "n must be >= 1");
      edges.push_back({0, 1});
      for (Vertex s = 0; s < n; ++s) {
        edges.push_back({0, s + 2});
        edges.push_back({1, s + 2});
      }
      return Graph(static_cast<std::size_t>(n + 2), edges);
    }
    case Family::BipyramidChain: {
      detail::require(n >= 1, name, "n must be >= 1");
      const auto m = static_cast<Vertex>(n);
      for (Vertex s = 0; s < m; ++s) {
        const Vertex mid = 2 + s;
        const Vertex ua = 2 + m + s;
        const Vertex ub = 2 + 2 * m + s;
        edges.push_back({0, mid});
        edges.push_back({0, ua});
        edges.push_back({mid, ua});
        edges.push_back({1, mid});
        edges.push_back({1, ub});
        edges.push_back({mid, ub});
      }
      return Graph(static_cast<std::size_t>(3 * n + 2), edges);
    }
    case Family::Composite: {
      const auto partner = composite_partner_size(n, spec.colors);
      return disjoint_union(generate(FamilySpec::pyramid(n)),
                            generate(FamilySpec::bipyramid_chain(static_cast<std::int64_t>(partner))));
    }
    case Family::Gnp: {
      detail::require(n >= 0, name, "n must be >= 0");
      detail::require(spec.p >= 0.0 && spec.p <= 1.0, name, "p must lie in [0, 1]");
      KeyedStream stream(spec.seed, 0x676e70ULL);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (stream.next_unit() < spec.p) edges.push_back({u, v});
      return Graph(static_cast<std::size_t>(n), edges);
    }
    case Family::DisjointUnion: {
      detail::require(!spec.parts.empty(), name, "needs at least one part");
      Graph acc = generate(spec.parts.front());
      for (std::size_t i = 1; i < spec.parts.size(); ++i) acc = disjoint_union(acc, generate(spec.parts[i]));
      return acc;
    }
  }
  throw Error(ErrorKind::UnsupportedFamily, std::string(name));
}

}  // namespace monochrome
