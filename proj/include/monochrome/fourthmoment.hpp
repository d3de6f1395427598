#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "monochrome/census.hpp"
#include "monochrome/errors.hpp"
#include "monochrome/graph.hpp"
#include "monochrome/moments.hpp"
#include "monochrome/parallel.hpp"
#include "monochrome/poly.hpp"
#include "monochrome/rational.hpp"

namespace monochrome {

/// Up to four distinct triangles with positive multiplicities summing to <= 4.
struct TriangleMultiset {
  std::vector<Triangle> triangles;
  std::vector<unsigned> multiplicity;

  static TriangleMultiset distinct(std::span<const Triangle> tris) {
    return {std::vector<Triangle>(tris.begin(), tris.end()),
            std::vector<unsigned>(tris.size(), 1)};
  }

  void validate() const {
    if (triangles.empty() || triangles.size() != multiplicity.size() || triangles.size() > 4) {
      throw Error(ErrorKind::BadParams, "TriangleMultiset: needs 1-4 triangles with multiplicities");
    }
    unsigned total = 0;
    for (unsigned m : multiplicity) {
      if (m == 0) throw Error(ErrorKind::BadParams, "TriangleMultiset: zero multiplicity");
      total += m;
    }
    if (total > 4) throw Error(ErrorKind::BadParams, "TriangleMultiset: total multiplicity exceeds 4");
    for (std::size_t i = 0; i < triangles.size(); ++i)
      for (std::size_t j = i + 1; j < triangles.size(); ++j)
        if (triangles[i] == triangles[j])
          throw Error(ErrorKind::BadParams, "TriangleMultiset: repeated triangle");
  }
};

namespace detail {

inline unsigned shared_vertices(const Triangle& a, const Triangle& b) {
  unsigned s = 0;
  for (Vertex x : a.v)
    for (Vertex y : b.v) s += (x == y);
  return s;
}

/// |V(S)| - (number of connected components of S), for a set of triangles
/// given by `mask` over `tris`. P(all triangles in S monochromatic) = x^value.
inline unsigned monochrome_exponent(std::span<const Triangle> tris, unsigned mask) {
  std::array<Vertex, 12> verts{};
  std::array<unsigned, 12> parent{};
  std::size_t nv = 0;
  auto index_of = [&](Vertex v) {
    for (std::size_t i = 0; i < nv; ++i)
      if (verts[i] == v) return i;
    verts[nv] = v;
    parent[nv] = static_cast<unsigned>(nv);
    return nv++;
  };
  auto find = [&](unsigned i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  unsigned merges = 0;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    if (!(mask >> t & 1u)) continue;
    const auto a = static_cast<unsigned>(index_of(tris[t].v[0]));
    for (int k = 1; k < 3; ++k) {
      const auto b = static_cast<unsigned>(index_of(tris[t].v[k]));
      const auto ra = find(a);
      const auto rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        ++merges;
      }
    }
  }
  return merges;  // |V| - components
}

/// Components of the vertex-sharing relation among `tris`, as bitmasks.
inline std::vector<unsigned> triangle_components(std::span<const Triangle> tris) {
  const auto k = tris.size();
  std::vector<unsigned> comp(k);
  std::iota(comp.begin(), comp.end(), 0u);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (shared_vertices(tris[i], tris[j]) > 0 && comp[j] > comp[i]) {
          comp[j] = comp[i];
          changed = true;
        }
  }
  std::map<unsigned, unsigned> masks;
  for (std::size_t i = 0; i < k; ++i) masks[comp[i]] |= 1u << i;
  std::vector<unsigned> out;
  for (const auto& [root, m] : masks) out.push_back(m);
  return out;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

/// E prod_i (1{t_i monochromatic} - 1/c^2)^{m_i} as a polynomial in x = 1/c.
///
/// The product factorizes over vertex-connected components of the union.
/// Inside a component, inclusion-exclusion over the slots gives
/// sum_U (-x^2)^{#slots - |U|} x^{|V(U)| - kappa(U)}.
inline RationalPoly centered_product_polynomial(const TriangleMultiset& m) {
  m.validate();
  const std::span<const Triangle> tris(m.triangles);
  RationalPoly result(Rational(1));
  for (unsigned comp : detail::triangle_components(tris)) {
    std::vector<unsigned> slots;  // triangle index per slot
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (comp >> t & 1u)
        for (unsigned r = 0; r < m.multiplicity[t]; ++r) slots.push_back(static_cast<unsigned>(t));
    if (slots.size() == 1) return {};  // lone mean-zero factor
    RationalPoly value;
    const unsigned ns = static_cast<unsigned>(slots.size());
    for (unsigned subset = 0; subset < (1u << ns); ++subset) {
      unsigned tri_mask = 0;
      unsigned used = 0;
      for (unsigned s = 0; s < ns; ++s)
        if (subset >> s & 1u) {
          tri_mask |= 1u << slots[s];
          ++used;
        }
      const unsigned missing = ns - used;
      const unsigned power = detail::monochrome_exponent(tris, tri_mask) + 2 * missing;
      value += RationalPoly::monomial(Rational(missing % 2 ? -1 : 1), power);
    }
    result = result * value;
    if (result.is_zero()) return result;
  }
  return result;
}

inline Rational centered_product_expectation(const TriangleMultiset& m, unsigned colors) {
  require_colors(colors, "centered_product_expectation");
  return centered_product_polynomial(m).at_colors(colors);
}

/// Coefficient of a set of distinct triangles in sigma^4 (E Z^4 - 3).
///
/// E-side: sum over multiplicity vectors m >= 1 with |m| = 4 of
/// multinomial(4; m) E prod (1{mono} - 1/c^2)^{m_i}.
/// 3 sigma^4-side: expand 3 (A N1 + B N2)^2 where A is the single-triangle
/// variance and B the shared-edge covariance weight; the constituents are the
/// single triangles and the edge-sharing pairs of the set, and every ordered
/// pair of constituents covering the whole set contributes 3 w1 w2.
inline RationalPoly class_coefficient(std::span<const Triangle> tris) {
  const unsigned k = static_cast<unsigned>(tris.size());
  if (k == 0 || k > 4) throw Error(ErrorKind::BadParams, "class_coefficient: needs 1-4 triangles");

  RationalPoly e_side;
  const BigInt four_factorial = 24;
  // compositions of 4 into k positive parts
  std::vector<unsigned> m(k);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned idx, unsigned left) {
    if (idx + 1 == k) {
      m[idx] = left;
      BigInt denom = 1;
      for (unsigned x : m) denom *= detail::factorial(x);
      TriangleMultiset ms{std::vector<Triangle>(tris.begin(), tris.end()), m};
      e_side += centered_product_polynomial(ms) * Rational(four_factorial / denom);
      return;
    }
    for (unsigned v = 1; v + (k - idx - 1) <= left; ++v) {
      m[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, 4);

  const RationalPoly single = coeffs::triangle_variance();
  const RationalPoly pair = coeffs::shared_edge_covariance();
  std::vector<std::pair<unsigned, RationalPoly>> constituents;
  for (unsigned i = 0; i < k; ++i) constituents.emplace_back(1u << i, single);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j)
      if (detail::shared_vertices(tris[i], tris[j]) == 2)
        constituents.emplace_back((1u << i) | (1u << j), pair);
  const unsigned full = (1u << k) - 1;
  RationalPoly sigma_side;
  for (const auto& [m1, w1] : constituents)
    for (const auto& [m2, w2] : constituents)
      if ((m1 | m2) == full) sigma_side += w1 * w2;
  sigma_side *= Rational(3);

  return e_side - sigma_side;
}

// ---------------------------------------------------------------------------
// Canonical keys

/// Isomorphism-class key for a set of 1-4 distinct triangles.
///
/// Each vertex of the union gets a mask of the triangles containing it; the
/// multiset of masks, minimized over the k! relabelings of the triangles, is a
/// complete invariant of the triangle hypergraph. Packed as: k in bits 60-63,
/// vertex count in bits 52-59, sorted masks as 4-bit digits from bit 47 down.
struct ClassKey {
  std::uint64_t packed = 0;

  unsigned triangle_count() const { return static_cast<unsigned>(packed >> 60); }
  unsigned vertex_count() const { return static_cast<unsigned>((packed >> 52) & 0xff); }

  std::vector<unsigned> masks() const {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < vertex_count(); ++i)
      out.push_back(static_cast<unsigned>((packed >> (44 - 4 * i)) & 0xf));
    return out;
  }

  std::string hex() const {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << packed;
    return os.str();
  }

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

struct ClassKeyHash {
  std::size_t operator()(const ClassKey& k) const noexcept { return std::hash<std::uint64_t>{}(k.packed); }
};

inline ClassKey canonical_key(std::span<const Triangle> tris) {
  const unsigned k = static_cast<unsigned>(tris.size());
  std::array<Vertex, 12> verts{};
  std::array<unsigned, 12> masks{};
  unsigned nv = 0;
  for (unsigned t = 0; t < k; ++t) {
    for (Vertex v : tris[t].v) {
      unsigned i = 0;
      while (i < nv && verts[i] != v) ++i;
      if (i == nv) {
        verts[nv] = v;
        masks[nv++] = 0;
      }
      masks[i] |= 1u << t;
    }
  }
  std::array<unsigned, 4> perm{0, 1, 2, 3};
  std::uint64_t best = UINT64_MAX;
  do {
    std::array<unsigned, 12> permuted{};
    for (unsigned i = 0; i < nv; ++i) {
      unsigned m = 0;
      for (unsigned t = 0; t < k; ++t)
        if (masks[i] >> t & 1u) m |= 1u << perm[t];
      permuted[i] = m;
    }
    std::sort(permuted.begin(), permuted.begin() + nv);
    std::uint64_t packed = 0;
    for (unsigned i = 0; i < nv; ++i) packed |= std::uint64_t{permuted[i]} << (44 - 4 * i);
    best = std::min(best, packed);
  } while (std::next_permutation(perm.begin(), perm.begin() + k));
  return ClassKey{(std::uint64_t{k} << 60) | (std::uint64_t{nv} << 52) | best};
}

/// Triangles realizing `key` on vertices 0..vertex_count-1.
inline std::vector<Triangle> representative(ClassKey key) {
  const auto masks = key.masks();
  std::vector<Triangle> out;
  for (unsigned t = 0; t < key.triangle_count(); ++t) {
    Triangle tri;
    unsigned filled = 0;
    for (unsigned v = 0; v < masks.size(); ++v)
      if (masks[v] >> t & 1u) tri.v[filled++] = v;
    out.push_back(tri);
  }
  return out;
}

/// Edges of the union graph of `tris`, ascending.
inline std::vector<Edge> union_edges(std::span<const Triangle> tris) {
  std::vector<Edge> edges;
  for (const Triangle& t : tris) {
    edges.push_back({t.v[0], t.v[1]});
    edges.push_back({t.v[0], t.v[2]});
    edges.push_back({t.v[1], t.v[2]});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline bool union_connected(std::span<const Triangle> tris) {
  return detail::triangle_components(tris).size() == 1;
}

/// Human-readable invariants: vertex and edge counts of the union graph, its
/// degree multiset and the triangle-incidence multiset (descending).
inline std::string class_signature(ClassKey key) {
  const auto tris = representative(key);
  const auto edges = union_edges(tris);
  const unsigned nv = key.vertex_count();
  std::vector<unsigned> degree(nv, 0);
  for (const Edge& e : edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<unsigned> incidence;
  for (unsigned m : key.masks()) incidence.push_back(static_cast<unsigned>(std::popcount(m)));
  std::sort(degree.rbegin(), degree.rend());
  std::sort(incidence.rbegin(), incidence.rend());
  auto join = [](const std::vector<unsigned>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
  };
  return "t=" + std::to_string(key.triangle_count()) + " v=" + std::to_string(nv) +
         " e=" + std::to_string(edges.size()) + " deg=[" + join(degree) + "] inc=[" +
         join(incidence) + "]";
}

/// Coefficient of the class behind `key`.
inline RationalPoly class_coefficient(ClassKey key) {
  const auto rep = representative(key);
  return class_coefficient(std::span<const Triangle>(rep));
}

// ---------------------------------------------------------------------------
// Enumeration over a graph

struct EnumerationOptions {
  std::uint64_t budget = 100'000'000;
  unsigned threads = default_threads();
};

struct ClassCounts {
  std::map<ClassKey, std::uint64_t> counts;
  std::uint64_t sets_enumerated = 0;
};

namespace detail {

class ConnectedSetEnumerator {
 public:
  ConnectedSetEnumerator(const std::vector<Triangle>& tris,
                         const std::vector<std::vector<std::uint32_t>>& adj)
      : tris_(tris), adj_(adj) {}

  /// Visits every set of <= 4 triangles that is connected under vertex
  /// sharing and whose smallest id is `root`, each exactly once.
  template <typename Visit>
  void from_root(std::uint32_t root, Visit&& visit) {
    std::array<std::uint32_t, 4> sub{root, 0, 0, 0};
    std::vector<std::uint32_t> ext;
    for (std::uint32_t u : adj_[root])
      if (u > root) ext.push_back(u);
    extend(sub, 1, std::move(ext), root, visit);
  }

 private:
  bool touches(std::uint32_t u, const std::array<std::uint32_t, 4>& sub, unsigned size) const {
    for (unsigned i = 0; i < size; ++i)
      if (shared_vertices(tris_[u], tris_[sub[i]]) > 0) return true;
    return false;
  }

  template <typename Visit>
  void extend(std::array<std::uint32_t, 4>& sub, unsigned size, std::vector<std::uint32_t> ext,
              std::uint32_t root, Visit& visit) {
    visit(sub, size);
    if (size == 4) return;
    if (size == 3) {
      for (std::uint32_t w : ext) {
        sub[3] = w;
        visit(sub, 4u);
      }
      return;
    }
    while (!ext.empty()) {
      const std::uint32_t w = ext.back();
      ext.pop_back();
      std::vector<std::uint32_t> next = ext;
      for (std::uint32_t u : adj_[w])
        if (u > root && !touches(u, sub, size)) next.push_back(u);
      sub[size] = w;
      extend(sub, size + 1, std::move(next), root, visit);
    }
  }

  const std::vector<Triangle>& tris_;
  const std::vector<std::vector<std::uint32_t>>& adj_;
};

}  // namespace detail

/// Counts every connected set of 1-4 triangles of the census by class.
/// Sets with a disconnected union are skipped: their coefficient vanishes.
inline ClassCounts count_classes(const Graph& g, const TriangleCensus& tc,
                                 const EnumerationOptions& opts = {}) {
  const auto& tris = tc.triangles;
  const std::size_t t_count = tris.size();
  auto over_budget = [&](const std::string& detail) {
    return Error(ErrorKind::BudgetExceeded,
                 "fourth_moment_exact: " + detail + " exceeds budget " +
                     std::to_string(opts.budget) + " (" + std::to_string(g.vertex_count()) +
                     " vertices, " + std::to_string(t_count) + " triangles)");
  };

  std::vector<std::vector<std::uint32_t>> incidence(g.vertex_count());
  for (std::uint32_t t = 0; t < t_count; ++t)
    for (Vertex v : tris[t].v) incidence[v].push_back(t);
  // every pair of triangles on a common vertex is a connected 2-set; a pair
  // shares at most two vertices
  unsigned __int128 pair_incidences = 0;
  for (const auto& list : incidence)
    if (!list.empty()) pair_incidences += static_cast<unsigned __int128>(list.size()) * (list.size() - 1) / 2;
  if (pair_incidences / 2 + t_count > opts.budget) throw over_budget("connected pair count");

  std::vector<std::vector<std::uint32_t>> adj(t_count);
  {
    std::vector<std::uint32_t> stamp(t_count, UINT32_MAX);
    for (std::uint32_t t = 0; t < t_count; ++t) {
      stamp[t] = t;
      for (Vertex v : tris[t].v)
        for (std::uint32_t u : incidence[v])
          if (stamp[u] != t) {
            stamp[u] = t;
            adj[t].push_back(u);
          }
      std::sort(adj[t].begin(), adj[t].end());
    }
  }

  const unsigned workers = effective_workers(t_count, opts.threads);
  std::vector<std::unordered_map<ClassKey, std::uint64_t, ClassKeyHash>> local(workers);
  std::atomic<std::uint64_t> total{0};
  std::atomic<bool> exceeded{false};
  // interleave roots so early (high-degree) roots spread across workers
  parallel_blocks(workers, workers, [&](unsigned w, std::size_t, std::size_t) {
    detail::ConnectedSetEnumerator en(tris, adj);
    auto& counts = local[w];
    std::uint64_t pending = 0;
    std::array<Triangle, 4> buf{};
    for (std::size_t root = w; root < t_count; root += workers) {
      if (exceeded.load(std::memory_order_relaxed)) return;
      en.from_root(static_cast<std::uint32_t>(root),
                   [&](const std::array<std::uint32_t, 4>& sub, unsigned size) {
                     for (unsigned i = 0; i < size; ++i) buf[i] = tris[sub[i]];
                     ++counts[canonical_key(std::span<const Triangle>(buf.data(), size))];
                     ++pending;
                   });
      if (pending >= 4096) {
        if (total.fetch_add(pending) + pending > opts.budget) exceeded = true;
        pending = 0;
      }
    }
    if (total.fetch_add(pending) + pending > opts.budget) exceeded = true;
  });
  if (exceeded) throw over_budget("connected triangle-set count");

  ClassCounts out;
  out.sets_enumerated = total.load();
  for (const auto& m : local)
    for (const auto& [key, n] : m) out.counts[key] += n;
  return out;
}

struct ClassEntry {
  ClassKey key;
  RationalPoly coefficient;
  BigInt count;
};

/// Exact E Z3^4 - 3 with its per-class breakdown.
struct Decomposition {
  unsigned colors = 0;
  std::vector<ClassEntry> classes;  // nonzero coefficients, ascending key
  Rational variance;
  Rational numerator;  // sum of coefficient(c) * count
  Rational excess4;
  std::uint64_t sets_enumerated = 0;
};

/// Caches class coefficients across calls; keys are few (63 connected classes).
class CoefficientTable {
 public:
  const RationalPoly& operator()(ClassKey key) {
    auto it = table_.find(key);
    if (it == table_.end()) it = table_.emplace(key, class_coefficient(key)).first;
    return it->second;
  }

 private:
  std::map<ClassKey, RationalPoly> table_;
};

inline Decomposition fourth_moment_exact(const Graph& g, const TriangleCensus& tc,
                                         const PyramidCounts& pc, unsigned colors,
                                         const EnumerationOptions& opts = {}) {
  require_colors(colors, "fourth_moment_exact");
  if (pc.n1 == 0) {
    throw Error(ErrorKind::NoTriangles, "fourth_moment_exact: graph has no triangles (colors=" +
                                            std::to_string(colors) + ")");
  }
  const ClassCounts cc = count_classes(g, tc, opts);
  CoefficientTable coefficient;
  Decomposition d;
  d.colors = colors;
  d.sets_enumerated = cc.sets_enumerated;
  d.variance = t3_mean_var(pc, colors).variance;
  for (const auto& [key, n] : cc.counts) {
    const RationalPoly& coef = coefficient(key);
    if (coef.is_zero()) continue;
    d.numerator += coef.at_colors(colors) * Rational(BigInt(n));
    d.classes.push_back({key, coef, BigInt(n)});
  }
  d.excess4 = d.numerator / (d.variance * d.variance);
  return d;
}

inline Decomposition fourth_moment_exact(const Graph& g, unsigned colors,
                                         const EnumerationOptions& opts = {}) {
  const auto tc = triangle_census(g);
  return fourth_moment_exact(g, tc, pyramid_counts(tc), colors, opts);
}

// ---------------------------------------------------------------------------
// Class discovery

struct ConfigClass {
  ClassKey key;
  RationalPoly coefficient;
  std::vector<Triangle> representative;
  std::string signature;
};

/// Every class with a nonzero coefficient among connected sets of <= 4
/// triangles in K_n (K_9 holds every connected union). Classes are checked to
/// have a connected union; a violation is a logic error.
inline std::vector<ConfigClass> discover_classes(std::int64_t complete_order = 9,
                                                 unsigned threads = default_threads()) {
  const Graph g = generate(FamilySpec::complete(complete_order));
  const auto tc = triangle_census(g);
  EnumerationOptions opts;
  opts.threads = threads;
  opts.budget = UINT64_MAX / 2;
  const ClassCounts cc = count_classes(g, tc, opts);
  std::vector<ConfigClass> out;
  for (const auto& [key, n] : cc.counts) {
    auto rep = representative(key);
    RationalPoly coef = class_coefficient(std::span<const Triangle>(rep));
    if (coef.is_zero()) continue;
    if (!union_connected(rep)) {
      throw std::logic_error("discover_classes: nonzero coefficient on disconnected class " + key.hex());
    }
    out.push_back({key, std::move(coef), std::move(rep), class_signature(key)});
  }
  return out;
}

/// Key of s triangles sharing one edge.
inline ClassKey pyramid_key(unsigned s) {
  std::vector<Triangle> tris;
  for (unsigned i = 0; i < s; ++i) tris.push_back({{0, 1, 2 + i}});
  return canonical_key(tris);
}

/// Key of the four triangles {a,s,u_as}, {b,s,u_bs}, {a,t,u_at}, {b,t,u_bt}:
/// a 4-cycle a-s-b-t with one triangle hung on each cycle edge.
inline ClassKey alternating_cycle_key() {
  // a=0, b=1, s=2, t=3, apexes 4..7
  const std::vector<Triangle> tris{{{0, 2, 4}}, {{1, 2, 5}}, {{0, 3, 6}}, {{1, 3, 7}}};
  return canonical_key(tris);
}

}  // namespace monochrome
