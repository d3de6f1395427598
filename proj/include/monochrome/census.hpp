#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "monochrome/graph.hpp"
#include "monochrome/rational.hpp"

namespace monochrome {

/// Vertex triple with v[0] < v[1] < v[2].
struct Triangle {
  std::array<Vertex, 3> v{};

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// All triangles of a graph plus the per-edge triangle support d(e).
struct TriangleCensus {
  std::vector<Triangle> triangles;
  /// d(e) indexed by edge id of the source graph; 0 for edges in no triangle.
  std::vector<std::uint64_t> support;
  /// Number of triangles containing each vertex.
  std::vector<std::uint64_t> vertex_triangles;

  std::uint64_t support_of(const Graph& g, Vertex a, Vertex b) const {
    const auto id = g.edge_id(a, b);
    return id ? support[*id] : 0;
  }
};

/// N(pyramid_s) for s = 1..4: s triangles sharing one common edge.
struct PyramidCounts {
  BigInt n1;
  BigInt n2;
  BigInt n3;
  BigInt n4;

  friend bool operator==(const PyramidCounts&, const PyramidCounts&) = default;
};

/// Exhaustive triangle listing by degree-ordered neighbor intersection.
/// Each triangle appears once, vertices ascending, list sorted.
inline TriangleCensus triangle_census(const Graph& g) {
  const std::size_t n = g.vertex_count();
  TriangleCensus tc;
  tc.support.assign(g.edge_count(), 0);
  tc.vertex_triangles.assign(n, 0);

  // rank by (degree, id); orient each edge toward the higher rank
  auto higher = [&](Vertex a, Vertex b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::vector<Vertex>> out(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex w : g.neighbors(u))
      if (higher(u, w)) out[u].push_back(w);

  std::vector<char> mark(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex w : out[u]) mark[w] = 1;
    for (Vertex v : out[u]) {
      for (Vertex w : out[v]) {
        if (!mark[w]) continue;
        std::array<Vertex, 3> t{u, v, w};
        std::sort(t.begin(), t.end());
        tc.triangles.push_back({t});
      }
    }
    for (Vertex w : out[u]) mark[w] = 0;
  }
  std::sort(tc.triangles.begin(), tc.triangles.end());

  for (const Triangle& t : tc.triangles) {
    ++tc.support[*g.edge_id(t.v[0], t.v[1])];
    ++tc.support[*g.edge_id(t.v[0], t.v[2])];
    ++tc.support[*g.edge_id(t.v[1], t.v[2])];
    for (Vertex x : t.v) ++tc.vertex_triangles[x];
  }
  return tc;
}

/// N(pyramid_1) = (1/3) sum_e d(e); N(pyramid_s) = sum_e C(d(e), s) for s = 2..4.
inline PyramidCounts pyramid_counts(const TriangleCensus& tc) {
  PyramidCounts pc;
  BigInt total;
  for (std::uint64_t d : tc.support) {
    if (d == 0) continue;
    total += d;
    pc.n2 += binomial(d, 2);
    pc.n3 += binomial(d, 3);
    pc.n4 += binomial(d, 4);
  }
  pc.n1 = total / 3;
  return pc;
}

/// Number of 4-cycle subgraphs: sum over vertex pairs of C(codegree, 2), halved.
inline BigInt count_c4(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> codegree(n, 0);
  std::vector<Vertex> touched;
  BigInt total;
  for (Vertex u = 0; u < n; ++u) {
    touched.clear();
    for (Vertex v : g.neighbors(u)) {
      for (Vertex w : g.neighbors(v)) {
        if (w <= u) continue;
        if (codegree[w]++ == 0) touched.push_back(w);
      }
    }
    unsigned __int128 local = 0;
    for (Vertex w : touched) {
      const std::uint64_t k = codegree[w];
      local += static_cast<unsigned __int128>(k) * (k - 1) / 2;
      codegree[w] = 0;
    }
    total += BigInt(local);
  }
  return total / 2;
}

/// Weighted 4-cycle count: the sum over every 4-cycle u-v-w-x of
/// d(uv) d(vw) d(wx) d(xu). Equal to summing the three cyclic pairings over
/// all vertex 4-sets.
///
/// For each diagonal {u, w} with weights a_v = d(uv) d(vw) over common
/// neighbors v, the cycles through that diagonal contribute
/// ((sum a_v)^2 - sum a_v^2) / 2; each cycle has two diagonals.
inline BigInt b_statistic(const Graph& g, const TriangleCensus& tc) {
  const std::size_t n = g.vertex_count();
  std::vector<unsigned __int128> weight(n, 0);
  std::vector<unsigned __int128> weight_sq(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> touched;
  BigInt twice;
  for (Vertex u = 0; u < n; ++u) {
    touched.clear();
    const auto nu = g.neighbors(u);
    const auto eu = g.incident_edges(u);
    for (std::size_t i = 0; i < nu.size(); ++i) {
      const std::uint64_t duv = tc.support[eu[i]];
      if (duv == 0) continue;
      const Vertex v = nu[i];
      const auto nv = g.neighbors(v);
      const auto ev = g.incident_edges(v);
      for (std::size_t j = 0; j < nv.size(); ++j) {
        const Vertex w = nv[j];
        if (w <= u) continue;
        const std::uint64_t dvw = tc.support[ev[j]];
        if (dvw == 0) continue;
        const unsigned __int128 a = static_cast<unsigned __int128>(duv) * dvw;
        weight[w] += a;
        weight_sq[w] += a * a;
        if (!seen[w]) {
          seen[w] = 1;
          touched.push_back(w);
        }
      }
    }
    for (Vertex w : touched) {
      const BigInt s = BigInt(weight[w]);
      twice += (s * s - BigInt(weight_sq[w])) / 2;
      weight[w] = 0;
      weight_sq[w] = 0;
      seen[w] = 0;
    }
  }
  return twice / 2;
}

/// Per-vertex ordering score: triangles through v plus pairs of triangles that
/// share an edge incident to v, i.e. sum over neighbors u of C(d(uv), 2).
inline std::vector<BigInt> vertex_scores(const Graph& g, const TriangleCensus& tc) {
  std::vector<BigInt> score(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    BigInt s = tc.vertex_triangles[v];
    for (std::uint32_t id : g.incident_edges(v)) {
      const std::uint64_t d = tc.support[id];
      if (d >= 2) s += binomial(d, 2);
    }
    score[v] = std::move(s);
  }
  return score;
}

/// Vertices by descending score, ties by ascending id.
inline std::vector<Vertex> score_ordering(const Graph& g, const TriangleCensus& tc) {
  const auto score = vertex_scores(g, tc);
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return score[a] > score[b]; });
  return order;
}

/// s = sum over position triples p1 < p2 < p3 of d(p1,p3)^2 d(p2,p3)^2, where
/// positions index `order` (order[i] is the vertex at position i).
inline BigInt s_statistic(const Graph& g, const TriangleCensus& tc,
                          std::span<const Vertex> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) {
    throw Error(ErrorKind::BadParams, "s_statistic: ordering has " + std::to_string(order.size()) +
                                          " entries for " + std::to_string(n) + " vertices");
  }
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != n) {
      throw Error(ErrorKind::BadParams, "s_statistic: ordering is not a permutation");
    }
    position[order[i]] = i;
  }
  BigInt total;
  for (Vertex top = 0; top < n; ++top) {
    BigInt sum;
    BigInt sum_sq;
    const auto nb = g.neighbors(top);
    const auto ids = g.incident_edges(top);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (position[nb[i]] >= position[top]) continue;
      const std::uint64_t d = tc.support[ids[i]];
      if (d == 0) continue;
      const BigInt d2 = BigInt(d) * d;
      sum += d2;
      sum_sq += d2 * d2;
    }
    total += (sum * sum - sum_sq) / 2;
  }
  return total;
}

/// s / [(N1 + N2)^{3/2} (1 + N4)^{1/4}]; the ordering bound holds with an
/// unspecified constant, so this ratio is a diagnostic.
inline double ordering_bound_ratio(const BigInt& s, const PyramidCounts& pc) {
  const double base = to_double(BigInt(pc.n1 + pc.n2));
  if (base == 0.0) return 0.0;
  return to_double(s) / (std::pow(base, 1.5) * std::pow(1.0 + to_double(pc.n4), 0.25));
}

}  // namespace monochrome
