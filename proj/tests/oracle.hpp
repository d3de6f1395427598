#pragma once

// Full-coloring enumeration used as ground truth by several test files. It
// finds triangles by a triple loop over vertices and walks colorings with its
// own odometer, sharing no code with the census or sim modules.

#include <array>
#include <vector>

#include "monochrome/graph.hpp"
#include "monochrome/rational.hpp"

namespace oracle {

using monochrome::BigInt;
using monochrome::Graph;
using monochrome::Rational;
using monochrome::Vertex;

struct Moments {
  Rational mean;
  Rational variance;
  Rational central4;
};

struct Enumerated {
  Moments t2;
  Moments t3;
};

inline Moments from_power_sums(const std::array<BigInt, 5>& s) {
  const Rational n{s[0]};
  const Rational m1 = Rational(s[1]) / n;
  const Rational m2 = Rational(s[2]) / n;
  const Rational m3 = Rational(s[3]) / n;
  const Rational m4 = Rational(s[4]) / n;
  Moments m;
  m.mean = m1;
  m.variance = m2 - m1 * m1;
  m.central4 = m4 - 4 * m3 * m1 + 6 * m2 * m1 * m1 - 3 * m1 * m1 * m1 * m1;
  return m;
}

inline Enumerated enumerate(const Graph& g, unsigned colors) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<std::array<Vertex, 3>> tris;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)) tris.push_back({a, b, c});
  std::array<BigInt, 5> s2{}, s3{};
  std::array<unsigned long long, 5> a2{}, a3{};
  std::vector<unsigned> col(n, 0);
  while (true) {
    unsigned long long t2 = 0, t3 = 0;
    for (const auto& e : g.edges()) t2 += col[e.u] == col[e.v];
    for (const auto& t : tris) t3 += col[t[0]] == col[t[1]] && col[t[1]] == col[t[2]];
    unsigned long long p2 = 1, p3 = 1;
    for (int k = 0; k <= 4; ++k) {
      a2[k] += p2;
      a3[k] += p3;
      p2 *= t2;
      p3 *= t3;
    }
    Vertex i = 0;
    while (i < n && ++col[i] == colors) col[i++] = 0;
    if (i == n) break;
  }
  for (int k = 0; k <= 4; ++k) {
    s2[k] = a2[k];
    s3[k] = a3[k];
  }
  return {from_power_sums(s2), from_power_sums(s3)};
}

}  // namespace oracle
