#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "monochrome/census.hpp"
#include "monochrome/errors.hpp"
#include "monochrome/graph.hpp"
#include "monochrome/poly.hpp"
#include "monochrome/rational.hpp"

namespace monochrome {

/// Subgraph counts the closed-form moments depend on; unset when unused.
struct MomentInputs {
  std::optional<BigInt> edges;
  std::optional<BigInt> triangles;
  std::optional<BigInt> pyramid2;
  std::optional<BigInt> c4;
  unsigned colors = 0;
};

struct MomentReport {
  Rational mean;
  Rational variance;
  /// E Z^4 - 3, when computed.
  std::optional<Rational> excess4;
  MomentInputs inputs;
};

/// Bracketed error terms of the Kolmogorov-distance bounds; the absolute
/// constant in front is unknown and not estimated.
struct BoundReport {
  // Triangle statistic: R1, R2, R1^{1/4} + R2 and its fifth root.
  Rational r1;
  Rational r2;
  // Edge statistic: rational part c/|E| + N(C4)/(c |E|^2) plus the surd |E|^{-1/2}.
  Rational rational_part;
  BigInt surd_radicand;
  double surd = 0.0;
  double bracket = 0.0;
  double bound = 0.0;
};

namespace coeffs {

/// Variance of one triangle indicator, (1/c^2)(1 - 1/c^2), as a polynomial in 1/c.
inline RationalPoly triangle_variance() { return RationalPoly::from_terms({{2, 1}, {4, -1}}); }

/// Covariance weight per edge-sharing triangle pair, 2(1/c^3 - 1/c^4).
inline RationalPoly shared_edge_covariance() {
  return RationalPoly::from_terms({{3, 2}, {4, -2}});
}

/// Edge-statistic fourth-cumulant coefficients for |E|, N(K3) and N(C4).
inline RationalPoly edge_gamma1() {
  return RationalPoly::from_terms({{1, 1}, {2, -7}, {3, 12}, {4, -6}});
}
inline RationalPoly edge_gamma2() {
  // (36/c^2)(1 - 1/c)(1 - 2/c)
  return RationalPoly::from_terms({{2, 36}, {3, -108}, {4, 72}});
}
inline RationalPoly edge_gamma3() {
  // (24/c^3)(1 - 1/c)
  return RationalPoly::from_terms({{3, 24}, {4, -24}});
}

}  // namespace coeffs

inline void require_colors(unsigned colors, const char* op) {
  if (colors < 2) {
    throw Error(ErrorKind::BadParams, std::string(op) + ": colors must be >= 2, got " +
                                          std::to_string(colors));
  }
}

/// Mean and variance of the monochromatic-triangle count T3.
inline MomentReport t3_mean_var(const PyramidCounts& pc, unsigned colors) {
  require_colors(colors, "t3_mean_var");
  if (pc.n1 == 0) {
    throw Error(ErrorKind::NoTriangles, "t3_mean_var: graph has no triangles (colors=" +
                                            std::to_string(colors) + ")");
  }
  MomentReport r;
  const BigInt c = colors;
  r.mean = Rational(pc.n1, c * c);
  r.variance = coeffs::triangle_variance().at_colors(colors) * Rational(pc.n1) +
               coeffs::shared_edge_covariance().at_colors(colors) * Rational(pc.n2);
  r.inputs.triangles = pc.n1;
  r.inputs.pyramid2 = pc.n2;
  r.inputs.colors = colors;
  return r;
}

/// Mean, variance and excess fourth moment of the monochromatic-edge count T2.
inline MomentReport t2_moments(const BigInt& edges, const BigInt& triangles, const BigInt& c4,
                               unsigned colors) {
  require_colors(colors, "t2_moments");
  if (edges == 0) {
    throw Error(ErrorKind::NoEdges, "t2_moments: graph has no edges (colors=" +
                                        std::to_string(colors) + ")");
  }
  MomentReport r;
  const Rational x(BigInt(1), BigInt(colors));
  r.mean = Rational(edges) * x;
  r.variance = Rational(edges) * x * (1 - x);
  const Rational numerator = coeffs::edge_gamma1().at_colors(colors) * Rational(edges) +
                             coeffs::edge_gamma2().at_colors(colors) * Rational(triangles) +
                             coeffs::edge_gamma3().at_colors(colors) * Rational(c4);
  r.excess4 = numerator / (r.variance * r.variance);
  r.inputs = {edges, triangles, std::nullopt, c4, colors};
  return r;
}

inline MomentReport t2_moments(const Graph& g, const TriangleCensus& tc, unsigned colors) {
  return t2_moments(BigInt(g.edge_count()), BigInt(tc.triangles.size()), count_c4(g), colors);
}

/// R1 = (1 + N4)/(N1 + N2)^2, R2 = b/(N1 + N2)^2; bound = (R1^{1/4} + R2)^{1/5}.
inline BoundReport clt_bound_t3(const PyramidCounts& pc, const BigInt& b) {
  if (pc.n1 == 0) throw Error(ErrorKind::NoTriangles, "clt_bound_t3: graph has no triangles");
  BoundReport r;
  const BigInt base = pc.n1 + pc.n2;
  const BigInt denom = base * base;
  r.r1 = Rational(1 + pc.n4, denom);
  r.r2 = Rational(b, denom);
  r.bracket = std::pow(to_double(r.r1), 0.25) + to_double(r.r2);
  r.bound = std::pow(r.bracket, 0.2);
  return r;
}

/// (c/|E| + |E|^{-1/2} + N(C4)/(c |E|^2))^{1/5}.
inline BoundReport clt_bound_t2(const BigInt& edges, const BigInt& c4, unsigned colors) {
  require_colors(colors, "clt_bound_t2");
  if (edges == 0) throw Error(ErrorKind::NoEdges, "clt_bound_t2: graph has no edges");
  BoundReport r;
  const BigInt c = colors;
  r.rational_part = Rational(c, edges) + Rational(c4, c * edges * edges);
  r.surd_radicand = edges;
  r.surd = 1.0 / std::sqrt(to_double(edges));
  r.bracket = to_double(r.rational_part) + r.surd;
  r.bound = std::pow(r.bracket, 0.2);
  return r;
}

// ---------------------------------------------------------------------------
// Reference limit laws for the two non-normal families

struct Atom {
  Rational location;
  Rational mass;
};

struct NormalComponent {
  Rational weight;
  Rational variance;
};

/// pyramid: atoms of (T3 - n/c^2)/n. bipyramid_chain: centered normal mixture
/// for (T3 - 2n/c^2)/sqrt(n).
struct LimitLaw {
  Family family = Family::Pyramid;
  unsigned colors = 0;
  std::vector<Atom> atoms;
  std::vector<NormalComponent> mixture;
  Rational total_variance;

  double cdf(double x) const {
    double acc = 0.0;
    if (!atoms.empty()) {
      for (const auto& a : atoms)
        if (to_double(a.location) <= x) acc += to_double(a.mass);
      return acc;
    }
    for (const auto& comp : mixture) {
      const double sd = std::sqrt(to_double(comp.variance));
      acc += to_double(comp.weight) * 0.5 * std::erfc(-x / (sd * std::sqrt(2.0)));
    }
    return acc;
  }
};

inline LimitLaw limit_law_reference(Family family, unsigned colors) {
  require_colors(colors, "limit_law_reference");
  const Rational x(BigInt(1), BigInt(colors));
  LimitLaw law;
  law.family = family;
  law.colors = colors;
  if (family == Family::Pyramid) {
    law.atoms.push_back({x * (1 - x), x});
    law.atoms.push_back({-x * x, 1 - x});
    for (const auto& a : law.atoms) law.total_variance += a.mass * a.location * a.location;
    return law;
  }
  if (family == Family::BipyramidChain) {
    law.mixture.push_back({x, (4 * x * x * x + 2 * x * x) * (1 - x)});
    law.mixture.push_back({1 - x, 2 * x * x * (1 - 2 * x * x)});
    for (const auto& m : law.mixture) law.total_variance += m.weight * m.variance;
    return law;
  }
  throw Error(ErrorKind::UnsupportedFamily,
              "limit_law_reference: no reference law for family " + std::string(to_string(family)));
}

}  // namespace monochrome
