#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "monochrome/census.hpp"
#include "monochrome/fourthmoment.hpp"
#include "monochrome/graph.hpp"
#include "monochrome/moments.hpp"
#include "monochrome/reference_coefficients.hpp"
#include "monochrome/sim.hpp"

namespace monochrome::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Small graphs whose colorings can be enumerated outright.
inline std::vector<NamedGraph> oracle_corpus() {
  std::vector<NamedGraph> out;
  auto add = [&](std::string name, const FamilySpec& spec) { out.push_back({std::move(name), generate(spec)}); };
  add("K3", FamilySpec::complete(3));
  add("K4", FamilySpec::complete(4));
  add("K5", FamilySpec::complete(5));
  add("C4", FamilySpec::cycle(4));
  add("P5", FamilySpec::path(5));
  add("K1,3", FamilySpec::star(3));
  for (int n = 2; n <= 4; ++n) add("pyramid(" + std::to_string(n) + ")", FamilySpec::pyramid(n));
  add("bipyramid_chain(2)", FamilySpec::bipyramid_chain(2));
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    add("gnp(8,0.4,seed=" + std::to_string(seed) + ")", FamilySpec::gnp(8, 0.4, seed));
  return out;
}

inline constexpr unsigned kOracleColors[] = {2, 3, 5};
inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

inline bool fits_cap(const Graph& g, unsigned c) {
  long double total = 1;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) total *= c;
  return total <= kEnumerationCap;
}

/// Closed-form mean and variance of T2 and T3 (and T2's excess) against
/// full enumeration.
inline CriterionResult exact_moment_oracle(unsigned threads = default_threads()) {
  CriterionResult r{1, "exact-moment oracle equality", true, ""};
  std::size_t checks = 0;
  std::ostringstream fail;
  for (const auto& [name, g] : oracle_corpus()) {
    const auto tc = triangle_census(g);
    const auto pc = pyramid_counts(tc);
    for (unsigned c : kOracleColors) {
      if (!fits_cap(g, c)) continue;
      const auto pmf = exact_distribution(g, tc, c, kEnumerationCap, threads);
      const auto e2 = exact_moments(pmf.marginal_t2(), pmf.total);
      const auto e3 = exact_moments(pmf.marginal_t3(), pmf.total);
      const std::string where = name + " c=" + std::to_string(c);
      if (g.edge_count() > 0) {
        const auto m2 = t2_moments(g, tc, c);
        ++checks;
        if (m2.mean != e2.mean || m2.variance != e2.variance || m2.excess4 != e2.excess4)
          fail << where << " T2 mismatch; ";
      }
      if (pc.n1 > 0) {
        const auto m3 = t3_mean_var(pc, c);
        ++checks;
        if (m3.mean != e3.mean || m3.variance != e3.variance) fail << where << " T3 mismatch; ";
      } else if (e3.variance != 0) {
        fail << where << " triangle-free but T3 not degenerate; ";
      }
    }
  }
  r.passed = fail.str().empty();
  r.detail = r.passed ? std::to_string(checks) + " exact rational comparisons agree" : fail.str();
  return r;
}

/// Class-engine E Z3^4 - 3 against full enumeration, plus spot values.
inline CriterionResult fourth_moment_oracle(unsigned threads = default_threads()) {
  CriterionResult r{2, "fourth-moment oracle equality", true, ""};
  std::size_t checks = 0;
  std::ostringstream fail;
  EnumerationOptions opts;
  opts.threads = threads;
  for (const auto& [name, g] : oracle_corpus()) {
    const auto tc = triangle_census(g);
    const auto pc = pyramid_counts(tc);
    if (pc.n1 == 0) continue;
    for (unsigned c : kOracleColors) {
      if (!fits_cap(g, c)) continue;
      const auto pmf = exact_distribution(g, tc, c, kEnumerationCap, threads);
      const auto e3 = exact_moments(pmf.marginal_t3(), pmf.total);
      const auto d = fourth_moment_exact(g, tc, pc, c, opts);
      ++checks;
      if (!e3.excess4 || d.excess4 != *e3.excess4)
        fail << name << " c=" << c << ": engine " << to_string(d.excess4) << " vs enumeration "
             << (e3.excess4 ? to_string(*e3.excess4) : "undefined") << "; ";
    }
  }
  const struct {
    const char* name;
    FamilySpec spec;
    Rational expected;
  } spots[] = {{"K3", FamilySpec::complete(3), Rational(-2, 3)},
               {"K4", FamilySpec::complete(4), Rational(5, 3)},
               {"pyramid(2)", FamilySpec::pyramid(2), Rational(-1, 4)}};
  for (const auto& s : spots) {
    const auto d = fourth_moment_exact(generate(s.spec), 2, opts);
    if (d.excess4 != s.expected)
      fail << "spot " << s.name << ": " << to_string(d.excess4) << " expected " << to_string(s.expected) << "; ";
  }
  r.passed = fail.str().empty();
  r.detail = r.passed ? std::to_string(checks) + " graph/color pairs agree; spot values -2/3, 5/3, -1/4 hold"
                      : fail.str();
  return r;
}

inline const RationalPoly& reference_row(const std::vector<NamedCoefficient>& rows, const std::string& name) {
  for (const auto& row : rows)
    if (row.name == name) return row.coefficient;
  throw std::logic_error("no reference row " + name);
}

inline CriterionResult class_discovery(const std::vector<ConfigClass>& classes) {
  CriterionResult r{3, "class discovery on K9", true, ""};
  std::ostringstream fail;
  const auto rows = reference_coefficients();
  if (classes.size() != 32) fail << "found " << classes.size() << " nonzero classes, expected 32; ";
  auto find = [&](ClassKey key) -> const ConfigClass* {
    for (const auto& c : classes)
      if (c.key == key) return &c;
    return nullptr;
  };
  for (unsigned s = 1; s <= 4; ++s) {
    const auto* c = find(pyramid_key(s));
    const std::string row = "delta" + std::to_string(s);
    if (!c || !(c->coefficient == reference_row(rows, row))) fail << row << " mismatch; ";
  }
  const auto* h16 = find(alternating_cycle_key());
  const auto expected_h16 = RationalPoly::from_terms({{7, 24}, {8, -24}});
  if (!h16 || !(h16->coefficient == expected_h16) || !(expected_h16 == reference_row(rows, "h16")))
    fail << "h16 mismatch; ";
  // the whole coefficient multiset, beyond the structurally named rows
  std::vector<std::string> found, published;
  for (const auto& c : classes) found.push_back(c.coefficient.to_string());
  for (const auto& row : rows) published.push_back(row.coefficient.to_string());
  std::sort(found.begin(), found.end());
  std::sort(published.begin(), published.end());
  if (found != published) fail << "coefficient multiset differs from the 32 published rows; ";
  r.passed = fail.str().empty();
  r.detail = r.passed ? "32 classes; delta1..delta4 and h16 match; all 32 rows match as a multiset" : fail.str();
  return r;
}

inline CriterionResult sign_dichotomy(const std::vector<ConfigClass>& classes) {
  CriterionResult r{4, "sign dichotomy", true, ""};
  std::ostringstream fail;
  for (unsigned c : {5u, 6u, 7u, 10u})
    for (const auto& k : classes)
      if (k.coefficient.at_colors(c) <= 0) fail << k.signature << " not positive at c=" << c << "; ";
  const auto delta4 = class_coefficient(pyramid_key(4));
  for (unsigned c : {2u, 3u, 4u})
    if (delta4.at_colors(c) >= 0) fail << "delta4 not negative at c=" << c << "; ";
  if (delta4.at_colors(2) != Rational(-3, 16)) fail << "delta4(2) = " << to_string(delta4.at_colors(2)) << "; ";
  const auto h16 = class_coefficient(alternating_cycle_key());
  if (h16.at_colors(2) != Rational(3, 32)) fail << "h16(2) = " << to_string(h16.at_colors(2)) << "; ";
  r.passed = fail.str().empty();
  r.detail = r.passed ? "all classes positive at c=5,6,7,10; delta4<0 at c=2,3,4; delta4(2)=-3/16; h16(2)=3/32"
                      : fail.str();
  return r;
}

/// Standardized KS distance of sampled T3 to the standard normal.
inline double ks_t3(const Graph& g, const TriangleCensus& tc, unsigned colors, std::uint64_t reps,
                    std::uint64_t seed, unsigned threads) {
  SimConfig cfg{colors, reps, seed, Statistic::T3, threads};
  return *sample_statistics(g, tc, cfg).t3->ks_normal;
}

inline double ks_t2(const Graph& g, const TriangleCensus& tc, unsigned colors, std::uint64_t reps,
                    std::uint64_t seed, unsigned threads) {
  SimConfig cfg{colors, reps, seed, Statistic::T2, threads};
  return *sample_statistics(g, tc, cfg).t2->ks_normal;
}

inline constexpr std::uint64_t kReplications = 100'000;
inline constexpr std::uint64_t kSeed = 7;

inline CriterionResult counterexample(unsigned threads = default_threads()) {
  CriterionResult r{5, "composite counterexample", true, ""};
  std::ostringstream fail, info;
  EnumerationOptions opts;
  opts.threads = threads;
  Rational previous = -1;
  for (int n : {6, 8, 12, 16}) {
    const Graph g = generate(FamilySpec::composite(n, 2));
    const auto tc = triangle_census(g);
    const auto d = fourth_moment_exact(g, tc, pyramid_counts(tc), 2, opts);
    const Rational mag = d.excess4 < 0 ? Rational(-d.excess4) : d.excess4;
    const double ks = ks_t3(g, tc, 2, kReplications, kSeed, threads);
    info << "n=" << n << " excess=" << to_string(d.excess4) << " (" << to_double(d.excess4) << ") KS=" << ks
         << "; ";
    if (previous >= 0 && !(mag < previous)) fail << "|excess| not decreasing at n=" << n << "; ";
    previous = mag;
    if (n == 8) {
      if (composite_partner_size(8, 2) != 17) fail << "n'(8) != 17; ";
      if (!(d.excess4 < 0 && mag > Rational(1, 20) && mag < Rational(3, 10)))
        fail << "n=8 excess outside (-0.3, -0.05); ";
    }
    if (ks < 0.05) fail << "KS " << ks << " < 0.05 at n=" << n << "; ";
  }
  r.passed = fail.str().empty();
  r.detail = fail.str() + info.str();
  r.detail.resize(r.detail.size() - 2);
  return r;
}

inline CriterionResult pyramid_law(unsigned threads = default_threads()) {
  CriterionResult r{6, "pyramid two-point law", true, ""};
  const std::int64_t n = 2000;
  const Graph g = generate(FamilySpec::pyramid(n));
  const auto tc = triangle_census(g);
  Samples s;
  sample_statistics(g, tc, {2, kReplications, kSeed, Statistic::T3, threads}, &s);
  const auto check = check_limit_law(Family::Pyramid, n, 2, s.t3);
  std::ostringstream out;
  bool ok = check.atoms.size() == 2;
  out << check.atoms.size() << " atoms";
  for (const auto& a : check.atoms) out << "; center " << a.center << " mass " << a.mass;
  if (ok) {
    const auto& lo = check.atoms[0];
    const auto& hi = check.atoms[1];
    ok = std::abs(lo.mass - 0.5) <= 0.01 && std::abs(hi.mass - 0.5) <= 0.01 && std::abs(lo.center + 0.25) <= 0.035 &&
         std::abs(hi.center - 0.25) <= 0.035;
  }
  r.passed = ok;
  r.detail = out.str();
  return r;
}

inline CriterionResult bipyramid_law(unsigned threads = default_threads()) {
  CriterionResult r{7, "bipyramid-chain mixture law", true, ""};
  const std::int64_t n = 4000;
  const Graph g = generate(FamilySpec::bipyramid_chain(n));
  const auto tc = triangle_census(g);
  Samples s;
  sample_statistics(g, tc, {2, kReplications, kSeed, Statistic::T3, threads}, &s);
  const auto check = check_limit_law(Family::BipyramidChain, n, 2, s.t3);
  const double rel = std::abs(check.scaled_variance - 0.375) / 0.375;
  r.passed = rel <= 0.03 && check.ks_reference <= 0.02;
  std::ostringstream out;
  out << "scaled variance " << check.scaled_variance << " (rel err " << rel << "); KS vs mixture "
      << check.ks_reference;
  r.detail = out.str();
  return r;
}

inline CriterionResult normal_regime(unsigned threads = default_threads()) {
  CriterionResult r{8, "normal regime and bound brackets", true, ""};
  std::ostringstream out;
  bool ok = true;
  {
    const Graph g = generate(FamilySpec::gnp(60, 0.3, 1));
    const auto tc = triangle_census(g);
    const double ks = ks_t3(g, tc, 3, kReplications, kSeed, threads);
    ok &= ks <= 0.03;
    out << "gnp(60,0.3) c=3 KS(Z3)=" << ks << "; ";
  }
  {
    const Graph g = generate(FamilySpec::gnp(200, 0.1, 1));
    const auto tc = triangle_census(g);
    const double ks = ks_t2(g, tc, 2, kReplications, kSeed, threads);
    ok &= ks <= 0.02;
    out << "gnp(200,0.1) c=2 KS(Z2)=" << ks << "; ";
  }
  {
    const Graph g = generate(FamilySpec::star(5000));
    const auto tc = triangle_census(g);
    const double ks = ks_t2(g, tc, 2, kReplications, kSeed, threads);
    ok &= ks <= 0.03;
    out << "K1,5000 c=2 KS(Z2)=" << ks << "; ";
  }
  {
    const Graph g = generate(FamilySpec::pyramid(10));
    const auto tc = triangle_census(g);
    const auto b = clt_bound_t3(pyramid_counts(tc), b_statistic(g, tc));
    const bool exact = b.r1 == Rational(211, 3025) && b.r2 == Rational(9, 605);
    ok &= exact && std::isfinite(b.bound) && b.bound > 0;
    out << "pyramid(10) R1=" << to_string(b.r1) << " R2=" << to_string(b.r2) << " bracket^(1/5)=" << b.bound;
  }
  r.passed = ok;
  r.detail = out.str();
  return r;
}

}  // namespace monochrome::verify
