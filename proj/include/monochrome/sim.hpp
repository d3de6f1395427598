#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "monochrome/census.hpp"
#include "monochrome/errors.hpp"
#include "monochrome/graph.hpp"
#include "monochrome/moments.hpp"
#include "monochrome/parallel.hpp"
#include "monochrome/random.hpp"
#include "monochrome/rational.hpp"

namespace monochrome {

enum class Statistic { T2, T3, Both };

constexpr std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::T2: return "T2";
    case Statistic::T3: return "T3";
    case Statistic::Both: return "both";
  }
  return "unknown";
}

struct SimConfig {
  unsigned colors = 2;
  std::uint64_t replications = 1;
  std::uint64_t seed = 0;
  Statistic statistic = Statistic::Both;
  /// Execution detail only; results do not depend on it.
  unsigned threads = default_threads();
};

/// Raw statistic values, indexed by replication.
struct Samples {
  std::vector<std::int64_t> t2;
  std::vector<std::int64_t> t3;
};

inline bool wants_t2(Statistic s) { return s != Statistic::T3; }
inline bool wants_t3(Statistic s) { return s != Statistic::T2; }

/// Draws `replications` independent uniform colorings. Replication r uses the
/// keyed stream (seed, r) alone, so results do not depend on thread count.
inline Samples draw_samples(const Graph& g, const TriangleCensus& tc, const SimConfig& cfg) {
  require_colors(cfg.colors, "sample_statistics");
  if (cfg.replications == 0) {
    throw Error(ErrorKind::BadParams, "sample_statistics: replications must be >= 1");
  }
  const bool do_t2 = wants_t2(cfg.statistic);
  const bool do_t3 = wants_t3(cfg.statistic);
  Samples out;
  if (do_t2) out.t2.assign(cfg.replications, 0);
  if (do_t3) out.t3.assign(cfg.replications, 0);

  std::vector<Vertex> flat_edges;
  if (do_t2) {
    flat_edges.reserve(2 * g.edge_count());
    for (const Edge& e : g.edges()) {
      flat_edges.push_back(e.u);
      flat_edges.push_back(e.v);
    }
  }
  std::vector<Vertex> flat_tris;
  if (do_t3) {
    flat_tris.reserve(3 * tc.triangles.size());
    for (const Triangle& t : tc.triangles) flat_tris.insert(flat_tris.end(), t.v.begin(), t.v.end());
  }
  const ColorSampler sampler(cfg.colors);
  const std::size_t n = g.vertex_count();

  parallel_blocks(cfg.replications, cfg.threads, [&](unsigned, std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> color(n);
    for (std::size_t r = begin; r < end; ++r) {
      KeyedStream stream(cfg.seed, r);
      sampler.fill(stream, color.data(), n);
      if (do_t2) {
        std::int64_t mono = 0;
        for (std::size_t i = 0; i < flat_edges.size(); i += 2)
          mono += color[flat_edges[i]] == color[flat_edges[i + 1]];
        out.t2[r] = mono;
      }
      if (do_t3) {
        std::int64_t mono = 0;
        for (std::size_t i = 0; i < flat_tris.size(); i += 3) {
          const auto a = color[flat_tris[i]];
          mono += (a == color[flat_tris[i + 1]]) & (a == color[flat_tris[i + 2]]);
        }
        out.t3[r] = mono;
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Kolmogorov distance

/// sup over sample points of max(|F_n(x) - F(x)|, |F_n(x-) - F(x)|) for a
/// sorted sample and a continuous reference CDF. Ties are grouped.
inline double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw Error(ErrorKind::EmptySample, "ks_statistic: empty sample");
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double f = cdf(sorted[i]);
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    worst = std::max({worst, std::abs(at - f), std::abs(below - f)});
    i = j;
  }
  return worst;
}

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// ---------------------------------------------------------------------------
// Empirical summaries

struct EmpiricalSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double central4 = 0.0;
  /// (value, fraction of samples <= value), ascending values.
  std::vector<std::pair<std::int64_t, double>> ecdf;
  /// Exact mean and variance used to standardize, when the statistic is
  /// non-degenerate, and the KS distance of the standardized sample to N(0,1).
  std::optional<Rational> exact_mean;
  std::optional<Rational> exact_variance;
  std::optional<double> ks_normal;
};

struct SimReport {
  SimConfig config;
  std::optional<EmpiricalSummary> t2;
  std::optional<EmpiricalSummary> t3;
};

inline EmpiricalSummary summarize(std::span<const std::int64_t> values,
                                  const std::optional<Rational>& exact_mean,
                                  const std::optional<Rational>& exact_variance) {
  EmpiricalSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::map<std::int64_t, std::uint64_t> freq;
  __int128 sum = 0;
  for (auto v : values) {
    ++freq[v];
    sum += v;
  }
  const long double n = static_cast<long double>(values.size());
  const long double mean = static_cast<long double>(sum) / n;
  long double m2 = 0;
  long double m4 = 0;
  std::uint64_t cum = 0;
  for (const auto& [v, k] : freq) {
    const long double d = static_cast<long double>(v) - mean;
    m2 += d * d * k;
    m4 += d * d * d * d * k;
    cum += k;
    s.ecdf.emplace_back(v, static_cast<double>(static_cast<long double>(cum) / n));
  }
  s.mean = static_cast<double>(mean);
  s.variance = static_cast<double>(m2 / n);
  s.central4 = static_cast<double>(m4 / n);
  s.exact_mean = exact_mean;
  s.exact_variance = exact_variance;
  if (exact_mean && exact_variance && *exact_variance > 0) {
    const double mu = to_double(*exact_mean);
    const double sd = std::sqrt(to_double(*exact_variance));
    double worst = 0.0;
    std::uint64_t below = 0;
    for (const auto& [v, k] : freq) {
      const double f = standard_normal_cdf((static_cast<double>(v) - mu) / sd);
      const double lo = static_cast<double>(static_cast<long double>(below) / n);
      below += k;
      const double hi = static_cast<double>(static_cast<long double>(below) / n);
      worst = std::max({worst, std::abs(hi - f), std::abs(lo - f)});
    }
    s.ks_normal = worst;
  }
  return s;
}

/// Monte Carlo report for T2 and/or T3, standardized with exact moments.
inline SimReport sample_statistics(const Graph& g, const TriangleCensus& tc, const SimConfig& cfg,
                                   Samples* keep = nullptr) {
  Samples samples = draw_samples(g, tc, cfg);
  SimReport report;
  report.config = cfg;
  if (wants_t2(cfg.statistic)) {
    std::optional<Rational> mean, var;
    if (g.edge_count() > 0) {
      const auto m = t2_moments(BigInt(g.edge_count()), BigInt(tc.triangles.size()), BigInt(0), cfg.colors);
      mean = m.mean;
      var = m.variance;
    }
    report.t2 = summarize(samples.t2, mean, var);
  }
  if (wants_t3(cfg.statistic)) {
    std::optional<Rational> mean, var;
    const auto pc = pyramid_counts(tc);
    if (pc.n1 > 0) {
      const auto m = t3_mean_var(pc, cfg.colors);
      mean = m.mean;
      var = m.variance;
    }
    report.t3 = summarize(samples.t3, mean, var);
  }
  if (keep) *keep = std::move(samples);
  return report;
}

/// (x - center) / scale for every sample, sorted ascending.
inline std::vector<double> scaled_sorted(std::span<const std::int64_t> values, double center, double scale) {
  std::vector<double> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back((static_cast<double>(v) - center) / scale);
  std::sort(out.begin(), out.end());
  return out;
}

struct EmpiricalAtom {
  double center = 0.0;
  double mass = 0.0;
  std::uint64_t count = 0;
};

/// Splits a sorted sample wherever consecutive values differ by more than
/// `gap`; reports each cluster's mean and mass.
inline std::vector<EmpiricalAtom> detect_atoms(std::span<const double> sorted, double gap) {
  if (sorted.empty()) throw Error(ErrorKind::EmptySample, "detect_atoms: empty sample");
  std::vector<EmpiricalAtom> atoms;
  long double sum = 0;
  std::uint64_t count = 0;
  auto flush = [&] {
    atoms.push_back({static_cast<double>(sum / count),
                     static_cast<double>(count) / static_cast<double>(sorted.size()), count});
    sum = 0;
    count = 0;
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] - sorted[i - 1] > gap) flush();
    sum += sorted[i];
    ++count;
  }
  flush();
  return atoms;
}

/// Comparison of sampled T3 with the reference limit law of its family.
struct LimitLawCheck {
  LimitLaw law;
  std::int64_t n = 0;
  std::vector<EmpiricalAtom> atoms;  // pyramid only
  double gap = 0.0;                  // pyramid only
  double scaled_variance = 0.0;
  double ks_reference = 0.0;  // bipyramid_chain only
};

/// pyramid(n): atoms of (T3 - n/c^2)/n, split at gaps wider than 5x the
/// binomial spread of the smeared atom. bipyramid_chain(n): variance of
/// (T3 - 2n/c^2)/sqrt(n) and its KS distance to the normal mixture.
inline LimitLawCheck check_limit_law(Family family, std::int64_t n, unsigned colors,
                                     std::span<const std::int64_t> t3) {
  LimitLawCheck out;
  out.law = limit_law_reference(family, colors);
  out.n = n;
  const double c = colors;
  const double nn = static_cast<double>(n);
  if (family == Family::Pyramid) {
    const auto scaled = scaled_sorted(t3, nn / (c * c), nn);
    out.gap = 5.0 * std::sqrt(nn * (1.0 / c) * (1.0 - 1.0 / c)) / nn;
    out.atoms = detect_atoms(scaled, out.gap);
    long double m2 = 0;
    long double mean = 0;
    for (double v : scaled) mean += v;
    mean /= scaled.size();
    for (double v : scaled) m2 += (v - mean) * (v - mean);
    out.scaled_variance = static_cast<double>(m2 / scaled.size());
    return out;
  }
  const auto scaled = scaled_sorted(t3, 2.0 * nn / (c * c), std::sqrt(nn));
  long double mean = 0;
  for (double v : scaled) mean += v;
  mean /= scaled.size();
  long double m2 = 0;
  for (double v : scaled) m2 += (v - mean) * (v - mean);
  out.scaled_variance = static_cast<double>(m2 / scaled.size());
  const LimitLaw& law = out.law;
  out.ks_reference = ks_statistic(scaled, [&law](double x) { return law.cdf(x); });
  return out;
}

// ---------------------------------------------------------------------------
// Exact distribution by enumeration

/// Joint counts of (T2, T3) over all c^|V| colorings.
struct JointPmf {
  unsigned colors = 0;
  std::uint64_t total = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> counts;

  Rational mass(std::int64_t t2, std::int64_t t3) const {
    const auto it = counts.find({t2, t3});
    return it == counts.end() ? Rational(0) : Rational(BigInt(it->second), BigInt(total));
  }

  std::map<std::int64_t, std::uint64_t> marginal_t2() const {
    std::map<std::int64_t, std::uint64_t> m;
    for (const auto& [k, n] : counts) m[k.first] += n;
    return m;
  }

  std::map<std::int64_t, std::uint64_t> marginal_t3() const {
    std::map<std::int64_t, std::uint64_t> m;
    for (const auto& [k, n] : counts) m[k.second] += n;
    return m;
  }
};

inline JointPmf exact_distribution(const Graph& g, const TriangleCensus& tc, unsigned colors,
                                   std::uint64_t cap = 10'000'000,
                                   unsigned threads = default_threads()) {
  require_colors(colors, "exact_distribution");
  const std::size_t n = g.vertex_count();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / colors) {
      throw Error(ErrorKind::TooLarge, "exact_distribution: " + std::to_string(colors) + "^" +
                                           std::to_string(n) + " colorings exceed cap " +
                                           std::to_string(cap));
    }
    total *= colors;
  }
  JointPmf pmf;
  pmf.colors = colors;
  pmf.total = total;

  const unsigned workers = effective_workers(total, threads);
  std::vector<std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t>> local(workers);
  parallel_blocks(total, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> color(n, 0);
    std::uint64_t idx = begin;
    for (std::size_t i = 0; i < n; ++i) {
      color[i] = static_cast<std::uint32_t>(idx % colors);
      idx /= colors;
    }
    auto& counts = local[w];
    for (std::size_t k = begin; k < end; ++k) {
      std::int64_t t2 = 0;
      for (const Edge& e : g.edges()) t2 += color[e.u] == color[e.v];
      std::int64_t t3 = 0;
      for (const Triangle& t : tc.triangles)
        t3 += color[t.v[0]] == color[t.v[1]] && color[t.v[0]] == color[t.v[2]];
      ++counts[{t2, t3}];
      for (std::size_t i = 0; i < n; ++i) {
        if (++color[i] < colors) break;
        color[i] = 0;
      }
    }
  });
  for (const auto& m : local)
    for (const auto& [k, c] : m) pmf.counts[k] += c;
  return pmf;
}

struct ExactMoments {
  Rational mean;
  Rational variance;
  Rational central4;
  /// E Z^4 - 3 = central4 / variance^2 - 3, absent when variance is 0.
  std::optional<Rational> excess4;
};

inline ExactMoments exact_moments(const std::map<std::int64_t, std::uint64_t>& marginal,
                                  std::uint64_t total) {
  ExactMoments m;
  const Rational t{BigInt(total)};
  for (const auto& [v, k] : marginal) m.mean += Rational(BigInt(v)) * Rational(BigInt(k));
  m.mean /= t;
  for (const auto& [v, k] : marginal) {
    const Rational d = Rational(BigInt(v)) - m.mean;
    const Rational d2 = d * d;
    m.variance += d2 * Rational(BigInt(k));
    m.central4 += d2 * d2 * Rational(BigInt(k));
  }
  m.variance /= t;
  m.central4 /= t;
  if (m.variance != 0) m.excess4 = m.central4 / (m.variance * m.variance) - 3;
  return m;
}

}  // namespace monochrome
