#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "monochrome/census.hpp"
#include "monochrome/moments.hpp"
#include "monochrome/sim.hpp"
#include "oracle.hpp"

using namespace monochrome;

namespace {

std::vector<Graph> oracle_graphs() {
  std::vector<Graph> out;
  for (int n = 3; n <= 5; ++n) out.push_back(generate(FamilySpec::complete(n)));
  out.push_back(generate(FamilySpec::cycle(4)));
  out.push_back(generate(FamilySpec::path(5)));
  out.push_back(generate(FamilySpec::star(3)));
  for (int n = 2; n <= 4; ++n) out.push_back(generate(FamilySpec::pyramid(n)));
  out.push_back(generate(FamilySpec::bipyramid_chain(2)));
  for (std::uint64_t s = 1; s <= 5; ++s) out.push_back(generate(FamilySpec::gnp(8, 0.4, s)));
  return out;
}

Rational excess_of(const oracle::Moments& m) { return m.central4 / (m.variance * m.variance) - 3; }

}  // namespace

TEST(Poly, Basics) {
  const auto a = RationalPoly::from_terms({{2, 1}, {4, -1}});
  EXPECT_EQ(a.degree(), 4u);
  EXPECT_EQ(a.lowest_power(), 2u);
  EXPECT_EQ(a.at_colors(2), Rational(3, 16));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((a * a).at_colors(3), a.at_colors(3) * a.at_colors(3));
  EXPECT_EQ((a + a), a * Rational(2));
  EXPECT_EQ(a.to_string(), "p(x) = 1 x^2 - 1 x^4");
  EXPECT_EQ(RationalPoly().to_string(), "p(x) = 0");
  EXPECT_TRUE(a.has_integer_coefficients());
}

TEST(T3, Examples) {
  auto mv = [](const FamilySpec& s, unsigned c) {
    return t3_mean_var(pyramid_counts(triangle_census(generate(s))), c);
  };
  const auto k4 = mv(FamilySpec::complete(4), 2);
  EXPECT_EQ(k4.mean, 1);
  EXPECT_EQ(k4.variance, Rational(3, 2));
  const auto k3 = mv(FamilySpec::complete(3), 2);
  EXPECT_EQ(k3.mean, Rational(1, 4));
  EXPECT_EQ(k3.variance, Rational(3, 16));
  const auto p10 = mv(FamilySpec::pyramid(10), 3);
  EXPECT_EQ(p10.mean, Rational(10, 9));
  EXPECT_EQ(p10.variance, Rational(260, 81));
}

TEST(T3, Pyramid3CrossCheck) {
  const auto e = oracle::enumerate(generate(FamilySpec::pyramid(3)), 3);
  const auto m = t3_mean_var(pyramid_counts(triangle_census(generate(FamilySpec::pyramid(3)))), 3);
  EXPECT_EQ(m.mean, e.t3.mean);
  EXPECT_EQ(m.variance, e.t3.variance);
}

TEST(T3, NoTriangles) {
  try {
    t3_mean_var(pyramid_counts(triangle_census(generate(FamilySpec::cycle(4)))), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoTriangles);
  }
}

TEST(T2, Examples) {
  const auto edge = t2_moments(1, 0, 0, 2);
  EXPECT_EQ(edge.mean, Rational(1, 2));
  EXPECT_EQ(edge.variance, Rational(1, 4));
  EXPECT_EQ(*edge.excess4, -2);

  const Graph star = generate(FamilySpec::star(3));
  const auto s = t2_moments(star, triangle_census(star), 2);
  EXPECT_EQ(s.mean, Rational(3, 2));
  EXPECT_EQ(s.variance, Rational(3, 4));
  EXPECT_EQ(*s.excess4, Rational(-2, 3));

  const Graph k4 = generate(FamilySpec::complete(4));
  const auto k = t2_moments(k4, triangle_census(k4), 2);
  EXPECT_EQ(k.mean, 3);
  EXPECT_EQ(k.variance, Rational(3, 2));
  EXPECT_EQ(*k.excess4, Rational(5, 3));
}

TEST(T2, NoEdges) {
  try {
    t2_moments(0, 0, 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoEdges);
  }
}

TEST(Colors, AtLeastTwo) {
  try {
    t2_moments(3, 0, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParams);
  }
}

TEST(Oracle, ClosedFormsMatchEnumeration) {
  for (const Graph& g : oracle_graphs()) {
    const auto tc = triangle_census(g);
    const auto pc = pyramid_counts(tc);
    for (unsigned c : {2u, 3u, 5u}) {
      const auto e = oracle::enumerate(g, c);
      const auto m2 = t2_moments(g, tc, c);
      EXPECT_EQ(m2.mean, e.t2.mean);
      EXPECT_EQ(m2.variance, e.t2.variance);
      EXPECT_EQ(*m2.excess4, excess_of(e.t2));
      if (pc.n1 > 0) {
        const auto m3 = t3_mean_var(pc, c);
        EXPECT_EQ(m3.mean, e.t3.mean);
        EXPECT_EQ(m3.variance, e.t3.variance);
      }
    }
  }
}

TEST(T2, VarianceIdentityInColors) {
  for (unsigned c : {2u, 3u, 4u, 7u, 11u}) {
    const auto m = t2_moments(17, 3, 2, c);
    EXPECT_EQ(m.variance, Rational(17, c) * (1 - Rational(1, c)));
  }
}

TEST(T2, ExcessInvariantUnderRelabeling) {
  std::mt19937_64 rng(3);
  const Graph g = generate(FamilySpec::gnp(25, 0.3, 9));
  const auto tc = triangle_census(g);
  const auto base = t2_moments(g, tc, 3);
  std::vector<Vertex> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  const Graph h = relabel(g, perm);
  const auto th = triangle_census(h);
  EXPECT_EQ(th.triangles.size(), tc.triangles.size());
  EXPECT_EQ(count_c4(h), count_c4(g));
  EXPECT_EQ(*t2_moments(h, th, 3).excess4, *base.excess4);
}

TEST(Bounds, T3Examples) {
  const Graph p = generate(FamilySpec::pyramid(10));
  const auto tp = triangle_census(p);
  const auto bp = clt_bound_t3(pyramid_counts(tp), b_statistic(p, tp));
  EXPECT_EQ(bp.r1, Rational(211, 3025));
  EXPECT_EQ(bp.r2, Rational(9, 605));
  EXPECT_NEAR(bp.bracket, std::pow(211.0 / 3025, 0.25) + 9.0 / 605, 1e-12);
  EXPECT_NEAR(bp.bound, std::pow(bp.bracket, 0.2), 1e-12);

  const Graph k = generate(FamilySpec::complete(4));
  const auto tk = triangle_census(k);
  const auto bk = clt_bound_t3(pyramid_counts(tk), b_statistic(k, tk));
  EXPECT_EQ(bk.r1, Rational(1, 100));
  EXPECT_EQ(bk.r2, Rational(12, 25));

  try {
    clt_bound_t3(PyramidCounts{}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoTriangles);
  }
}

TEST(Bounds, T2Examples) {
  const auto k4 = clt_bound_t2(6, 3, 2);
  EXPECT_EQ(k4.rational_part, Rational(1, 3) + Rational(3, 72));
  const double inner = 1.0 / 3 + 1 / std::sqrt(6.0) + 3.0 / 72;
  EXPECT_NEAR(k4.bound, std::pow(inner, 0.2), 1e-12 * std::pow(inner, 0.2));
  EXPECT_NEAR(k4.bound, 0.9523, 5e-5);

  const auto star = clt_bound_t2(100, 0, 2);
  EXPECT_EQ(star.rational_part, Rational(1, 50));
  EXPECT_NEAR(star.bracket, 0.12, 1e-12);
  EXPECT_NEAR(star.bound, 0.6544, 5e-5);

  try {
    clt_bound_t2(0, 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoEdges);
  }
}

TEST(Bounds, PyramidR1Limit) {
  const Graph g = generate(FamilySpec::pyramid(200));
  const auto tc = triangle_census(g);
  const auto b = clt_bound_t3(pyramid_counts(tc), b_statistic(g, tc));
  EXPECT_LT(std::abs(to_double(b.r1) - 1.0 / 6), 0.01);
}

TEST(Bounds, BipyramidR2Limit) {
  const Graph g = generate(FamilySpec::bipyramid_chain(200));
  const auto tc = triangle_census(g);
  const auto b = b_statistic(g, tc);
  EXPECT_EQ(b, binomial(std::uint64_t{200}, 2));
  const auto r = clt_bound_t3(pyramid_counts(tc), b);
  EXPECT_LT(std::abs(to_double(r.r2) - 1.0 / 8), 0.01);
}

TEST(LimitLaw, Pyramid) {
  const auto law = limit_law_reference(Family::Pyramid, 2);
  ASSERT_EQ(law.atoms.size(), 2u);
  EXPECT_EQ(law.atoms[0].location, Rational(1, 4));
  EXPECT_EQ(law.atoms[0].mass, Rational(1, 2));
  EXPECT_EQ(law.atoms[1].location, Rational(-1, 4));
  EXPECT_EQ(law.atoms[1].mass, Rational(1, 2));
  EXPECT_DOUBLE_EQ(law.cdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(law.cdf(1.0), 1.0);
}

TEST(LimitLaw, AtomsCentered) {
  for (unsigned c : {2u, 3u, 5u}) {
    const auto law = limit_law_reference(Family::Pyramid, c);
    Rational mean, mass;
    for (const auto& a : law.atoms) {
      mean += a.mass * a.location;
      mass += a.mass;
    }
    EXPECT_EQ(mean, 0);
    EXPECT_EQ(mass, 1);
  }
}

TEST(LimitLaw, Bipyramid) {
  const auto two = limit_law_reference(Family::BipyramidChain, 2);
  ASSERT_EQ(two.mixture.size(), 2u);
  EXPECT_EQ(two.mixture[0].variance, Rational(1, 2));
  EXPECT_EQ(two.mixture[1].variance, Rational(1, 4));
  EXPECT_EQ(two.total_variance, Rational(3, 8));

  const auto three = limit_law_reference(Family::BipyramidChain, 3);
  EXPECT_EQ(three.mixture[0].weight, Rational(1, 3));
  EXPECT_EQ(three.mixture[1].weight, Rational(2, 3));
  EXPECT_EQ(three.mixture[0].variance, (Rational(4, 27) + Rational(2, 9)) * Rational(2, 3));
  EXPECT_EQ(three.mixture[1].variance, Rational(2, 9) * (1 - Rational(2, 9)));
}

TEST(LimitLaw, BipyramidThreeColorsMonteCarlo) {
  const std::int64_t n = 1500;
  const Graph g = generate(FamilySpec::bipyramid_chain(n));
  const auto tc = triangle_census(g);
  Samples s;
  sample_statistics(g, tc, {3, 20000, 21, Statistic::T3, 1}, &s);
  const auto check = check_limit_law(Family::BipyramidChain, n, 3, s.t3);
  const double expected = to_double(limit_law_reference(Family::BipyramidChain, 3).total_variance);
  // relative sd of a variance estimate from 2e4 samples is about 1.5%
  EXPECT_NEAR(check.scaled_variance, expected, 0.06 * expected);
}

TEST(LimitLaw, Unsupported) {
  try {
    limit_law_reference(Family::Complete, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedFamily);
  }
}
