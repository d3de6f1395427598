#pragma once

#include <string>
#include <vector>

#include "monochrome/poly.hpp"

namespace monochrome {

struct NamedCoefficient {
  std::string name;
  RationalPoly coefficient;
};

/// Published closed forms of the 32 nonzero fourth-cumulant coefficients for
/// monochromatic triangles, as polynomials in x = 1/c. delta1..delta4 belong
/// to 1..4 triangles sharing one edge; h16 to the alternating 4-cycle of
/// triangles. The h-row figure drawings are not available, so the remaining
/// rows are matched only as a multiset.
inline std::vector<NamedCoefficient> reference_coefficients() {
  using P = RationalPoly;
  auto scaled = [](long long s, std::initializer_list<std::pair<std::size_t, long long>> t) {
    return P::from_terms(t) * Rational(s);
  };
  return {
      {"delta1", P::from_terms({{2, 1}, {4, -7}, {6, 12}, {8, -6}})},
      {"delta2", P::from_terms({{3, 14}, {4, -14}, {5, -72}, {6, 60}, {7, 96}, {8, -84}})},
      {"delta3", scaled(36, {{4, 1}, {5, -3}, {6, -2}, {7, 10}, {8, -6}})},
      {"delta4", scaled(24, {{5, 1}, {6, -7}, {7, 12}, {8, -6}})},
      {"h1", scaled(36, {{4, 1}, {5, -1}, {6, -2}, {7, 2}})},
      {"h2", scaled(36, {{3, 1}, {5, -5}, {7, 10}, {8, -6}})},
      {"h3", scaled(36, {{5, 1}, {6, -1}, {7, -2}, {8, 2}})},
      {"h4", scaled(12, {{4, 3}, {5, -6}, {6, -5}, {7, 16}, {8, -8}})},
      {"h5", scaled(24, {{5, 1}, {6, -3}, {7, 3}, {8, -1}})},
      {"h6", scaled(24, {{5, 1}, {6, -3}, {7, 2}})},
      {"h7", scaled(24, {{5, 1}, {6, -4}, {7, 5}, {8, -2}})},
      {"h8", scaled(24, {{5, 1}, {6, -3}, {7, 3}, {8, -1}})},
      {"h9", scaled(24, {{5, 1}, {6, -2}, {8, 1}})},
      {"h10", scaled(24, {{5, 1}, {6, -1}, {7, -1}, {8, 1}})},
      {"h11", scaled(24, {{4, 1}, {6, -6}, {7, 8}, {8, -3}})},
      {"h12", scaled(24, {{4, 1}, {5, -1}, {6, -5}, {7, 9}, {8, -4}})},
      {"h13", scaled(24, {{4, 1}, {5, -1}, {6, -4}, {7, 6}, {8, -2}})},
      {"h14", scaled(24, {{4, 1}, {6, -5}, {7, 5}, {8, -1}})},
      {"h15", scaled(24, {{6, 1}, {7, -2}, {8, 1}})},
      {"h16", scaled(24, {{7, 1}, {8, -1}})},
      {"h17", scaled(24, {{6, 1}, {7, -1}})},
      {"h18", scaled(24, {{5, 1}, {6, -2}, {7, 1}})},
      {"h19", scaled(24, {{4, 1}, {6, -4}, {7, 3}})},
      {"h20", scaled(24, {{5, 1}, {6, -1}, {7, -2}, {8, 2}})},
      {"h21", scaled(24, {{5, 1}, {6, -2}, {7, 1}})},
      {"h22", scaled(24, {{5, 1}, {6, -3}, {7, 2}})},
      {"h23", scaled(24, {{3, 1}, {5, -4}, {6, -3}, {7, 12}, {8, -6}})},
      {"h24", scaled(24, {{6, 1}, {7, -3}, {8, 2}})},
      {"h25", scaled(24, {{5, 1}, {6, -1}})},
      {"h26", scaled(24, {{6, 1}, {7, -3}, {8, 2}})},
      {"h27", scaled(24, {{6, 1}, {7, -2}, {8, 1}})},
      {"h28", scaled(24, {{5, 1}, {7, -4}, {8, 3}})},
  };
}

}  // namespace monochrome
