#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "monochrome/census.hpp"
#include "monochrome/fourthmoment.hpp"
#include "monochrome/moments.hpp"
#include "monochrome/poly.hpp"
#include "monochrome/rational.hpp"
#include "monochrome/sim.hpp"

namespace monochrome::report {

using Json = nlohmann::json;

inline Json rational(const Rational& r) {
  return Json{{"num", numerator_of(r).str()}, {"den", denominator_of(r).str()}, {"float", to_double(r)}};
}

inline Json integer(const BigInt& i) { return i.str(); }

inline Json poly(const RationalPoly& p) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    const Rational& a = p.coefficients()[i];
    if (a == 0) continue;
    terms.push_back({{"power", i}, {"coefficient", to_string(a)}});
  }
  return Json{{"text", p.to_string()}, {"terms", terms}};
}

inline Json pyramid_counts(const PyramidCounts& pc) {
  return Json{{"n1", integer(pc.n1)}, {"n2", integer(pc.n2)}, {"n3", integer(pc.n3)}, {"n4", integer(pc.n4)}};
}

inline Json moments(const MomentReport& m) {
  Json j{{"mean", rational(m.mean)}, {"variance", rational(m.variance)}};
  if (m.excess4) j["excess4"] = rational(*m.excess4);
  Json in{{"colors", m.inputs.colors}};
  if (m.inputs.edges) in["edges"] = integer(*m.inputs.edges);
  if (m.inputs.triangles) in["triangles"] = integer(*m.inputs.triangles);
  if (m.inputs.pyramid2) in["pyramid2"] = integer(*m.inputs.pyramid2);
  if (m.inputs.c4) in["c4"] = integer(*m.inputs.c4);
  j["inputs"] = in;
  return j;
}

inline Json t3_bound(const BoundReport& b) {
  return Json{{"r1", rational(b.r1)},
              {"r2", rational(b.r2)},
              {"bracket", b.bracket},
              {"bound", b.bound},
              {"note", "bound up to absolute constant"}};
}

inline Json t2_bound(const BoundReport& b) {
  return Json{{"rational_part", rational(b.rational_part)},
              {"surd", {{"radicand", integer(b.surd_radicand)}, {"power", "-1/2"}, {"float", b.surd}}},
              {"bracket", b.bracket},
              {"bound", b.bound},
              {"note", "bound up to absolute constant"}};
}

/// Short name for classes that match a named coefficient row by structure.
inline std::string class_name(ClassKey key) {
  for (unsigned s = 1; s <= 4; ++s)
    if (key == pyramid_key(s)) return "delta" + std::to_string(s);
  if (key == alternating_cycle_key()) return "h16";
  return "";
}

inline Json edge_list(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

inline Json class_entry(ClassKey key, const RationalPoly& coefficient) {
  const auto rep = representative(key);
  Json tris = Json::array();
  for (const Triangle& t : rep) tris.push_back({t.v[0], t.v[1], t.v[2]});
  Json j{{"key", key.hex()},
         {"signature", class_signature(key)},
         {"representative", {{"edges", edge_list(union_edges(rep))}, {"triangles", tris}}},
         {"coefficient", poly(coefficient)}};
  if (auto name = class_name(key); !name.empty()) j["name"] = name;
  return j;
}

inline Json decomposition(const Decomposition& d) {
  Json classes = Json::array();
  for (const auto& e : d.classes) {
    Json j = class_entry(e.key, e.coefficient);
    j["count"] = integer(e.count);
    j["coefficient_at_c"] = rational(e.coefficient.at_colors(d.colors));
    classes.push_back(std::move(j));
  }
  return Json{{"colors", d.colors},
              {"classes", classes},
              {"variance", rational(d.variance)},
              {"sigma4", rational(d.variance * d.variance)},
              {"numerator", rational(d.numerator)},
              {"excess4", rational(d.excess4)},
              {"sets_enumerated", d.sets_enumerated}};
}

inline Json config_class(const ConfigClass& c) { return class_entry(c.key, c.coefficient); }

inline Json limit_law(const LimitLaw& law) {
  Json j{{"family", std::string(to_string(law.family))},
         {"colors", law.colors},
         {"total_variance", rational(law.total_variance)}};
  if (!law.atoms.empty()) {
    Json atoms = Json::array();
    for (const auto& a : law.atoms) atoms.push_back({{"location", rational(a.location)}, {"mass", rational(a.mass)}});
    j["atoms"] = atoms;
    j["scaling"] = "(T3 - n/c^2)/n";
  } else {
    Json mix = Json::array();
    for (const auto& m : law.mixture)
      mix.push_back({{"weight", rational(m.weight)}, {"variance", rational(m.variance)}});
    j["mixture"] = mix;
    j["scaling"] = "(T3 - 2n/c^2)/sqrt(n)";
  }
  return j;
}

inline Json empirical(const EmpiricalSummary& s) {
  Json support = Json::array();
  for (const auto& [v, f] : s.ecdf) support.push_back({v, f});
  Json j{{"count", s.count},
         {"mean", s.mean},
         {"variance", s.variance},
         {"central4", s.central4},
         {"ecdf", support}};
  if (s.exact_mean) j["exact_mean"] = rational(*s.exact_mean);
  if (s.exact_variance) j["exact_variance"] = rational(*s.exact_variance);
  if (s.ks_normal) j["ks_normal"] = *s.ks_normal;
  return j;
}

inline Json simulation(const SimReport& r) {
  Json j = Json::object();
  if (r.t2) j["T2"] = empirical(*r.t2);
  if (r.t3) j["T3"] = empirical(*r.t3);
  return j;
}

inline Json limit_law_check(const LimitLawCheck& c) {
  Json j{{"reference", limit_law(c.law)}, {"n", c.n}, {"scaled_variance", c.scaled_variance}};
  if (c.law.family == Family::Pyramid) {
    Json atoms = Json::array();
    for (const auto& a : c.atoms) atoms.push_back({{"center", a.center}, {"mass", a.mass}, {"count", a.count}});
    j["atoms"] = atoms;
    j["gap"] = c.gap;
  } else {
    j["ks_reference"] = c.ks_reference;
  }
  return j;
}

}  // namespace monochrome::report
