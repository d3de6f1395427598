#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monochrome/census.hpp"
#include "monochrome/errors.hpp"
#include "monochrome/fourthmoment.hpp"
#include "monochrome/graph.hpp"
#include "monochrome/moments.hpp"
#include "monochrome/report.hpp"
#include "monochrome/sim.hpp"
#include "monochrome/verify.hpp"

namespace monochrome::cli {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

/// Bad flags, missing files and the like; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadParams:
    case ErrorKind::UnsupportedFamily: return 2;
    default: return 1;
  }
}

struct InputOptions {
  std::string path;
  std::string family;
  std::int64_t n = 0;
  double p = 0.0;
  std::uint64_t graph_seed = 0;
};

struct Options {
  std::string command;
  InputOptions input;
  unsigned colors = 0;
  std::string statistic = "both";
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  std::string out;
  std::string samples_out;
  std::string suite = "exact";
  bool list_triangles = false;
  unsigned threads = default_threads();
};

struct LoadedGraph {
  Graph graph;
  std::optional<Family> family;
  std::size_t duplicates = 0;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open output file " + path);
  out << content;
  if (!out) throw UsageError("failed writing " + path);
}

inline LoadedGraph load_graph(const Options& o) {
  const auto& in = o.input;
  if (!in.path.empty()) {
    const auto parsed = parse_edge_list(read_file(in.path));
    return {parsed.graph, std::nullopt, parsed.duplicate_count};
  }
  const auto family = family_from_string(in.family);
  if (!family || *family == Family::DisjointUnion) {
    throw Error(ErrorKind::UnsupportedFamily, "generate: unknown family '" + in.family + "'");
  }
  FamilySpec spec;
  spec.family = *family;
  spec.n = in.n;
  spec.p = in.p;
  spec.seed = in.graph_seed;
  spec.colors = o.colors;
  if (*family == Family::Composite && o.colors == 0) {
    throw UsageError("composite family needs --c");
  }
  return {generate(spec), family, 0};
}

inline Json input_config(const Options& o) {
  const auto& in = o.input;
  if (!in.path.empty()) return Json{{"path", in.path}};
  Json j{{"family", in.family}, {"n", in.n}};
  if (in.family == "gnp") {
    j["p"] = in.p;
    j["graph_seed"] = in.graph_seed;
  }
  return j;
}

inline std::vector<std::string> input_argv(const Options& o) {
  const auto& in = o.input;
  if (!in.path.empty()) return {"--input", in.path};
  std::vector<std::string> a{"--family", in.family, "--n", std::to_string(in.n)};
  if (in.family == "gnp") {
    std::ostringstream p;
    p.precision(17);
    p << in.p;
    a.insert(a.end(), {"--p", p.str(), "--graph-seed", std::to_string(in.graph_seed)});
  }
  return a;
}

/// Resolved configuration and the argument list that reproduces it. The
/// thread count is left out: results do not depend on it.
inline std::pair<Json, std::vector<std::string>> resolved(const Options& o) {
  Json cfg{{"command", o.command}};
  std::vector<std::string> argv{o.command};
  auto add = [&](const char* key, const char* flag, const Json& value, const std::string& text) {
    cfg[key] = value;
    argv.push_back(flag);
    argv.push_back(text);
  };
  if (o.command != "verify") {
    cfg["input"] = input_config(o);
    const auto in = input_argv(o);
    argv.insert(argv.end(), in.begin(), in.end());
  }
  const bool colored = o.command != "census" && o.command != "verify" &&
                       !(o.command == "generate" && o.input.family != "composite");
  if (colored) add("colors", "--c", o.colors, std::to_string(o.colors));
  if (o.command == "moments" || o.command == "bounds" || o.command == "simulate")
    add("statistic", "--statistic", o.statistic, o.statistic);
  if (o.command == "fourth-moment") add("budget", "--budget", o.budget, std::to_string(o.budget));
  if (o.command == "simulate") {
    add("reps", "--reps", o.reps, std::to_string(o.reps));
    add("seed", "--seed", o.seed, std::to_string(o.seed));
  }
  if (o.command == "census" && o.list_triangles) {
    cfg["list_triangles"] = true;
    argv.push_back("--list-triangles");
  }
  if (o.command == "verify") add("suite", "--suite", o.suite, o.suite);
  return {cfg, argv};
}

inline Json envelope(const Options& o) {
  auto [cfg, argv] = resolved(o);
  return Json{{"tool", {{"name", "monochrome"}, {"version", kVersion}}}, {"config", cfg}, {"replay", argv}};
}

inline Json graph_summary(const LoadedGraph& lg) {
  return Json{{"vertices", lg.graph.vertex_count()},
              {"edges", lg.graph.edge_count()},
              {"duplicates_collapsed", lg.duplicates}};
}

inline Statistic parse_statistic(const std::string& s) {
  if (s == "T2") return Statistic::T2;
  if (s == "T3") return Statistic::T3;
  return Statistic::Both;
}

inline std::vector<std::uint64_t> original_ids(const Graph& g, std::span<const Vertex> vs) {
  std::vector<std::uint64_t> out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back(g.original_id(v));
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the JSON report; side files are staged in `files`
// and written only once the whole command has succeeded.

struct Staged {
  std::vector<std::pair<std::string, std::string>> files;
  std::optional<std::string> stdout_text;  // replaces the JSON report on stdout
};

inline Json cmd_generate(const Options& o, Staged& staged) {
  const auto lg = load_graph(o);
  const std::string text = serialize(lg.graph);
  Json r = envelope(o);
  r["input_digest"] = graph_digest(lg.graph);
  r["graph"] = graph_summary(lg);
  r["result"] = {{"triangles", triangle_census(lg.graph).triangles.size()}};
  if (o.out.empty()) {
    staged.stdout_text = text;
  } else {
    staged.files.emplace_back(o.out, text);
  }
  return r;
}

inline Json cmd_census(const Options& o) {
  const auto lg = load_graph(o);
  const Graph& g = lg.graph;
  const auto tc = triangle_census(g);
  const auto pc = pyramid_counts(tc);
  const auto order = score_ordering(g, tc);
  const auto s = s_statistic(g, tc, order);
  Json res{{"triangles", tc.triangles.size()},
           {"pyramid_counts", report::pyramid_counts(pc)},
           {"c4", report::integer(count_c4(g))},
           {"b", report::integer(b_statistic(g, tc))},
           {"s_score_ordering", report::integer(s)},
           {"ordering_bound_ratio", ordering_bound_ratio(s, pc)},
           {"score_ordering", original_ids(g, order)}};
  if (o.list_triangles) {
    Json tris = Json::array();
    for (const auto& t : tc.triangles)
      tris.push_back({g.original_id(t.v[0]), g.original_id(t.v[1]), g.original_id(t.v[2])});
    res["triangle_list"] = tris;
  }
  Json r = envelope(o);
  r["input_digest"] = graph_digest(g);
  r["graph"] = graph_summary(lg);
  r["result"] = res;
  return r;
}

inline Json cmd_moments(const Options& o) {
  const auto lg = load_graph(o);
  const auto tc = triangle_census(lg.graph);
  const auto stat = parse_statistic(o.statistic);
  Json res = Json::object();
  if (wants_t2(stat)) res["T2"] = report::moments(t2_moments(lg.graph, tc, o.colors));
  if (wants_t3(stat)) res["T3"] = report::moments(t3_mean_var(pyramid_counts(tc), o.colors));
  Json r = envelope(o);
  r["input_digest"] = graph_digest(lg.graph);
  r["graph"] = graph_summary(lg);
  r["result"] = res;
  return r;
}

inline Json cmd_bounds(const Options& o) {
  const auto lg = load_graph(o);
  const auto tc = triangle_census(lg.graph);
  const auto stat = parse_statistic(o.statistic);
  Json res = Json::object();
  if (wants_t2(stat))
    res["T2"] = report::t2_bound(clt_bound_t2(BigInt(lg.graph.edge_count()), count_c4(lg.graph), o.colors));
  if (wants_t3(stat)) {
    const auto pc = pyramid_counts(tc);
    const auto b = b_statistic(lg.graph, tc);
    Json j = report::t3_bound(clt_bound_t3(pc, b));
    j["b"] = report::integer(b);
    j["pyramid_counts"] = report::pyramid_counts(pc);
    res["T3"] = j;
  }
  Json r = envelope(o);
  r["input_digest"] = graph_digest(lg.graph);
  r["graph"] = graph_summary(lg);
  r["result"] = res;
  return r;
}

inline Json cmd_fourth_moment(const Options& o) {
  const auto lg = load_graph(o);
  EnumerationOptions opts;
  opts.budget = o.budget;
  opts.threads = o.threads;
  const auto d = fourth_moment_exact(lg.graph, o.colors, opts);
  Json r = envelope(o);
  r["input_digest"] = graph_digest(lg.graph);
  r["graph"] = graph_summary(lg);
  r["result"] = report::decomposition(d);
  return r;
}

inline std::string encode_samples(const Samples& s) {
  std::string bytes;
  auto put = [&](std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
  };
  for (auto v : s.t2) put(v);
  for (auto v : s.t3) put(v);
  return bytes;
}

inline Json cmd_simulate(const Options& o, Staged& staged) {
  const auto lg = load_graph(o);
  const auto tc = triangle_census(lg.graph);
  SimConfig cfg{o.colors, o.reps, o.seed, parse_statistic(o.statistic), o.threads};
  Samples samples;
  const auto rep = sample_statistics(lg.graph, tc, cfg, &samples);
  Json res = report::simulation(rep);
  if (lg.family && (*lg.family == Family::Pyramid || *lg.family == Family::BipyramidChain) &&
      wants_t3(cfg.statistic)) {
    res["limit_law"] = report::limit_law_check(check_limit_law(*lg.family, o.input.n, o.colors, samples.t3));
  }
  if (!o.samples_out.empty()) staged.files.emplace_back(o.samples_out, encode_samples(samples));
  Json r = envelope(o);
  r["input_digest"] = graph_digest(lg.graph);
  r["graph"] = graph_summary(lg);
  r["result"] = res;
  return r;
}

inline Json criterion_json(const verify::CriterionResult& c) {
  return Json{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

inline Json cmd_verify(const Options& o, bool& all_passed) {
  std::vector<verify::CriterionResult> results;
  results.push_back(verify::exact_moment_oracle(o.threads));
  results.push_back(verify::fourth_moment_oracle(o.threads));
  const auto classes = discover_classes(9, o.threads);
  results.push_back(verify::class_discovery(classes));
  results.push_back(verify::sign_dichotomy(classes));
  if (o.suite == "full") {
    results.push_back(verify::counterexample(o.threads));
    results.push_back(verify::pyramid_law(o.threads));
    results.push_back(verify::bipyramid_law(o.threads));
    results.push_back(verify::normal_regime(o.threads));
  }
  Json list = Json::array();
  all_passed = true;
  for (const auto& c : results) {
    list.push_back(criterion_json(c));
    all_passed &= c.passed;
  }
  Json cls = Json::array();
  for (const auto& c : classes) cls.push_back(report::config_class(c));
  Json r = envelope(o);
  r["result"] = {{"criteria", list}, {"passed", all_passed}, {"classes", cls}};
  return r;
}

// ---------------------------------------------------------------------------

inline void add_input(CLI::App* sub, InputOptions& in) {
  auto* path = sub->add_option("--input", in.path, "edge-list file");
  auto* fam = sub->add_option("--family", in.family, "generated family")
                  ->check(CLI::IsMember({"complete", "star", "cycle", "path", "pyramid", "bipyramid_chain",
                                         "composite", "gnp"}));
  path->excludes(fam);
  sub->add_option("--n", in.n, "family size parameter");
  sub->add_option("--p", in.p, "gnp edge probability");
  sub->add_option("--graph-seed", in.graph_seed, "gnp seed");
}

inline void add_threads(CLI::App* sub, Options& o) {
  sub->add_option("--threads", o.threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact and simulated statistics of monochromatic edges and triangles", "monochrome"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "write a generated graph as an edge list");
  add_input(gen, o.input);
  gen->add_option("--c", o.colors, "colors (composite family only)");
  gen->add_option("--out", o.out, "edge-list output path");

  auto* census = app.add_subcommand("census", "triangle, pyramid, 4-cycle, b and s statistics");
  add_input(census, o.input);
  census->add_flag("--list-triangles", o.list_triangles, "include the triangle list");
  census->add_option("--out", o.out, "report path");

  auto* moments = app.add_subcommand("moments", "closed-form moments of T2 and T3");
  auto* bounds = app.add_subcommand("bounds", "CLT error-bound brackets");
  auto* fourth = app.add_subcommand("fourth-moment", "exact E Z3^4 - 3 with class decomposition");
  auto* sim = app.add_subcommand("simulate", "Monte Carlo sampling of T2 and T3");
  for (auto* sub : {moments, bounds, fourth, sim}) {
    add_input(sub, o.input);
    sub->add_option("--c", o.colors, "number of colors")->required();
    sub->add_option("--out", o.out, "report path");
  }
  for (auto* sub : {moments, bounds, sim})
    sub->add_option("--statistic", o.statistic, "T2, T3 or both")->check(CLI::IsMember({"T2", "T3", "both"}));
  fourth->add_option("--budget", o.budget, "cap on enumerated triangle sets");
  add_threads(fourth, o);
  sim->add_option("--reps", o.reps, "replications")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed, "RNG seed")->required();
  sim->add_option("--samples-out", o.samples_out, "raw samples, little-endian int64");
  add_threads(sim, o);

  auto* ver = app.add_subcommand("verify", "run the built-in acceptance checks");
  ver->add_option("--suite", o.suite, "exact or full")->check(CLI::IsMember({"exact", "full"}));
  ver->add_option("--out", o.out, "report path");
  add_threads(ver, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << Json{{"error", {{"kind", "Usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    if (o.command != "verify" && o.input.path.empty() && o.input.family.empty())
      throw UsageError(o.command + ": one of --input or --family is required");
    Staged staged;
    Json report;
    int code = 0;
    if (o.command == "generate") report = cmd_generate(o, staged);
    else if (o.command == "census") report = cmd_census(o);
    else if (o.command == "moments") report = cmd_moments(o);
    else if (o.command == "bounds") report = cmd_bounds(o);
    else if (o.command == "fourth-moment") report = cmd_fourth_moment(o);
    else if (o.command == "simulate") report = cmd_simulate(o, staged);
    else {
      bool passed = false;
      report = cmd_verify(o, passed);
      code = passed ? 0 : 1;
    }
    const std::string text = report.dump(2) + "\n";
    if (o.command == "generate") {
      for (const auto& [path, content] : staged.files) write_file(path, content);
      out << (staged.stdout_text ? *staged.stdout_text : text);
      return code;
    }
    for (const auto& [path, content] : staged.files) write_file(path, content);
    if (o.out.empty()) out << text;
    else write_file(o.out, text);
    return code;
  } catch (const UsageError& e) {
    err << Json{{"error", {{"kind", "Usage"}, {"command", o.command}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    err << Json{{"error",
                 {{"kind", std::string(to_string(e.kind()))}, {"command", o.command}, {"message", e.what()}}}}
               .dump()
        << "\n";
    return exit_code(e.kind());
  }
}

/// Repeats stochastic commands at 1, 4 and 8 threads and compares the
/// report bytes.
inline verify::CriterionResult determinism_check() {
  verify::CriterionResult r{9, "determinism across thread counts", true, ""};
  const std::vector<std::vector<std::string>> commands{
      {"simulate", "--family", "pyramid", "--n", "2000", "--c", "2", "--reps", "100000", "--seed", "7"},
      {"simulate", "--family", "gnp", "--n", "60", "--p", "0.3", "--graph-seed", "1", "--c", "3", "--reps",
       "20000", "--seed", "11"},
      {"simulate", "--family", "bipyramid_chain", "--n", "200", "--c", "3", "--reps", "20000", "--seed", "3",
       "--statistic", "T3"},
      {"generate", "--family", "gnp", "--n", "50", "--p", "0.5", "--graph-seed", "9"},
      {"fourth-moment", "--family", "composite", "--n", "8", "--c", "2"},
  };
  std::ostringstream detail;
  for (const auto& base : commands) {
    std::optional<std::string> reference;
    for (const char* threads : {"1", "4", "8"}) {
      auto args = base;
      if (base.front() != "generate") args.insert(args.end(), {"--threads", threads});
      std::ostringstream out, err;
      const int code = run(args, out, err);
      if (code != 0) {
        r.passed = false;
        detail << base.front() << " exited " << code << ": " << err.str() << "; ";
        break;
      }
      if (!reference) reference = out.str();
      else if (*reference != out.str()) {
        r.passed = false;
        detail << base.front() << " " << base[2] << " differs at threads=" << threads << "; ";
      }
    }
  }
  r.detail = r.passed ? std::to_string(commands.size()) + " commands byte-identical at threads 1, 4, 8"
                      : detail.str();
  return r;
}

}  // namespace monochrome::cli
