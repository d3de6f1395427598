#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"

using monochrome::cli::Json;
using monochrome::cli::run;

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("monochrome_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                       "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir;
};

}  // namespace

TEST_F(Cli, GeneratePyramidFile) {
  const auto r = call({"generate", "--family", "pyramid", "--n", "10", "--out", path("g.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto parsed = monochrome::parse_edge_list(slurp(path("g.txt")));
  EXPECT_EQ(parsed.graph.vertex_count(), 12u);
  EXPECT_EQ(parsed.graph.edge_count(), 21u);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["graph"]["edges"], 21);
  EXPECT_EQ(j["tool"]["version"], "0.1.0");
}

TEST_F(Cli, GenerateToStdoutIsEdgeList) {
  const auto r = call({"generate", "--family", "complete", "--n", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# vertices=3 edges=3\n0 1\n0 2\n1 2\n");
}

TEST_F(Cli, FourthMomentK4) {
  const auto k4 = write("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  const auto r = call({"fourth-moment", "--input", k4, "--c", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["excess4"]["num"], "5");
  EXPECT_EQ(j["result"]["excess4"]["den"], "3");
  for (const auto& cls : j["result"]["classes"]) {
    EXPECT_TRUE(cls.contains("signature"));
    EXPECT_TRUE(cls["count"].is_string());
    EXPECT_EQ(cls["coefficient"]["text"].get<std::string>().rfind("p(x) = ", 0), 0u);
  }
}

TEST_F(Cli, SimulateTwiceIsByteIdentical) {
  const std::vector<std::string> args{"simulate", "--family", "pyramid", "--n", "2000", "--c", "2",
                                      "--reps", "20000", "--seed", "7"};
  const auto a = call(args);
  const auto b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = Json::parse(a.out);
  EXPECT_EQ(j["result"]["limit_law"]["atoms"].size(), 2u);
}

TEST_F(Cli, ThreadsDoNotChangeReports) {
  std::string reference;
  for (const char* t : {"1", "3", "8"}) {
    const auto r = call({"simulate", "--family", "gnp", "--n", "30", "--p", "0.3", "--graph-seed", "2", "--c", "3",
                         "--reps", "3000", "--seed", "5", "--threads", t});
    ASSERT_EQ(r.code, 0) << r.err;
    if (reference.empty()) reference = r.out;
    EXPECT_EQ(r.out, reference);
  }
}

TEST_F(Cli, ReplayReproducesReport) {
  const auto k = write("k.txt", "0 1\n1 2\n0 2\n2 3\n");
  const std::vector<std::vector<std::string>> commands{
      {"census", "--input", k},
      {"moments", "--input", k, "--c", "3"},
      {"bounds", "--family", "pyramid", "--n", "12", "--c", "2"},
      {"fourth-moment", "--family", "gnp", "--n", "12", "--p", "0.4", "--graph-seed", "3", "--c", "3"},
      {"simulate", "--family", "bipyramid_chain", "--n", "20", "--c", "2", "--reps", "500", "--seed", "1"},
  };
  for (const auto& args : commands) {
    const auto first = call(args);
    ASSERT_EQ(first.code, 0) << first.err;
    const auto j = Json::parse(first.out);
    const auto replay = j["replay"].get<std::vector<std::string>>();
    const auto again = call(replay);
    EXPECT_EQ(again.out, first.out) << args.front();
    EXPECT_EQ(j["input_digest"].get<std::string>().size(), 16u);
  }
}

TEST_F(Cli, OutFlagWritesReport) {
  const auto r = call({"moments", "--family", "complete", "--n", "4", "--c", "2", "--out", path("m.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto j = Json::parse(slurp(path("m.json")));
  EXPECT_EQ(j["result"]["T3"]["variance"]["num"], "3");
  EXPECT_EQ(j["result"]["T3"]["variance"]["den"], "2");
  EXPECT_EQ(j["result"]["T2"]["excess4"]["num"], "5");
}

TEST_F(Cli, CensusReport) {
  const auto r = call({"census", "--family", "pyramid", "--n", "10"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out)["result"];
  EXPECT_EQ(j["pyramid_counts"]["n4"], "210");
  EXPECT_EQ(j["b"], "45");
  EXPECT_EQ(j["s_score_ordering"], "10");
}

TEST_F(Cli, CensusKeepsOriginalIds) {
  const auto g = write("sparse.txt", "10 20\n20 30\n10 30\n");
  const auto r = call({"census", "--input", g, "--list-triangles"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out)["result"];
  EXPECT_EQ(j["triangle_list"][0], Json::array({10, 20, 30}));
}

TEST_F(Cli, BoundsReport) {
  const auto r = call({"bounds", "--family", "pyramid", "--n", "10", "--c", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t3 = Json::parse(r.out)["result"]["T3"];
  EXPECT_EQ(t3["r1"]["num"], "211");
  EXPECT_EQ(t3["r1"]["den"], "3025");
  EXPECT_EQ(t3["r2"]["num"], "9");
  EXPECT_EQ(t3["r2"]["den"], "605");
}

TEST_F(Cli, SamplesFile) {
  const auto r = call({"simulate", "--family", "complete", "--n", "4", "--c", "2", "--reps", "64", "--seed", "3",
                       "--statistic", "T3", "--samples-out", path("s.bin")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto bytes = slurp(path("s.bin"));
  ASSERT_EQ(bytes.size(), 64u * 8);
  for (std::size_t i = 0; i < 64; ++i) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(bytes[8 * i + b]);
    EXPECT_TRUE(v == 0 || v == 1 || v == 4) << v;
  }
}

TEST_F(Cli, DomainErrorsExitOne) {
  const auto c4 = write("c4.txt", "0 1\n1 2\n2 3\n3 0\n");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"moments", "--input", c4, "--c", "2", "--statistic", "T3"},
           {"fourth-moment", "--family", "complete", "--n", "9", "--c", "2", "--budget", "10"},
           {"generate", "--family", "composite", "--n", "8", "--c", "5"}}) {
    const auto r = call(args);
    EXPECT_EQ(r.code, 1) << args.front();
    const auto e = Json::parse(r.err)["error"];
    EXPECT_EQ(e["command"], args.front());
    EXPECT_FALSE(e["message"].get<std::string>().empty());
  }
}

TEST_F(Cli, UsageErrorsExitTwoWithoutFiles) {
  const auto out = path("never.json");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"simulate", "--family", "pyramid", "--n", "5", "--c", "2", "--reps", "10", "--out", out},
           {"moments", "--c", "2", "--out", out},
           {"moments", "--family", "pyramid", "--input", "x.txt", "--n", "3", "--c", "2", "--out", out},
           {"moments", "--family", "wheel", "--n", "3", "--c", "2", "--out", out},
           {"moments", "--family", "pyramid", "--n", "0", "--c", "2", "--out", out},
           {"census", "--input", path("missing.txt"), "--out", out},
           {"frobnicate"},
           {}}) {
    const auto r = call(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args.front());
    EXPECT_FALSE(fs::exists(out));
  }
}

TEST_F(Cli, MalformedInputNamesLine) {
  const auto bad = write("bad.txt", "0 1\n1 two\n");
  const auto r = call({"census", "--input", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, VerifyExactSuite) {
  const auto r = call({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = Json::parse(r.out)["result"];
  EXPECT_EQ(j["criteria"].size(), 4u);
  EXPECT_EQ(j["classes"].size(), 32u);
  EXPECT_TRUE(j["passed"]);
}

TEST_F(Cli, Help) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fourth-moment"), std::string::npos);
}
