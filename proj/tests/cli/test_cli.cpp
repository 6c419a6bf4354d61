#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" PINCHLAB_EXE "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("pinchlab_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(CliThresholds, TableRowsTruncated) {
  for (auto [n, digits] : {std::pair{4, "0.2928"}, {6, "0.2823"}, {7, "0.4962"}, {8, "0.6212"}, {10, "0.2725"},
                           {12, "0.5948"}, {134, "0.5788"}}) {
    auto r = run("thresholds --n-min " + std::to_string(n) + " --n-max " + std::to_string(n) + " --format json");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find(std::string("\"delta_truncated\": \"") + digits + "\""), std::string::npos) << n;
  }
}

TEST(CliThresholds, CsvColumns) {
  auto r = run("thresholds --n-min 3 --n-max 8");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,case,delta,binding_branch,lit_even,lit_78,conjecture");
  EXPECT_NE(r.out.find("\n5,unconditional,0,none,,,0.25\n"), std::string::npos);
  EXPECT_NE(r.out.find(",0.8649,,0.25\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n7,"), std::string::npos);
  EXPECT_EQ(count(r.out, ",0.9805,"), 2u);
}

TEST(CliThresholds, ByteIdenticalAcrossRuns) {
  auto a = run("thresholds --n-min 3 --n-max 40 --format json --seed 4");
  auto b = run("thresholds --n-min 3 --n-max 40 --format json --seed 4");
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(CliThresholds, BadRangeIsUsageError) {
  EXPECT_EQ(run("thresholds --n-min 9 --n-max 4").status, 2);
  EXPECT_EQ(run("thresholds --n-min 2 --n-max 4").status, 2);
}

TEST(CliThresholds, CsvFileWithManifest) {
  auto dir = scratch_dir("thresholds");
  auto r = run("thresholds --n-min 4 --n-max 6 --out '" + (dir / "t.csv").string() + "'");
  ASSERT_EQ(r.status, 0);
  auto csv = slurp(dir / "t.csv");
  auto manifest = slurp(dir / "t.csv.manifest.json");
  EXPECT_NE(csv.find("n,case,delta"), std::string::npos);
  EXPECT_NE(manifest.find("\"sha256\""), std::string::npos);
  EXPECT_NE(manifest.find("t.csv\""), std::string::npos);
}

TEST(CliUsage, UnknownFlagAndCommand) {
  EXPECT_EQ(run("thresholds --bogus").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("verify --suite bogus").status, 2);
  EXPECT_EQ(run("eval --n 4 --delta 1.5").status, 2);
  EXPECT_EQ(run("sharpness --n 4 --restarts 0").status, 2);
}

TEST(CliFigure, CsvAndSvg) {
  auto dir = scratch_dir("figure");
  auto stem = (dir / "fig").string();
  auto r = run("figure --out '" + stem + "'");
  ASSERT_EQ(r.status, 0);
  auto csv = slurp(stem + ".csv");
  auto svg = slurp(stem + ".svg");
  EXPECT_NE(csv.find("conjecture,4,0.25\n"), std::string::npos);
  EXPECT_NE(csv.find("new_bound,134,0.5788"), std::string::npos);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(svg, "<polyline"), 3u);
  for (const char* id : {"literature", "new_bound", "conjecture"}) {
    EXPECT_NE(svg.find(std::string("id=\"") + id + "\""), std::string::npos) << id;
  }
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(r.out.find("\"sha256\""), std::string::npos);
}

TEST(CliVerify, CurvatureSuiteJson) {
  auto r = run("verify --suite curvature --format json");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"manifest\""), std::string::npos);
  EXPECT_NE(r.out.find("\"ch_sharpness\""), std::string::npos);
  EXPECT_EQ(r.out.find("\"passed\": false"), std::string::npos);
}

TEST(CliVerify, MonotonicitySuite) {
  auto r = run("verify --suite monotonicity");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliVerify, DoubleModeAndBadMode) {
  EXPECT_EQ(run("verify --suite identities", "PINCHLAB_MODE=double").status, 0);
  EXPECT_EQ(run("verify --suite identities", "PINCHLAB_MODE=quad").status, 2);
}

TEST(CliClassify, EightHasTwoCases) {
  auto r = run("classify --n 8");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("g2_structure_8"), std::string::npos);
  EXPECT_NE(r.out.find("even_projector(rank<=3)"), std::string::npos);
}

TEST(CliEval, Verdicts) {
  EXPECT_EQ(run("eval --n 4 --delta 0.3").out.rfind("Ergodic", 0), 0u);
  EXPECT_EQ(run("eval --n 8 --delta 0.5").out.rfind("Inconclusive", 0), 0u);
  auto j = run("eval --n 9 --delta 0.01 --format json");
  EXPECT_NE(j.out.find("\"verdict\": \"Ergodic\""), std::string::npos);
}

TEST(CliSharpness, DeterministicJsonAndTrace) {
  auto dir = scratch_dir("sharpness");
  const std::string args = "sharpness --n 4 --restarts 3 --iters 20 --mc-samples 6000 --seed 5 --format json";
  auto a = run(args + " --out '" + (dir / "a.json").string() + "' --trace '" + (dir / "a.csv").string() + "'");
  auto b = run(args + " --out '" + (dir / "b.json").string() + "'");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  auto ja = slurp(dir / "a.json");
  auto jb = slurp(dir / "b.json");
  EXPECT_FALSE(ja.empty());
  EXPECT_EQ(ja.substr(ja.find("\"results\"")), jb.substr(jb.find("\"results\"")));
  auto trace = slurp(dir / "a.csv");
  EXPECT_EQ(count(trace, "\n"), 4u);
}

TEST(CliSharpness, HalfWeightsRoughlyHalve) {
  auto one = run("sharpness --n 4 --restarts 2 --iters 20 --mc-samples 6000 --format json");
  auto half = run("sharpness --n 4 --restarts 2 --iters 20 --mc-samples 6000 --weights half --format json");
  auto value = [](const std::string& s) {
    auto pos = s.find("\"c_estimate\": ");
    return std::stod(s.substr(pos + 14));
  };
  ASSERT_EQ(one.status, 0);
  ASSERT_EQ(half.status, 0);
  EXPECT_NEAR(value(half.out), value(one.out) / 2.0, 1e-6 * value(one.out));
}

TEST(CliSharpness, TextSummary) {
  auto r = run("sharpness --n 4 --restarts 2 --iters 10 --mc-samples 4000");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("c_estimate"), std::string::npos);
  EXPECT_NE(r.out.find("quotient"), std::string::npos);
  EXPECT_NE(r.out.find("delta_new"), std::string::npos);
}
