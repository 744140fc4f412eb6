// Drives the kcomm2 binary through temp files and checks exit codes and JSON.

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int status;
  std::string out;
  json body() const { return json::parse(out); }
};

Invocation run(const std::string& args, const std::string& input = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path();
  const fs::path in = dir / ("kcomm2_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
  std::string cmd = std::string(KCOMM2_BINARY) + " " + args;
  if (!input.empty()) {
    std::ofstream(in) << input;
    cmd += " --input " + in.string();
  }
  cmd += " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = ::pclose(pipe);
  fs::remove(in);
  return {WEXITSTATUS(raw), out};
}

json m(const char* a, const char* b, const char* c, const char* d) {
  return json{{"field", "Q"}, {"entries", json::array({json::array({a, b}), json::array({c, d})})}};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, KcommOnSwap) {
  const json in{{"A", m("1", "0", "0", "0")}, {"B", m("0", "1", "1", "0")}};
  for (const char* method : {"recursive", "closed", "auto"}) {
    const Invocation r = run(std::string("kcomm --k 3 --method ") + method, in.dump());
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(r.body(), m("0", "4", "-4", "0"));
  }
}

TEST(Cli, SpectralRejectsRotation) {
  const Invocation r = run("classify --lemma 2.3-spectral", m("0", "1", "-1", "0").dump());
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(r.body().at("holds").get<bool>());
  EXPECT_EQ(r.body().at("discriminant"), "-4");
}

TEST(Cli, SpectralSplitsJordanBlock) {
  const Invocation r = run("classify --lemma 2.3-spectral", json{{"S", m("2", "1", "0", "2")}}.dump());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.body().at("lambda"), "2");
  EXPECT_EQ(r.body().at("nilpotent"), m("0", "1", "0", "0"));
}

TEST(Cli, WitnessTestNamesWitness) {
  const Invocation r = run("classify --lemma 2.2 --k 4", m("0", "1", "-1", "0").dump());
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.body().at("witness"), m("1", "0", "0", "0"));
  EXPECT_EQ(r.body().at("detail"), m("0", "1", "-1", "0"));
}

TEST(Cli, KcommCertifierNeedsK3) {
  const Invocation r = run("classify --lemma 2.3-kcomm --k 2", m("1", "0", "0", "1").dump());
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.body().at("error"), "KTooSmall");
}

TEST(Cli, DecomposeIdentityTable) {
  json entries = json::array();
  for (const json& p : {m("1", "0", "0", "0"), m("0", "0", "0", "1"), m("0", "1", "0", "0"), m("0", "0", "1", "0"),
                        m("1", "1", "0", "0"), m("0", "1", "1", "0")})
    entries.push_back({{"in", p}, {"out", p}});
  const json table{{"field", "Q"}, {"k", 1}, {"entries", entries}};
  const Invocation r = run("decompose-map", table.dump());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.body().at("lambda"), "1");
  for (const auto& h : r.body().at("h")) EXPECT_EQ(h.at("value"), "0");
}

TEST(Cli, GenMapThenDecomposeRoundTrips) {
  const Invocation g = run("gen-map --k 3 --field Qi --seed 9", R"({"lambda":{"re":"0","im":"-1"},"h":"random"})");
  ASSERT_EQ(g.status, 0) << g.out;
  const Invocation v = run("verify-map", g.out);
  EXPECT_EQ(v.status, 0) << v.out;
  EXPECT_EQ(v.body().at("pairs_checked"), 36);
  const Invocation d = run("decompose-map", g.out);
  ASSERT_EQ(d.status, 0) << d.out;
  EXPECT_EQ(d.body().at("lambda"), json::parse(R"({"re":"0","im":"-1"})"));
}

TEST(Cli, DecomposeRejectsNonTheoremMap) {
  const Invocation g = run("gen-map --k 2", R"({"lambda":"1","h":"zero"})");
  json table = g.body();
  table["entries"][3]["out"] = m("0", "0", "2", "0");
  const Invocation d = run("decompose-map", table.dump());
  EXPECT_EQ(d.status, 1);
  EXPECT_EQ(d.body().at("error"), "NotTheoremForm");
}

TEST(Cli, GenMapRejectsNonRoot) {
  const Invocation r = run("gen-map --k 2", R"({"lambda":"-1"})");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.body().at("error"), "LambdaNotRootOfUnity");
}

TEST(Cli, SandwichSolvesAndRefutes) {
  const json e11 = m("1", "0", "0", "0"), e22 = m("0", "0", "0", "1"), two = m("2", "0", "0", "0");
  const json ok{{"left", {{e11, e22}}}, {"right", {{two, m("0", "0", "0", "1/2")}}}};
  const Invocation a = run("sandwich", ok.dump());
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.body().at("result"), "coefficients");
  const json bad{{"left", {{e11, e22}}}, {"right", {{e22, e11}}}};
  const Invocation b = run("sandwich", bad.dump());
  EXPECT_EQ(b.status, 1);
  EXPECT_EQ(b.body().at("result"), "not-an-identity");
}

TEST(Cli, CampaignReport) {
  const Invocation r = run("campaign --field Qi --k 3 --trials 40 --seed 1");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.body().at("accepted_impostors"), 0);
  EXPECT_EQ(r.body().at("rejections"), 40);
}

TEST(Cli, InputErrors) {
  Invocation r = run("kcomm --k 2", "{not json");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.body().at("error"), "InvalidInput");
  r = run("kcomm --k 2 --field Qi", json{{"A", m("1", "0", "0", "0")}, {"B", m("1", "0", "0", "0")}}.dump());
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.body().at("error"), "FieldMismatch");
  r = run("kcomm", json{{"A", m("1", "0", "0", "0")}, {"B", m("1", "0", "0", "0")}}.dump());
  EXPECT_EQ(r.status, 2);
  r = run("nonsense");
  EXPECT_EQ(r.status, 2);
}

TEST(Cli, FixturesMatchGolden) {
  const Invocation r = run("fixtures");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, slurp(fs::path(KCOMM2_GOLDEN_DIR) / "bracket_identities.json"));
}
