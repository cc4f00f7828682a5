#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "payner/cli.hpp"

namespace fs = std::filesystem;
using namespace payner;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "payner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(testing::TempDir()) / ("payner_cli_" + std::string(testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateIsDeterministic) {
  ASSERT_EQ(invoke({"--quiet", "--seed", "7", "generate", "--count", "30", "--out", p("a.conll")}).code, 0);
  ASSERT_EQ(invoke({"--quiet", "--seed", "7", "generate", "--count", "30", "--out", p("b.conll")}).code, 0);
  ASSERT_EQ(invoke({"--quiet", "--seed", "8", "generate", "--count", "30", "--out", p("c.conll")}).code, 0);
  EXPECT_EQ(slurp(p("a.conll")), slurp(p("b.conll")));
  EXPECT_NE(slurp(p("a.conll")), slurp(p("c.conll")));
  EXPECT_EQ(read_annotations_file(p("a.conll")).size(), 30u);
}

TEST_F(Cli, TrainTagEvalPipeline) {
  ASSERT_EQ(invoke({"--quiet", "generate", "--count", "120", "--out", p("all.conll")}).code, 0);
  ASSERT_EQ(invoke({"--quiet", "split", "--corpus", p("all.conll"), "--train-out", p("tr.conll"), "--dev-out",
                 p("dv.conll"), "--test-out", p("te.conll")})
                .code,
            0);
  const auto tr = invoke({"--quiet", "train", "--train", p("tr.conll"), "--dev", p("dv.conll"), "--model", p("m.json"),
                       "--max-iter", "30"});
  ASSERT_EQ(tr.code, 0) << tr.err;
  EXPECT_TRUE(tr.err.empty());
  ASSERT_EQ(invoke({"--quiet", "tag", "--model", p("m.json"), "--input", p("te.conll"), "--out", p("pred.conll")}).code, 0);
  ASSERT_EQ(invoke({"--quiet", "tag", "--baseline", "--input", p("te.conll"), "--out", p("base.conll")}).code, 0);

  const auto ev = invoke({"--quiet", "eval", "--gold", p("te.conll"), "--pred", p("pred.conll"), "--report", p("r.json"),
                       "--bootstrap", p("base.conll"), "--iters", "200"});
  ASSERT_EQ(ev.code, 0) << ev.err;
  const auto report = nlohmann::json::parse(slurp(p("r.json")));
  std::smatch m;
  ASSERT_TRUE(std::regex_search(ev.out, m, std::regex(R"(F1 ([0-9.]+))")));
  EXPECT_EQ(m[1].str(), cli::detail::fixed(report.at("micro").at("f1").get<double>()));
  EXPECT_TRUE(report.contains("bootstrap"));
  EXPECT_GT(report.at("micro").at("f1").get<double>(), 0.5);

  const auto self = invoke({"--quiet", "eval", "--gold", p("te.conll"), "--pred", p("te.conll")});
  ASSERT_EQ(self.code, 0);
  EXPECT_NE(self.out.find("F1 1.0000"), std::string::npos);
}

TEST_F(Cli, JsonLogsAreOneObjectPerLine) {
  const auto r = invoke({"--json-logs", "generate", "--count", "10", "--out", p("a.conll")});
  ASSERT_EQ(r.code, 0);
  const auto t = invoke({"--json-logs", "train", "--train", p("a.conll"), "--model", p("m.json"), "--max-iter", "5",
                      "--prune", "1"});
  ASSERT_EQ(t.code, 0) << t.out;
  std::size_t lines = 0;
  for (const auto& text : {r.out, t.out}) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      const auto j = nlohmann::json::parse(line);
      ASSERT_TRUE(j.is_object());
      ASSERT_TRUE(j.contains("event"));
      ++lines;
    }
  }
  EXPECT_GE(lines, 3u);
  EXPECT_TRUE(t.err.empty());
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"generate"}).code, 1);
  EXPECT_EQ(invoke({"generate", "--count", "0", "--out", p("x")}).code, 1);
  EXPECT_EQ(invoke({"generate", "--count", "5", "--out", p("x"), "--format-mix", "1,2"}).code, 1);
  EXPECT_EQ(invoke({"bench", "--input", p("x"), "--mode", "fast"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(Cli, DataErrorsExitTwoAndNameTheFlag) {
  const auto r = invoke({"eval", "--gold", p("missing.conll"), "--pred", p("missing.conll")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--gold"), std::string::npos);
  std::ofstream(p("bad.json")) << "{\"version\": 1}";
  ASSERT_EQ(invoke({"--quiet", "generate", "--count", "5", "--out", p("a.conll")}).code, 0);
  const auto t = invoke({"tag", "--model", p("bad.json"), "--input", p("a.conll"), "--out", p("o.conll")});
  EXPECT_EQ(t.code, 2);
  EXPECT_NE(t.err.find("--model"), std::string::npos);
  std::ofstream(p("plan.json")) << R"([{"train":["MT103"],"test":"NOPE"}])";
  EXPECT_EQ(invoke({"crossformat", "--corpus", p("a.conll"), "--plan", p("plan.json"), "--report", p("r.json")}).code, 2);
}

TEST_F(Cli, FormatMixByName) {
  ASSERT_EQ(invoke({"--quiet", "generate", "--count", "40", "--out", p("a.conll"), "--format-mix", "SEPA=1"}).code, 0);
  for (const auto& m : read_annotations_file(p("a.conll"))) EXPECT_EQ(m.message.format, MessageFormat::SEPA);
}

TEST_F(Cli, BenchWritesReport) {
  ASSERT_EQ(invoke({"--quiet", "generate", "--count", "20", "--out", p("a.conll")}).code, 0);
  const auto r = invoke({"--quiet", "bench", "--baseline", "--input", p("a.conll"), "--mode", "both", "--duration", "0.2",
                      "--report", p("b.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(p("b.json")));
  EXPECT_FALSE(j.empty());
  EXPECT_NE(r.out.find("rule-based"), std::string::npos);
}
