#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "payner/crossformat.hpp"

using namespace payner;
using nlohmann::json;

TEST(CrossFormatPlan, ParsesBothShapes) {
  const auto a = plan_from_json(json::parse(R"({"entries":[{"train":["MT103","SEPA"],"test":"ACH"}]})"));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].train_formats, (std::vector<MessageFormat>{MessageFormat::MT103, MessageFormat::SEPA}));
  EXPECT_EQ(a[0].test_format, MessageFormat::ACH);
  EXPECT_EQ(describe(a[0]), "MT103+SEPA -> ACH");
  const auto b = plan_from_json(json::parse(R"([{"train":["MT103","MT103"],"test":"MT103"}])"));
  EXPECT_EQ(b[0].train_formats.size(), 1u);
  EXPECT_EQ(plan_from_json(to_json(a)), a);
}

TEST(CrossFormatPlan, Errors) {
  for (const char* bad : {R"({})", R"({"entries":{}})", R"([])", R"([{"train":[],"test":"ACH"}])",
                          R"([{"train":["MT999"],"test":"ACH"}])", R"([{"train":["MT103"],"test":"XX"}])",
                          R"([{"train":["MT103"]}])", R"([{"train":"MT103","test":"ACH"}])", R"([3])"})
    EXPECT_THROW(plan_from_json(json::parse(bad)), DataError) << bad;
  EXPECT_THROW(load_plan("/nonexistent/plan.json"), DataError);
  const std::string path = testing::TempDir() + "bad_plan.json";
  std::ofstream(path) << "{not json";
  EXPECT_THROW(load_plan(path), DataError);
  std::remove(path.c_str());
}

TEST(CrossFormatEval, EmptySubsetIsError) {
  GeneratorConfig g;
  g.count = 60;
  g.format_mix = {1.0, 0.0, 0.0, 0.0, 0.0};
  const auto c = generate_corpus(g);
  TrainConfig cfg;
  cfg.max_iterations = 5;
  EXPECT_THROW(cross_format_eval(c, {{{MessageFormat::MT103}, MessageFormat::SEPA}}, cfg), DataError);
  EXPECT_THROW(cross_format_eval(c, {{{MessageFormat::ACH}, MessageFormat::MT103}}, cfg), DataError);
  EXPECT_THROW(cross_format_eval(c, {}, cfg), DataError);
}

class CrossFormatRun : public testing::Test {
 protected:
  static void SetUpTestSuite() {
    GeneratorConfig g;
    g.count = 300;
    g.format_mix = {0.5, 0.0, 0.0, 0.5, 0.0};
    corpus_ = new Corpus(generate_corpus(g));
  }
  static void TearDownTestSuite() { delete corpus_; }
  static Corpus* corpus_;
};
Corpus* CrossFormatRun::corpus_ = nullptr;

TEST_F(CrossFormatRun, SameFormatCellEqualsOrdinaryEvaluation) {
  TrainConfig cfg;
  cfg.max_iterations = 40;
  const CrossFormatPlan plan = {{{MessageFormat::MT103}, MessageFormat::MT103}};
  const auto m = cross_format_eval(*corpus_, plan, cfg);
  ASSERT_EQ(m.cells.size(), 1u);

  const auto split = split_corpus(*corpus_);
  const auto tr = detail::select_formats(split.train, {MessageFormat::MT103});
  const auto te = detail::select_formats(split.test, {MessageFormat::MT103});
  const auto model = train(tr, {}, default_gazetteers(), cfg);
  const double direct = evaluate(te, crf_predict(model, te)).micro.f1;
  EXPECT_EQ(m.cells[0].micro_f1, direct);
  EXPECT_EQ(m.f1({MessageFormat::MT103}, MessageFormat::MT103), direct);
  EXPECT_EQ(m.cells[0].train_messages, tr.size());
  EXPECT_EQ(m.cells[0].test_messages, te.size());
  EXPECT_THROW(m.f1({MessageFormat::SEPA}, MessageFormat::MT103), std::out_of_range);
}

TEST_F(CrossFormatRun, ParallelMatchesSequentialInPlanOrder) {
  TrainConfig cfg;
  cfg.max_iterations = 25;
  const CrossFormatPlan plan = {{{MessageFormat::MT103}, MessageFormat::SEPA},
                                {{MessageFormat::SEPA}, MessageFormat::MT103},
                                {{MessageFormat::SEPA, MessageFormat::MT103}, MessageFormat::SEPA}};
  const auto seq = cross_format_eval(*corpus_, plan, cfg, default_gazetteers(), 42, false);
  const auto par = cross_format_eval(*corpus_, plan, cfg, default_gazetteers(), 42, true);
  ASSERT_EQ(seq.cells.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(seq.cells[i].entry, plan[i]);
    EXPECT_EQ(par.cells[i].entry, plan[i]);
    EXPECT_EQ(seq.cells[i].micro_f1, par.cells[i].micro_f1);
    EXPECT_GE(seq.cells[i].micro_f1, 0.0);
    EXPECT_LE(seq.cells[i].micro_f1, 1.0);
  }
  const auto j = to_json(seq);
  EXPECT_EQ(j.at("cells").size(), 3u);
  EXPECT_EQ(j.at("cells")[2].at("train").size(), 2u);
}
