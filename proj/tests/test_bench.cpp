#include <gtest/gtest.h>

#include <atomic>
#include <random>

#include "payner/bench.hpp"
#include "payner/generator.hpp"

using namespace payner;

namespace {

std::vector<PaymentMessage> messages(std::size_t n, std::uint64_t seed = 3) {
  GeneratorConfig g;
  g.count = n;
  g.seed = seed;
  std::vector<PaymentMessage> out;
  for (auto& a : generate_corpus(g)) out.push_back(std::move(a.message));
  return out;
}

// Counts calls; lets the tests see exactly how much work the harness did.
class CountingTagger final : public Tagger {
 public:
  TaggedMessage tag(const PaymentMessage& m) const override {
    ++calls;
    TaggedMessage t;
    t.tokens = tokenize(m);
    return t;
  }
  std::string name() const override { return "counting"; }
  mutable std::atomic<std::size_t> calls{0};
};

}  // namespace

TEST(Bench, PercentileNearestRank) {
  const std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(percentile(v, 50), 5);
  EXPECT_EQ(percentile(v, 95), 10);
  EXPECT_EQ(percentile(v, 10), 1);
  EXPECT_EQ(percentile(v, 0), 1);
  EXPECT_EQ(percentile({}, 50), 0.0);
  const auto s = latency_stats({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(s.mean_ms, 2.5);
  EXPECT_EQ(s.p50_ms, 2);
  EXPECT_EQ(s.p99_ms, 4);
}

TEST(Bench, PercentilesAreOrdered) {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> d(1.0);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(1 + rng() % 300);
    for (auto& v : x) v = d(rng);
    const auto s = latency_stats(x);
    ASSERT_LE(s.p50_ms, s.p95_ms);
    ASSERT_LE(s.p95_ms, s.p99_ms);
  }
}

TEST(Bench, LatencyErrors) {
  RuleTagger t;
  EXPECT_THROW(measure_latency(t, {}, 0, 1), DataError);
  EXPECT_THROW(measure_latency(t, messages(3), 0, 0), DataError);
}

TEST(Bench, ThroughputErrors) {
  RuleTagger t;
  const auto m = messages(3);
  EXPECT_THROW(measure_throughput(t, m, 1, 0, 0.1), DataError);
  EXPECT_THROW(measure_throughput(t, m, 0, 1, 0.1), DataError);
  EXPECT_THROW(measure_throughput(t, m, 1, 1, 0.0), DataError);
  EXPECT_THROW(measure_throughput(t, {}, 1, 1, 0.1), DataError);
}

TEST(Bench, LatencyTimesEveryMessageOncePerRep) {
  CountingTagger t;
  const auto m = messages(20);
  const auto r = measure_latency(t, m, 5, 3);
  EXPECT_EQ(r.message_count, 60u);
  // reference run + warmup + timed
  EXPECT_EQ(t.calls.load(), 20u + 5u + 60u);
  EXPECT_TRUE(r.outputs_verified);
  EXPECT_GT(r.throughput, 0.0);
  EXPECT_LE(r.latency.p50_ms, r.latency.p95_ms);
  EXPECT_EQ(r.mode, "latency");
  EXPECT_EQ(r.tagger, "counting");
}

TEST(Bench, LatencyModeThroughputMatchesMean) {
  RuleTagger t;
  const auto r = measure_latency(t, messages(100), 10, 1);
  EXPECT_NEAR(r.throughput, 1000.0 / r.latency.mean_ms, 1e-6 * r.throughput);
}

TEST(Bench, ThroughputReportIsSelfConsistent) {
  RuleTagger t;
  const auto m = messages(60);
  for (std::size_t batch : {1u, 8u}) {
    for (std::size_t workers : {1u, 2u}) {
      const auto r = measure_throughput(t, m, batch, workers, 0.4);
      ASSERT_GT(r.message_count, 0u);
      EXPECT_EQ(r.message_count % batch, 0u);
      EXPECT_NEAR(static_cast<double>(r.message_count) / r.wall_time_s, r.throughput, 0.05 * r.throughput);
      EXPECT_GE(r.wall_time_s, 0.4);
      EXPECT_EQ(r.batch_size, batch);
      EXPECT_EQ(r.workers, workers);
      EXPECT_TRUE(r.outputs_verified);
      EXPECT_LE(r.latency.p50_ms, r.latency.p95_ms);
      EXPECT_LE(r.latency.p95_ms, r.latency.p99_ms);
    }
  }
}

TEST(Bench, SingleStreamThroughputAgreesWithLatency) {
  RuleTagger t;
  const auto m = messages(200);
  const auto lat = measure_latency(t, m, 20, 2);
  const auto thr = measure_throughput(t, m, 1, 1, 1.0);
  const double expected = 1000.0 / lat.latency.mean_ms;
  EXPECT_NEAR(thr.throughput, expected, 0.2 * expected);
}

// Batching only removes per-call overhead for a stateless tagger. The 5%
// allowance absorbs scheduler noise on a shared core.
TEST(Bench, BatchOfEightNotSlowerThanOne) {
  RuleTagger t;
  const auto m = messages(200);
  const double one = measure_throughput(t, m, 1, 1, 1.0).throughput;
  const double eight = measure_throughput(t, m, 8, 1, 1.0).throughput;
  EXPECT_GE(eight, 0.95 * one);
}

TEST(Bench, CrfTaggerMeetsBounds) {
  GeneratorConfig g;
  g.count = 150;
  const auto c = generate_corpus(g);
  TrainConfig cfg;
  cfg.max_iterations = 20;
  const auto model = train(c, {}, default_gazetteers(), cfg);
  CrfTagger t(model);
  const auto m = messages(100, 9);
  const auto r = measure_latency(t, m, 10, 1);
  EXPECT_LT(r.latency.p50_ms, 10.0);
  EXPECT_GE(measure_throughput(t, m, 1, 1, 0.5).throughput, 100.0);
}

TEST(Bench, JsonAndSummary) {
  RuleTagger t;
  const auto r = measure_latency(t, messages(10), 0, 1);
  const auto j = to_json(r);
  for (const char* k : {"tagger", "mode", "latency_ms", "throughput_msgs_per_s", "batch_size", "workers",
                        "peak_rss_bytes", "message_count", "wall_time_s"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_TRUE(j.at("peak_rss_approximate").get<bool>());
  EXPECT_GT(j.at("peak_rss_bytes").get<std::size_t>(), 0u);
  EXPECT_NE(summary_line(r).find("rule-based latency"), std::string::npos);
}
