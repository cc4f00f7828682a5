#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <sys/resource.h>

#include <json.hpp>

#include "payner/tagger.hpp"
#include "payner/types.hpp"

namespace payner {

struct LatencyStats {
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
};

struct BenchReport {
  std::string tagger;
  std::string mode;  // "latency" or "throughput"
  LatencyStats latency;         // per message (latency mode) or per batch (throughput mode)
  double throughput = 0.0;      // messages per second
  std::size_t batch_size = 1;
  std::size_t workers = 1;
  std::size_t peak_rss_bytes = 0;  // approximate
  std::size_t message_count = 0;
  double wall_time_s = 0.0;
  bool outputs_verified = false;
};

/// Nearest-rank percentile of an ascending sample.
inline double percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double rank = std::ceil(p / 100.0 * static_cast<double>(sorted.size()));
  const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(sorted.size()))) - 1;
  return sorted[idx];
}

inline LatencyStats latency_stats(std::vector<double> ms) {
  LatencyStats s;
  if (ms.empty()) return s;
  std::sort(ms.begin(), ms.end());
  s.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
  s.p50_ms = percentile(ms, 50);
  s.p95_ms = percentile(ms, 95);
  s.p99_ms = percentile(ms, 99);
  return s;
}

/// Peak resident set size of this process, from getrusage (kilobytes on
/// Linux). Approximate: includes everything the process has touched.
inline std::size_t peak_rss_bytes() {
  rusage ru{};
  if (getrusage(RUSAGE_SELF, &ru) != 0) return 0;
  return static_cast<std::size_t>(ru.ru_maxrss) * 1024;
}

inline nlohmann::json to_json(const BenchReport& r) {
  nlohmann::json j;
  j["tagger"] = r.tagger;
  j["mode"] = r.mode;
  j["latency_ms"] = {{"mean", r.latency.mean_ms}, {"p50", r.latency.p50_ms}, {"p95", r.latency.p95_ms},
                     {"p99", r.latency.p99_ms}};
  j["throughput_msgs_per_s"] = r.throughput;
  j["batch_size"] = r.batch_size;
  j["workers"] = r.workers;
  j["peak_rss_bytes"] = r.peak_rss_bytes;
  j["peak_rss_approximate"] = true;
  j["message_count"] = r.message_count;
  j["wall_time_s"] = r.wall_time_s;
  j["outputs_verified"] = r.outputs_verified;
  return j;
}

inline std::string summary_line(const BenchReport& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << r.tagger << " " << r.mode << ": " << r.message_count << " msgs in " << r.wall_time_s << " s, "
     << r.throughput << " msg/s, " << (r.mode == "latency" ? "latency" : "batch latency") << " mean "
     << r.latency.mean_ms << " ms p50 " << r.latency.p50_ms << " p95 " << r.latency.p95_ms << " p99 "
     << r.latency.p99_ms << " ms, batch " << r.batch_size << ", workers " << r.workers << ", peak rss ~"
     << r.peak_rss_bytes / (1024 * 1024) << " MiB";
  return os.str();
}

namespace detail {

using BenchClock = std::chrono::steady_clock;

inline double ms_since(BenchClock::time_point t0) {
  return std::chrono::duration<double, std::milli>(BenchClock::now() - t0).count();
}

inline std::vector<std::vector<EntitySpan>> reference_outputs(const Tagger& tagger,
                                                              const std::vector<PaymentMessage>& messages) {
  std::vector<std::vector<EntitySpan>> ref;
  ref.reserve(messages.size());
  for (const auto& m : messages) ref.push_back(tagger.tag(m).spans);
  return ref;
}

/// Re-tags up to 10 evenly spaced messages and compares with the reference.
inline void spot_check(const Tagger& tagger, const std::vector<PaymentMessage>& messages,
                       const std::vector<std::vector<EntitySpan>>& ref) {
  const std::size_t n = messages.size();
  const std::size_t k = std::min<std::size_t>(10, n);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = j * n / k;
    if (tagger.tag(messages[i]).spans != ref[i])
      throw std::logic_error("benchmark output differs from the reference run on message '" + messages[i].id + "'");
  }
}

}  // namespace detail

/// Times each message individually after `warmup` untimed calls. Every timed
/// output is compared with a reference run made beforehand.
inline BenchReport measure_latency(const Tagger& tagger, const std::vector<PaymentMessage>& messages,
                                   std::size_t warmup = 10, std::size_t reps = 1) {
  if (messages.empty()) throw DataError("measure_latency: no messages");
  if (reps == 0) throw DataError("measure_latency: reps must be >= 1");
  const auto ref = detail::reference_outputs(tagger, messages);
  for (std::size_t i = 0; i < warmup; ++i) (void)tagger.tag(messages[i % messages.size()]);

  std::vector<double> ms;
  ms.reserve(messages.size() * reps);
  double busy_ms = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t i = 0; i < messages.size(); ++i) {
      const auto t0 = detail::BenchClock::now();
      TaggedMessage out = tagger.tag(messages[i]);
      const double dt = detail::ms_since(t0);
      ms.push_back(dt);
      busy_ms += dt;
      if (out.spans != ref[i])
        throw std::logic_error("benchmark output differs from the reference run on message '" + messages[i].id + "'");
    }
  }
  BenchReport rep;
  rep.tagger = tagger.name();
  rep.mode = "latency";
  rep.latency = latency_stats(ms);
  rep.message_count = ms.size();
  // Wall time counts tagging only, so throughput is comparable with 1000/mean.
  rep.wall_time_s = busy_ms / 1000.0;
  rep.throughput = rep.wall_time_s > 0 ? static_cast<double>(rep.message_count) / rep.wall_time_s : 0.0;
  rep.peak_rss_bytes = peak_rss_bytes();
  rep.outputs_verified = true;
  return rep;
}

/// Streams batches of `batch_size` messages to `workers` threads for
/// `duration_s` seconds, cycling through the corpus.
inline BenchReport measure_throughput(const Tagger& tagger, const std::vector<PaymentMessage>& messages,
                                      std::size_t batch_size, std::size_t workers, double duration_s) {
  if (messages.empty()) throw DataError("measure_throughput: no messages");
  if (batch_size < 1) throw DataError("measure_throughput: batch_size must be >= 1");
  if (workers < 1) throw DataError("measure_throughput: workers must be >= 1");
  if (!(duration_s > 0.0)) throw DataError("measure_throughput: duration must be positive");
  const auto ref = detail::reference_outputs(tagger, messages);

  const std::size_t n = messages.size();
  std::atomic<std::size_t> cursor{0};
  std::vector<std::vector<double>> batch_ms(workers);
  std::vector<std::size_t> done(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  const auto t0 = detail::BenchClock::now();
  const auto deadline = t0 + std::chrono::duration_cast<detail::BenchClock::duration>(
                                 std::chrono::duration<double>(duration_s));
  auto work = [&](std::size_t w) {
    try {
      std::vector<const PaymentMessage*> batch;
      batch.reserve(batch_size);
      while (detail::BenchClock::now() < deadline) {
        const std::size_t start = cursor.fetch_add(batch_size);
        batch.clear();
        for (std::size_t k = 0; k < batch_size; ++k) batch.push_back(&messages[(start + k) % n]);
        const auto b0 = detail::BenchClock::now();
        auto out = tagger.tag_batch(batch);
        batch_ms[w].push_back(detail::ms_since(b0));
        done[w] += out.size();
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  const double wall = detail::ms_since(t0) / 1000.0;
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  detail::spot_check(tagger, messages, ref);
  std::vector<double> all;
  std::size_t total = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    all.insert(all.end(), batch_ms[w].begin(), batch_ms[w].end());
    total += done[w];
  }
  BenchReport rep;
  rep.tagger = tagger.name();
  rep.mode = "throughput";
  rep.latency = latency_stats(std::move(all));
  rep.batch_size = batch_size;
  rep.workers = workers;
  rep.message_count = total;
  rep.wall_time_s = wall;
  rep.throughput = wall > 0 ? static_cast<double>(total) / wall : 0.0;
  rep.peak_rss_bytes = peak_rss_bytes();
  rep.outputs_verified = true;
  return rep;
}

}  // namespace payner
