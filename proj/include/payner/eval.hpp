#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "payner/rng.hpp"
#include "payner/spans.hpp"
#include "payner/types.hpp"

namespace payner {

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Counts counts;
};

/// Precision, recall and F1 from counts; any 0/0 ratio is 0.
inline Prf prf(const Counts& c) {
  Prf r;
  r.counts = c;
  r.precision = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
  r.recall = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

inline double f1_score(const Counts& c) {
  // 2TP / (2TP + FP + FN), same value as the harmonic mean of P and R.
  const std::size_t denom = 2 * c.tp + c.fp + c.fn;
  return denom ? 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom) : 0.0;
}

struct ErrorBreakdown {
  std::size_t boundary = 0;
  std::size_t type_confusion = 0;
  std::size_t spurious = 0;
  std::size_t missing = 0;

  ErrorBreakdown& operator+=(const ErrorBreakdown& o) {
    boundary += o.boundary;
    type_confusion += o.type_confusion;
    spurious += o.spurious;
    missing += o.missing;
    return *this;
  }
  std::size_t total() const { return boundary + type_confusion + spurious + missing; }
  friend bool operator==(const ErrorBreakdown&, const ErrorBreakdown&) = default;
};

/// Exact-match counts for one message, overall and per entity type.
struct MessageCounts {
  Counts micro;
  std::array<Counts, kNumEntityTypes> per_type{};
};

inline bool exact_match(const EntitySpan& a, const EntitySpan& b) { return a.type == b.type && a.same_bounds(b); }

inline MessageCounts count_matches(const std::vector<EntitySpan>& gold, const std::vector<EntitySpan>& pred) {
  MessageCounts mc;
  std::vector<bool> gold_used(gold.size(), false);
  for (const auto& p : pred) {
    bool hit = false;
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (!gold_used[g] && exact_match(gold[g], p)) {
        gold_used[g] = true;
        hit = true;
        break;
      }
    }
    auto& t = mc.per_type[static_cast<std::size_t>(p.type)];
    if (hit) ++t.tp;
    else ++t.fp;
  }
  for (std::size_t g = 0; g < gold.size(); ++g)
    if (!gold_used[g]) ++mc.per_type[static_cast<std::size_t>(gold[g].type)].fn;
  for (const auto& t : mc.per_type) mc.micro += t;
  return mc;
}

/// Automatic error classes for the non-matching spans of one message.
inline ErrorBreakdown categorize_errors(const std::vector<EntitySpan>& gold, const std::vector<EntitySpan>& pred) {
  ErrorBreakdown b;
  for (const auto& p : pred) {
    bool exact = false, overlap_any = false, overlap_same_type = false;
    for (const auto& g : gold) {
      if (exact_match(g, p)) exact = true;
      if (g.overlaps(p)) {
        overlap_any = true;
        if (g.type == p.type) overlap_same_type = true;
      }
    }
    if (exact) continue;
    if (!overlap_any) ++b.spurious;
    else if (overlap_same_type) ++b.boundary;
    else ++b.type_confusion;
  }
  for (const auto& g : gold) {
    bool matched = false, overlapped = false;
    for (const auto& p : pred) {
      if (exact_match(g, p)) matched = true;
      if (g.overlaps(p)) overlapped = true;
    }
    if (!matched && !overlapped) ++b.missing;
  }
  return b;
}

using Predictions = std::map<std::string, std::vector<EntitySpan>>;

struct EvalReport {
  Prf micro;
  std::array<Prf, kNumEntityTypes> per_type{};
  ErrorBreakdown errors;
  std::size_t message_count = 0;
  // Micro scores restricted to messages with a given property
  // ("nested", "nonstandard", "multilingual", "format:MT103", ...).
  std::map<std::string, Prf> slices;

  const Prf& of(EntityType t) const { return per_type[static_cast<std::size_t>(t)]; }
};

inline nlohmann::json to_json(const Prf& p) {
  nlohmann::json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  j["tp"] = p.counts.tp;
  j["fp"] = p.counts.fp;
  j["fn"] = p.counts.fn;
  return j;
}

/// Keys come out sorted, so the layout is stable.
inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["micro"] = to_json(r.micro);
  nlohmann::json types = nlohmann::json::object();
  for (auto t : kAllEntityTypes) types[std::string(to_string(t))] = to_json(r.of(t));
  j["per_type"] = types;
  j["errors"] = {{"boundary", r.errors.boundary},
                 {"type_confusion", r.errors.type_confusion},
                 {"spurious", r.errors.spurious},
                 {"missing", r.errors.missing}};
  j["message_count"] = r.message_count;
  nlohmann::json slices = nlohmann::json::object();
  for (const auto& [k, v] : r.slices) slices[k] = to_json(v);
  j["slices"] = slices;
  return j;
}

inline void check_same_ids(const Corpus& gold, const Predictions& pred) {
  if (pred.size() != gold.size())
    throw DataError("prediction set covers " + std::to_string(pred.size()) + " messages, gold has " +
                    std::to_string(gold.size()));
  for (const auto& m : gold)
    if (!pred.count(m.id())) throw DataError("no prediction for message '" + m.id() + "'");
}

inline EvalReport evaluate(const Corpus& gold, const Predictions& pred) {
  check_same_ids(gold, pred);
  EvalReport r;
  r.message_count = gold.size();
  Counts micro;
  std::array<Counts, kNumEntityTypes> per_type{};
  std::map<std::string, Counts> slices;
  for (const auto& m : gold) {
    const auto& p = pred.at(m.id());
    const auto mc = count_matches(m.gold_spans, p);
    micro += mc.micro;
    for (std::size_t t = 0; t < kNumEntityTypes; ++t) per_type[t] += mc.per_type[t];
    r.errors += categorize_errors(m.gold_spans, p);
    if (m.message.flags.has_nested) slices["nested"] += mc.micro;
    if (m.message.flags.nonstandard) slices["nonstandard"] += mc.micro;
    if (m.message.flags.multilingual) slices["multilingual"] += mc.micro;
    slices["format:" + std::string(to_string(m.message.format))] += mc.micro;
  }
  r.micro = prf(micro);
  for (std::size_t t = 0; t < kNumEntityTypes; ++t) r.per_type[t] = prf(per_type[t]);
  for (const auto& [k, c] : slices) r.slices[k] = prf(c);
  return r;
}

/// Predictions taken from the labels of a second, aligned corpus.
inline Predictions predictions_from(const Corpus& predicted) {
  Predictions p;
  for (const auto& m : predicted)
    if (!p.emplace(m.id(), extract_spans(m.labels, m.id())).second)
      throw DataError("duplicate message id '" + m.id() + "' in predictions");
  return p;
}

inline EvalReport evaluate(const Corpus& gold, const Corpus& predicted) {
  return evaluate(gold, predictions_from(predicted));
}

/// One-sided paired bootstrap over messages. Returns the fraction of
/// resamples in which system b scores at least as well as system a.
inline double paired_bootstrap(const Corpus& gold, const Predictions& pred_a, const Predictions& pred_b,
                               std::size_t iterations = 10000, std::uint64_t seed = 42) {
  if (iterations == 0) throw DataError("paired_bootstrap: iterations must be positive");
  check_same_ids(gold, pred_a);
  check_same_ids(gold, pred_b);
  if (gold.empty()) throw DataError("paired_bootstrap: empty gold corpus");
  const std::size_t n = gold.size();
  std::vector<Counts> ca(n), cb(n);
  for (std::size_t i = 0; i < n; ++i) {
    ca[i] = count_matches(gold[i].gold_spans, pred_a.at(gold[i].id())).micro;
    cb[i] = count_matches(gold[i].gold_spans, pred_b.at(gold[i].id())).micro;
  }
  Rng rng(seed);
  std::size_t at_least = 0;
  for (std::size_t it = 0; it < iterations; ++it) {
    Counts sa, sb;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = rng.below(n);
      sa += ca[i];
      sb += cb[i];
    }
    if (f1_score(sb) >= f1_score(sa)) ++at_least;
  }
  return static_cast<double>(at_least) / static_cast<double>(iterations);
}

}  // namespace payner
