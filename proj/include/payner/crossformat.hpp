#pragma once

#include <algorithm>
#include <fstream>
#include <future>
#include <string>
#include <vector>

#include <json.hpp>

#include "payner/crf.hpp"
#include "payner/eval.hpp"
#include "payner/gazetteer.hpp"
#include "payner/generator.hpp"
#include "payner/types.hpp"

namespace payner {

struct CrossFormatEntry {
  std::vector<MessageFormat> train_formats;
  MessageFormat test_format = MessageFormat::MT103;

  friend bool operator==(const CrossFormatEntry&, const CrossFormatEntry&) = default;
};

using CrossFormatPlan = std::vector<CrossFormatEntry>;

struct CrossFormatCell {
  CrossFormatEntry entry;
  double micro_f1 = 0.0;
  std::size_t train_messages = 0;
  std::size_t test_messages = 0;
  EvalReport report;
};

/// One cell per plan entry, in plan order.
struct CrossFormatMatrix {
  std::vector<CrossFormatCell> cells;

  /// F1 of the first cell matching (train set, test format); throws if absent.
  double f1(const std::vector<MessageFormat>& train, MessageFormat test) const {
    auto want = train;
    std::sort(want.begin(), want.end());
    for (const auto& c : cells) {
      auto have = c.entry.train_formats;
      std::sort(have.begin(), have.end());
      if (have == want && c.entry.test_format == test) return c.micro_f1;
    }
    throw std::out_of_range("no cross-format cell for test format " + std::string(to_string(test)));
  }
};

inline std::string describe(const CrossFormatEntry& e) {
  std::string s;
  for (auto f : e.train_formats) {
    if (!s.empty()) s += "+";
    s += to_string(f);
  }
  return s + " -> " + std::string(to_string(e.test_format));
}

// ---------------------------------------------------------------------------
// Plan files: {"entries": [{"train": ["MT103"], "test": "SEPA"}, ...]} or a
// bare array of entries.

inline CrossFormatPlan plan_from_json(const nlohmann::json& j) {
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) throw DataError("cross-format plan: missing 'entries'");
    arr = &j.at("entries");
  }
  if (!arr->is_array()) throw DataError("cross-format plan: entries must be an array");
  CrossFormatPlan plan;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const auto& e = (*arr)[i];
    const std::string where = "cross-format plan entry " + std::to_string(i);
    if (!e.is_object() || !e.contains("train") || !e.contains("test"))
      throw DataError(where + ": needs 'train' and 'test'");
    CrossFormatEntry entry;
    const auto& tr = e.at("train");
    if (!tr.is_array() || tr.empty()) throw DataError(where + ": 'train' must be a non-empty array");
    for (const auto& f : tr) {
      auto fmt = f.is_string() ? parse_format(f.get<std::string>()) : std::nullopt;
      if (!fmt) throw DataError(where + ": unknown format " + f.dump());
      if (std::find(entry.train_formats.begin(), entry.train_formats.end(), *fmt) == entry.train_formats.end())
        entry.train_formats.push_back(*fmt);
    }
    auto test = e.at("test").is_string() ? parse_format(e.at("test").get<std::string>()) : std::nullopt;
    if (!test) throw DataError(where + ": unknown test format " + e.at("test").dump());
    entry.test_format = *test;
    plan.push_back(std::move(entry));
  }
  if (plan.empty()) throw DataError("cross-format plan is empty");
  return plan;
}

inline nlohmann::json to_json(const CrossFormatPlan& plan) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : plan) {
    nlohmann::json tr = nlohmann::json::array();
    for (auto f : e.train_formats) tr.push_back(std::string(to_string(f)));
    arr.push_back({{"train", tr}, {"test", std::string(to_string(e.test_format))}});
  }
  return {{"entries", arr}};
}

inline CrossFormatPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open plan file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  try {
    return plan_from_json(j);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

inline nlohmann::json to_json(const CrossFormatMatrix& m) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : m.cells) {
    nlohmann::json tr = nlohmann::json::array();
    for (auto f : c.entry.train_formats) tr.push_back(std::string(to_string(f)));
    cells.push_back({{"train", tr},
                     {"test", std::string(to_string(c.entry.test_format))},
                     {"micro_f1", c.micro_f1},
                     {"train_messages", c.train_messages},
                     {"test_messages", c.test_messages},
                     {"report", to_json(c.report)}});
  }
  return {{"cells", cells}};
}

// ---------------------------------------------------------------------------

namespace detail {

inline Corpus select_formats(const Corpus& corpus, const std::vector<MessageFormat>& formats) {
  Corpus out;
  for (const auto& m : corpus)
    if (std::find(formats.begin(), formats.end(), m.message.format) != formats.end()) out.push_back(m);
  return out;
}

}  // namespace detail

/// Splits `corpus` once (stratified by format, `seed`), then for each entry
/// trains a fresh CRF on the train part restricted to the entry's train
/// formats and scores it on the test part restricted to the test format.
/// Entries may run concurrently; cells come back in plan order.
inline CrossFormatMatrix cross_format_eval(const Corpus& corpus, const CrossFormatPlan& plan,
                                           const TrainConfig& config, const Gazetteers& gaz = default_gazetteers(),
                                           std::uint64_t seed = 42, bool parallel = false) {
  if (plan.empty()) throw DataError("cross_format_eval: empty plan");
  config.validate();
  const CorpusSplit split = split_corpus(corpus, SplitRatios{}, seed);

  struct Job {
    Corpus train, test;
  };
  std::vector<Job> jobs;
  for (const auto& e : plan) {
    if (e.train_formats.empty()) throw DataError("cross_format_eval: entry with no train formats");
    Job j{detail::select_formats(split.train, e.train_formats), detail::select_formats(split.test, {e.test_format})};
    if (j.train.empty()) throw DataError("cross_format_eval: empty training subset for " + describe(e));
    if (j.test.empty()) throw DataError("cross_format_eval: empty test subset for " + describe(e));
    jobs.push_back(std::move(j));
  }

  auto run = [&](std::size_t i) {
    CrossFormatCell cell;
    cell.entry = plan[i];
    cell.train_messages = jobs[i].train.size();
    cell.test_messages = jobs[i].test.size();
    const CrfModel model = train(jobs[i].train, Corpus{}, gaz, config);
    cell.report = evaluate(jobs[i].test, crf_predict(model, jobs[i].test, gaz));
    cell.micro_f1 = cell.report.micro.f1;
    return cell;
  };

  CrossFormatMatrix m;
  if (parallel) {
    std::vector<std::future<CrossFormatCell>> futures;
    for (std::size_t i = 0; i < jobs.size(); ++i) futures.push_back(std::async(std::launch::async, run, i));
    for (auto& f : futures) m.cells.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) m.cells.push_back(run(i));
  }
  return m;
}

}  // namespace payner
