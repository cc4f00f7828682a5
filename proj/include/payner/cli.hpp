#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "payner/baseline.hpp"
#include "payner/bench.hpp"
#include "payner/conll.hpp"
#include "payner/crf.hpp"
#include "payner/crossformat.hpp"
#include "payner/eval.hpp"
#include "payner/gazetteer.hpp"
#include "payner/generator.hpp"
#include "payner/tagger.hpp"
#include "payner/types.hpp"

namespace payner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Progress goes to `err` unless --quiet; results always go to `out`. With
/// --json-logs both become one JSON object per line on `out`.
class Logger {
 public:
  Logger(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  bool quiet = false;
  bool json = false;

  void progress(const std::string& event, const nlohmann::json& fields, const std::string& text) const {
    if (quiet) return;
    emit(event, fields, text, err_);
  }
  void result(const std::string& event, const nlohmann::json& fields, const std::string& text) const {
    emit(event, fields, text, out_);
  }

 private:
  void emit(const std::string& event, const nlohmann::json& fields, const std::string& text,
            std::ostream& text_stream) const {
    if (json) {
      nlohmann::json j = fields.is_object() ? fields : nlohmann::json::object();
      j["event"] = event;
      out_ << j.dump() << '\n';
    } else {
      text_stream << text << '\n';
    }
  }

  std::ostream& out_;
  std::ostream& err_;
};

namespace detail {

/// Runs `f`, prefixing any DataError with the flag that named the input.
template <class F>
auto for_flag(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DataError& e) {
    throw DataError(flag + ": " + e.what());
  }
}

inline std::ofstream open_out(const std::string& flag, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(flag + ": cannot open '" + path + "' for writing");
  return out;
}

inline void write_json_file(const std::string& flag, const std::string& path, const nlohmann::json& j) {
  auto out = open_out(flag, path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError(flag + ": write to '" + path + "' failed");
}

/// "0.4,0.3,0.14,0.1,0.06" in MT103, PAIN001, ACH, SEPA, OTHER order, or
/// "MT103=0.5,SEPA=0.5" (unnamed formats get 0).
inline std::array<double, kNumFormats> parse_format_mix(const std::string& s) {
  std::array<double, kNumFormats> mix{};
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  auto number = [](const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v.size() || !std::isfinite(x)) throw CLI::ValidationError("--format-mix", "bad number '" + v + "'");
    return x;
  };
  const bool named = s.find('=') != std::string::npos;
  if (!named) {
    if (parts.size() != kNumFormats)
      throw CLI::ValidationError("--format-mix", "expected " + std::to_string(kNumFormats) + " comma-separated values");
    for (std::size_t i = 0; i < kNumFormats; ++i) mix[i] = number(parts[i]);
  } else {
    for (const auto& p : parts) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--format-mix", "expected FORMAT=VALUE, got '" + p + "'");
      auto f = parse_format(p.substr(0, eq));
      if (!f) throw CLI::ValidationError("--format-mix", "unknown format '" + p.substr(0, eq) + "'");
      mix[static_cast<std::size_t>(*f)] = number(p.substr(eq + 1));
    }
  }
  double sum = 0;
  for (double v : mix) {
    if (v < 0) throw CLI::ValidationError("--format-mix", "proportions must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw CLI::ValidationError("--format-mix", "proportions must sum to 1");
  return mix;
}

inline std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace detail

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 usage
/// error, 2 data error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Named-entity recognition for payment messages", "payner"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::uint64_t seed = 42;
  bool quiet = false, json_logs = false;
  std::string gaz_dir;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress progress output");
  app.add_flag("--json-logs", json_logs, "Emit one JSON object per line");
  app.add_option("--gazetteers", gaz_dir, "Directory with banks.txt, countries.txt, cities.txt, currencies.txt, person_names.txt")
      ->check(CLI::ExistingDirectory);

  auto sub = [&app](const char* name, const char* desc) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  // generate
  GeneratorConfig gcfg;
  std::string gen_out, gen_mix;
  bool gen_raw = false;
  auto* generate = sub("generate", "Generate a synthetic annotated corpus");
  generate->add_option("--count", gcfg.count, "Number of messages")->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--out", gen_out, "Output file")->required();
  generate->add_option("--format-mix", gen_mix, "Format proportions, e.g. 0.4,0.3,0.14,0.1,0.06 or MT103=0.5,SEPA=0.5");
  generate->add_option("--multilingual-rate", gcfg.multilingual_rate)->check(CLI::Range(0.0, 1.0));
  generate->add_option("--nonstandard-rate", gcfg.nonstandard_rate)->check(CLI::Range(0.0, 1.0));
  generate->add_option("--nested-rate", gcfg.nested_rate)->check(CLI::Range(0.0, 1.0));
  generate->add_flag("--raw", gen_raw, "Write raw messages as JSON lines instead of annotations");

  // split
  std::string split_in, split_train, split_dev, split_test;
  std::vector<double> split_ratios{0.70, 0.15, 0.15};
  auto* split = sub("split", "Stratified train/dev/test split of an annotation file");
  split->add_option("--corpus", split_in)->required();
  split->add_option("--train-out", split_train)->required();
  split->add_option("--dev-out", split_dev)->required();
  split->add_option("--test-out", split_test)->required();
  split->add_option("--ratios", split_ratios, "train dev test")->expected(3)->delimiter(',');

  // train
  TrainConfig tcfg;
  std::string train_in, dev_in, model_out;
  auto* trn = sub("train", "Train a CRF model");
  trn->add_option("--train", train_in)->required();
  trn->add_option("--dev", dev_in);
  trn->add_option("--model", model_out)->required();
  auto add_train_opts = [&tcfg](CLI::App* s) {
    s->add_option("--l2", tcfg.l2_lambda, "L2 strength")->check(CLI::NonNegativeNumber)->capture_default_str();
    s->add_option("--max-iter", tcfg.max_iterations)->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--prune", tcfg.prune_threshold, "Minimum feature count")->capture_default_str();
    s->add_option("--tol", tcfg.convergence_tol)->check(CLI::NonNegativeNumber)->capture_default_str();
    s->add_option("--history", tcfg.lbfgs_history)->capture_default_str();
    s->add_option("--threads", tcfg.workers, "Gradient threads")->check(CLI::PositiveNumber)->capture_default_str();
  };
  add_train_opts(trn);

  // tag
  std::string tag_model, tag_in, tag_out, rules_path;
  bool tag_baseline = false;
  auto* tag = sub("tag", "Tag messages with a CRF model or the rule-based baseline");
  tag->add_option("--model", tag_model);
  tag->add_option("--input", tag_in, "Annotation file or JSON-lines raw messages")->required();
  tag->add_option("--out", tag_out)->required();
  tag->add_flag("--baseline", tag_baseline, "Use the rule-based baseline");
  tag->add_option("--rules", rules_path, "Rule configuration (JSON) for --baseline");

  // eval
  std::string gold_in, pred_in, report_out, other_in;
  std::size_t iters = 10000;
  auto* ev = sub("eval", "Score predictions against gold annotations");
  ev->add_option("--gold", gold_in)->required();
  ev->add_option("--pred", pred_in)->required();
  ev->add_option("--report", report_out, "Write the JSON report here");
  ev->add_option("--bootstrap", other_in, "Second prediction file for a paired bootstrap test");
  ev->add_option("--iters", iters)->check(CLI::PositiveNumber)->capture_default_str();

  // crossformat
  std::string xf_corpus, xf_plan, xf_report;
  bool xf_parallel = false;
  auto* xf = sub("crossformat", "Cross-format generalization matrix");
  xf->add_option("--corpus", xf_corpus)->required();
  xf->add_option("--plan", xf_plan)->required();
  xf->add_option("--report", xf_report)->required();
  xf->add_flag("--parallel", xf_parallel, "Train plan entries concurrently");
  add_train_opts(xf);

  // bench
  std::string b_model, b_in, b_report, b_mode = "both";
  std::size_t b_batch = 1, b_workers = 1, b_warmup = 10, b_reps = 1;
  double b_duration = 10.0;
  bool b_baseline = false;
  auto* bench = sub("bench", "Latency and throughput benchmark");
  bench->add_option("--model", b_model);
  bench->add_option("--input", b_in)->required();
  bench->add_option("--batch", b_batch)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--workers", b_workers)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--duration", b_duration, "Seconds")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--warmup", b_warmup)->capture_default_str();
  bench->add_option("--reps", b_reps)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--mode", b_mode)->check(CLI::IsMember({"latency", "throughput", "both"}))->capture_default_str();
  bench->add_flag("--baseline", b_baseline, "Benchmark the rule-based baseline");
  bench->add_option("--rules", rules_path, "Rule configuration (JSON) for --baseline");
  bench->add_option("--report", b_report, "Write the JSON report here");

  Logger log(out, err);
  try {
    app.parse(argc, argv);
    if (!gen_mix.empty()) gcfg.format_mix = detail::parse_format_mix(gen_mix);
    if (*tag && !tag_baseline && tag_model.empty()) throw CLI::RequiredError("--model (or --baseline)");
    if (*bench && !b_baseline && b_model.empty()) throw CLI::RequiredError("--model (or --baseline)");
    if (!rules_path.empty() && ((*tag && !tag_baseline) || (*bench && !b_baseline)))
      throw CLI::ValidationError("--rules", "only valid together with --baseline");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  log.quiet = quiet;
  log.json = json_logs;
  tcfg.seed = seed;
  gcfg.seed = seed;

  try {
    const Gazetteers gaz_storage =
        gaz_dir.empty() ? Gazetteers{} : detail::for_flag("--gazetteers", [&] { return Gazetteers::from_directory(gaz_dir); });
    const Gazetteers& gaz = gaz_dir.empty() ? default_gazetteers() : gaz_storage;
    auto rules = [&] {
      return rules_path.empty() ? RuleSet::defaults() : detail::for_flag("--rules", [&] { return load_rules(rules_path); });
    };

    if (*generate) {
      gcfg.validate();
      const Corpus corpus = generate_corpus(gcfg);
      auto f = detail::open_out("--out", gen_out);
      if (gen_raw) {
        std::vector<PaymentMessage> raw;
        for (const auto& m : corpus) raw.push_back(m.message);
        write_raw_messages(raw, f);
      } else {
        write_annotations(corpus, f);
      }
      f.close();
      if (!f) throw DataError("--out: write to '" + gen_out + "' failed");
      log.result("generated", {{"messages", corpus.size()}, {"seed", seed}, {"out", gen_out}},
                 "generated " + std::to_string(corpus.size()) + " messages (seed " + std::to_string(seed) + ") -> " + gen_out);
    } else if (*split) {
      const Corpus corpus = detail::for_flag("--corpus", [&] { return read_annotations_file(split_in); });
      const auto parts = split_corpus(corpus, SplitRatios{split_ratios[0], split_ratios[1], split_ratios[2]}, seed);
      detail::for_flag("--train-out", [&] { write_annotations_file(parts.train, split_train); });
      detail::for_flag("--dev-out", [&] { write_annotations_file(parts.dev, split_dev); });
      detail::for_flag("--test-out", [&] { write_annotations_file(parts.test, split_test); });
      if (parts.degenerate) log.progress("warning", {{"message", "dev or test split is empty"}}, "warning: dev or test split is empty");
      log.result("split", {{"train", parts.train.size()}, {"dev", parts.dev.size()}, {"test", parts.test.size()}},
                 "split: train " + std::to_string(parts.train.size()) + ", dev " + std::to_string(parts.dev.size()) +
                     ", test " + std::to_string(parts.test.size()));
    } else if (*trn) {
      const Corpus train_c = detail::for_flag("--train", [&] { return read_annotations_file(train_in); });
      const Corpus dev_c = dev_in.empty() ? Corpus{} : detail::for_flag("--dev", [&] { return read_annotations_file(dev_in); });
      auto logger = [&log](const TrainProgress& p) {
        nlohmann::json j{{"iteration", p.iteration}, {"objective", p.objective}, {"gradient_norm", p.gradient_norm}};
        std::string text = "iter " + std::to_string(p.iteration) + " objective " + detail::fixed(p.objective, 3) +
                           " |g| " + detail::fixed(p.gradient_norm, 3);
        if (!std::isnan(p.dev_micro_f1)) {
          j["dev_micro_f1"] = p.dev_micro_f1;
          text += " dev F1 " + detail::fixed(p.dev_micro_f1);
        }
        log.progress("iteration", j, text);
      };
      auto res = train_detailed(train_c, dev_c, gaz, tcfg, quiet && !json_logs ? TrainLogger{} : TrainLogger{logger});
      detail::for_flag("--model", [&] { save_model(res.model, model_out); });
      nlohmann::json j{{"iterations", res.iterations},     {"converged", res.converged},
                       {"stop_reason", res.stop_reason},   {"objective", res.final_objective},
                       {"features", res.model.num_features()}, {"model", model_out}};
      std::string text = "trained " + std::to_string(res.model.num_features()) + " features in " +
                         std::to_string(res.iterations) + " iterations (" + res.stop_reason + ") -> " + model_out;
      if (!dev_c.empty()) {
        const double f1 = evaluate(dev_c, crf_predict(res.model, dev_c, gaz)).micro.f1;
        j["dev_micro_f1"] = f1;
        text += "\ndev micro-F1 " + detail::fixed(f1);
      }
      log.result("trained", j, text);
    } else if (*tag) {
      const auto messages = detail::for_flag("--input", [&] { return read_messages_any(tag_in); });
      std::optional<CrfModel> model;
      std::unique_ptr<Tagger> tagger;
      if (tag_baseline) {
        tagger = std::make_unique<RuleTagger>(rules(), gaz);
      } else {
        model = detail::for_flag("--model", [&] { return load_model(tag_model); });
        tagger = std::make_unique<CrfTagger>(*model, gaz);
      }
      const Corpus tagged = tag_corpus(*tagger, messages);
      detail::for_flag("--out", [&] { write_annotations_file(tagged, tag_out); });
      std::size_t spans = 0;
      for (const auto& m : tagged) spans += m.gold_spans.size();
      log.result("tagged", {{"messages", tagged.size()}, {"spans", spans}, {"tagger", tagger->name()}, {"out", tag_out}},
                 "tagged " + std::to_string(tagged.size()) + " messages (" + std::to_string(spans) + " spans, " +
                     tagger->name() + ") -> " + tag_out);
    } else if (*ev) {
      const Corpus gold = detail::for_flag("--gold", [&] { return read_annotations_file(gold_in); });
      const Predictions pred =
          detail::for_flag("--pred", [&] { return predictions_from(read_annotations_file(pred_in)); });
      const EvalReport rep = detail::for_flag("--pred", [&] { return evaluate(gold, pred); });
      nlohmann::json j = to_json(rep);
      std::ostringstream text;
      text << "micro P " << detail::fixed(rep.micro.precision) << " R " << detail::fixed(rep.micro.recall) << " F1 "
           << detail::fixed(rep.micro.f1) << " (" << rep.message_count << " messages)";
      for (auto t : kAllEntityTypes) {
        const auto& p = rep.of(t);
        const auto& c = p.counts;
        if (c.tp + c.fp + c.fn == 0) continue;
        text << "\n  " << to_string(t) << " P " << detail::fixed(p.precision) << " R " << detail::fixed(p.recall)
             << " F1 " << detail::fixed(p.f1);
      }
      text << "\nerrors: boundary " << rep.errors.boundary << ", type_confusion " << rep.errors.type_confusion
           << ", spurious " << rep.errors.spurious << ", missing " << rep.errors.missing;
      if (!other_in.empty()) {
        const Predictions other =
            detail::for_flag("--bootstrap", [&] { return predictions_from(read_annotations_file(other_in)); });
        const double p = detail::for_flag("--bootstrap", [&] { return paired_bootstrap(gold, pred, other, iters, seed); });
        j["bootstrap"] = {{"other", other_in}, {"iterations", iters}, {"seed", seed}, {"p_value", p}};
        text << "\npaired bootstrap (" << iters << " iterations): p = " << detail::fixed(p);
      }
      if (!report_out.empty()) detail::write_json_file("--report", report_out, j);
      nlohmann::json summary{{"micro_f1", rep.micro.f1}, {"precision", rep.micro.precision},
                             {"recall", rep.micro.recall}, {"messages", rep.message_count}};
      if (j.contains("bootstrap")) summary["p_value"] = j["bootstrap"]["p_value"];
      log.result("eval", summary, text.str());
    } else if (*xf) {
      const Corpus corpus = detail::for_flag("--corpus", [&] { return read_annotations_file(xf_corpus); });
      const CrossFormatPlan plan = detail::for_flag("--plan", [&] { return load_plan(xf_plan); });
      const auto m = detail::for_flag("--plan", [&] { return cross_format_eval(corpus, plan, tcfg, gaz, seed, xf_parallel); });
      detail::write_json_file("--report", xf_report, to_json(m));
      for (const auto& c : m.cells)
        log.result("cell", {{"entry", describe(c.entry)}, {"micro_f1", c.micro_f1}},
                   describe(c.entry) + ": F1 " + detail::fixed(c.micro_f1) + " (train " +
                       std::to_string(c.train_messages) + ", test " + std::to_string(c.test_messages) + ")");
    } else if (*bench) {
      const auto messages = detail::for_flag("--input", [&] { return read_messages_any(b_in); });
      std::optional<CrfModel> model;
      std::unique_ptr<Tagger> tagger;
      if (b_baseline) {
        tagger = std::make_unique<RuleTagger>(rules(), gaz);
      } else {
        model = detail::for_flag("--model", [&] { return load_model(b_model); });
        tagger = std::make_unique<CrfTagger>(*model, gaz);
      }
      nlohmann::json reports = nlohmann::json::array();
      auto report = [&](const BenchReport& r) {
        reports.push_back(to_json(r));
        log.result("bench", to_json(r), summary_line(r));
      };
      if (b_mode != "throughput") report(detail::for_flag("--input", [&] { return measure_latency(*tagger, messages, b_warmup, b_reps); }));
      if (b_mode != "latency")
        report(detail::for_flag("--input", [&] { return measure_throughput(*tagger, messages, b_batch, b_workers, b_duration); }));
      if (!b_report.empty()) detail::write_json_file("--report", b_report, reports);
    }
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace payner::cli
