#pragma once

#include <span>
#include <string>
#include <vector>

#include "payner/baseline.hpp"
#include "payner/crf.hpp"
#include "payner/gazetteer.hpp"
#include "payner/spans.hpp"
#include "payner/tokenize.hpp"
#include "payner/types.hpp"

namespace payner {

struct TaggedMessage {
  TokenSequence tokens;
  LabelSequence labels;
  std::vector<EntitySpan> spans;

  friend bool operator==(const TaggedMessage&, const TaggedMessage&) = default;
};

/// End-to-end tagger over raw messages. Implementations are immutable and
/// safe to call from several threads.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TaggedMessage tag(const PaymentMessage& message) const = 0;
  virtual std::string name() const = 0;

  virtual std::vector<TaggedMessage> tag_batch(std::span<const PaymentMessage* const> batch) const {
    std::vector<TaggedMessage> out;
    out.reserve(batch.size());
    for (const auto* m : batch) out.push_back(tag(*m));
    return out;
  }
};

class CrfTagger final : public Tagger {
 public:
  CrfTagger(const CrfModel& model, const Gazetteers& gaz = default_gazetteers(), bool enforce_bio = true)
      : model_(model), gaz_(gaz), enforce_bio_(enforce_bio) {}

  TaggedMessage tag(const PaymentMessage& message) const override {
    TaggedMessage t;
    t.tokens = tokenize(message);
    t.labels = crf_tag(model_, message, t.tokens, gaz_, enforce_bio_);
    t.spans = extract_spans(t.labels, message.id);
    return t;
  }
  std::string name() const override { return "crf"; }

 private:
  const CrfModel& model_;
  const Gazetteers& gaz_;
  bool enforce_bio_;
};

class RuleTagger final : public Tagger {
 public:
  explicit RuleTagger(RuleSet rules = RuleSet::defaults(), const Gazetteers& gaz = default_gazetteers())
      : rules_(std::move(rules)), gaz_(gaz) {}

  TaggedMessage tag(const PaymentMessage& message) const override {
    TaggedMessage t;
    t.tokens = tokenize(message);
    t.spans = rule_tag(message, t.tokens, parse_structure(message), gaz_, rules_);
    t.labels = spans_to_labels(t.spans, t.tokens.size());
    return t;
  }
  std::string name() const override { return "rule-based"; }

 private:
  RuleSet rules_;
  const Gazetteers& gaz_;
};

/// Tags every message of a corpus, keyed by message id.
inline Predictions predict(const Tagger& tagger, const Corpus& corpus) {
  Predictions p;
  for (const auto& m : corpus) p[m.id()] = tagger.tag(m.message).spans;
  return p;
}

/// Tagged messages as an annotation corpus (for prediction files).
inline Corpus tag_corpus(const Tagger& tagger, const std::vector<PaymentMessage>& messages) {
  Corpus out;
  out.reserve(messages.size());
  for (const auto& m : messages) {
    auto t = tagger.tag(m);
    AnnotatedMessage a;
    a.message = m;
    a.tokens = std::move(t.tokens);
    a.labels = std::move(t.labels);
    a.gold_spans = std::move(t.spans);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace payner
