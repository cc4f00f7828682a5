#include <gtest/gtest.h>

#include <sstream>

#include "payner/conll.hpp"
#include "payner/generator.hpp"

using namespace payner;

namespace {

AnnotatedMessage stub(std::string id, MessageFormat f, std::size_t spans = 0) {
  AnnotatedMessage m;
  m.message = {std::move(id), f, "x", {}, {}};
  m.tokens.tokens.push_back({"x", 0, 1, std::nullopt});
  m.labels = {Label::outside()};
  for (std::size_t i = 0; i < spans; ++i) m.gold_spans.push_back({EntityType::AMOUNT, 0, 0, m.message.id});
  return m;
}

}  // namespace

TEST(Generator, Deterministic) {
  GeneratorConfig cfg;
  cfg.count = 100;
  cfg.seed = 5;
  std::ostringstream a, b;
  write_annotations(generate_corpus(cfg), a);
  write_annotations(generate_corpus(cfg), b);
  EXPECT_EQ(a.str(), b.str());
  cfg.seed = 6;
  std::ostringstream c;
  write_annotations(generate_corpus(cfg), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(Generator, DegenerateMix) {
  GeneratorConfig cfg;
  cfg.count = 1;
  cfg.seed = 7;
  cfg.format_mix = {1.0, 0, 0, 0, 0};
  auto c = generate_corpus(cfg);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].message.format, MessageFormat::MT103);
}

TEST(Generator, RejectsBadConfig) {
  GeneratorConfig cfg;
  cfg.count = 0;
  EXPECT_THROW(generate_corpus(cfg), DataError);
  cfg.count = 10;
  cfg.format_mix = {0.5, 0.5, 0.5, 0, 0};
  EXPECT_THROW(generate_corpus(cfg), DataError);
  cfg.format_mix = {1.5, -0.5, 0, 0, 0};
  EXPECT_THROW(generate_corpus(cfg), DataError);
  cfg.format_mix = {0.4, 0.3, 0.14, 0.1, 0.06};
  cfg.nested_rate = 1.2;
  EXPECT_THROW(generate_corpus(cfg), DataError);
}

TEST(Generator, AnnotationInvariants) {
  GeneratorConfig cfg;
  cfg.count = 400;
  cfg.seed = 13;
  std::set<std::string> ids;
  for (const auto& m : generate_corpus(cfg)) {
    EXPECT_TRUE(ids.insert(m.id()).second);
    EXPECT_FALSE(m.message.text.empty());
    ASSERT_EQ(m.tokens.size(), m.labels.size());
    EXPECT_TRUE(is_valid_bio(m.labels)) << m.id();
    EXPECT_EQ(extract_spans(m.labels, m.id()), m.gold_spans) << m.id();
    EXPECT_EQ(m.message.flags.has_nested, !m.nested_spans.empty()) << m.id();
    for (const auto& n : m.nested_spans) {
      bool inside = false;
      for (const auto& g : m.gold_spans) inside |= g.token_start <= n.token_start && n.token_end <= g.token_end;
      EXPECT_TRUE(inside) << m.id();
    }
    for (const auto& t : m.tokens.tokens)
      if (iban_shape(t.text)) {
        EXPECT_TRUE(validate_iban(t.text)) << t.text;
      }
  }
}

TEST(Generator, GeneratedBicsAreValid) {
  Rng rng(21);
  for (const char* cc : {"DE", "GB", "FR", "ES", "US", "NL"})
    for (int k = 0; k < 100; ++k) {
      const auto bic = gen::make_bic(rng, cc);
      EXPECT_TRUE(validate_bic(bic)) << bic;
      EXPECT_EQ(bic.substr(4, 2), cc);
    }
}

TEST(Generator, DensityConvergesToTarget) {
  GeneratorConfig cfg;
  cfg.count = 5000;
  cfg.seed = 1;
  const auto s = corpus_stats(generate_corpus(cfg));
  EXPECT_GE(s.entity_density.mean, 11.3);
  EXPECT_LE(s.entity_density.mean, 13.3);
  for (std::size_t f = 0; f < kNumFormats; ++f)
    EXPECT_NEAR(s.proportion(kAllFormats[f]), cfg.format_mix[f], 0.02) << to_string(kAllFormats[f]);
  EXPECT_NEAR(s.multilingual_rate, 0.23, 0.02);
  EXPECT_NEAR(s.nonstandard_rate, 0.15, 0.02);
  EXPECT_NEAR(s.nested_rate, 0.08, 0.02);
}

TEST(CorpusStats, Examples) {
  Corpus c{stub("a", MessageFormat::MT103), stub("b", MessageFormat::SEPA)};
  auto s = corpus_stats(c);
  EXPECT_EQ(s.count(MessageFormat::MT103), 1u);
  EXPECT_EQ(s.count(MessageFormat::SEPA), 1u);
  EXPECT_EQ(s.count(MessageFormat::ACH), 0u);

  s = corpus_stats({stub("a", MessageFormat::MT103, 3)});
  EXPECT_DOUBLE_EQ(s.entity_density.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.entity_density.sd, 0.0);
  EXPECT_EQ(s.entity_counts[static_cast<std::size_t>(EntityType::AMOUNT)], 3u);

  EXPECT_THROW(corpus_stats({}), DataError);
}

TEST(Split, OneFormatHundred) {
  Corpus c;
  for (int i = 0; i < 100; ++i) c.push_back(stub("m" + std::to_string(i), MessageFormat::ACH));
  auto s = split_corpus(c);
  EXPECT_EQ(s.train.size(), 70u);
  EXPECT_EQ(s.dev.size(), 15u);
  EXPECT_EQ(s.test.size(), 15u);
  EXPECT_FALSE(s.degenerate);
  std::set<std::string> ids;
  for (const auto* part : {&s.train, &s.dev, &s.test})
    for (const auto& m : *part) EXPECT_TRUE(ids.insert(m.id()).second);
  EXPECT_EQ(ids.size(), 100u);
}

TEST(Split, SingleMessageGoesToTrain) {
  auto s = split_corpus({stub("a", MessageFormat::MT103)});
  EXPECT_EQ(s.train.size(), 1u);
  EXPECT_TRUE(s.dev.empty());
  EXPECT_TRUE(s.test.empty());
  EXPECT_TRUE(s.degenerate);
}

TEST(Split, StratifiedByFormat) {
  Corpus c;
  for (int i = 0; i < 10; ++i) c.push_back(stub("a" + std::to_string(i), MessageFormat::MT103));
  for (int i = 0; i < 10; ++i) c.push_back(stub("b" + std::to_string(i), MessageFormat::SEPA));
  auto s = split_corpus(c, {0.7, 0.15, 0.15}, 3);
  std::size_t mt = 0, sepa = 0;
  for (const auto& m : s.train) (m.message.format == MessageFormat::MT103 ? mt : sepa)++;
  EXPECT_EQ(mt, 7u);
  EXPECT_EQ(sepa, 7u);
  EXPECT_EQ(s.train.size() + s.dev.size() + s.test.size(), 20u);
}

TEST(Split, DeterministicAndRejectsBadRatios) {
  GeneratorConfig cfg;
  cfg.count = 200;
  const auto c = generate_corpus(cfg);
  EXPECT_EQ(split_corpus(c, {}, 9).test, split_corpus(c, {}, 9).test);
  EXPECT_THROW(split_corpus(c, {0.5, 0.2, 0.2}), DataError);
  EXPECT_THROW(split_corpus({}), DataError);
}
