#include <gtest/gtest.h>

#include <algorithm>

#include "payner/features.hpp"
#include "payner/generator.hpp"

using namespace payner;

namespace {

bool has(const std::vector<std::string>& v, const std::string& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

std::vector<std::string> features_at(const PaymentMessage& m, std::size_t i) {
  const auto seq = tokenize(m);
  return extract_features(seq, parse_structure(m), m.format, default_gazetteers(), i);
}

AnnotatedMessage annotated(std::string id, std::string text) {
  AnnotatedMessage m;
  m.message = {std::move(id), MessageFormat::OTHER, std::move(text), {}, {}};
  m.tokens = tokenize(m.message);
  m.labels.assign(m.tokens.size(), Label::outside());
  return m;
}

}  // namespace

TEST(Features, CurrencyToken) {
  PaymentMessage m{"m", MessageFormat::OTHER, "pay EUR 100", {}, {}};
  auto f = features_at(m, 1);
  EXPECT_TRUE(has(f, "gaz:ccy"));
  EXPECT_TRUE(has(f, "cap=ALLCAPS"));
  EXPECT_TRUE(has(f, "lower=eur"));
  EXPECT_TRUE(has(f, "len=3"));
  EXPECT_TRUE(has(f, "shape=X"));
  EXPECT_TRUE(has(f, "prev=pay"));
  EXPECT_TRUE(has(f, "next=100"));
  EXPECT_TRUE(has(f, "fmt=OTHER"));
}

TEST(Features, BoundarySentinels) {
  PaymentMessage m{"m", MessageFormat::OTHER, "Smith paid", {}, {}};
  auto f = features_at(m, 0);
  EXPECT_TRUE(has(f, "prev=<BOS>"));
  EXPECT_TRUE(has(f, "w-2=<BOS>"));
  EXPECT_TRUE(has(f, "cap=Init"));
  EXPECT_TRUE(has(f, "shape=Xx"));
  f = features_at(m, 1);
  EXPECT_TRUE(has(f, "next=<EOS>"));
  EXPECT_TRUE(has(f, "w+2=<EOS>"));
}

TEST(Features, IbanInBeneficiaryField) {
  PaymentMessage m{"m", MessageFormat::MT103, ":59:GB82WEST12345698765432\nJOHN DOE", {}, {}};
  auto f = features_at(m, 1);
  EXPECT_TRUE(has(f, "pat:iban"));
  EXPECT_TRUE(has(f, "pat:acct"));
  EXPECT_TRUE(has(f, "field=F59"));
  EXPECT_TRUE(has(f, "fieldpos=0"));
  EXPECT_TRUE(has(f, "hasdigit"));
  EXPECT_TRUE(has(f, "len=13+"));
  EXPECT_FALSE(has(f, "gaz:name"));
  f = features_at(m, 2);
  EXPECT_TRUE(has(f, "gaz:name"));
  EXPECT_TRUE(has(f, "field=F59"));
}

TEST(Features, GazetteerMultiToken) {
  PaymentMessage m{"m", MessageFormat::OTHER, "via Deutsche Bank in Berlin , Germany", {}, {}};
  EXPECT_TRUE(has(features_at(m, 1), "gaz:bank"));
  EXPECT_TRUE(has(features_at(m, 2), "gaz:bank"));
  EXPECT_TRUE(has(features_at(m, 4), "gaz:city"));
  EXPECT_TRUE(has(features_at(m, 6), "gaz:country"));
  EXPECT_TRUE(has(features_at(m, 5), "haspunct"));
}

TEST(Features, IndexOutOfRange) {
  const auto seq = tokenize("a b");
  EXPECT_THROW(extract_features(seq, {}, MessageFormat::OTHER, default_gazetteers(), 2), std::out_of_range);
}

TEST(FeatureIndex, ThresholdOneKeepsEverything) {
  Corpus c{annotated("a", "alpha beta"), annotated("b", "beta gamma")};
  auto idx = build_feature_index(c, 1);
  std::set<std::string> all;
  for (const auto& m : c)
    for (const auto& pos : extract_sequence_features(m.tokens, {}, m.message.format, default_gazetteers()))
      all.insert(pos.begin(), pos.end());
  EXPECT_EQ(idx.size(), all.size());
  EXPECT_TRUE(std::is_sorted(idx.names().begin(), idx.names().end()));
  for (FeatureId i = 0; i < idx.size(); ++i) EXPECT_EQ(idx.id(idx.name(i)), i);
}

TEST(FeatureIndex, HugeThresholdGivesEmptyIndex) {
  Corpus c{annotated("a", "alpha beta")};
  EXPECT_TRUE(build_feature_index(c, 1000000).empty());
  EXPECT_THROW(build_feature_index({}, 1), DataError);
}

TEST(FeatureIndex, PruningByCount) {
  Corpus c;
  for (int i = 0; i < 5; ++i) c.push_back(annotated("m" + std::to_string(i), "paid HSBC"));
  c.push_back(annotated("x", "xyzzy"));
  auto idx = build_feature_index(c, 2);
  ASSERT_TRUE(idx.id("gaz:bank"));
  EXPECT_EQ(idx.count(*idx.id("gaz:bank")), 5u);
  EXPECT_FALSE(idx.id("lower=xyzzy"));
  for (FeatureId i = 0; i < idx.size(); ++i) EXPECT_GE(idx.count(i), 2u);
}

TEST(FeatureIndex, DeterministicAndUnknownFeaturesDropped) {
  GeneratorConfig cfg;
  cfg.count = 60;
  const auto c = generate_corpus(cfg);
  const auto a = build_feature_index(c, 2), b = build_feature_index(c, 2);
  EXPECT_EQ(a, b);
  PaymentMessage novel{"n", MessageFormat::OTHER, "qwertyuiop zxcvbnm", {}, {}};
  const auto seq = tokenize(novel);
  const auto feats = featurize(a, novel, seq, default_gazetteers());
  ASSERT_EQ(feats.size(), 2u);
  for (const auto& pos : feats) {
    EXPECT_TRUE(std::is_sorted(pos.begin(), pos.end()));
    EXPECT_EQ(std::adjacent_find(pos.begin(), pos.end()), pos.end());
    for (auto id : pos) EXPECT_LT(id, a.size());
  }
  EXPECT_FALSE(a.id("lower=qwertyuiop"));
}

TEST(FeatureIndex, FromNamesRejectsDuplicates) {
  EXPECT_THROW(FeatureIndex::from_names({"a", "a"}, 1), DataError);
  auto idx = FeatureIndex::from_names({"b", "a"}, 1);
  EXPECT_EQ(idx.id("b"), 0u);
}
