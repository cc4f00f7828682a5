#include <gtest/gtest.h>

#include <random>

#include "payner/spans.hpp"

using namespace payner;

namespace {
const auto P = EntityType::PERSON_NAME;
const auto A = EntityType::AMOUNT;
}  // namespace

TEST(Spans, ExtractExamples) {
  auto r = extract_spans_counted({Label::begin(P), Label::inside(P), Label::outside()});
  ASSERT_EQ(r.spans.size(), 1u);
  EXPECT_EQ(r.spans[0].type, P);
  EXPECT_EQ(r.spans[0].token_start, 0u);
  EXPECT_EQ(r.spans[0].token_end, 1u);
  EXPECT_EQ(r.repairs, 0u);

  EXPECT_TRUE(extract_spans({Label::outside(), Label::outside()}).empty());

  r = extract_spans_counted({Label::inside(A), Label::outside()});
  ASSERT_EQ(r.spans.size(), 1u);
  EXPECT_EQ(r.spans[0].type, A);
  EXPECT_EQ(r.spans[0].token_start, 0u);
  EXPECT_EQ(r.spans[0].token_end, 0u);
  EXPECT_EQ(r.repairs, 1u);
}

TEST(Spans, TypeChangeInsideClosesSpan) {
  auto r = extract_spans_counted({Label::begin(P), Label::inside(A), Label::inside(A)});
  ASSERT_EQ(r.spans.size(), 2u);
  EXPECT_EQ(r.spans[1].type, A);
  EXPECT_EQ(r.spans[1].token_start, 1u);
  EXPECT_EQ(r.spans[1].token_end, 2u);
  EXPECT_EQ(r.repairs, 1u);
}

TEST(Spans, AdjacentBeginsAreSeparateSpans) {
  auto s = extract_spans({Label::begin(P), Label::begin(P)}, "m1");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].message_id, "m1");
}

TEST(Spans, EncodeRejectsOverlapAndOutOfRange) {
  EXPECT_THROW(spans_to_labels({{P, 0, 1, ""}, {A, 1, 2, ""}}, 3), DataError);
  EXPECT_THROW(spans_to_labels({{P, 2, 3, ""}}, 3), DataError);
  EXPECT_THROW(spans_to_labels({{P, 2, 1, ""}}, 3), DataError);
}

// extract_spans . spans_to_labels is the identity on valid span lists.
TEST(Spans, RoundTripProperty) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + rng() % 30;
    std::vector<EntitySpan> spans;
    std::size_t i = rng() % 3;
    while (i < n) {
      const std::size_t len = 1 + rng() % 4;
      const std::size_t end = std::min(n - 1, i + len - 1);
      spans.push_back({kAllEntityTypes[rng() % kNumEntityTypes], i, end, "x"});
      i = end + 1 + rng() % 3;
    }
    const auto labels = spans_to_labels(spans, n);
    EXPECT_TRUE(is_valid_bio(labels));
    EXPECT_EQ(extract_spans(labels, "x"), spans);
  }
}
