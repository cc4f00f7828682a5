#include <gtest/gtest.h>

#include <set>

#include "payner/types.hpp"

using namespace payner;

TEST(Types, SixEntityTypesFiveFormats) {
  EXPECT_EQ(kAllEntityTypes.size(), 6u);
  EXPECT_EQ(kAllFormats.size(), 5u);
  for (auto t : kAllEntityTypes) EXPECT_EQ(parse_entity_type(to_string(t)), t);
  for (auto f : kAllFormats) EXPECT_EQ(parse_format(to_string(f)), f);
  EXPECT_FALSE(parse_format("MT202"));
}

TEST(Types, ThirteenLabelsWithDistinctIds) {
  EXPECT_EQ(kNumLabels, 13u);
  std::set<std::string> names;
  for (std::size_t id = 0; id < kNumLabels; ++id) {
    const Label l = Label::from_id(id);
    EXPECT_EQ(l.id(), id);
    names.insert(to_string(l));
    EXPECT_EQ(parse_label(to_string(l)), l);
  }
  EXPECT_EQ(names.size(), 13u);
  EXPECT_EQ(Label::from_id(0), Label::outside());
  EXPECT_EQ(to_string(Label::from_id(1)), "B-PERSON_NAME");
  EXPECT_EQ(to_string(Label::from_id(2)), "I-PERSON_NAME");
}

TEST(Types, OCarriesNoType) {
  Label a{TagKind::O, EntityType::AMOUNT};
  EXPECT_EQ(a, Label::outside());
  EXPECT_EQ(to_string(a), "O");
}

TEST(Types, ParseLabelRejectsJunk) {
  for (const char* s : {"", "B", "B-", "X-PERSON_NAME", "B-PERSON", "b-PERSON_NAME", "O-AMOUNT"})
    EXPECT_FALSE(parse_label(s)) << s;
}

TEST(Types, BioValidity) {
  using L = Label;
  const auto P = EntityType::PERSON_NAME, A = EntityType::AMOUNT;
  EXPECT_TRUE(is_valid_bio({}));
  EXPECT_TRUE(is_valid_bio({L::begin(P), L::inside(P), L::outside()}));
  EXPECT_TRUE(is_valid_bio({L::begin(P), L::begin(A), L::inside(A)}));
  EXPECT_FALSE(is_valid_bio({L::inside(P)}));
  EXPECT_FALSE(is_valid_bio({L::outside(), L::inside(P)}));
  EXPECT_FALSE(is_valid_bio({L::begin(P), L::inside(A)}));
  EXPECT_FALSE(is_valid_bio({L::begin(A), L::inside(A), L::inside(P)}));
}

TEST(Types, FieldIdNames) {
  EXPECT_EQ(kNumFieldIds, 17u);
  for (std::size_t i = 0; i < kNumFieldIds; ++i) {
    const auto f = static_cast<FieldId>(i);
    EXPECT_EQ(parse_field_id(to_string(f)), f);
  }
}

TEST(Types, SpanOrderingAndOverlap) {
  EntitySpan a{EntityType::PERSON_NAME, 0, 2, "m"}, b{EntityType::LOCATION, 2, 3, "m"},
      c{EntityType::LOCATION, 3, 3, "m"};
  EXPECT_TRUE(a.overlaps(b));
  EXPECT_FALSE(a.overlaps(c));
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
}
