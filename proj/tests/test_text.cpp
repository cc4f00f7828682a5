#include <gtest/gtest.h>

#include "payner/text.hpp"

using namespace payner;

TEST(Text, FoldIsCaseInsensitiveAndNfc) {
  EXPECT_EQ(text::fold("Deutsche BANK"), "deutsche bank");
  // Precomposed and decomposed forms fold to the same string.
  EXPECT_EQ(text::fold("JOS\xC3\x89"), text::fold("jose\xCC\x81"));
  EXPECT_EQ(text::fold("M\xC3\x9CLLER"), text::fold("m\xC3\xBCller"));
}

TEST(Text, TrimAndSplit) {
  EXPECT_EQ(text::trim("  a b \n"), "a b");
  EXPECT_EQ(text::trim(""), "");
  auto parts = text::split_whitespace(" a  bc\td\n");
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[1], "bc");
}

TEST(Text, CodepointBoundary) {
  const std::string s = "a\xC3\xA9z";
  EXPECT_TRUE(text::on_codepoint_boundary(s, 1));
  EXPECT_FALSE(text::on_codepoint_boundary(s, 2));
  EXPECT_TRUE(text::on_codepoint_boundary(s, 3));
}
