#include <gtest/gtest.h>

#include "payner/generator.hpp"
#include "payner/tokenize.hpp"

using namespace payner;

namespace {

std::vector<std::string> texts(const TokenSequence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.text);
  return out;
}

PaymentMessage mt(std::string text) { return {"m", MessageFormat::MT103, std::move(text), {}, {}}; }

}  // namespace

TEST(Tokenize, SwiftTagIsOneToken) {
  auto seq = tokenize(mt(":50K:JOHN DOE"));
  EXPECT_EQ(texts(seq), (std::vector<std::string>{":50K:", "JOHN", "DOE"}));
  EXPECT_EQ(seq[1].field_context, FieldId::F50K);
  EXPECT_FALSE(seq[0].field_context);
}

TEST(Tokenize, SingleCharacter) { EXPECT_EQ(texts(tokenize("A")), (std::vector<std::string>{"A"})); }

TEST(Tokenize, IbanKeptWhole) {
  auto seq = tokenize("GB82WEST12345698765432");
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_TRUE(validate_iban(seq[0].text));
}

TEST(Tokenize, EmptyTextIsAnError) { EXPECT_THROW(tokenize(""), DataError); }

TEST(Tokenize, ReferenceCodesAndAmounts) {
  EXPECT_EQ(texts(tokenize("INV-2024-001")), (std::vector<std::string>{"INV", "-", "2024", "-", "001"}));
  EXPECT_EQ(texts(tokenize("/RFB/ABC123")), (std::vector<std::string>{"/", "RFB", "/", "ABC", "123"}));
  EXPECT_EQ(texts(tokenize("EUR 1,234.56.")), (std::vector<std::string>{"EUR", "1,234.56", "."}));
  EXPECT_EQ(texts(tokenize("EUR1234,56")), (std::vector<std::string>{"EUR", "1234,56"}));
}

TEST(Tokenize, Pain001StripsMarkup) {
  PaymentMessage m{"p", MessageFormat::PAIN001, "<Cdtr><Nm>ACME GMBH</Nm></Cdtr>", {}, {}};
  auto seq = tokenize(m);
  EXPECT_EQ(texts(seq), (std::vector<std::string>{"ACME", "GMBH"}));
  EXPECT_EQ(seq[0].field_context, FieldId::Cdtr);
  EXPECT_EQ(m.text.substr(seq[0].char_start, seq[0].char_end - seq[0].char_start), "ACME");
}

TEST(Tokenize, AlignExamples) {
  auto seq = tokenize("JOHN DOE");
  ASSERT_EQ(seq.size(), 2u);
  ASSERT_EQ(seq[0].char_end, 4u);
  ASSERT_EQ(seq[1].char_start, 5u);
  auto a = align_char_spans(seq, {{0, 4, EntityType::PERSON_NAME}}, 8);
  ASSERT_EQ(a.spans.size(), 1u);
  EXPECT_EQ(a.spans[0].token_start, 0u);
  EXPECT_EQ(a.spans[0].token_end, 0u);
  EXPECT_EQ(a.expanded, 0u);
  a = align_char_spans(seq, {{0, 8, EntityType::PERSON_NAME}}, 8);
  EXPECT_EQ(a.spans[0].token_end, 1u);
  a = align_char_spans(seq, {{2, 6, EntityType::PERSON_NAME}}, 8);
  EXPECT_EQ(a.spans[0].token_start, 0u);
  EXPECT_EQ(a.spans[0].token_end, 1u);
  EXPECT_EQ(a.expanded, 1u);
  EXPECT_THROW(align_char_spans(seq, {{4, 9, EntityType::PERSON_NAME}}, 8), DataError);
}

// Offsets are ordered, non-overlapping, on codepoint boundaries, and each
// token's text is the slice of the message it points at.
TEST(Tokenize, OffsetPropertiesOnGeneratedMessages) {
  GeneratorConfig cfg;
  cfg.count = 300;
  cfg.seed = 3;
  for (const auto& m : generate_corpus(cfg)) {
    const auto& s = m.message.text;
    const auto seq = tokenize(m.message);
    ASSERT_FALSE(seq.empty());
    std::size_t prev_end = 0;
    for (const auto& t : seq.tokens) {
      ASSERT_LT(t.char_start, t.char_end);
      ASSERT_GE(t.char_start, prev_end);
      ASSERT_LE(t.char_end, s.size());
      ASSERT_TRUE(text::on_codepoint_boundary(s, t.char_start));
      ASSERT_TRUE(text::on_codepoint_boundary(s, t.char_end));
      ASSERT_EQ(s.substr(t.char_start, t.char_end - t.char_start), t.text);
      prev_end = t.char_end;
    }
    EXPECT_EQ(seq, m.tokens);
  }
}

// Re-tokenizing the tokens joined by single spaces gives the same token texts
// for free-text formats, and keeps SWIFT tags intact.
TEST(Tokenize, RetokenizingJoinedTokensIsStable) {
  for (const char* src : {":50K:JOHN DOE\n:59:GB82WEST12345698765432\nACME LTD", "Pay EUR 1,234.56 ref INV-2024-001"}) {
    auto first = tokenize(mt(src));
    std::string joined;
    for (const auto& t : first.tokens) joined += (joined.empty() ? "" : " ") + t.text;
    auto second = tokenize(mt(joined));
    EXPECT_EQ(texts(first), texts(second)) << src;
  }
}
