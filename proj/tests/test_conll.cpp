#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "payner/conll.hpp"
#include "payner/generator.hpp"

using namespace payner;

namespace {

Corpus roundtrip(const Corpus& c) {
  std::stringstream ss;
  write_annotations(c, ss);
  return read_annotations(ss, "mem");
}

std::string read_error(const std::string& file) {
  std::istringstream in(file);
  try {
    read_annotations(in, "f.conll");
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

// Random message text over a vocabulary that stresses the file format:
// quotes, backslashes, '#', non-ASCII, tabs and newlines inside the text.
AnnotatedMessage random_message(std::mt19937_64& rng, std::size_t k) {
  static const std::vector<std::string> vocab = {
      "JOHN", "Müller", "\"quoted\"", "back\\slash", "#", "# id", "EUR", "1,234.56", "GB82WEST12345698765432",
      "INV-2024-001", "/RFB/", "São", "Paulo", "x", "\t", "\n", ":70:", "=", "O", "B-AMOUNT", "日本"};
  AnnotatedMessage m;
  m.message.id = "r" + std::to_string(k);
  m.message.format = kAllFormats[rng() % kNumFormats];
  if (m.message.format == MessageFormat::PAIN001) m.message.format = MessageFormat::OTHER;
  std::string text;
  const std::size_t words = 1 + rng() % 12;
  for (std::size_t i = 0; i < words; ++i) text += (i ? " " : "") + vocab[rng() % vocab.size()];
  if (text.find_first_not_of(" \t\n") == std::string::npos) text = "x";
  m.message.text = text;
  m.message.flags = {rng() % 2 == 0, rng() % 2 == 0, false};
  if (rng() % 2) m.message.language_tags = {"en", "de"};
  m.tokens = tokenize(m.message);
  // Random valid BIO labels.
  std::vector<EntitySpan> spans;
  for (std::size_t i = 0; i < m.tokens.size();) {
    if (rng() % 3 == 0) {
      const std::size_t end = std::min(m.tokens.size() - 1, i + rng() % 3);
      spans.push_back({kAllEntityTypes[rng() % kNumEntityTypes], i, end, m.message.id});
      i = end + 1;
    } else {
      ++i;
    }
  }
  m.labels = spans_to_labels(spans, m.tokens.size());
  m.gold_spans = spans;
  if (!spans.empty() && rng() % 3 == 0) {
    m.message.flags.has_nested = true;
    m.nested_spans.push_back({spans[0].type, spans[0].token_start, spans[0].token_start, m.message.id});
  }
  return m;
}

}  // namespace

TEST(Conll, EmptyCorpus) {
  std::stringstream ss;
  write_annotations({}, ss);
  EXPECT_TRUE(ss.str().empty());
  EXPECT_TRUE(read_annotations(ss).empty());
}

TEST(Conll, SmallestRecord) {
  AnnotatedMessage m;
  m.message = {"m1", MessageFormat::OTHER, "JOHN DOE", {}, {}};
  m.tokens = tokenize(m.message);
  m.labels = {Label::begin(EntityType::PERSON_NAME), Label::inside(EntityType::PERSON_NAME)};
  m.gold_spans = extract_spans(m.labels, "m1");
  std::stringstream ss;
  write_annotations({m}, ss);
  const std::string s = ss.str();
  EXPECT_NE(s.find("JOHN\tB-PERSON_NAME\nDOE\tI-PERSON_NAME\n\n"), std::string::npos);
  EXPECT_NE(s.find("# id = m1\n# format = OTHER\n# flags = none\n"), std::string::npos);
  auto back = read_annotations(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], m);
}

TEST(Conll, ReadWithoutTextHeaderJoinsTokens) {
  std::istringstream in("# id = a\n# format = SEPA\n# flags = multilingual\nJOHN\tB-PERSON_NAME\nDOE\tI-PERSON_NAME\n");
  auto c = read_annotations(in);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].message.text, "JOHN DOE");
  EXPECT_TRUE(c[0].message.flags.multilingual);
  EXPECT_EQ(c[0].gold_spans.size(), 1u);
  EXPECT_EQ(c[0].tokens[1].char_start, 5u);
}

TEST(Conll, ErrorsNameTheLine) {
  EXPECT_EQ(read_error("# id = a\n# format = OTHER\nJOHN\tI-PERSON_NAME\n"),
            "f.conll:3: broken BIO: I-PERSON_NAME after sequence start");
  EXPECT_EQ(read_error("# id = a\nJOHN\tB-PERSON\n"), "f.conll:2: unknown label 'B-PERSON'");
  EXPECT_NE(read_error("# id = a\nJOHN\n").find("f.conll:2: token/label count mismatch"), std::string::npos);
  EXPECT_NE(read_error("# id = a\nJOHN\tO\tO\n").find("f.conll:2: token/label count mismatch"), std::string::npos);
  EXPECT_NE(read_error("# id = a\n# format = MT999\n").find("f.conll:2:"), std::string::npos);
  EXPECT_NE(read_error("# id = a\nJOHN\tO\n# flags = none\n").find("f.conll:3: header line"), std::string::npos);
  EXPECT_NE(read_error("JOHN\tO\n").find("without '# id'"), std::string::npos);
}

TEST(Conll, GeneratedCorpusRoundTrips) {
  GeneratorConfig cfg;
  cfg.count = 300;
  cfg.seed = 77;
  const auto c = generate_corpus(cfg);
  EXPECT_EQ(roundtrip(c), c);
}

// 200 random corpora from the generator with random settings, plus 200
// hand-built ones with awkward token texts.
TEST(Conll, RoundTripProperty) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    GeneratorConfig cfg;
    cfg.count = 1 + rng() % 3;
    cfg.seed = rng();
    cfg.nested_rate = 0.5;
    cfg.multilingual_rate = 0.5;
    cfg.nonstandard_rate = 0.5;
    const auto c = generate_corpus(cfg);
    ASSERT_EQ(roundtrip(c), c) << "seed " << cfg.seed;
  }
  for (int k = 0; k < 200; ++k) {
    Corpus c;
    const std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) c.push_back(random_message(rng, k * 10 + i));
    ASSERT_EQ(roundtrip(c), c) << "case " << k;
  }
}

TEST(Conll, RawMessagesRoundTrip) {
  GeneratorConfig cfg;
  cfg.count = 50;
  std::vector<PaymentMessage> raw;
  for (const auto& m : generate_corpus(cfg)) raw.push_back({m.message.id, m.message.format, m.message.text, {}, {}});
  std::stringstream ss;
  write_raw_messages(raw, ss);
  EXPECT_EQ(read_raw_messages(ss), raw);
  std::istringstream bad("{\"id\": \"a\", \"format\": \"MT999\", \"text\": \"x\"}\n");
  EXPECT_THROW(read_raw_messages(bad), DataError);
}
