#include <gtest/gtest.h>

#include "payner/gazetteer.hpp"
#include "payner/tokenize.hpp"

using namespace payner;

namespace {

std::vector<std::string> folded(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(s).tokens) out.push_back(text::fold(t.text));
  return out;
}

const std::string kData = PAYNER_DATA_DIR;

}  // namespace

TEST(Gazetteer, CaseInsensitiveMultiTokenMatch) {
  Lexicon lex({"Deutsche Bank", "ING"});
  auto m = lex.matches(folded("paid via DEUTSCHE BANK and ing"));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], (std::pair<std::size_t, std::size_t>{2, 3}));
  EXPECT_EQ(m[1], (std::pair<std::size_t, std::size_t>{5, 5}));
  EXPECT_EQ(lex.max_tokens(), 2u);
}

TEST(Gazetteer, NfcNormalizedLookup) {
  Lexicon lex({"JOS\xC3\x89"});
  EXPECT_TRUE(lex.contains("jose\xCC\x81"));
  EXPECT_TRUE(lex.contains("Jos\xC3\xA9"));
}

TEST(Gazetteer, Coverage) {
  Lexicon lex({"NEW YORK"});
  auto cov = lex.coverage(folded("from New York to Boston"));
  EXPECT_EQ(cov, (std::vector<bool>{false, true, true, false, false}));
}

TEST(Gazetteer, ShippedDataFilesMatchCompiledDefaults) {
  EXPECT_EQ(read_list_file(kData + "/banks.txt"), default_bank_names());
  EXPECT_EQ(read_list_file(kData + "/countries.txt"), default_country_names());
  EXPECT_EQ(read_list_file(kData + "/cities.txt"), default_city_names());
  EXPECT_EQ(read_list_file(kData + "/person_names.txt"), default_person_name_parts());
  EXPECT_EQ(read_list_file(kData + "/currencies.txt"), default_currency_codes());
  const auto g = Gazetteers::from_directory(kData);
  EXPECT_EQ(g.bank_names.size(), default_gazetteers().bank_names.size());
  EXPECT_EQ(g.currency_codes.size(), default_gazetteers().currency_codes.size());
}

TEST(Gazetteer, MissingDirectoryIsADataError) {
  EXPECT_THROW(Gazetteers::from_directory("/nonexistent/dir"), DataError);
}
