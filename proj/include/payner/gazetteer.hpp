#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "payner/text.hpp"
#include "payner/tokenize.hpp"
#include "payner/validators.hpp"

namespace payner {

// Built-in lexicons. The same lists ship under data/ for editing and
// overriding via Gazetteers::from_directory.

inline const std::vector<std::string>& default_bank_names() {
  static const std::vector<std::string> v = {
      "DEUTSCHE BANK", "COMMERZBANK", "DZ BANK", "POSTBANK", "SPARKASSE", "BNP PARIBAS",
      "SOCIETE GENERALE", "CREDIT AGRICOLE", "LA BANQUE POSTALE", "BARCLAYS", "BARCLAYS BANK",
      "HSBC", "HSBC BANK", "LLOYDS BANK", "NATWEST", "STANDARD CHARTERED", "SANTANDER",
      "BANCO SANTANDER", "BBVA", "CAIXABANK", "BANCO SABADELL", "ING BANK", "RABOBANK", "ABN AMRO",
      "UBS", "CREDIT SUISSE", "UNICREDIT", "INTESA SANPAOLO", "KBC BANK", "DANSKE BANK", "NORDEA",
      "HANDELSBANKEN", "ERSTE BANK", "RAIFFEISEN BANK", "JPMORGAN CHASE", "CHASE BANK",
      "BANK OF AMERICA", "CITIBANK", "WELLS FARGO", "PNC BANK",
  };
  return v;
}

inline const std::vector<std::string>& default_country_names() {
  static const std::vector<std::string> v = {
      "GERMANY", "DEUTSCHLAND", "ALLEMAGNE", "ALEMANIA", "FRANCE", "FRANKREICH", "FRANCIA", "SPAIN",
      "SPANIEN", "ESPAGNE", "ESPAÑA", "ITALY", "UNITED KINGDOM", "ROYAUME-UNI", "REINO UNIDO",
      "NETHERLANDS", "BELGIUM", "BELGIQUE", "SWITZERLAND", "SCHWEIZ", "SUISSE", "AUSTRIA",
      "ÖSTERREICH", "AUTRICHE", "PORTUGAL", "IRELAND", "SWEDEN", "DENMARK", "POLAND",
      "UNITED STATES", "USA", "CANADA", "LUXEMBOURG",
  };
  return v;
}

inline const std::vector<std::string>& default_city_names() {
  static const std::vector<std::string> v = {
      "LONDON", "MANCHESTER", "EDINBURGH", "BIRMINGHAM", "DUBLIN", "CORK", "PARIS", "LYON",
      "MARSEILLE", "LILLE", "BRUSSELS", "BRUXELLES", "ANTWERP", "BERLIN", "HAMBURG", "MÜNCHEN",
      "MUNICH", "FRANKFURT", "KÖLN", "STUTTGART", "DÜSSELDORF", "VIENNA", "WIEN", "ZURICH",
      "ZÜRICH", "GENEVA", "GENÈVE", "MADRID", "BARCELONA", "VALENCIA", "SEVILLA", "ZARAGOZA",
      "LISBON", "ROME", "MILAN", "AMSTERDAM", "ROTTERDAM", "NEW YORK", "CHICAGO", "LOS ANGELES",
      "HOUSTON", "SAN FRANCISCO", "BOSTON", "MIAMI", "TORONTO",
  };
  return v;
}

inline const std::vector<std::string>& default_person_name_parts() {
  static const std::vector<std::string> v = {
      "JOHN", "JAMES", "MARY", "SARAH", "DAVID", "MICHAEL", "EMMA", "OLIVER", "THOMAS", "WILLIAM",
      "SMITH", "JONES", "TAYLOR", "BROWN", "WILLIAMS", "WILSON", "JOHNSON", "DAVIES", "HANS",
      "KLAUS", "PETRA", "SABINE", "STEFAN", "ANDREAS", "MÜLLER", "SCHMIDT", "SCHNEIDER", "FISCHER",
      "WEBER", "MEYER", "WAGNER", "JOSÉ", "MARÍA", "CARMEN", "ANTONIO", "MANUEL", "JAVIER",
      "GARCÍA", "MARTÍNEZ", "LÓPEZ", "SÁNCHEZ", "GONZÁLEZ", "RODRÍGUEZ", "JEAN", "PIERRE", "MARIE",
      "SOPHIE", "NICOLAS", "PHILIPPE", "MARTIN", "BERNARD", "DUBOIS", "DURAND", "MOREAU", "LAURENT",
  };
  return v;
}

/// Multi-token name list matched against token sequences. Entries are split
/// with the message tokenizer and compared case-insensitively after NFC.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::string>& entries) {
    for (const auto& e : entries) add(e);
  }

  void add(std::string_view entry) {
    auto t = text::trim(entry);
    if (t.empty()) return;
    auto toks = tokenize(t);
    std::string key;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i) key += kSep;
      key += text::fold(toks[i].text);
    }
    entries_.insert(std::move(key));
    max_tokens_ = std::max(max_tokens_, toks.size());
  }

  bool contains_folded(std::string_view folded_key) const { return entries_.count(std::string(folded_key)) > 0; }
  bool contains(std::string_view single_token) const { return entries_.count(text::fold(single_token)) > 0; }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_tokens() const { return max_tokens_; }

  /// Every [start, end] (inclusive) token range whose folded text is an entry.
  std::vector<std::pair<std::size_t, std::size_t>> matches(const std::vector<std::string>& folded) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < folded.size(); ++i) {
      std::string key;
      for (std::size_t n = 1; n <= max_tokens_ && i + n <= folded.size(); ++n) {
        if (n > 1) key += kSep;
        key += folded[i + n - 1];
        if (entries_.count(key)) out.emplace_back(i, i + n - 1);
      }
    }
    return out;
  }

  /// Per-token flag: token lies inside at least one match.
  std::vector<bool> coverage(const std::vector<std::string>& folded) const {
    std::vector<bool> cov(folded.size(), false);
    for (auto [a, b] : matches(folded))
      for (std::size_t i = a; i <= b; ++i) cov[i] = true;
    return cov;
  }

 private:
  static constexpr char kSep = '\x1f';
  std::unordered_set<std::string> entries_;
  std::size_t max_tokens_ = 0;
};

struct Gazetteers {
  Lexicon bank_names;
  Lexicon country_names;
  Lexicon city_names;
  CurrencyTable currency_codes;
  Lexicon person_name_parts;

  static Gazetteers defaults() {
    return Gazetteers{Lexicon(default_bank_names()), Lexicon(default_country_names()),
                      Lexicon(default_city_names()), CurrencyTable(), Lexicon(default_person_name_parts())};
  }

  /// Loads banks.txt, countries.txt, cities.txt, currencies.txt and
  /// person_names.txt from `dir`.
  static Gazetteers from_directory(const std::string& dir) {
    auto path = [&dir](const char* f) { return dir + "/" + f; };
    return Gazetteers{Lexicon(read_list_file(path("banks.txt"))), Lexicon(read_list_file(path("countries.txt"))),
                      Lexicon(read_list_file(path("cities.txt"))), CurrencyTable::from_file(path("currencies.txt")),
                      Lexicon(read_list_file(path("person_names.txt")))};
  }
};

inline const Gazetteers& default_gazetteers() {
  static const Gazetteers g = Gazetteers::defaults();
  return g;
}

}  // namespace payner
