#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "payner/text.hpp"
#include "payner/types.hpp"

namespace payner {

namespace detail {

inline int alnum_value(char c) {
  if (text::is_digit(c)) return c - '0';
  if (text::is_upper(c)) return c - 'A' + 10;
  return -1;
}

}  // namespace detail

/// IBAN layout: country letters, two check digits, alphanumeric body,
/// 15 to 34 characters in total. Says nothing about the checksum.
inline bool iban_shape(std::string_view s) {
  if (s.size() < 15 || s.size() > 34) return false;
  if (!text::is_upper(s[0]) || !text::is_upper(s[1])) return false;
  if (!text::is_digit(s[2]) || !text::is_digit(s[3])) return false;
  return std::all_of(s.begin() + 4, s.end(),
                     [](char c) { return text::is_upper(c) || text::is_digit(c); });
}

/// ISO 13616 mod-97 remainder of the rearranged IBAN, computed digit by digit
/// so no big-integer arithmetic is needed. Returns -1 on invalid characters.
inline int iban_mod97(std::string_view s) {
  if (s.size() < 4) return -1;
  int rem = 0;
  auto feed = [&rem](char c) {
    const int v = detail::alnum_value(c);
    if (v < 0) return false;
    rem = v < 10 ? (rem * 10 + v) % 97 : (rem * 100 + v) % 97;
    return true;
  };
  for (std::size_t i = 4; i < s.size(); ++i)
    if (!feed(s[i])) return -1;
  for (std::size_t i = 0; i < 4; ++i)
    if (!feed(s[i])) return -1;
  return rem;
}

inline bool validate_iban(std::string_view s) { return iban_shape(s) && iban_mod97(s) == 1; }

/// 4-letter institution, 2-letter country, 2 alphanumeric location, optional
/// 3 alphanumeric branch.
inline bool validate_bic(std::string_view s) {
  if (s.size() != 8 && s.size() != 11) return false;
  for (std::size_t i = 0; i < 6; ++i)
    if (!text::is_upper(s[i])) return false;
  for (std::size_t i = 6; i < s.size(); ++i)
    if (!text::is_upper(s[i]) && !text::is_digit(s[i])) return false;
  return true;
}

/// Digit run shaped like a domestic account number, or anything IBAN-shaped.
inline bool account_shape(std::string_view s) {
  if (iban_shape(s)) return true;
  if (s.size() < 8 || s.size() > 17) return false;
  return std::all_of(s.begin(), s.end(), text::is_digit);
}

/// Digits with optional thousands grouping and an optional 1-2 digit decimal
/// part, e.g. `1,234.56`, `1.234,56`, `1234,56`, `500`. Bare integers longer
/// than 7 digits are not amounts (they are account or reference numbers).
inline bool amount_shape(std::string_view s) {
  if (s.empty() || !text::is_digit(s.front()) || !text::is_digit(s.back())) return false;
  std::vector<std::string_view> groups;
  std::vector<char> seps;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == ',' || c == '.') {
      groups.push_back(s.substr(start, i - start));
      seps.push_back(c);
      start = i + 1;
    } else if (!text::is_digit(c)) {
      return false;
    }
  }
  groups.push_back(s.substr(start));
  for (auto g : groups)
    if (g.empty()) return false;
  if (seps.empty()) return s.size() <= 7;

  // Last separator may be a decimal mark (1-2 trailing digits).
  std::size_t n_group_seps = seps.size();
  char decimal = 0;
  if (groups.back().size() <= 2) {
    decimal = seps.back();
    --n_group_seps;
  }
  if (n_group_seps == 0) return true;
  const char grouping = seps.front();
  if (grouping == decimal) return false;
  if (groups.front().size() > 3) return false;
  for (std::size_t g = 1; g <= n_group_seps; ++g) {
    if (seps[g - 1] != grouping || groups[g].size() != 3) return false;
  }
  return true;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), text::is_digit);
}

inline int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

inline bool valid_month_day(int month, int day) {
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

}  // namespace detail

/// YYMMDD, YYYY-MM-DD, DD/MM/YYYY and DD.MM.YYYY.
inline bool date_shape(std::string_view s) {
  using detail::all_digits;
  using detail::to_int;
  if (s.size() == 6 && all_digits(s))
    return detail::valid_month_day(to_int(s.substr(2, 2)), to_int(s.substr(4, 2)));
  if (s.size() == 10 && s[4] == '-' && s[7] == '-' && all_digits(s.substr(0, 4)) &&
      all_digits(s.substr(5, 2)) && all_digits(s.substr(8, 2)))
    return detail::valid_month_day(to_int(s.substr(5, 2)), to_int(s.substr(8, 2)));
  if (s.size() == 10 && (s[2] == '/' || s[2] == '.') && s[5] == s[2] &&
      all_digits(s.substr(0, 2)) && all_digits(s.substr(3, 2)) && all_digits(s.substr(6, 4)))
    return detail::valid_month_day(to_int(s.substr(3, 2)), to_int(s.substr(0, 2)));
  return false;
}

// ---------------------------------------------------------------------------
// Currency codes

inline const std::vector<std::string>& default_currency_codes() {
  static const std::vector<std::string> codes = {
      "AED", "ARS", "AUD", "BGN", "BRL", "CAD", "CHF", "CLP", "CNY", "COP", "CZK", "DKK", "EUR",
      "GBP", "HKD", "HUF", "IDR", "ILS", "INR", "JPY", "KRW", "MXN", "MYR", "NOK", "NZD", "PHP",
      "PLN", "RON", "RUB", "SAR", "SEK", "SGD", "THB", "TRY", "TWD", "USD", "ZAR"};
  return codes;
}

/// Reads a one-entry-per-line list; blank lines and `#` comments are skipped.
inline std::vector<std::string> read_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open list file: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

class CurrencyTable {
 public:
  CurrencyTable() : CurrencyTable(default_currency_codes()) {}
  explicit CurrencyTable(const std::vector<std::string>& codes) {
    for (const auto& c : codes) codes_.insert(text::ascii_upper(c));
  }
  static CurrencyTable from_file(const std::string& path) { return CurrencyTable(read_list_file(path)); }

  bool contains(std::string_view s) const {
    return s.size() == 3 && codes_.count(text::ascii_upper(s)) > 0;
  }
  std::size_t size() const { return codes_.size(); }

 private:
  std::unordered_set<std::string> codes_;
};

inline const CurrencyTable& default_currency_table() {
  static const CurrencyTable table;
  return table;
}

struct PatternFlags {
  bool is_iban = false;
  bool is_bic = false;
  bool is_currency_code = false;
  bool is_amount = false;
  bool is_date = false;

  friend bool operator==(const PatternFlags&, const PatternFlags&) = default;
};

inline PatternFlags detect_patterns(std::string_view token,
                                    const CurrencyTable& currencies = default_currency_table()) {
  PatternFlags f;
  f.is_iban = validate_iban(token);
  f.is_bic = validate_bic(token);
  // Currency codes are upper-case in every format we see; avoids "eur" words.
  f.is_currency_code = token.size() == 3 && text::is_upper(token[0]) && currencies.contains(token);
  f.is_amount = amount_shape(token);
  f.is_date = date_shape(token);
  return f;
}

}  // namespace payner
