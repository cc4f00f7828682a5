#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

namespace payner::text {

inline constexpr bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline constexpr bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline constexpr bool is_ascii_alpha(char c) { return is_upper(c) || is_lower(c); }
inline constexpr bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_digit(c); }
inline constexpr bool is_non_ascii(char c) { return static_cast<unsigned char>(c) >= 0x80; }
inline constexpr bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
/// Letters for tokenization purposes: ASCII letters and any UTF-8 byte.
inline constexpr bool is_word_char(char c) { return is_ascii_alnum(c) || is_non_ascii(c); }

inline bool is_ascii(std::string_view s) {
  for (char c : s)
    if (is_non_ascii(c)) return false;
  return true;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline std::string ascii_upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (is_lower(c)) c = static_cast<char>(c - 'a' + 'A');
  return out;
}

/// NFC-normalized, case-folded form used for all lexicon lookups.
inline std::string fold(std::string_view s) {
  if (is_ascii(s)) return ascii_lower(s);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  u.foldCase();
  if (U_SUCCESS(status)) {
    icu::UnicodeString n = nfc->normalize(u, status);
    if (U_SUCCESS(status)) u = n;
  }
  std::string out;
  u.toUTF8String(out);
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// True when `pos` does not fall inside a multi-byte UTF-8 sequence.
inline bool on_codepoint_boundary(std::string_view s, std::size_t pos) {
  if (pos == 0 || pos >= s.size()) return true;
  return (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

}  // namespace payner::text
