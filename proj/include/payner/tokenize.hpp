#pragma once

#include <cassert>
#include <string>
#include <string_view>
#include <vector>

#include "payner/formats.hpp"
#include "payner/text.hpp"
#include "payner/types.hpp"
#include "payner/validators.hpp"

namespace payner {

namespace detail {

struct PieceSink {
  std::string_view source;
  std::vector<Token>* out;
  std::optional<FieldId> field;

  void emit(std::size_t begin, std::size_t end) const {
    assert(text::on_codepoint_boundary(source, begin) && text::on_codepoint_boundary(source, end));
    out->push_back(Token{std::string(source.substr(begin, end - begin)), begin, end, field});
  }
};

/// End of `\d+([.,]\d+)*` starting at `pos` (which must be a digit).
inline std::size_t number_end(std::string_view s, std::size_t pos) {
  std::size_t i = pos;
  while (i < s.size() && text::is_digit(s[i])) ++i;
  while (i + 1 < s.size() && (s[i] == ',' || s[i] == '.') && text::is_digit(s[i + 1])) {
    i += 1;
    while (i < s.size() && text::is_digit(s[i])) ++i;
  }
  return i;
}

inline std::size_t date_end(std::string_view s, std::size_t pos) {
  if (pos + 10 <= s.size()) {
    auto cand = s.substr(pos, 10);
    if ((cand[2] == '/' || cand[4] == '-') && date_shape(cand) &&
        (pos + 10 == s.size() || !text::is_word_char(s[pos + 10])))
      return pos + 10;
  }
  return pos;
}

/// Splits a whitespace-free chunk [begin, end) of `s`.
inline void tokenize_chunk(std::string_view s, std::size_t begin, std::size_t end, const PieceSink& sink) {
  std::size_t pos = begin;
  if (auto len = match_swift_tag(s.substr(0, end), pos); len > 0) {
    sink.emit(pos, pos + len);
    pos += len;
  }
  while (pos < end) {
    const char c = s[pos];
    if (!text::is_word_char(c)) {
      sink.emit(pos, pos + 1);
      ++pos;
      continue;
    }
    std::size_t run_end = pos;
    while (run_end < end && text::is_word_char(s[run_end])) ++run_end;
    const std::string_view run = s.substr(pos, run_end - pos);

    // Account identifiers stay whole.
    if (iban_shape(run) || validate_bic(run)) {
      sink.emit(pos, run_end);
      pos = run_end;
      continue;
    }
    if (auto d = date_end(s.substr(0, end), pos); d > pos) {
      sink.emit(pos, d);
      pos = d;
      continue;
    }

    // Letter/digit pieces of the run.
    std::vector<std::pair<std::size_t, std::size_t>> pieces;
    bool letters_all_caps = true;
    for (std::size_t i = pos; i < run_end;) {
      const bool digit = text::is_digit(s[i]);
      std::size_t j = i;
      while (j < run_end && text::is_digit(s[j]) == digit) {
        if (!digit && !text::is_upper(s[j])) letters_all_caps = false;
        ++j;
      }
      pieces.emplace_back(i, j);
      i = j;
    }
    const bool split = pieces.size() > 1 && letters_all_caps;
    if (!split) pieces.assign(1, {pos, run_end});

    for (std::size_t p = 0; p < pieces.size(); ++p) {
      auto [a, b] = pieces[p];
      // The final digit piece may continue as a number with separators.
      if (p + 1 == pieces.size() && b == run_end && text::is_digit(s[b - 1]) &&
          (split || std::all_of(s.begin() + a, s.begin() + b, text::is_digit)))
        b = number_end(s.substr(0, end), a);
      sink.emit(a, b);
      pos = b;
    }
  }
}

inline void tokenize_range(std::string_view s, std::size_t begin, std::size_t end, std::optional<FieldId> field,
                           std::vector<Token>& out) {
  PieceSink sink{s, &out, field};
  std::size_t i = begin;
  while (i < end) {
    while (i < end && text::is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < end && !text::is_space(s[j])) ++j;
    if (j > i) tokenize_chunk(s, i, j, sink);
    i = j;
  }
}

}  // namespace detail

/// Payment-aware tokenization.
///
/// Rules, in priority order: SWIFT tags (`:50K:`) are single tokens; for
/// pain.001 the XML markup is dropped and each text node is tokenized with its
/// element role as field context; IBAN- and BIC-shaped runs are never split;
/// upper-case codes glued to digits are split at the letter/digit boundary
/// (`EUR1234,56` -> `EUR`, `1234,56`) as are `/` and `-`; numbers keep their
/// internal `,` and `.`; all other punctuation is a token of its own.
inline TokenSequence tokenize(const PaymentMessage& message) {
  if (message.text.empty()) throw DataError("cannot tokenize empty message '" + message.id + "'");
  TokenSequence seq;
  seq.message_id = message.id;
  const std::string_view s = message.text;
  if (message.format == MessageFormat::PAIN001) {
    for (const auto& r : parse_pain001(s).regions)
      detail::tokenize_range(s, r.char_start, r.char_end, r.field, seq.tokens);
    return seq;
  }
  const FieldStructure fs = parse_structure(s, message.format);
  std::size_t cursor = 0;
  for (const auto& r : fs.regions) {
    detail::tokenize_range(s, cursor, r.char_start, std::nullopt, seq.tokens);
    detail::tokenize_range(s, r.char_start, r.char_end, r.field, seq.tokens);
    cursor = r.char_end;
  }
  detail::tokenize_range(s, cursor, s.size(), std::nullopt, seq.tokens);
  return seq;
}

/// Convenience overload for ad-hoc text with no structure.
inline TokenSequence tokenize(std::string_view text, MessageFormat fmt = MessageFormat::OTHER) {
  PaymentMessage m;
  m.format = fmt;
  m.text = std::string(text);
  return tokenize(m);
}

struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  EntityType type = EntityType::PERSON_NAME;

  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct AlignmentResult {
  std::vector<EntitySpan> spans;
  std::size_t expanded = 0;  // spans that cut through a token
  std::size_t dropped = 0;   // spans covering no token at all
};

/// Projects character spans onto the minimal covering token ranges.
inline AlignmentResult align_char_spans(const TokenSequence& tokens, const std::vector<CharSpan>& char_spans,
                                        std::size_t text_size) {
  AlignmentResult res;
  for (const auto& cs : char_spans) {
    if (cs.start >= cs.end || cs.end > text_size)
      throw DataError("character span [" + std::to_string(cs.start) + "," + std::to_string(cs.end) +
                      ") out of bounds for text of length " + std::to_string(text_size));
    std::optional<std::size_t> first, last;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      if (t.char_start < cs.end && t.char_end > cs.start) {
        if (!first) first = i;
        last = i;
      } else if (t.char_start >= cs.end) {
        break;
      }
    }
    if (!first) {
      ++res.dropped;
      continue;
    }
    if (tokens[*first].char_start < cs.start || tokens[*last].char_end > cs.end) ++res.expanded;
    res.spans.push_back(EntitySpan{cs.type, *first, *last, tokens.message_id});
  }
  return res;
}

}  // namespace payner
