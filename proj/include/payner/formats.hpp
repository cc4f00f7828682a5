#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "payner/text.hpp"
#include "payner/types.hpp"
#include "payner/validators.hpp"

namespace payner {

struct FieldRegion {
  FieldId field = FieldId::OTHER_FIELD;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string tag;  // raw MT103 tag, or the XML element the text sits in
  std::vector<std::pair<std::string, std::string>> attributes;

  std::size_t length() const { return char_end - char_start; }
  bool contains(std::size_t pos) const { return pos >= char_start && pos < char_end; }

  friend bool operator==(const FieldRegion&, const FieldRegion&) = default;
};

/// Parsed regions of a message, ordered by position and non-overlapping.
struct FieldStructure {
  std::vector<FieldRegion> regions;

  bool empty() const { return regions.empty(); }
  std::size_t size() const { return regions.size(); }

  /// Region containing byte `pos`, or nullptr.
  const FieldRegion* find(std::size_t pos) const {
    auto it = std::upper_bound(regions.begin(), regions.end(), pos,
                               [](std::size_t p, const FieldRegion& r) { return p < r.char_start; });
    if (it == regions.begin()) return nullptr;
    --it;
    return it->contains(pos) ? &*it : nullptr;
  }
};

// ---------------------------------------------------------------------------
// MT103

inline FieldId mt103_field_for_tag(std::string_view tag) {
  if (tag == "20") return FieldId::F20;
  if (tag == "23B") return FieldId::F23B;
  if (tag == "32A") return FieldId::F32A;
  if (tag == "50K") return FieldId::F50K;
  if (tag == "52A") return FieldId::F52A;
  if (tag == "57A") return FieldId::F57A;
  if (tag == "59") return FieldId::F59;
  if (tag == "70") return FieldId::F70;
  if (tag == "71A") return FieldId::F71A;
  return FieldId::OTHER_FIELD;
}

/// Length of a `:NN[A]:` tag at `pos`, or 0.
inline std::size_t match_swift_tag(std::string_view s, std::size_t pos) {
  if (pos + 4 > s.size() || s[pos] != ':') return 0;
  if (!text::is_digit(s[pos + 1]) || !text::is_digit(s[pos + 2])) return 0;
  std::size_t i = pos + 3;
  if (i < s.size() && text::is_upper(s[i])) ++i;
  if (i < s.size() && s[i] == ':') return i + 1 - pos;
  return 0;
}

/// Tolerant MT103 block-4 parser. A field runs from the end of its tag to the
/// next tag at a line start, with surrounding whitespace trimmed.
inline FieldStructure parse_mt103(std::string_view text) {
  struct TagHit {
    std::size_t tag_start, tag_end;
  };
  std::vector<TagHit> hits;
  for (std::size_t pos = 0; pos < text.size();) {
    if (pos == 0 || text[pos - 1] == '\n') {
      if (auto len = match_swift_tag(text, pos); len > 0) {
        hits.push_back({pos, pos + len});
        pos += len;
        continue;
      }
    }
    ++pos;
  }
  FieldStructure out;
  for (std::size_t h = 0; h < hits.size(); ++h) {
    std::size_t start = hits[h].tag_end;
    std::size_t end = h + 1 < hits.size() ? hits[h + 1].tag_start : text.size();
    while (start < end && text::is_space(text[start])) ++start;
    while (end > start && text::is_space(text[end - 1])) --end;
    FieldRegion r;
    r.tag = std::string(text.substr(hits[h].tag_start + 1, hits[h].tag_end - hits[h].tag_start - 2));
    r.field = mt103_field_for_tag(r.tag);
    r.char_start = start;
    r.char_end = end;
    out.regions.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// pain.001

inline std::optional<FieldId> pain001_role(std::string_view element) {
  if (element == "Dbtr") return FieldId::Dbtr;
  if (element == "DbtrAcct") return FieldId::DbtrAcct;
  if (element == "Cdtr") return FieldId::Cdtr;
  if (element == "CdtrAcct") return FieldId::CdtrAcct;
  if (element == "CdtrAgt") return FieldId::CdtrAgt;
  if (element == "RmtInf") return FieldId::RmtInf;
  if (element == "InstdAmt") return FieldId::InstdAmt;
  return std::nullopt;
}

namespace detail {

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
};

inline std::string local_name(std::string_view qname) {
  auto colon = qname.find(':');
  return std::string(colon == std::string_view::npos ? qname : qname.substr(colon + 1));
}

inline bool parse_start_tag(std::string_view body, XmlElement& el, bool& self_closing) {
  self_closing = !body.empty() && body.back() == '/';
  if (self_closing) body.remove_suffix(1);
  std::size_t i = 0;
  while (i < body.size() && !text::is_space(body[i])) ++i;
  if (i == 0) return false;
  el.name = local_name(body.substr(0, i));
  while (i < body.size()) {
    while (i < body.size() && text::is_space(body[i])) ++i;
    if (i >= body.size()) break;
    std::size_t eq = body.find('=', i);
    if (eq == std::string_view::npos) return false;
    auto key = text::trim(body.substr(i, eq - i));
    std::size_t q = eq + 1;
    while (q < body.size() && text::is_space(body[q])) ++q;
    if (q >= body.size() || (body[q] != '"' && body[q] != '\'')) return false;
    std::size_t close = body.find(body[q], q + 1);
    if (close == std::string_view::npos) return false;
    el.attributes.emplace_back(local_name(key), std::string(body.substr(q + 1, close - q - 1)));
    i = close + 1;
  }
  return true;
}

}  // namespace detail

/// Namespace-agnostic element scanner. Each non-blank text node becomes a
/// region whose field is the nearest enclosing known role element. Text outside
/// any role is OTHER_FIELD. Malformed markup yields one OTHER_FIELD region over
/// the whole (trimmed) text.
inline FieldStructure parse_pain001(std::string_view text) {
  auto degrade = [&text]() {
    FieldStructure fs;
    std::size_t s = 0, e = text.size();
    while (s < e && text::is_space(text[s])) ++s;
    while (e > s && text::is_space(text[e - 1])) --e;
    if (e > s) fs.regions.push_back({FieldId::OTHER_FIELD, s, e, {}, {}});
    return fs;
  };

  FieldStructure out;
  std::vector<detail::XmlElement> stack;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '<') {
      if (text.substr(pos, 4) == "<!--") {
        auto end = text.find("-->", pos + 4);
        if (end == std::string_view::npos) return degrade();
        pos = end + 3;
        continue;
      }
      auto close = text.find('>', pos + 1);
      if (close == std::string_view::npos) return degrade();
      std::string_view body = text.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      if (body.empty()) return degrade();
      if (body.front() == '?' || body.front() == '!') continue;
      if (body.front() == '/') {
        auto name = detail::local_name(text::trim(body.substr(1)));
        if (stack.empty() || stack.back().name != name) return degrade();
        stack.pop_back();
        continue;
      }
      detail::XmlElement el;
      bool self_closing = false;
      if (!detail::parse_start_tag(body, el, self_closing)) return degrade();
      if (!self_closing) stack.push_back(std::move(el));
      continue;
    }
    std::size_t next = text.find('<', pos);
    if (next == std::string_view::npos) next = text.size();
    std::size_t s = pos, e = next;
    while (s < e && text::is_space(text[s])) ++s;
    while (e > s && text::is_space(text[e - 1])) --e;
    if (e > s) {
      FieldRegion r;
      r.char_start = s;
      r.char_end = e;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        if (auto role = pain001_role(it->name)) {
          r.field = *role;
          break;
        }
      }
      if (!stack.empty()) {
        r.tag = stack.back().name;
        r.attributes = stack.back().attributes;
      }
      out.regions.push_back(std::move(r));
    }
    pos = next;
  }
  if (!stack.empty()) return degrade();
  return out;
}

/// Structure for a message of the given format. Formats without a dedicated
/// parser have no regions.
inline FieldStructure parse_structure(std::string_view text, MessageFormat fmt) {
  switch (fmt) {
    case MessageFormat::MT103: return parse_mt103(text);
    case MessageFormat::PAIN001: return parse_pain001(text);
    default: return {};
  }
}

inline FieldStructure parse_structure(const PaymentMessage& m) { return parse_structure(m.text, m.format); }

// ---------------------------------------------------------------------------
// Format features

struct FormatFeatureVector {
  FieldId field_type = FieldId::OTHER_FIELD;
  double relative_position = 0.0;
  PatternFlags pattern;
  MessageFormat message_type = MessageFormat::OTHER;

  std::array<bool, kNumFieldIds> field_one_hot() const {
    std::array<bool, kNumFieldIds> v{};
    v[static_cast<std::size_t>(field_type)] = true;
    return v;
  }
};

inline FormatFeatureVector format_features(const Token& token, const FieldStructure& structure,
                                           MessageFormat fmt,
                                           const CurrencyTable& currencies = default_currency_table()) {
  FormatFeatureVector v;
  v.message_type = fmt;
  v.pattern = detect_patterns(token.text, currencies);
  if (const FieldRegion* r = structure.find(token.char_start)) {
    v.field_type = r->field;
    const double len = static_cast<double>(std::max<std::size_t>(1, r->length()));
    v.relative_position = std::clamp(static_cast<double>(token.char_start - r->char_start) / len, 0.0, 1.0);
  }
  return v;
}

}  // namespace payner
