#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace payner {

/// Raised for malformed inputs: files, configs, inconsistent annotations.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EntityType : std::uint8_t {
  PERSON_NAME,
  ORGANIZATION,
  ACCOUNT_NUMBER,
  LOCATION,
  AMOUNT,
  PURPOSE,
};

inline constexpr std::size_t kNumEntityTypes = 6;

inline constexpr std::array<EntityType, kNumEntityTypes> kAllEntityTypes = {
    EntityType::PERSON_NAME, EntityType::ORGANIZATION, EntityType::ACCOUNT_NUMBER,
    EntityType::LOCATION,    EntityType::AMOUNT,       EntityType::PURPOSE,
};

inline constexpr std::string_view to_string(EntityType t) {
  constexpr std::array<std::string_view, kNumEntityTypes> names = {
      "PERSON_NAME", "ORGANIZATION", "ACCOUNT_NUMBER", "LOCATION", "AMOUNT", "PURPOSE"};
  return names[static_cast<std::size_t>(t)];
}

inline std::optional<EntityType> parse_entity_type(std::string_view s) {
  for (auto t : kAllEntityTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

enum class MessageFormat : std::uint8_t { MT103, PAIN001, ACH, SEPA, OTHER };

inline constexpr std::size_t kNumFormats = 5;

inline constexpr std::array<MessageFormat, kNumFormats> kAllFormats = {
    MessageFormat::MT103, MessageFormat::PAIN001, MessageFormat::ACH, MessageFormat::SEPA,
    MessageFormat::OTHER,
};

inline constexpr std::string_view to_string(MessageFormat f) {
  constexpr std::array<std::string_view, kNumFormats> names = {"MT103", "PAIN001", "ACH", "SEPA",
                                                               "OTHER"};
  return names[static_cast<std::size_t>(f)];
}

inline std::optional<MessageFormat> parse_format(std::string_view s) {
  for (auto f : kAllFormats)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Labels
//
// The label set is O plus B-/I- for each entity type, 13 in total. Label ids
// are dense: O is 0, then B-X = 1 + 2*type, I-X = 2 + 2*type.

enum class TagKind : std::uint8_t { O, B, I };

struct Label {
  TagKind kind = TagKind::O;
  EntityType type = EntityType::PERSON_NAME;  // meaningless when kind == O

  static constexpr Label outside() { return {}; }
  static constexpr Label begin(EntityType t) { return {TagKind::B, t}; }
  static constexpr Label inside(EntityType t) { return {TagKind::I, t}; }

  constexpr bool is_outside() const { return kind == TagKind::O; }

  constexpr std::size_t id() const {
    if (kind == TagKind::O) return 0;
    return 1 + 2 * static_cast<std::size_t>(type) + (kind == TagKind::I ? 1 : 0);
  }

  static constexpr Label from_id(std::size_t id) {
    if (id == 0) return outside();
    const auto t = static_cast<EntityType>((id - 1) / 2);
    return (id - 1) % 2 == 0 ? begin(t) : inside(t);
  }

  friend constexpr bool operator==(Label a, Label b) {
    return a.kind == b.kind && (a.kind == TagKind::O || a.type == b.type);
  }
};

inline constexpr std::size_t kNumLabels = 2 * kNumEntityTypes + 1;

inline std::string to_string(Label l) {
  switch (l.kind) {
    case TagKind::O: return "O";
    case TagKind::B: return "B-" + std::string(to_string(l.type));
    case TagKind::I: return "I-" + std::string(to_string(l.type));
  }
  return "O";
}

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "O") return Label::outside();
  if (s.size() < 3 || s[1] != '-') return std::nullopt;
  auto t = parse_entity_type(s.substr(2));
  if (!t) return std::nullopt;
  if (s[0] == 'B') return Label::begin(*t);
  if (s[0] == 'I') return Label::inside(*t);
  return std::nullopt;
}

using LabelSequence = std::vector<Label>;

/// True when `next` may follow `prev` under BIO; `prev == nullopt` is the
/// sequence start.
inline constexpr bool bio_transition_allowed(std::optional<Label> prev, Label next) {
  if (next.kind != TagKind::I) return true;
  if (!prev || prev->kind == TagKind::O) return false;
  return prev->type == next.type;
}

inline bool is_valid_bio(const LabelSequence& labels) {
  std::optional<Label> prev;
  for (auto l : labels) {
    if (!bio_transition_allowed(prev, l)) return false;
    prev = l;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Messages and tokens

/// Structural field a token belongs to: MT103 tags and pain.001 element roles.
enum class FieldId : std::uint8_t {
  F20, F23B, F32A, F50K, F52A, F57A, F59, F70, F71A,
  Dbtr, DbtrAcct, Cdtr, CdtrAcct, CdtrAgt, RmtInf, InstdAmt,
  OTHER_FIELD,
};

inline constexpr std::size_t kNumFieldIds = 17;

inline constexpr std::string_view to_string(FieldId f) {
  constexpr std::array<std::string_view, kNumFieldIds> names = {
      "F20",  "F23B",     "F32A", "F50K",     "F52A",    "F57A",   "F59",
      "F70",  "F71A",     "Dbtr", "DbtrAcct", "Cdtr",    "CdtrAcct", "CdtrAgt",
      "RmtInf", "InstdAmt", "OTHER_FIELD"};
  return names[static_cast<std::size_t>(f)];
}

inline std::optional<FieldId> parse_field_id(std::string_view s) {
  for (std::size_t i = 0; i < kNumFieldIds; ++i)
    if (to_string(static_cast<FieldId>(i)) == s) return static_cast<FieldId>(i);
  return std::nullopt;
}

struct MessageFlags {
  bool multilingual = false;
  bool nonstandard = false;
  bool has_nested = false;

  friend bool operator==(const MessageFlags&, const MessageFlags&) = default;
};

struct PaymentMessage {
  std::string id;
  MessageFormat format = MessageFormat::OTHER;
  std::string text;
  std::set<std::string> language_tags;
  MessageFlags flags;

  friend bool operator==(const PaymentMessage&, const PaymentMessage&) = default;
};

struct Token {
  std::string text;
  std::size_t char_start = 0;  // byte offsets, half-open
  std::size_t char_end = 0;
  std::optional<FieldId> field_context;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenSequence {
  std::vector<Token> tokens;
  std::string message_id;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

/// Typed token span with inclusive bounds.
struct EntitySpan {
  EntityType type = EntityType::PERSON_NAME;
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  std::string message_id;

  bool overlaps(const EntitySpan& o) const {
    return token_start <= o.token_end && o.token_start <= token_end;
  }
  bool same_bounds(const EntitySpan& o) const {
    return token_start == o.token_start && token_end == o.token_end;
  }

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
  friend auto operator<=>(const EntitySpan& a, const EntitySpan& b) {
    if (auto c = a.token_start <=> b.token_start; c != 0) return c;
    if (auto c = a.token_end <=> b.token_end; c != 0) return c;
    return a.type <=> b.type;
  }
};

struct AnnotatedMessage {
  PaymentMessage message;
  TokenSequence tokens;
  LabelSequence labels;
  std::vector<EntitySpan> gold_spans;
  // Inner spans of nested entities; BIO labels keep only the outer one.
  std::vector<EntitySpan> nested_spans;

  const std::string& id() const { return message.id; }

  friend bool operator==(const AnnotatedMessage&, const AnnotatedMessage&) = default;
};

using Corpus = std::vector<AnnotatedMessage>;

}  // namespace payner
