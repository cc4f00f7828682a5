#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "payner/formats.hpp"
#include "payner/gazetteer.hpp"
#include "payner/text.hpp"
#include "payner/types.hpp"
#include "payner/validators.hpp"

namespace payner {

using FeatureId = std::uint32_t;

/// Active feature ids at one position (binary features).
struct FeatureVector {
  std::vector<FeatureId> ids;
  std::size_t position = 0;
};

/// Per-position feature ids for one message.
using SequenceFeatures = std::vector<std::vector<FeatureId>>;

namespace detail {

inline std::string_view cap_class(std::string_view t) {
  std::size_t upper = 0, lower = 0;
  for (char c : t) {
    upper += text::is_upper(c);
    lower += text::is_lower(c);
  }
  if (upper + lower == 0) return {};
  if (lower == 0) return "ALLCAPS";
  if (upper == 0) return "lower";
  if (upper == 1 && text::is_upper(t[0])) return "Init";
  return "mixed";
}

inline std::string_view length_bucket(std::string_view t) {
  std::size_t n = 0;
  for (char c : t) n += (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  if (n <= 1) return "1";
  if (n == 2) return "2";
  if (n == 3) return "3";
  if (n <= 6) return "4-6";
  if (n <= 12) return "7-12";
  return "13+";
}

/// Collapsed character-class shape: "Xx" for "Smith", "X9X9" for
/// "GB82WEST1234", "9,9.9" for "1,234.56".
inline void append_shape(std::string& out, std::string_view t) {
  char last = 0;
  std::size_t emitted = 0;
  for (char c : t) {
    const auto u = static_cast<unsigned char>(c);
    char k;
    if (text::is_upper(c)) k = 'X';
    else if (text::is_lower(c)) k = 'x';
    else if (text::is_digit(c)) k = '9';
    else if (u >= 0xC0) k = 'x';
    else if (u >= 0x80) continue;
    else k = c;
    if (k == last) continue;
    out += k;
    last = k;
    if (++emitted == 12) break;
  }
}

}  // namespace detail

/// Precomputed per-token attributes shared by all positions of a sequence.
struct SequenceContext {
  const TokenSequence* tokens = nullptr;
  MessageFormat format = MessageFormat::OTHER;
  std::vector<std::string> folded;
  std::vector<FormatFeatureVector> fmt;
  std::vector<bool> bank, country, city, name;
  std::vector<bool> ccy;

  SequenceContext(const TokenSequence& seq, const FieldStructure& structure, MessageFormat f, const Gazetteers& gaz)
      : tokens(&seq), format(f) {
    const std::size_t n = seq.size();
    folded.reserve(n);
    fmt.reserve(n);
    for (const auto& t : seq.tokens) {
      folded.push_back(text::fold(t.text));
      fmt.push_back(format_features(t, structure, f, gaz.currency_codes));
    }
    bank = gaz.bank_names.coverage(folded);
    country = gaz.country_names.coverage(folded);
    city = gaz.city_names.coverage(folded);
    name.resize(n);
    ccy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      name[i] = gaz.person_name_parts.contains_folded(folded[i]);
      ccy[i] = gaz.currency_codes.contains(seq[i].text);
    }
  }

  std::size_t size() const { return folded.size(); }
};

/// Calls `emit(std::string_view)` for each feature string at position `i`.
/// `buf` is scratch space reused across calls.
template <class Emit>
void for_each_feature(const SequenceContext& ctx, std::size_t i, std::string& buf, Emit&& emit) {
  const auto& tok = (*ctx.tokens)[i];
  const std::string_view t = tok.text;
  const auto& ff = ctx.fmt[i];
  auto put = [&](std::string_view prefix, std::string_view value) {
    buf.assign(prefix);
    buf += value;
    emit(std::string_view(buf));
  };

  emit(std::string_view("bias"));
  put("fmt=", to_string(ctx.format));

  // Token-level.
  if (auto c = detail::cap_class(t); !c.empty()) put("cap=", c);
  if (std::any_of(t.begin(), t.end(), text::is_digit)) emit(std::string_view("hasdigit"));
  if (std::any_of(t.begin(), t.end(), [](char c) { return !text::is_word_char(c); }))
    emit(std::string_view("haspunct"));
  put("len=", detail::length_bucket(t));
  buf.assign("shape=");
  detail::append_shape(buf, t);
  emit(std::string_view(buf));
  put("lower=", ctx.folded[i]);

  // Context.
  const std::size_t n = ctx.size();
  put("prev=", i > 0 ? std::string_view(ctx.folded[i - 1]) : std::string_view("<BOS>"));
  put("next=", i + 1 < n ? std::string_view(ctx.folded[i + 1]) : std::string_view("<EOS>"));
  put("w-2=", i > 1 ? std::string_view(ctx.folded[i - 2]) : std::string_view("<BOS>"));
  put("w+2=", i + 2 < n ? std::string_view(ctx.folded[i + 2]) : std::string_view("<EOS>"));
  const int decile = std::min(9, static_cast<int>(ff.relative_position * 10.0));
  put("fieldpos=", std::string_view(&"0123456789"[decile], 1));
  put("field=", to_string(ff.field_type));

  // Lexicons.
  if (ctx.bank[i]) emit(std::string_view("gaz:bank"));
  if (ctx.country[i]) emit(std::string_view("gaz:country"));
  if (ctx.city[i]) emit(std::string_view("gaz:city"));
  if (ctx.ccy[i]) emit(std::string_view("gaz:ccy"));
  if (ctx.name[i]) emit(std::string_view("gaz:name"));

  // Patterns.
  if (ff.pattern.is_iban) emit(std::string_view("pat:iban"));
  if (ff.pattern.is_bic) emit(std::string_view("pat:bic"));
  if (ff.pattern.is_amount) emit(std::string_view("pat:amount"));
  if (ff.pattern.is_date) emit(std::string_view("pat:date"));
  if (account_shape(t)) emit(std::string_view("pat:acct"));
}

/// Feature strings at position `i`. Builds the whole-sequence context, so
/// prefer `extract_sequence_features` when all positions are needed.
inline std::vector<std::string> extract_features(const TokenSequence& tokens, const FieldStructure& structure,
                                                 MessageFormat fmt, const Gazetteers& gaz, std::size_t i) {
  if (i >= tokens.size())
    throw std::out_of_range("feature position " + std::to_string(i) + " out of range for " +
                            std::to_string(tokens.size()) + " tokens");
  SequenceContext ctx(tokens, structure, fmt, gaz);
  std::vector<std::string> out;
  std::string buf;
  for_each_feature(ctx, i, buf, [&out](std::string_view f) { out.emplace_back(f); });
  return out;
}

inline std::vector<std::vector<std::string>> extract_sequence_features(const TokenSequence& tokens,
                                                                       const FieldStructure& structure,
                                                                       MessageFormat fmt, const Gazetteers& gaz) {
  SequenceContext ctx(tokens, structure, fmt, gaz);
  std::vector<std::vector<std::string>> out(tokens.size());
  std::string buf;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    for_each_feature(ctx, i, buf, [&](std::string_view f) { out[i].emplace_back(f); });
  return out;
}

// ---------------------------------------------------------------------------
// Feature index

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

class FeatureIndex {
 public:
  FeatureIndex() = default;

  /// Builds from (feature, count) pairs, keeping count >= threshold. Ids
  /// follow the lexicographic order of the feature strings.
  FeatureIndex(const std::map<std::string, std::size_t>& counts, std::size_t prune_threshold)
      : prune_threshold_(prune_threshold) {
    for (const auto& [f, c] : counts) {
      if (c < prune_threshold) continue;
      lookup_.emplace(f, static_cast<FeatureId>(names_.size()));
      names_.push_back(f);
      counts_.push_back(c);
    }
  }

  /// Index over an explicit, already ordered feature list (model loading).
  static FeatureIndex from_names(std::vector<std::string> names, std::size_t prune_threshold) {
    FeatureIndex idx;
    idx.prune_threshold_ = prune_threshold;
    idx.names_ = std::move(names);
    idx.counts_.assign(idx.names_.size(), 0);
    for (std::size_t i = 0; i < idx.names_.size(); ++i) {
      if (!idx.lookup_.emplace(idx.names_[i], static_cast<FeatureId>(i)).second)
        throw DataError("duplicate feature '" + idx.names_[i] + "'");
    }
    return idx;
  }

  std::optional<FeatureId> id(std::string_view feature) const {
    auto it = lookup_.find(feature);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& name(FeatureId id) const { return names_.at(id); }
  std::size_t count(FeatureId id) const { return counts_.at(id); }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  std::size_t prune_threshold() const { return prune_threshold_; }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const FeatureIndex& a, const FeatureIndex& b) {
    return a.names_ == b.names_ && a.counts_ == b.counts_ && a.prune_threshold_ == b.prune_threshold_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> counts_;
  std::unordered_map<std::string, FeatureId, StringHash, std::equal_to<>> lookup_;
  std::size_t prune_threshold_ = 2;
};

inline FeatureIndex build_feature_index(const Corpus& train, std::size_t prune_threshold,
                                        const Gazetteers& gaz = default_gazetteers()) {
  if (train.empty()) throw DataError("build_feature_index: empty training set");
  std::map<std::string, std::size_t, std::less<>> counts;
  std::string buf;
  for (const auto& m : train) {
    const FieldStructure fs = parse_structure(m.message);
    SequenceContext ctx(m.tokens, fs, m.message.format, gaz);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      for_each_feature(ctx, i, buf, [&counts](std::string_view f) {
        auto it = counts.find(f);
        if (it == counts.end()) counts.emplace(std::string(f), 1);
        else ++it->second;
      });
    }
  }
  std::map<std::string, std::size_t> plain(counts.begin(), counts.end());
  return FeatureIndex(plain, prune_threshold);
}

/// Maps every position to its indexed feature ids; unknown features are
/// dropped. Ids within a position are sorted and unique.
inline SequenceFeatures featurize(const FeatureIndex& index, const TokenSequence& tokens,
                                  const FieldStructure& structure, MessageFormat fmt, const Gazetteers& gaz) {
  SequenceContext ctx(tokens, structure, fmt, gaz);
  SequenceFeatures out(tokens.size());
  std::string buf;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto& ids = out[i];
    for_each_feature(ctx, i, buf, [&](std::string_view f) {
      if (auto id = index.id(f)) ids.push_back(*id);
    });
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  return out;
}

inline SequenceFeatures featurize(const FeatureIndex& index, const PaymentMessage& message,
                                  const TokenSequence& tokens, const Gazetteers& gaz) {
  return featurize(index, tokens, parse_structure(message), message.format, gaz);
}

inline SequenceFeatures featurize(const FeatureIndex& index, const AnnotatedMessage& m, const Gazetteers& gaz) {
  return featurize(index, m.message, m.tokens, gaz);
}

}  // namespace payner
