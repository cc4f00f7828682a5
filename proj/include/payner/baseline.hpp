#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "payner/formats.hpp"
#include "payner/gazetteer.hpp"
#include "payner/spans.hpp"
#include "payner/text.hpp"
#include "payner/tokenize.hpp"
#include "payner/types.hpp"
#include "payner/validators.hpp"

namespace payner {

enum class RuleKind {
  Account,         // IBAN or domestic account shape
  Amount,          // amount next to a currency code, or inside an amount field
  Gazetteer,       // n-gram lexicon match
  CapitalizedRun,  // capitalized tokens not in any lexicon, inside the given fields
  FieldContent,    // whole content of the given fields
};

enum class GazetteerName { Bank, Country, City, PersonName };

struct Rule {
  RuleKind kind = RuleKind::Account;
  EntityType entity = EntityType::ACCOUNT_NUMBER;
  int priority = 0;  // lower runs first
  GazetteerName gazetteer = GazetteerName::Bank;
  std::vector<FieldId> fields;
};

class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {
    std::stable_sort(rules_.begin(), rules_.end(), [](const Rule& a, const Rule& b) { return a.priority < b.priority; });
    for (std::size_t i = 1; i < rules_.size(); ++i)
      if (rules_[i].priority == rules_[i - 1].priority)
        throw DataError("rule priorities must be unique (duplicate " + std::to_string(rules_[i].priority) + ")");
  }

  static RuleSet defaults() {
    using F = FieldId;
    return RuleSet({
        {RuleKind::Account, EntityType::ACCOUNT_NUMBER, 10, GazetteerName::Bank, {}},
        {RuleKind::Amount, EntityType::AMOUNT, 20, GazetteerName::Bank, {F::F32A, F::InstdAmt}},
        {RuleKind::Gazetteer, EntityType::ORGANIZATION, 30, GazetteerName::Bank, {}},
        {RuleKind::Gazetteer, EntityType::LOCATION, 40, GazetteerName::Country, {}},
        {RuleKind::Gazetteer, EntityType::LOCATION, 50, GazetteerName::City, {}},
        {RuleKind::CapitalizedRun, EntityType::PERSON_NAME, 60, GazetteerName::Bank, {F::F50K, F::F59, F::Dbtr, F::Cdtr}},
        {RuleKind::FieldContent, EntityType::PURPOSE, 70, GazetteerName::Bank, {F::F70, F::RmtInf}},
    });
  }

  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<Rule> rules_;
};

// ---------------------------------------------------------------------------
// JSON configuration:
//   [{"kind": "gazetteer", "entity": "ORGANIZATION", "priority": 30, "gazetteer": "bank"},
//    {"kind": "field_content", "entity": "PURPOSE", "priority": 70, "fields": ["F70", "RmtInf"]}, ...]

inline std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Account: return "account";
    case RuleKind::Amount: return "amount";
    case RuleKind::Gazetteer: return "gazetteer";
    case RuleKind::CapitalizedRun: return "capitalized_run";
    case RuleKind::FieldContent: return "field_content";
  }
  return "account";
}

inline std::string_view to_string(GazetteerName g) {
  switch (g) {
    case GazetteerName::Bank: return "bank";
    case GazetteerName::Country: return "country";
    case GazetteerName::City: return "city";
    case GazetteerName::PersonName: return "person_name";
  }
  return "bank";
}

inline nlohmann::json to_json(const RuleSet& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rs.rules()) {
    nlohmann::json j;
    j["kind"] = to_string(r.kind);
    j["entity"] = to_string(r.entity);
    j["priority"] = r.priority;
    if (r.kind == RuleKind::Gazetteer) j["gazetteer"] = to_string(r.gazetteer);
    if (!r.fields.empty()) {
      nlohmann::json f = nlohmann::json::array();
      for (auto id : r.fields) f.push_back(to_string(id));
      j["fields"] = f;
    }
    arr.push_back(j);
  }
  return arr;
}

inline RuleSet rules_from_json(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() && j.contains("rules") ? j.at("rules") : j;
  if (!arr.is_array()) throw DataError("rule set must be a JSON array");
  std::vector<Rule> rules;
  for (const auto& item : arr) {
    Rule r;
    try {
      const auto kind = item.at("kind").get<std::string>();
      bool ok = false;
      for (auto k : {RuleKind::Account, RuleKind::Amount, RuleKind::Gazetteer, RuleKind::CapitalizedRun,
                     RuleKind::FieldContent})
        if (to_string(k) == kind) r.kind = k, ok = true;
      if (!ok) throw DataError("unknown rule kind '" + kind + "'");
      auto entity = parse_entity_type(item.at("entity").get<std::string>());
      if (!entity) throw DataError("unknown entity type in rule");
      r.entity = *entity;
      r.priority = item.at("priority").get<int>();
      if (item.contains("gazetteer")) {
        const auto g = item.at("gazetteer").get<std::string>();
        ok = false;
        for (auto n : {GazetteerName::Bank, GazetteerName::Country, GazetteerName::City, GazetteerName::PersonName})
          if (to_string(n) == g) r.gazetteer = n, ok = true;
        if (!ok) throw DataError("unknown gazetteer '" + g + "'");
      }
      if (item.contains("fields"))
        for (const auto& f : item.at("fields")) {
          auto id = parse_field_id(f.get<std::string>());
          if (!id) throw DataError("unknown field '" + f.get<std::string>() + "'");
          r.fields.push_back(*id);
        }
    } catch (const DataError&) {
      throw;
    } catch (const std::exception& e) {
      throw DataError(std::string("malformed rule: ") + e.what());
    }
    rules.push_back(std::move(r));
  }
  return RuleSet(std::move(rules));
}

inline RuleSet load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open rule file '" + path + "'");
  try {
    return rules_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Matching

namespace detail {

struct Candidate {
  std::size_t start, end;  // inclusive
  EntityType type;
};

inline bool in_fields(const Token& t, const std::vector<FieldId>& fields) {
  return t.field_context && std::find(fields.begin(), fields.end(), *t.field_context) != fields.end();
}

inline const Lexicon& lexicon(const Gazetteers& gaz, GazetteerName n) {
  switch (n) {
    case GazetteerName::Bank: return gaz.bank_names;
    case GazetteerName::Country: return gaz.country_names;
    case GazetteerName::City: return gaz.city_names;
    case GazetteerName::PersonName: return gaz.person_name_parts;
  }
  return gaz.bank_names;
}

inline bool capitalized(std::string_view t) {
  if (t.empty()) return false;
  return text::is_upper(t[0]) || (static_cast<unsigned char>(t[0]) >= 0xC0);
}

struct RuleInputs {
  const PaymentMessage& message;
  const TokenSequence& tokens;
  const FieldStructure& structure;
  const Gazetteers& gaz;
  std::vector<std::string> folded;
  std::vector<bool> any_lexicon;

  RuleInputs(const PaymentMessage& m, const TokenSequence& t, const FieldStructure& s, const Gazetteers& g)
      : message(m), tokens(t), structure(s), gaz(g), any_lexicon(t.size(), false) {
    folded.reserve(t.size());
    for (const auto& tok : t.tokens) folded.push_back(text::fold(tok.text));
    for (const Lexicon* lx : {&g.bank_names, &g.country_names, &g.city_names}) {
      auto cov = lx->coverage(folded);
      for (std::size_t i = 0; i < cov.size(); ++i) any_lexicon[i] = any_lexicon[i] || cov[i];
    }
  }

  bool line_break_between(std::size_t a, std::size_t b) const {
    const auto& text = message.text;
    const std::size_t from = tokens[a].char_end, to = tokens[b].char_start;
    if (to > text.size() || from > to) return false;
    return text.find('\n', from) < to;
  }
};

inline std::vector<Candidate> candidates(const Rule& r, const RuleInputs& in) {
  std::vector<Candidate> out;
  const auto& toks = in.tokens;
  const std::size_t n = toks.size();
  switch (r.kind) {
    case RuleKind::Account:
      for (std::size_t i = 0; i < n; ++i)
        if (account_shape(toks[i].text)) out.push_back({i, i, r.entity});
      break;
    case RuleKind::Amount:
      for (std::size_t i = 0; i < n; ++i) {
        if (!amount_shape(toks[i].text)) continue;
        const bool ccy_before = i > 0 && in.gaz.currency_codes.contains(toks[i - 1].text);
        const bool ccy_after = i + 1 < n && in.gaz.currency_codes.contains(toks[i + 1].text);
        if (ccy_before) out.push_back({i - 1, i, r.entity});
        else if (ccy_after) out.push_back({i, i + 1, r.entity});
        else if (in_fields(toks[i], r.fields)) out.push_back({i, i, r.entity});
      }
      break;
    case RuleKind::Gazetteer:
      for (auto [a, b] : lexicon(in.gaz, r.gazetteer).matches(in.folded)) out.push_back({a, b, r.entity});
      break;
    case RuleKind::CapitalizedRun: {
      std::size_t i = 0;
      while (i < n) {
        auto ok = [&](std::size_t k) {
          return in_fields(toks[k], r.fields) && capitalized(toks[k].text) && !in.any_lexicon[k] &&
                 !std::any_of(toks[k].text.begin(), toks[k].text.end(), text::is_digit);
        };
        if (!ok(i)) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j + 1 < n && ok(j + 1) && !in.line_break_between(j, j + 1)) ++j;
        out.push_back({i, j, r.entity});
        i = j + 1;
      }
      break;
    }
    case RuleKind::FieldContent:
      for (const auto& region : in.structure.regions) {
        if (std::find(r.fields.begin(), r.fields.end(), region.field) == r.fields.end()) continue;
        std::optional<std::size_t> first, last;
        for (std::size_t i = 0; i < n; ++i) {
          if (toks[i].char_start >= region.char_start && toks[i].char_end <= region.char_end) {
            if (!first) first = i;
            last = i;
          }
        }
        if (first) out.push_back({*first, *last, r.entity});
      }
      break;
  }
  return out;
}

}  // namespace detail

/// Applies rules in priority order. Within one rule, candidates are taken
/// leftmost first and longest first; a candidate is dropped if it overlaps a
/// span already accepted.
inline std::vector<EntitySpan> rule_tag(const PaymentMessage& message, const TokenSequence& tokens,
                                        const FieldStructure& structure, const Gazetteers& gaz,
                                        const RuleSet& rules) {
  std::vector<EntitySpan> accepted;
  if (rules.empty() || tokens.empty()) return accepted;
  detail::RuleInputs in(message, tokens, structure, gaz);
  std::vector<bool> taken(tokens.size(), false);
  for (const auto& r : rules.rules()) {
    auto cands = detail::candidates(r, in);
    std::sort(cands.begin(), cands.end(), [](const detail::Candidate& a, const detail::Candidate& b) {
      if (a.start != b.start) return a.start < b.start;
      return a.end > b.end;
    });
    for (const auto& c : cands) {
      bool free = true;
      for (std::size_t i = c.start; i <= c.end && free; ++i) free = !taken[i];
      if (!free) continue;
      for (std::size_t i = c.start; i <= c.end; ++i) taken[i] = true;
      accepted.push_back(EntitySpan{c.type, c.start, c.end, tokens.message_id});
    }
  }
  sort_spans(accepted);
  return accepted;
}

inline std::vector<EntitySpan> rule_tag(const PaymentMessage& message, const TokenSequence& tokens,
                                        const Gazetteers& gaz = default_gazetteers(),
                                        const RuleSet& rules = RuleSet::defaults()) {
  return rule_tag(message, tokens, parse_structure(message), gaz, rules);
}

}  // namespace payner
