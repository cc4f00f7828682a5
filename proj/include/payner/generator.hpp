#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "payner/generator_data.hpp"
#include "payner/rng.hpp"
#include "payner/spans.hpp"
#include "payner/tokenize.hpp"
#include "payner/types.hpp"
#include "payner/validators.hpp"

namespace payner {

struct GeneratorConfig {
  std::size_t count = 1000;
  std::array<double, kNumFormats> format_mix = {0.40, 0.30, 0.14, 0.10, 0.06};
  double multilingual_rate = 0.23;
  double nonstandard_rate = 0.15;
  double nested_rate = 0.08;
  double entity_density_mean = 12.3;
  double entity_density_sd = 4.8;
  double length_mean = 487.0;
  double length_sd = 312.0;
  std::uint64_t seed = 42;

  void validate() const {
    if (count == 0) throw DataError("generator count must be positive");
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    double sum = 0.0;
    for (double p : format_mix) {
      if (!in_unit(p)) throw DataError("format_mix proportions must lie in [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw DataError("format_mix must sum to 1");
    if (!in_unit(multilingual_rate) || !in_unit(nonstandard_rate) || !in_unit(nested_rate))
      throw DataError("flag rates must lie in [0,1]");
    if (entity_density_sd < 0 || length_sd < 0) throw DataError("standard deviations must be non-negative");
  }
};

namespace gen {

using gen_data::Lang;

// ---------------------------------------------------------------------------
// Casing

enum class Casing { SwiftUpper, Upper, Title };

/// Maps the Latin-1 letters used in the vocabulary to their ASCII base letter.
inline std::string transliterate(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == 0xC3 && i + 1 < s.size()) {
      const auto d = static_cast<unsigned char>(s[++i]);
      const bool lower = d >= 0xA0;
      const unsigned char b = lower ? static_cast<unsigned char>(d - 0x20) : d;
      char base = '?';
      if (b >= 0x80 && b <= 0x85) base = 'A';
      else if (b == 0x87) base = 'C';
      else if (b >= 0x88 && b <= 0x8B) base = 'E';
      else if (b >= 0x8C && b <= 0x8F) base = 'I';
      else if (b == 0x91) base = 'N';
      else if (b >= 0x92 && b <= 0x96) base = 'O';
      else if (b >= 0x99 && b <= 0x9C) base = 'U';
      else if (b == 0x9F) {
        out += "SS";
        continue;
      }
      out += lower ? static_cast<char>(base - 'A' + 'a') : base;
      continue;
    }
    out += static_cast<char>(c);
  }
  return out;
}

inline std::string latin_lower(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c - 'A' + 'a');
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto d = static_cast<unsigned char>(out[i + 1]);
      if (d >= 0x80 && d <= 0x9E && d != 0x97) out[i + 1] = static_cast<char>(d + 0x20);
      ++i;
    }
  }
  return out;
}

inline bool keeps_upper_in_title(std::string_view w) {
  static const std::vector<std::string_view> words = {
      "BNP", "HSBC", "UBS", "ING", "ABN", "AMRO", "KBC", "DZ", "BBVA", "AG", "KG", "SA", "SL", "SLU",
      "SARL", "SAS", "LLC", "PLC", "USA", "NY", "CA", "TX", "IL", "MA", "FL", "CO", "WA", "GA", "SEPA"};
  return std::find(words.begin(), words.end(), w) != words.end();
}

inline std::string title_word(std::string_view w) {
  if (w.empty()) return {};
  if (std::any_of(w.begin(), w.end(), text::is_digit) || keeps_upper_in_title(w)) return std::string(w);
  if (w == "GMBH") return "GmbH";
  std::size_t first = 1;
  if (static_cast<unsigned char>(w[0]) >= 0xC0) first = 2;
  return std::string(w.substr(0, first)) + latin_lower(w.substr(first));
}

inline std::string title_case(std::string_view s) {
  std::string out, word;
  for (char c : s) {
    if (c == ' ' || c == '-') {
      out += title_word(word);
      out += c;
      word.clear();
    } else {
      word += c;
    }
  }
  out += title_word(word);
  return out;
}

inline std::string apply_case(std::string_view s, Casing c) {
  switch (c) {
    case Casing::SwiftUpper:
    case Casing::Upper: return transliterate(s);
    case Casing::Title: return title_case(s);
  }
  return std::string(s);
}

// ---------------------------------------------------------------------------
// Entities

enum class Kind { Party, Person, Bank, Account, Location, Amount, Purpose };

/// One entity to be placed in the message text. `prefix` is unlabeled text
/// (e.g. an honorific) written just before the entity.
struct Item {
  Kind kind = Kind::Party;
  EntityType type = EntityType::PERSON_NAME;
  std::string prefix;
  std::string text;
  bool has_inner = false;
  std::size_t inner_begin = 0, inner_end = 0;
  EntityType inner_type = EntityType::LOCATION;
  int loc_role = 0;  // 0 street, 1 city, 2 country
};

class TextBuilder {
 public:
  std::string text;
  std::vector<CharSpan> spans;
  std::vector<CharSpan> inner;

  void raw(std::string_view s) { text += s; }

  void item(const Item& it) {
    text += it.prefix;
    const std::size_t b = text.size();
    text += it.text;
    spans.push_back({b, text.size(), it.type});
    if (it.has_inner) inner.push_back({b + it.inner_begin, b + it.inner_end, it.inner_type});
  }
};

/// Message-level choices shared by all renderers.
struct Plan {
  MessageFormat format = MessageFormat::OTHER;
  Lang lang = Lang::EN;
  Casing casing = Casing::Title;
  bool multilingual = false;
  bool nonstandard = false;
  bool nested = false;
  // Nonstandard perturbations.
  bool crlf = false;
  bool lower_content = false;
  bool space_after_tag = false;
  bool blank_lines = false;
  bool single_line = false;
  bool ns_prefix = false;
  bool upper_keys = false;
  std::size_t debtor_country = 0;
  std::size_t creditor_country = 0;
  std::map<int, std::vector<Item>> fields;  // renderer-specific field key -> items
  std::vector<std::string> filler;
  // Non-entity identifiers drawn once so re-rendering is stable.
  std::string ref, date6, date_iso, bic_debtor_agent, bic_creditor_agent, bic_intermediary, charges, misc_id;
  std::string routing_a, routing_b;
};

struct Slot {
  int field;
  Kind kind;
};

struct ExtraSlot {
  Slot slot;
  double weight;
  std::size_t cap;  // maximum items of this (field, kind) including core
};

struct SlotPool {
  std::vector<Slot> core;
  std::vector<ExtraSlot> extras;
};

// ---------------------------------------------------------------------------
// Value generators

inline std::string random_digits(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('0' + rng.below(10));
  return s;
}

inline std::string random_letters(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('A' + rng.below(26));
  return s;
}

/// Valid IBAN for one of the known country layouts.
inline std::string make_iban(Rng& rng, std::string_view country) {
  const auto& layouts = gen_data::iban_layouts();
  auto it = std::find_if(layouts.begin(), layouts.end(), [&](const auto& l) { return l.country == country; });
  const auto& layout = it != layouts.end() ? *it : layouts[2];
  std::string bban;
  for (char p : layout.bban) {
    if (p == 'n') bban += static_cast<char>('0' + rng.below(10));
    else if (p == 'a') bban += static_cast<char>('A' + rng.below(26));
    else bban += rng.chance(0.7) ? static_cast<char>('0' + rng.below(10)) : static_cast<char>('A' + rng.below(26));
  }
  const std::string cc(layout.country);
  const int rem = iban_mod97(cc + "00" + bban);
  const int check = 98 - rem;
  std::string digits = (check < 10 ? "0" : "") + std::to_string(check);
  return cc + digits + bban;
}

inline std::string make_bic(Rng& rng, std::string_view country) {
  std::string bic = random_letters(rng, 4) + std::string(country);
  bic += rng.chance(0.5) ? random_letters(rng, 2) : random_letters(rng, 1) + random_digits(rng, 1);
  if (rng.chance(0.4)) bic += rng.chance(0.5) ? std::string("XXX") : random_digits(rng, 3);
  return bic;
}

inline std::string pad2(int v) { return (v < 10 ? "0" : "") + std::to_string(v); }

struct Money {
  std::string currency;
  long long cents = 0;
};

inline Money make_money(Rng& rng, std::string_view currency) {
  const double exponent = 1.0 + 4.5 * rng.uniform();
  auto cents = static_cast<long long>(std::pow(10.0, exponent) * 100.0);
  if (rng.chance(0.3)) cents = (cents / 10000) * 10000 + 10000;  // round amounts
  return {std::string(currency), std::max(100LL, cents)};
}

/// `grouping` 0 means no thousands separator.
inline std::string format_number(long long cents, char decimal, char grouping) {
  std::string whole = std::to_string(cents / 100);
  std::string grouped;
  for (std::size_t i = 0; i < whole.size(); ++i) {
    if (grouping && i > 0 && (whole.size() - i) % 3 == 0) grouped += grouping;
    grouped += whole[i];
  }
  return grouped + decimal + pad2(static_cast<int>(cents % 100));
}

inline std::string make_ref(Rng& rng) {
  const auto& prefix = rng.pick(gen_data::ref_prefixes());
  switch (rng.below(4)) {
    case 0: return prefix + "-" + std::to_string(rng.range(2022, 2025)) + "-" + random_digits(rng, 4);
    case 1: return prefix + random_digits(rng, 6);
    case 2: return prefix + "-" + random_digits(rng, 5);
    default: return random_digits(rng, 7);
  }
}

inline std::string fill_template(std::string tpl, Rng& rng, Lang lang) {
  auto replace = [&tpl](std::string_view key, const std::string& value) {
    auto pos = tpl.find(key);
    if (pos != std::string::npos) tpl.replace(pos, key.size(), value);
  };
  replace("{REF}", make_ref(rng));
  replace("{MONTH}", rng.pick(gen_data::months(lang)));
  replace("{YEAR}", std::to_string(rng.range(2022, 2025)));
  return tpl;
}

class ValueFactory {
 public:
  ValueFactory(Rng& rng, const Plan& plan) : rng_(rng), plan_(plan) {}

  std::string cased(std::string_view s) const {
    std::string out = apply_case(s, plan_.casing);
    if (plan_.lower_content) out = latin_lower(out);
    return out;
  }

  Lang name_lang() {
    // Non-multilingual messages use English names; multilingual ones mostly
    // use the message language.
    if (!plan_.multilingual) return Lang::EN;
    return rng_.chance(0.8) ? plan_.lang : static_cast<Lang>(rng_.below(4));
  }

  Item person() {
    Item it;
    it.kind = Kind::Person;
    it.type = EntityType::PERSON_NAME;
    const Lang l = name_lang();
    std::string name = rng_.pick(gen_data::first_names(l));
    if (l == Lang::EN && rng_.chance(0.1)) name += " " + random_letters(rng_, 1);
    name += " " + rng_.pick(gen_data::last_names(l));
    if (l == Lang::ES && rng_.chance(0.4)) name += " " + rng_.pick(gen_data::last_names(l));
    it.text = cased(name);
    if (rng_.chance(0.15)) it.prefix = cased(rng_.pick(gen_data::honorifics(l))) + " ";
    return it;
  }

  Item company(bool nested) {
    Item it;
    it.kind = Kind::Party;
    it.type = EntityType::ORGANIZATION;
    const Lang l = name_lang();
    const std::string sector = rng_.chance(0.6) ? " " + rng_.pick(gen_data::company_sectors(l)) : "";
    const std::string suffix = " " + rng_.pick(gen_data::company_suffixes(l));
    if (nested) {
      const std::string city = cased(rng_.pick(country(plan_.debtor_country).cities));
      const std::string head = cased(sector.empty() ? " " + rng_.pick(gen_data::company_sectors(l)) : sector);
      it.text = city + head + cased(suffix);
      set_inner(it, 0, city.size());
      return it;
    }
    it.text = cased(rng_.pick(gen_data::company_stems()) + sector + suffix);
    return it;
  }

  Item party(bool nested) { return nested || rng_.chance(0.45) ? company(nested) : person(); }

  Item bank(bool nested) {
    Item it;
    it.kind = Kind::Bank;
    it.type = EntityType::ORGANIZATION;
    if (nested) {
      const std::string city = cased(rng_.pick(country(plan_.creditor_country).cities));
      switch (rng_.below(3)) {
        case 0: {
          const std::string head = cased("SPARKASSE") + " ";
          it.text = head + city;
          set_inner(it, head.size(), it.text.size());
          break;
        }
        case 1: {
          const std::string head = cased("BANK OF") + " ";
          it.text = head + city;
          set_inner(it, head.size(), it.text.size());
          break;
        }
        default: {
          it.text = city + " " + cased("SAVINGS BANK");
          set_inner(it, 0, city.size());
        }
      }
      return it;
    }
    it.text = cased(rng_.pick(gen_data::bank_names()));
    return it;
  }

  Item account(std::size_t country_idx) {
    Item it;
    it.kind = Kind::Account;
    it.type = EntityType::ACCOUNT_NUMBER;
    const auto iso = country(country_idx).iso;
    const bool domestic = plan_.format == MessageFormat::ACH || iso == "US" ||
                          (plan_.format == MessageFormat::OTHER && iso == "GB" && rng_.chance(0.6));
    if (domestic) {
      it.text = random_digits(rng_, plan_.format == MessageFormat::ACH ? 8 + rng_.below(5) : 8);
    } else {
      it.text = make_iban(rng_, iso);
    }
    return it;
  }

  /// role: 0 street, 1 city, 2 country.
  Item location(std::size_t country_idx, int role) {
    Item it;
    it.kind = Kind::Location;
    it.type = EntityType::LOCATION;
    it.loc_role = role;
    const auto& c = country(country_idx);
    const std::string num = std::to_string(rng_.range(1, 250));
    if (role == 0) {
      const std::string& street = rng_.pick(c.streets);
      const bool number_first = c.iso == "GB" || c.iso == "IE" || c.iso == "US" || c.iso == "FR";
      it.text = number_first ? num + " " + cased(street) : cased(street) + " " + num;
    } else if (role == 1) {
      std::string city = cased(rng_.pick(c.cities));
      if (c.iso != "GB" && c.iso != "IE" && c.iso != "US" && rng_.chance(0.5))
        city = random_digits(rng_, c.iso == "AT" || c.iso == "CH" || c.iso == "BE" ? 4 : 5) + " " + city;
      it.text = city;
    } else {
      it.text = cased(c.names[static_cast<std::size_t>(plan_.multilingual ? plan_.lang : Lang::EN)]);
    }
    return it;
  }

  Item amount(const Money& m, std::string_view style) {
    Item it;
    it.kind = Kind::Amount;
    it.type = EntityType::AMOUNT;
    if (style == "swift") {
      it.text = m.currency + format_number(m.cents, ',', 0);
    } else if (style == "xml") {
      it.text = format_number(m.cents, '.', 0);
    } else if (style == "en") {
      it.text = m.currency + " " + format_number(m.cents, '.', rng_.chance(0.7) ? ',' : 0);
    } else {
      it.text = format_number(m.cents, ',', rng_.chance(0.7) ? '.' : 0) + " " + m.currency;
    }
    return it;
  }

  Item purpose() {
    Item it;
    it.kind = Kind::Purpose;
    it.type = EntityType::PURPOSE;
    const Lang l = plan_.multilingual ? plan_.lang : Lang::EN;
    it.text = cased(fill_template(rng_.pick(gen_data::purposes(l)), rng_, l));
    return it;
  }

  const gen_data::CountryInfo& country(std::size_t idx) const { return gen_data::countries()[idx]; }

 private:
  static void set_inner(Item& it, std::size_t b, std::size_t e) {
    it.has_inner = true;
    it.inner_begin = b;
    it.inner_end = e;
    it.inner_type = EntityType::LOCATION;
  }

  Rng& rng_;
  const Plan& plan_;
};

// ---------------------------------------------------------------------------
// Slot selection

inline std::vector<Slot> select_slots(Rng& rng, const SlotPool& pool, std::size_t k) {
  std::vector<Slot> core = pool.core;
  rng.shuffle(core);
  std::vector<Slot> chosen(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(std::min(k, core.size())));
  auto count_of = [&chosen](const Slot& s) {
    return static_cast<std::size_t>(std::count_if(chosen.begin(), chosen.end(), [&](const Slot& c) {
      return c.field == s.field && c.kind == s.kind;
    }));
  };
  while (chosen.size() < k) {
    double total = 0.0;
    for (const auto& e : pool.extras)
      if (count_of(e.slot) < e.cap) total += e.weight;
    if (total <= 0.0) break;
    double r = rng.uniform() * total;
    for (const auto& e : pool.extras) {
      if (count_of(e.slot) >= e.cap) continue;
      r -= e.weight;
      if (r <= 0.0) {
        chosen.push_back(e.slot);
        break;
      }
    }
  }
  return chosen;
}

inline bool can_nest(Kind k) { return k == Kind::Party || k == Kind::Bank; }

/// Turns selected slots into concrete entity values, grouped per field.
inline void fill_items(Rng& rng, Plan& plan, const std::vector<Slot>& slots,
                       const std::function<std::size_t(int)>& country_of_field,
                       const std::function<std::string(Kind)>& amount_style) {
  ValueFactory vf(rng, plan);
  std::size_t nested_index = slots.size();
  if (plan.nested) {
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (can_nest(slots[i].kind)) {
        nested_index = i;
        break;
      }
    if (nested_index == slots.size()) plan.nested = false;
  }
  std::map<int, int> loc_counter;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    const std::size_t ci = country_of_field(s.field);
    const bool nest = i == nested_index;
    Item it;
    switch (s.kind) {
      case Kind::Party: it = vf.party(nest); break;
      case Kind::Person: it = vf.person(); break;
      case Kind::Bank: it = vf.bank(nest); break;
      case Kind::Account: it = vf.account(ci); break;
      case Kind::Location: {
        static constexpr std::array<int, 4> roles = {1, 0, 2, 1};
        const int n = loc_counter[s.field]++;
        it = vf.location(ci, roles[static_cast<std::size_t>(n) % roles.size()]);
        break;
      }
      case Kind::Amount: {
        const auto& c = vf.country(ci);
        const std::string ccy = rng.chance(0.75) ? std::string(c.currency) : rng.pick(default_currency_codes());
        it = vf.amount(make_money(rng, ccy), amount_style(s.kind));
        break;
      }
      case Kind::Purpose: it = vf.purpose(); break;
    }
    it.kind = s.kind;
    plan.fields[s.field].push_back(std::move(it));
  }
  // Address lines read street, city, country.
  for (auto& [field, items] : plan.fields) {
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      auto rank = [](const Item& i) {
        if (i.kind != Kind::Location) return -1;
        return i.loc_role == 0 ? 0 : i.loc_role == 1 ? 1 : 2;
      };
      return rank(a) < rank(b);
    });
  }
}

inline std::vector<const Item*> of_kind(const Plan& plan, int field, Kind k) {
  std::vector<const Item*> out;
  auto it = plan.fields.find(field);
  if (it == plan.fields.end()) return out;
  for (const auto& i : it->second)
    if (i.kind == k) out.push_back(&i);
  return out;
}

inline bool has_field(const Plan& plan, int field) {
  auto it = plan.fields.find(field);
  return it != plan.fields.end() && !it->second.empty();
}

// ---------------------------------------------------------------------------
// MT103

namespace mt {
enum Field { F32A, F33B, F50K, F52A, F56A, F57A, F59, F70, F71F };

inline SlotPool pool() {
  return {{{F32A, Kind::Amount},
           {F50K, Kind::Party},
           {F50K, Kind::Account},
           {F50K, Kind::Location},
           {F59, Kind::Party},
           {F59, Kind::Account},
           {F59, Kind::Location},
           {F70, Kind::Purpose},
           {F57A, Kind::Bank},
           {F52A, Kind::Bank}},
          {{{F50K, Kind::Location}, 2.0, 4},
           {{F59, Kind::Location}, 2.0, 4},
           {{F70, Kind::Purpose}, 3.0, 10},
           {{F33B, Kind::Amount}, 1.0, 2},
           {{F71F, Kind::Amount}, 1.0, 2},
           {{F56A, Kind::Bank}, 1.0, 1},
           {{F70, Kind::Person}, 1.0, 2}}};
}

inline void render(const Plan& p, TextBuilder& b) {
  const std::string nl = p.crlf ? "\r\n" : "\n";
  auto tag = [&](std::string_view t) {
    if (p.blank_lines && !b.text.empty()) b.raw(nl);
    b.raw(":");
    b.raw(t);
    b.raw(":");
    if (p.space_after_tag) b.raw(" ");
  };
  auto lines = [&](int field, Kind k, std::string_view lead = "") {
    for (const Item* it : of_kind(p, field, k)) {
      b.raw(lead);
      b.item(*it);
      b.raw(nl);
    }
  };
  tag("20");
  b.raw(p.ref + nl);
  tag("23B");
  b.raw("CRED" + nl);
  tag("32A");
  b.raw(p.date6);
  lines(F32A, Kind::Amount);
  if (of_kind(p, F32A, Kind::Amount).empty()) b.raw(nl);
  for (const Item* it : of_kind(p, F33B, Kind::Amount)) {
    tag("33B");
    b.item(*it);
    b.raw(nl);
  }
  for (int party : {F50K, F59}) {
    if (party == F59) {
      tag("52A");
      b.raw(p.bic_debtor_agent + nl);
      lines(F52A, Kind::Bank);
      if (has_field(p, F56A)) {
        tag("56A");
        b.raw(p.bic_intermediary + nl);
        lines(F56A, Kind::Bank);
      }
      tag("57A");
      b.raw(p.bic_creditor_agent + nl);
      lines(F57A, Kind::Bank);
    }
    if (!has_field(p, party)) continue;
    tag(party == F50K ? "50K" : "59");
    lines(party, Kind::Account, "/");
    lines(party, Kind::Party);
    lines(party, Kind::Location);
  }
  if (has_field(p, F70)) {
    tag("70");
    bool first = true;
    for (const Item* it : of_kind(p, F70, Kind::Purpose)) {
      if (first && p.ref.size() % 2 == 0) b.raw("/RFB/");
      first = false;
      b.item(*it);
      b.raw(nl);
    }
    lines(F70, Kind::Person, p.lang == Lang::EN || !p.multilingual ? "ON BEHALF OF " : "/ULTB/");
  }
  tag("71A");
  b.raw(p.charges + nl);
  for (const Item* it : of_kind(p, F71F, Kind::Amount)) {
    tag("71F");
    b.item(*it);
    b.raw(nl);
  }
  if (!p.filler.empty()) {
    tag("72");
    for (std::size_t i = 0; i < p.filler.size(); ++i) b.raw((i == 0 ? "/INS/" : "//") + p.filler[i] + nl);
  }
}
}  // namespace mt

// ---------------------------------------------------------------------------
// pain.001

namespace pain {
enum Field { Dbtr, DbtrAcct, DbtrAgt, UltmtDbtr, InstdAmt, IntrmyAgt, CdtrAgt, Cdtr, CdtrAcct, UltmtCdtr, RmtInf };

inline SlotPool pool() {
  return {{{Dbtr, Kind::Party},
           {Dbtr, Kind::Location},
           {DbtrAcct, Kind::Account},
           {DbtrAgt, Kind::Bank},
           {InstdAmt, Kind::Amount},
           {CdtrAgt, Kind::Bank},
           {Cdtr, Kind::Party},
           {Cdtr, Kind::Location},
           {CdtrAcct, Kind::Account},
           {RmtInf, Kind::Purpose}},
          {{{Dbtr, Kind::Location}, 2.0, 4},
           {{Cdtr, Kind::Location}, 2.0, 4},
           {{RmtInf, Kind::Purpose}, 3.0, 10},
           {{UltmtDbtr, Kind::Party}, 1.0, 1},
           {{UltmtCdtr, Kind::Party}, 1.0, 1},
           {{IntrmyAgt, Kind::Bank}, 1.0, 1}}};
}

inline void render(const Plan& p, TextBuilder& b) {
  const std::string nl = p.single_line ? "" : (p.crlf ? "\r\n" : "\n");
  const std::string pre = p.ns_prefix ? "ns2:" : "";
  int depth = 0;
  auto indent = [&] {
    if (!p.single_line) b.raw(std::string(static_cast<std::size_t>(depth) * 2, ' '));
  };
  auto open = [&](std::string_view name, std::string_view attrs = "") {
    indent();
    b.raw("<" + pre + std::string(name) + std::string(attrs) + ">" + nl);
    ++depth;
  };
  auto close = [&](std::string_view name) {
    --depth;
    indent();
    b.raw("</" + pre + std::string(name) + ">" + nl);
  };
  auto leaf_raw = [&](std::string_view name, std::string_view value) {
    indent();
    b.raw("<" + pre + std::string(name) + ">" + std::string(value) + "</" + pre + std::string(name) + ">" + nl);
  };
  auto leaf = [&](std::string_view name, const Item& it, std::string_view attrs = "") {
    indent();
    b.raw("<" + pre + std::string(name) + std::string(attrs) + ">");
    b.item(it);
    b.raw("</" + pre + std::string(name) + ">" + nl);
  };
  auto party = [&](int field, std::string_view element) {
    if (!has_field(p, field)) return;
    open(element);
    for (const Item* it : of_kind(p, field, Kind::Party)) leaf("Nm", *it);
    auto locs = of_kind(p, field, Kind::Location);
    if (!locs.empty()) {
      open("PstlAdr");
      for (const Item* it : locs) leaf("AdrLine", *it);
      close("PstlAdr");
    }
    close(element);
  };
  auto account = [&](int field, std::string_view element) {
    for (const Item* it : of_kind(p, field, Kind::Account)) {
      open(element);
      open("Id");
      leaf(it->text.size() > 14 ? "IBAN" : "Othr", *it);
      close("Id");
      close(element);
    }
  };
  auto agent = [&](int field, std::string_view element, const std::string& bic, bool always) {
    auto banks = of_kind(p, field, Kind::Bank);
    if (banks.empty() && !always) return;
    open(element);
    open("FinInstnId");
    leaf_raw("BIC", bic);
    for (const Item* it : banks) leaf("Nm", *it);
    close("FinInstnId");
    close(element);
  };

  if (!p.single_line) b.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>" + nl);
  open("Document", p.ns_prefix ? " xmlns:ns2=\"urn:iso:std:iso:20022:tech:xsd:pain.001.001.03\""
                               : " xmlns=\"urn:iso:std:iso:20022:tech:xsd:pain.001.001.03\"");
  open("CstmrCdtTrfInitn");
  open("GrpHdr");
  leaf_raw("MsgId", p.misc_id);
  leaf_raw("CreDtTm", p.date_iso + "T10:" + p.date6.substr(2, 2) + ":00");
  leaf_raw("NbOfTxs", "1");
  close("GrpHdr");
  open("PmtInf");
  leaf_raw("PmtMtd", "TRF");
  leaf_raw("ReqdExctnDt", p.date_iso);
  party(Dbtr, "Dbtr");
  account(DbtrAcct, "DbtrAcct");
  agent(DbtrAgt, "DbtrAgt", p.bic_debtor_agent, true);
  party(UltmtDbtr, "UltmtDbtr");
  open("CdtTrfTxInf");
  open("PmtId");
  leaf_raw("EndToEndId", p.ref);
  close("PmtId");
  for (const Item* it : of_kind(p, InstdAmt, Kind::Amount)) {
    open("Amt");
    leaf("InstdAmt", *it, " Ccy=\"" + p.charges + "\"");
    close("Amt");
  }
  agent(IntrmyAgt, "IntrmyAgt1", p.bic_intermediary, false);
  agent(CdtrAgt, "CdtrAgt", p.bic_creditor_agent, true);
  party(Cdtr, "Cdtr");
  account(CdtrAcct, "CdtrAcct");
  party(UltmtCdtr, "UltmtCdtr");
  for (const auto& f : p.filler) {
    open("InstrForCdtrAgt");
    leaf_raw("InstrInf", f);
    close("InstrForCdtrAgt");
  }
  if (has_field(p, RmtInf)) {
    open("RmtInf");
    for (const Item* it : of_kind(p, RmtInf, Kind::Purpose)) leaf("Ustrd", *it);
    close("RmtInf");
  }
  close("CdtTrfTxInf");
  close("PmtInf");
  close("CstmrCdtTrfInitn");
  close("Document");
}
}  // namespace pain

// ---------------------------------------------------------------------------
// SEPA (semi-structured key/value notification)

namespace sepa {
enum Field { Debtor, DebtorAddr, DebtorIban, DebtorBank, Creditor, CreditorAddr, CreditorIban, CreditorBank,
             Amount, Remittance, UltimateDebtor, UltimateCreditor };

inline SlotPool pool() {
  return {{{Debtor, Kind::Party},
           {DebtorAddr, Kind::Location},
           {DebtorIban, Kind::Account},
           {DebtorBank, Kind::Bank},
           {Creditor, Kind::Party},
           {CreditorAddr, Kind::Location},
           {CreditorIban, Kind::Account},
           {CreditorBank, Kind::Bank},
           {Amount, Kind::Amount},
           {Remittance, Kind::Purpose}},
          {{{DebtorAddr, Kind::Location}, 2.0, 4},
           {{CreditorAddr, Kind::Location}, 2.0, 4},
           {{Remittance, Kind::Purpose}, 3.0, 10},
           {{UltimateDebtor, Kind::Party}, 1.0, 1},
           {{UltimateCreditor, Kind::Party}, 1.0, 1}}};
}

enum Key { Title, MsgId, ExecDate, KDebtor, KDebtorAddr, KDebtorIban, KDebtorBic, KDebtorBank, KCreditor,
           KCreditorAddr, KCreditorIban, KCreditorBic, KCreditorBank, KAmount, KRemittance, KUltDebtor,
           KUltCreditor, KNote, kNumKeys };

inline const std::array<std::string_view, kNumKeys>& keys(Lang l) {
  static const std::array<std::array<std::string_view, kNumKeys>, 4> k = {{
      {"SEPA Credit Transfer", "Message ID", "Execution date", "Debtor", "Debtor address", "Debtor IBAN",
       "Debtor BIC", "Debtor bank", "Creditor", "Creditor address", "Creditor IBAN", "Creditor BIC",
       "Creditor bank", "Amount", "Remittance information", "Ultimate debtor", "Ultimate creditor", "Note"},
      {"SEPA-Überweisung", "Nachrichten-ID", "Ausführungsdatum", "Auftraggeber", "Adresse Auftraggeber",
       "IBAN Auftraggeber", "BIC Auftraggeber", "Bank Auftraggeber", "Empfänger", "Adresse Empfänger",
       "IBAN Empfänger", "BIC Empfänger", "Bank Empfänger", "Betrag", "Verwendungszweck",
       "Abweichender Auftraggeber", "Abweichender Empfänger", "Hinweis"},
      {"Transferencia SEPA", "ID de mensaje", "Fecha de ejecución", "Ordenante", "Dirección ordenante",
       "IBAN ordenante", "BIC ordenante", "Banco ordenante", "Beneficiario", "Dirección beneficiario",
       "IBAN beneficiario", "BIC beneficiario", "Banco beneficiario", "Importe", "Concepto",
       "Ordenante final", "Beneficiario final", "Nota"},
      {"Virement SEPA", "ID du message", "Date d'exécution", "Donneur d'ordre", "Adresse donneur d'ordre",
       "IBAN donneur d'ordre", "BIC donneur d'ordre", "Banque donneur d'ordre", "Bénéficiaire",
       "Adresse bénéficiaire", "IBAN bénéficiaire", "BIC bénéficiaire", "Banque bénéficiaire", "Montant",
       "Motif", "Donneur d'ordre final", "Bénéficiaire final", "Remarque"},
  }};
  return k[static_cast<std::size_t>(l)];
}

inline void render(const Plan& p, TextBuilder& b) {
  const Lang l = p.multilingual ? p.lang : Lang::EN;
  const std::string nl = p.single_line ? " | " : (p.crlf ? "\r\n" : "\n");
  auto key = [&](Key k) {
    std::string s(keys(l)[k]);
    if (p.upper_keys) s = latin_lower(s), s = text::ascii_upper(s);
    return s;
  };
  auto line = [&](Key k, int field, Kind kind, std::string_view sep) {
    auto items = of_kind(p, field, kind);
    if (items.empty()) return;
    b.raw(key(k) + ": ");
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) b.raw(sep);
      b.item(*items[i]);
    }
    b.raw(nl);
  };
  b.raw(key(Title) + nl);
  b.raw(key(MsgId) + ": " + p.misc_id + nl);
  b.raw(key(ExecDate) + ": " + p.date_iso.substr(8, 2) + "." + p.date_iso.substr(5, 2) + "." +
        p.date_iso.substr(0, 4) + nl);
  line(KDebtor, Debtor, Kind::Party, ", ");
  line(KDebtorAddr, DebtorAddr, Kind::Location, ", ");
  line(KDebtorIban, DebtorIban, Kind::Account, ", ");
  b.raw(key(KDebtorBic) + ": " + p.bic_debtor_agent + nl);
  line(KDebtorBank, DebtorBank, Kind::Bank, ", ");
  line(KUltDebtor, UltimateDebtor, Kind::Party, ", ");
  line(KCreditor, Creditor, Kind::Party, ", ");
  line(KCreditorAddr, CreditorAddr, Kind::Location, ", ");
  line(KCreditorIban, CreditorIban, Kind::Account, ", ");
  b.raw(key(KCreditorBic) + ": " + p.bic_creditor_agent + nl);
  line(KCreditorBank, CreditorBank, Kind::Bank, ", ");
  line(KUltCreditor, UltimateCreditor, Kind::Party, ", ");
  line(KAmount, Amount, Kind::Amount, ", ");
  line(KRemittance, Remittance, Kind::Purpose, "; ");
  for (const auto& f : p.filler) b.raw(key(KNote) + ": " + f + nl);
}
}  // namespace sepa

// ---------------------------------------------------------------------------
// ACH (NACHA-style entry detail, rendered as text)

namespace ach {
enum Field { Orig, OrigAddr, OrigAcct, Odfi, Recv, RecvAddr, RecvAcct, Rdfi, Amt, EntryDesc, Addenda, Fee };

inline SlotPool pool() {
  return {{{Orig, Kind::Party},
           {OrigAcct, Kind::Account},
           {Odfi, Kind::Bank},
           {Recv, Kind::Party},
           {RecvAcct, Kind::Account},
           {Rdfi, Kind::Bank},
           {Amt, Kind::Amount},
           {EntryDesc, Kind::Purpose},
           {RecvAddr, Kind::Location},
           {Addenda, Kind::Purpose}},
          {{{OrigAddr, Kind::Location}, 2.0, 3},
           {{RecvAddr, Kind::Location}, 2.0, 4},
           {{Addenda, Kind::Purpose}, 3.0, 12},
           {{Fee, Kind::Amount}, 1.0, 1}}};
}

inline void render(const Plan& p, TextBuilder& b) {
  const std::string nl = p.single_line ? "  " : (p.crlf ? "\r\n" : "\n");
  auto key = [&](std::string_view k) { return p.lower_content ? text::ascii_lower(k) : std::string(k); };
  auto line = [&](std::string_view k, int field, Kind kind, std::string_view sep, std::string_view tail = "") {
    auto items = of_kind(p, field, kind);
    if (items.empty()) return;
    b.raw(key(k) + ": ");
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) b.raw(sep);
      b.item(*items[i]);
    }
    b.raw(std::string(tail) + nl);
  };
  b.raw(key("ACH CREDIT ENTRY DETAIL") + nl);
  b.raw(key("BATCH") + ": " + p.misc_id + "  " + key("EFFECTIVE DATE") + ": " + p.date6 + nl);
  line("ORIGINATOR", Orig, Kind::Party, ", ", "  " + key("COMPANY ID") + ": " + p.ref);
  line("ORIGINATOR ADDRESS", OrigAddr, Kind::Location, ", ");
  line("ORIGINATOR ACCT", OrigAcct, Kind::Account, ", ");
  line("ODFI", Odfi, Kind::Bank, ", ", "  " + key("ROUTING") + ": " + p.routing_a);
  line("ENTRY DESCRIPTION", EntryDesc, Kind::Purpose, ", ", "  " + key("SEC CODE") + ": " + p.charges);
  line("RECEIVER", Recv, Kind::Party, ", ");
  line("RECEIVER ADDRESS", RecvAddr, Kind::Location, ", ");
  line("RECEIVER ACCT", RecvAcct, Kind::Account, ", ");
  line("RDFI", Rdfi, Kind::Bank, ", ", "  " + key("ROUTING") + ": " + p.routing_b);
  line("AMOUNT", Amt, Kind::Amount, ", ");
  line("FEE", Fee, Kind::Amount, ", ");
  for (const Item* it : of_kind(p, Addenda, Kind::Purpose)) {
    b.raw(key("ADDENDA") + ": ");
    b.item(*it);
    b.raw(nl);
  }
  for (const auto& f : p.filler) b.raw(key("NOTE") + ": " + f + nl);
  b.raw(key("TRACE") + ": " + p.routing_a.substr(0, 8) + p.misc_id.substr(p.misc_id.size() - 7) + nl);
}
}  // namespace ach

// ---------------------------------------------------------------------------
// Other regional formats: free text built from one-entity sentences.

namespace other {
enum Field { Amt, Payee, Acct, BankF, Loc, Purp, Sender };

inline SlotPool pool() {
  return {{{Amt, Kind::Amount},
           {Payee, Kind::Party},
           {Acct, Kind::Account},
           {BankF, Kind::Bank},
           {Loc, Kind::Location},
           {Purp, Kind::Purpose}},
          {{{Amt, Kind::Amount}, 1.0, 3},
           {{Payee, Kind::Party}, 1.0, 2},
           {{Acct, Kind::Account}, 1.0, 2},
           {{BankF, Kind::Bank}, 1.0, 2},
           {{Loc, Kind::Location}, 2.0, 5},
           {{Purp, Kind::Purpose}, 2.0, 8},
           {{Sender, Kind::Person}, 1.0, 3}}};
}

using Templates = std::array<std::vector<std::string_view>, 7>;

inline const Templates& templates(Lang l) {
  static const std::array<Templates, 4> t = {{
      {{{"Please transfer {} to the account below.", "The amount is {}.", "Add {} for the fees."},
        {"Beneficiary: {}.", "Please pay {}.", "The recipient is {}."},
        {"Account number {}.", "Credit account {} please."},
        {"The account is held at {}.", "Bank: {}."},
        {"Address: {}.", "Based in {}."},
        {"Reference: {}.", "This payment is for {}."},
        {"Sent by {}.", "Contact person {}."}}},
      {{{"Bitte überweisen Sie {}.", "Der Betrag ist {}."},
        {"Empfänger: {}.", "Bitte zahlen an {}."},
        {"Kontonummer {}.", "Auf Konto {}."},
        {"Bank: {}.", "Das Konto wird bei {} geführt."},
        {"Adresse: {}.", "Sitz in {}."},
        {"Verwendungszweck: {}.", "Zahlung für {}."},
        {"Absender {}.", "Ansprechpartner {}."}}},
      {{{"Por favor transfiera {}.", "El importe es {}."},
        {"Beneficiario: {}.", "Pagar a {}."},
        {"Número de cuenta {}.", "Abonar en la cuenta {}."},
        {"Banco: {}.", "La cuenta está en {}."},
        {"Dirección: {}.", "Con sede en {}."},
        {"Concepto: {}.", "Pago de {}."},
        {"Enviado por {}.", "Contacto {}."}}},
      {{{"Merci de virer {}.", "Le montant est de {}."},
        {"Bénéficiaire : {}.", "Payer à {}."},
        {"Numéro de compte {}.", "Créditer le compte {}."},
        {"Banque : {}.", "Compte tenu chez {}."},
        {"Adresse : {}.", "Situé à {}."},
        {"Motif : {}.", "Paiement pour {}."},
        {"Envoyé par {}.", "Contact {}."}}},
  }};
  return t[static_cast<std::size_t>(l)];
}

inline void render(const Plan& p, TextBuilder& b, const std::vector<std::size_t>& choices) {
  const Lang l = p.multilingual ? p.lang : Lang::EN;
  const auto& tpl = templates(l);
  const std::string sep = p.single_line ? "  " : (p.crlf ? "\r\n" : " ");
  std::size_t choice = 0;
  bool first = true;
  for (int f = Amt; f <= Sender; ++f) {
    auto it = p.fields.find(f);
    if (it == p.fields.end()) continue;
    for (const Item& item : it->second) {
      const auto& options = tpl[static_cast<std::size_t>(f)];
      std::string_view t = options[choices[choice++ % choices.size()] % options.size()];
      const auto hole = t.find("{}");
      std::string head(t.substr(0, hole));
      std::string tail(t.substr(hole + 2));
      if (p.lower_content) head = latin_lower(head), tail = latin_lower(tail);
      if (!first) b.raw(sep);
      first = false;
      b.raw(head);
      b.item(item);
      b.raw(tail);
    }
  }
  for (const auto& f : p.filler) b.raw(sep + f + ".");
}
}  // namespace other

}  // namespace gen

/// Seeded synthetic corpus generator. Each message is drawn independently
/// from a per-index seed, so prefixes of a corpus do not depend on `count`.
class CorpusGenerator {
 public:
  explicit CorpusGenerator(GeneratorConfig config) : config_(std::move(config)) { config_.validate(); }

  Corpus generate() const {
    Corpus out;
    out.reserve(config_.count);
    for (std::size_t i = 0; i < config_.count; ++i) out.push_back(generate_one(i));
    return out;
  }

  AnnotatedMessage generate_one(std::size_t index) const {
    using namespace gen;
    Rng rng(mix_seed(config_.seed, index));
    Plan plan;
    plan.format = pick_format(rng);
    plan.multilingual = rng.chance(config_.multilingual_rate);
    plan.nonstandard = rng.chance(config_.nonstandard_rate);
    plan.nested = rng.chance(config_.nested_rate);
    plan.lang = plan.multilingual ? static_cast<Lang>(1 + rng.below(3)) : Lang::EN;
    plan.casing = plan.format == MessageFormat::MT103 ? Casing::SwiftUpper
                  : plan.format == MessageFormat::ACH ? Casing::Upper
                                                      : Casing::Title;
    if (plan.nonstandard) choose_perturbations(rng, plan);

    const auto& lang_pool = gen_data::lang_countries(plan.lang);
    if (plan.format == MessageFormat::ACH) {
      plan.debtor_country = plan.creditor_country = 2;  // US
    } else {
      plan.debtor_country = rng.pick(lang_pool);
      plan.creditor_country =
          rng.chance(0.6) ? rng.pick(lang_pool) : rng.below(gen_data::countries().size());
    }
    draw_identifiers(rng, plan);

    const auto k = static_cast<std::size_t>(std::lround(
        rng.truncated_normal(config_.entity_density_mean, config_.entity_density_sd, 1.0)));
    const double target_len = rng.truncated_normal(config_.length_mean, config_.length_sd, 40.0);

    SlotPool pool;
    switch (plan.format) {
      case MessageFormat::MT103: pool = mt::pool(); break;
      case MessageFormat::PAIN001: pool = pain::pool(); break;
      case MessageFormat::SEPA: pool = sepa::pool(); break;
      case MessageFormat::ACH: pool = ach::pool(); break;
      case MessageFormat::OTHER: pool = other::pool(); break;
    }
    const auto slots = select_slots(rng, pool, std::max<std::size_t>(1, k));
    fill_items(rng, plan, slots, [&](int field) { return country_for_field(plan, field); },
               [&](Kind) { return amount_style(plan); });

    std::vector<std::size_t> sentence_choices(32);
    for (auto& c : sentence_choices) c = rng.below(1000);

    auto render = [&](TextBuilder& b) {
      switch (plan.format) {
        case MessageFormat::MT103: mt::render(plan, b); break;
        case MessageFormat::PAIN001: pain::render(plan, b); break;
        case MessageFormat::SEPA: sepa::render(plan, b); break;
        case MessageFormat::ACH: ach::render(plan, b); break;
        case MessageFormat::OTHER: other::render(plan, b, sentence_choices); break;
      }
    };

    TextBuilder builder;
    render(builder);
    const Lang filler_lang = plan.multilingual ? plan.lang : Lang::EN;
    while (builder.text.size() < static_cast<std::size_t>(target_len)) {
      std::size_t deficit = static_cast<std::size_t>(target_len) - builder.text.size();
      while (deficit > 0) {
        std::string phrase = rng.pick(gen_data::filler_phrases(filler_lang));
        phrase = plan.casing == Casing::Title ? title_case(phrase) : transliterate(phrase);
        if (plan.lower_content) phrase = latin_lower(phrase);
        deficit -= std::min(deficit, phrase.size() + 8);
        plan.filler.push_back(std::move(phrase));
      }
      builder = TextBuilder{};
      render(builder);
    }

    AnnotatedMessage am;
    am.message.id = make_id(index);
    am.message.format = plan.format;
    am.message.text = std::move(builder.text);
    am.message.flags = {plan.multilingual, plan.nonstandard, plan.nested};
    am.message.language_tags.insert("en");
    if (plan.multilingual) am.message.language_tags.insert(std::string(gen_data::lang_code(plan.lang)));
    am.tokens = tokenize(am.message);

    auto gold = align_char_spans(am.tokens, builder.spans, am.message.text.size());
    auto inner = align_char_spans(am.tokens, builder.inner, am.message.text.size());
    if (gold.expanded || gold.dropped || inner.expanded || inner.dropped)
      throw std::logic_error("generator produced spans not aligned to tokens in message " + am.message.id);
    am.gold_spans = std::move(gold.spans);
    sort_spans(am.gold_spans);
    am.nested_spans = std::move(inner.spans);
    sort_spans(am.nested_spans);
    am.labels = spans_to_labels(am.gold_spans, am.tokens.size());
    return am;
  }

  const GeneratorConfig& config() const { return config_; }

 private:
  static std::string make_id(std::size_t index) {
    std::ostringstream os;
    os << "msg-" << std::setw(6) << std::setfill('0') << index;
    return os.str();
  }

  MessageFormat pick_format(Rng& rng) const {
    double r = rng.uniform();
    for (std::size_t f = 0; f < kNumFormats; ++f) {
      r -= config_.format_mix[f];
      if (r < 0.0) return kAllFormats[f];
    }
    for (std::size_t f = kNumFormats; f-- > 0;)
      if (config_.format_mix[f] > 0.0) return kAllFormats[f];
    return MessageFormat::OTHER;
  }

  static void choose_perturbations(Rng& rng, gen::Plan& p) {
    const std::size_t n = 1 + rng.below(2);
    for (std::size_t i = 0; i < n; ++i) {
      switch (p.format) {
        case MessageFormat::MT103:
          switch (rng.below(4)) {
            case 0: p.crlf = true; break;
            case 1: p.space_after_tag = true; break;
            case 2: p.lower_content = true; break;
            default: p.blank_lines = true;
          }
          break;
        case MessageFormat::PAIN001:
          switch (rng.below(3)) {
            case 0: p.single_line = true; break;
            case 1: p.ns_prefix = true; break;
            default: p.lower_content = true;
          }
          break;
        case MessageFormat::SEPA:
          switch (rng.below(3)) {
            case 0: p.single_line = true; break;
            case 1: p.upper_keys = true; break;
            default: p.lower_content = true;
          }
          break;
        case MessageFormat::ACH:
          if (rng.chance(0.5)) p.lower_content = true;
          else p.single_line = true;
          break;
        case MessageFormat::OTHER:
          if (rng.chance(0.5)) p.lower_content = true;
          else p.single_line = true;
          break;
      }
    }
  }

  static void draw_identifiers(Rng& rng, gen::Plan& p) {
    using namespace gen;
    const int year = rng.range(2022, 2025), month = rng.range(1, 12), day = rng.range(1, 28);
    p.date6 = pad2(year % 100) + pad2(month) + pad2(day);
    p.date_iso = std::to_string(year) + "-" + pad2(month) + "-" + pad2(day);
    const auto& dc = gen_data::countries()[p.debtor_country];
    const auto& cc = gen_data::countries()[p.creditor_country];
    p.bic_debtor_agent = make_bic(rng, dc.iso);
    p.bic_creditor_agent = make_bic(rng, cc.iso);
    p.bic_intermediary = make_bic(rng, rng.pick(gen_data::countries()).iso);
    p.routing_a = random_digits(rng, 9);
    p.routing_b = random_digits(rng, 9);
    switch (p.format) {
      case MessageFormat::MT103:
        p.ref = random_letters(rng, 2) + random_digits(rng, 10);
        p.charges = rng.pick(std::vector<std::string>{"SHA", "OUR", "BEN"});
        p.misc_id = random_digits(rng, 8);
        break;
      case MessageFormat::PAIN001:
        p.ref = "E2E-" + random_digits(rng, 10);
        p.charges = rng.chance(0.75) ? std::string(dc.currency) : std::string("EUR");  // InstdAmt currency
        p.misc_id = "MSG-" + p.date6 + "-" + random_digits(rng, 5);
        break;
      case MessageFormat::ACH:
        p.ref = random_digits(rng, 10);
        p.charges = rng.pick(std::vector<std::string>{"PPD", "CCD", "CTX"});
        p.misc_id = random_digits(rng, 7);
        break;
      default:
        p.ref = random_digits(rng, 10);
        p.charges = "EUR";
        p.misc_id = "SCT" + random_digits(rng, 9);
    }
  }

  static std::size_t country_for_field(const gen::Plan& p, int field) {
    using namespace gen;
    switch (p.format) {
      case MessageFormat::MT103:
        return field == mt::F59 || field == mt::F57A ? p.creditor_country : p.debtor_country;
      case MessageFormat::PAIN001:
        return field >= pain::IntrmyAgt ? p.creditor_country : p.debtor_country;
      case MessageFormat::SEPA:
        return field >= sepa::Creditor && field != sepa::UltimateDebtor ? p.creditor_country : p.debtor_country;
      case MessageFormat::OTHER: return p.creditor_country;
      default: return p.debtor_country;
    }
  }

  static std::string amount_style(const gen::Plan& p) {
    switch (p.format) {
      case MessageFormat::MT103: return "swift";
      case MessageFormat::PAIN001: return "xml";
      case MessageFormat::ACH: return "en";
      default: return !p.multilingual ? "en" : "eu";
    }
  }

  GeneratorConfig config_;
};

inline Corpus generate_corpus(const GeneratorConfig& config) { return CorpusGenerator(config).generate(); }

// ---------------------------------------------------------------------------
// Statistics and splitting

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

inline MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd r;
  if (xs.empty()) return r;
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.sd = std::sqrt(ss / static_cast<double>(xs.size()));
  return r;
}

struct CorpusStats {
  std::size_t message_count = 0;
  std::array<std::size_t, kNumFormats> format_counts{};
  std::array<std::size_t, kNumEntityTypes> entity_counts{};
  MeanSd entity_density;
  MeanSd char_length;
  double multilingual_rate = 0.0;
  double nonstandard_rate = 0.0;
  double nested_rate = 0.0;

  std::size_t count(MessageFormat f) const { return format_counts[static_cast<std::size_t>(f)]; }
  double proportion(MessageFormat f) const {
    return message_count ? static_cast<double>(count(f)) / static_cast<double>(message_count) : 0.0;
  }
};

/// Population statistics (sd uses the population formula).
inline CorpusStats corpus_stats(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("corpus_stats: empty corpus");
  CorpusStats s;
  s.message_count = corpus.size();
  std::vector<double> density, length;
  std::size_t ml = 0, ns = 0, nested = 0;
  for (const auto& m : corpus) {
    ++s.format_counts[static_cast<std::size_t>(m.message.format)];
    for (const auto& sp : m.gold_spans) ++s.entity_counts[static_cast<std::size_t>(sp.type)];
    density.push_back(static_cast<double>(m.gold_spans.size()));
    length.push_back(static_cast<double>(m.message.text.size()));
    ml += m.message.flags.multilingual;
    ns += m.message.flags.nonstandard;
    nested += m.message.flags.has_nested;
  }
  s.entity_density = mean_sd(density);
  s.char_length = mean_sd(length);
  const auto n = static_cast<double>(corpus.size());
  s.multilingual_rate = static_cast<double>(ml) / n;
  s.nonstandard_rate = static_cast<double>(ns) / n;
  s.nested_rate = static_cast<double>(nested) / n;
  return s;
}

struct SplitRatios {
  double train = 0.70;
  double dev = 0.15;
  double test = 0.15;
};

struct CorpusSplit {
  Corpus train, dev, test;
  bool degenerate = false;  // dev or test ended up empty
};

/// Stratified split by message format. Within each stratum messages are
/// shuffled with `seed`; train and dev sizes are rounded and test takes the
/// remainder.
inline CorpusSplit split_corpus(const Corpus& corpus, SplitRatios ratios = {}, std::uint64_t seed = 42) {
  if (corpus.empty()) throw DataError("split_corpus: empty corpus");
  for (double r : {ratios.train, ratios.dev, ratios.test})
    if (r < 0.0 || r > 1.0) throw DataError("split ratios must lie in [0,1]");
  if (std::abs(ratios.train + ratios.dev + ratios.test - 1.0) > 1e-9)
    throw DataError("split ratios must sum to 1");

  std::array<std::vector<std::size_t>, kNumFormats> strata;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    strata[static_cast<std::size_t>(corpus[i].message.format)].push_back(i);

  CorpusSplit out;
  std::vector<int> assignment(corpus.size(), 0);
  for (std::size_t f = 0; f < kNumFormats; ++f) {
    auto& idx = strata[f];
    if (idx.empty()) continue;
    Rng rng(mix_seed(seed, 1000003 + f));
    rng.shuffle(idx);
    const auto n = static_cast<double>(idx.size());
    const auto n_train = std::min(idx.size(), static_cast<std::size_t>(std::floor(n * ratios.train + 0.5)));
    const auto n_dev = std::min(idx.size() - n_train, static_cast<std::size_t>(std::floor(n * ratios.dev + 0.5)));
    for (std::size_t j = 0; j < idx.size(); ++j) assignment[idx[j]] = j < n_train ? 0 : j < n_train + n_dev ? 1 : 2;
  }
  // Keep corpus order inside each part.
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (assignment[i] == 0 ? out.train : assignment[i] == 1 ? out.dev : out.test).push_back(corpus[i]);
  }
  out.degenerate = out.dev.empty() || out.test.empty();
  return out;
}

}  // namespace payner
