#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "payner/formats.hpp"
#include "payner/spans.hpp"
#include "payner/text.hpp"
#include "payner/tokenize.hpp"
#include "payner/types.hpp"

namespace payner {

// Annotation files are CoNLL-style:
//
//   # id = msg-000001
//   # format = MT103
//   # flags = multilingual,nested        (or "none")
//   # lang = de,en
//   # text = ":20:REF..."                (JSON string, optional)
//   # nested = LOCATION:4-4              (optional)
//   :20:<TAB>O
//   ...
//   <blank line>
//
// `# text` keeps the raw message so offsets and field context survive the
// round trip. Without it the text is the tokens joined by single spaces.

namespace detail {

inline std::string flags_to_string(const MessageFlags& f) {
  std::string s;
  auto add = [&s](bool on, std::string_view name) {
    if (!on) return;
    if (!s.empty()) s += ',';
    s += name;
  };
  add(f.multilingual, "multilingual");
  add(f.nonstandard, "nonstandard");
  add(f.has_nested, "nested");
  return s.empty() ? "none" : s;
}

inline std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) pos = s.size();
    out.emplace_back(text::trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

/// Locates each token text in `text` in order, skipping whitespace.
inline bool locate_tokens(std::string_view text, std::vector<Token>& tokens) {
  std::size_t pos = 0;
  for (auto& t : tokens) {
    while (pos < text.size() && text::is_space(text[pos])) ++pos;
    if (text.substr(pos, t.text.size()) != t.text) return false;
    t.char_start = pos;
    t.char_end = pos + t.text.size();
    pos = t.char_end;
  }
  return true;
}

class AnnotationReader {
 public:
  AnnotationReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  Corpus read() {
    Corpus out;
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty()) {
        flush(out);
        continue;
      }
      // "#<TAB>label" is a token line for a literal '#' token.
      if (line.front() == '#' && (line.size() == 1 || line[1] != '\t')) {
        if (!token_lines_.empty()) fail("header line inside a token block");
        header(line);
        continue;
      }
      token_line(line);
    }
    flush(out);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& reason, std::size_t line = 0) const {
    throw DataError(source_ + ":" + std::to_string(line ? line : line_no_) + ": " + reason);
  }

  void header(std::string_view line) {
    auto body = text::trim(line.substr(1));
    auto eq = body.find(" = ");
    std::string_view key, value;
    if (eq != std::string_view::npos) {
      key = text::trim(body.substr(0, eq));
      value = body.substr(eq + 3);
    } else if (body.size() && body.back() == '=') {
      key = text::trim(body.substr(0, body.size() - 1));
    } else {
      return;  // free comment
    }
    if (!started_) start_line_ = line_no_;
    started_ = true;
    if (key == "id") {
      current_.message.id = std::string(value);
    } else if (key == "format") {
      auto f = parse_format(value);
      if (!f) fail("unknown format '" + std::string(value) + "'");
      current_.message.format = *f;
    } else if (key == "flags") {
      for (const auto& f : split_on(value, ',')) {
        if (f == "multilingual") current_.message.flags.multilingual = true;
        else if (f == "nonstandard") current_.message.flags.nonstandard = true;
        else if (f == "nested") current_.message.flags.has_nested = true;
        else if (f != "none" && !f.empty()) fail("unknown flag '" + f + "'");
      }
    } else if (key == "lang") {
      for (const auto& l : split_on(value, ','))
        if (!l.empty()) current_.message.language_tags.insert(l);
    } else if (key == "text") {
      try {
        current_.message.text = nlohmann::json::parse(value).get<std::string>();
        have_text_ = true;
      } catch (const std::exception&) {
        fail("malformed text header");
      }
    } else if (key == "nested") {
      nested_line_ = line_no_;
      nested_ = std::string(value);
    }
  }

  void token_line(std::string_view line) {
    if (!started_) start_line_ = line_no_;
    started_ = true;
    auto tab = line.rfind('\t');
    if (tab == std::string_view::npos || tab == 0)
      fail("token/label count mismatch: expected '<token>\\t<label>'");
    auto token = line.substr(0, tab);
    if (token.find('\t') != std::string_view::npos) fail("token/label count mismatch: too many columns");
    auto label = parse_label(line.substr(tab + 1));
    if (!label) fail("unknown label '" + std::string(line.substr(tab + 1)) + "'");
    std::optional<Label> prev;
    if (!current_.labels.empty()) prev = current_.labels.back();
    if (!bio_transition_allowed(prev, *label))
      fail("broken BIO: " + to_string(*label) + " after " + (prev ? to_string(*prev) : std::string("sequence start")));
    current_.tokens.tokens.push_back(Token{std::string(token), 0, 0, std::nullopt});
    current_.labels.push_back(*label);
    token_lines_.push_back(line_no_);
  }

  void flush(Corpus& out) {
    if (!started_) return;
    AnnotatedMessage m = std::move(current_);
    const std::size_t at = start_line_;
    current_ = {};
    started_ = false;
    const bool have_text = have_text_;
    have_text_ = false;
    std::vector<std::size_t> lines = std::move(token_lines_);
    token_lines_.clear();
    std::string nested = std::move(nested_);
    nested_.clear();

    if (m.message.id.empty()) fail("record without '# id' header", at);
    if (m.tokens.empty()) fail("record '" + m.message.id + "' has no tokens", at);
    if (!have_text) {
      std::string joined;
      for (const auto& t : m.tokens.tokens) {
        if (!joined.empty()) joined += ' ';
        joined += t.text;
      }
      m.message.text = joined;
    }
    m.tokens.message_id = m.message.id;
    TokenSequence retok = tokenize(m.message);
    bool same = retok.size() == m.tokens.size();
    for (std::size_t i = 0; same && i < retok.size(); ++i) same = retok[i].text == m.tokens[i].text;
    if (same) {
      m.tokens = std::move(retok);
    } else {
      if (!locate_tokens(m.message.text, m.tokens.tokens))
        fail("tokens of record '" + m.message.id + "' do not match its text", at);
      const auto fs = parse_structure(m.message);
      for (auto& t : m.tokens.tokens)
        if (const auto* r = fs.find(t.char_start)) t.field_context = r->field;
    }
    m.gold_spans = extract_spans(m.labels, m.message.id);
    if (!nested.empty()) {
      for (const auto& item : split_on(nested, ',')) {
        auto colon = item.find(':');
        auto dash = item.find('-', colon == std::string::npos ? 0 : colon);
        if (colon == std::string::npos || dash == std::string::npos) fail("malformed nested span", nested_line_);
        auto type = parse_entity_type(item.substr(0, colon));
        if (!type) fail("unknown entity type in nested span", nested_line_);
        EntitySpan s{*type, 0, 0, m.message.id};
        try {
          s.token_start = std::stoul(item.substr(colon + 1, dash - colon - 1));
          s.token_end = std::stoul(item.substr(dash + 1));
        } catch (const std::exception&) {
          fail("malformed nested span", nested_line_);
        }
        if (s.token_start > s.token_end || s.token_end >= m.tokens.size())
          fail("nested span outside the record", nested_line_);
        m.nested_spans.push_back(s);
      }
    }
    out.push_back(std::move(m));
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
  std::size_t start_line_ = 0;
  std::size_t nested_line_ = 0;
  bool started_ = false;
  bool have_text_ = false;
  AnnotatedMessage current_;
  std::vector<std::size_t> token_lines_;
  std::string nested_;
};

}  // namespace detail

inline void write_annotations(const Corpus& corpus, std::ostream& out) {
  for (const auto& m : corpus) {
    if (m.tokens.size() != m.labels.size())
      throw DataError("message '" + m.id() + "': token/label count mismatch");
    out << "# id = " << m.message.id << '\n';
    out << "# format = " << to_string(m.message.format) << '\n';
    out << "# flags = " << detail::flags_to_string(m.message.flags) << '\n';
    if (!m.message.language_tags.empty()) {
      out << "# lang = ";
      bool first = true;
      for (const auto& l : m.message.language_tags) {
        out << (first ? "" : ",") << l;
        first = false;
      }
      out << '\n';
    }
    out << "# text = " << nlohmann::json(m.message.text).dump() << '\n';
    if (!m.nested_spans.empty()) {
      out << "# nested = ";
      for (std::size_t i = 0; i < m.nested_spans.size(); ++i) {
        const auto& s = m.nested_spans[i];
        out << (i ? "," : "") << to_string(s.type) << ':' << s.token_start << '-' << s.token_end;
      }
      out << '\n';
    }
    for (std::size_t i = 0; i < m.tokens.size(); ++i) out << m.tokens[i].text << '\t' << to_string(m.labels[i]) << '\n';
    out << '\n';
  }
}

inline Corpus read_annotations(std::istream& in, const std::string& source = "<stream>") {
  return detail::AnnotationReader(in, source).read();
}

inline void write_annotations_file(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_annotations(corpus, out);
  if (!out) throw DataError("write to '" + path + "' failed");
}

inline Corpus read_annotations_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_annotations(in, path);
}

// ---------------------------------------------------------------------------
// Raw messages: one JSON object per line with id, format and text.

inline void write_raw_messages(const std::vector<PaymentMessage>& messages, std::ostream& out) {
  for (const auto& m : messages) {
    nlohmann::ordered_json j;
    j["id"] = m.id;
    j["format"] = to_string(m.format);
    j["text"] = m.text;
    out << j.dump() << '\n';
  }
}

inline std::vector<PaymentMessage> read_raw_messages(std::istream& in, const std::string& source = "<stream>") {
  std::vector<PaymentMessage> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (text::trim(line).empty()) continue;
    auto where = [&] { return source + ":" + std::to_string(no) + ": "; };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw DataError(where() + "invalid JSON");
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("format") || !j.contains("text") ||
        !j["id"].is_string() || !j["format"].is_string() || !j["text"].is_string())
      throw DataError(where() + "expected string fields id, format, text");
    PaymentMessage m;
    m.id = j["id"].get<std::string>();
    auto f = parse_format(j["format"].get<std::string>());
    if (!f) throw DataError(where() + "unknown format '" + j["format"].get<std::string>() + "'");
    m.format = *f;
    m.text = j["text"].get<std::string>();
    if (m.text.empty()) throw DataError(where() + "empty text");
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<PaymentMessage> read_raw_messages_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_raw_messages(in, path);
}

/// Accepts either an annotation file or a raw JSONL file, by first
/// non-blank character.
inline std::vector<PaymentMessage> read_messages_any(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  char c = 0;
  while (in.get(c) && text::is_space(c)) {
  }
  in.clear();
  in.seekg(0);
  if (c == '{') return read_raw_messages(in, path);
  std::vector<PaymentMessage> out;
  for (auto& m : read_annotations(in, path)) out.push_back(std::move(m.message));
  return out;
}

}  // namespace payner
