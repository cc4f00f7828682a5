#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "payner/types.hpp"

namespace payner {

struct SpanExtraction {
  std::vector<EntitySpan> spans;
  std::size_t repairs = 0;  // orphan I- tags promoted to B-
};

/// BIO decoding. A span opens at B-X and runs through consecutive I-X. An
/// I-X that does not continue an X span opens a new span (CoNLL repair).
inline SpanExtraction extract_spans_counted(const LabelSequence& labels, const std::string& message_id = {}) {
  SpanExtraction out;
  std::optional<EntitySpan> open;
  auto close = [&] {
    if (open) out.spans.push_back(*open);
    open.reset();
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Label l = labels[i];
    if (l.kind == TagKind::I && open && open->type == l.type) {
      open->token_end = i;
      continue;
    }
    close();
    if (l.kind == TagKind::O) continue;
    if (l.kind == TagKind::I) ++out.repairs;
    open = EntitySpan{l.type, i, i, message_id};
  }
  close();
  return out;
}

inline std::vector<EntitySpan> extract_spans(const LabelSequence& labels, const std::string& message_id = {}) {
  return extract_spans_counted(labels, message_id).spans;
}

/// Encodes non-overlapping spans as BIO labels over `n` tokens.
inline LabelSequence spans_to_labels(const std::vector<EntitySpan>& spans, std::size_t n) {
  LabelSequence labels(n, Label::outside());
  for (const auto& s : spans) {
    if (s.token_start > s.token_end || s.token_end >= n)
      throw DataError("span [" + std::to_string(s.token_start) + "," + std::to_string(s.token_end) +
                      "] outside a sequence of " + std::to_string(n) + " tokens");
    for (std::size_t i = s.token_start; i <= s.token_end; ++i) {
      if (!labels[i].is_outside()) throw DataError("overlapping spans at token " + std::to_string(i));
      labels[i] = i == s.token_start ? Label::begin(s.type) : Label::inside(s.type);
    }
  }
  return labels;
}

inline void sort_spans(std::vector<EntitySpan>& spans) { std::sort(spans.begin(), spans.end()); }

}  // namespace payner
