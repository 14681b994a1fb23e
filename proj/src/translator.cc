// Copyright 2026 The Newsbot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "newsbot/translator.h"

#include <algorithm>
#include <optional>
#include <set>

#include "newsbot/error.h"
#include "newsbot/template_dsl.h"
#include "newsbot/text_util.h"

namespace newsbot {

namespace {

struct PlaceholderMatch {
  int id;
  std::size_t length;
};

std::optional<PlaceholderMatch> MatchPlaceholder(std::string_view text, std::size_t pos,
                                                 const PlaceholderStyle &style) {
  std::string_view rest = text.substr(pos);
  const std::size_t head = style.open.size() + style.prefix.size();
  if (rest.substr(0, style.open.size()) != style.open ||
      rest.substr(style.open.size(), style.prefix.size()) != style.prefix) {
    return std::nullopt;
  }
  std::size_t k = head;
  while (k < rest.size() && rest[k] >= '0' && rest[k] <= '9') ++k;
  if (k == head || k - head > 9) return std::nullopt;
  if (rest.substr(k, style.close.size()) != style.close) return std::nullopt;
  auto id = ParseInt(rest.substr(head, k - head));
  return PlaceholderMatch{static_cast<int>(*id), k + style.close.size()};
}

std::string JoinIds(const std::vector<int> &ids) {
  std::string out = "[";
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(ids[k]);
  }
  return out + "]";
}

TermKind ParseKind(std::string_view text, std::size_t line) {
  const std::string kind = ToLowerAscii(Trim(text));
  if (kind.empty() || kind == "other") return TermKind::kOther;
  if (kind == "team") return TermKind::kTeam;
  if (kind == "player") return TermKind::kPlayer;
  throw Error(ErrorKind::kParse, "glossary line " + std::to_string(line) +
                                     ": unknown kind '" + std::string(text) + "'");
}

// Length of the match of `pattern` at text[pos], capturing <num> runs.
std::optional<std::size_t> MatchPhrase(std::string_view pattern, std::string_view text,
                                       std::size_t pos, std::vector<std::string> &numbers) {
  static constexpr std::string_view kNum = "<num>";
  std::size_t p = 0;
  std::size_t t = pos;
  numbers.clear();
  while (p < pattern.size()) {
    if (pattern.substr(p, kNum.size()) == kNum) {
      const std::size_t start = t;
      while (t < text.size() && text[t] >= '0' && text[t] <= '9') ++t;
      if (t == start) return std::nullopt;
      numbers.emplace_back(text.substr(start, t - start));
      p += kNum.size();
      continue;
    }
    if (t >= text.size() || text[t] != pattern[p]) return std::nullopt;
    ++t;
    ++p;
  }
  return t - pos;
}

std::string FillTarget(std::string_view target, const std::vector<std::string> &numbers) {
  std::string out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < target.size();) {
    const bool num = target.substr(i, 5) == "<num>";
    const bool ord = target.substr(i, 5) == "<ord>";
    if ((num || ord) && next < numbers.size()) {
      const std::string &digits = numbers[next++];
      out += ord ? Ordinal(*ParseInt(digits)) : digits;
      i += 5;
    } else {
      out.push_back(target[i++]);
    }
  }
  return out;
}

bool StartsWithPunctuation(std::string_view s) {
  if (s.empty()) return false;
  const char c = s.front();
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' ||
         c == ')' || c == ' ';
}

}  // namespace

Glossary::Glossary(std::vector<GlossaryEntry> entries) : entries_(std::move(entries)) {
  std::set<std::string_view> seen;
  for (const GlossaryEntry &e : entries_) {
    if (e.source_term.empty() || e.target_term.empty()) {
      throw Error(ErrorKind::kValidation, "glossary terms must be non-empty");
    }
    if (!seen.insert(e.source_term).second) {
      throw Error(ErrorKind::kValidation,
                  "duplicate glossary source term '" + e.source_term + "'");
    }
  }
}

std::map<std::string, std::string, std::less<>> Glossary::Inverse() const {
  std::map<std::string, std::string, std::less<>> inverse;
  for (const GlossaryEntry &e : entries_) inverse.emplace(e.target_term, e.source_term);
  return inverse;
}

Glossary ParseGlossary(std::string_view text) {
  std::vector<GlossaryEntry> entries;
  const auto lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (Trim(line).empty() || StartsWith(Trim(line), "#")) continue;
    auto fields = Split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw Error(ErrorKind::kParse, "glossary line " + std::to_string(n + 1) +
                                         ": expected source TAB target [TAB kind]");
    }
    entries.push_back({std::string(Trim(fields[0])), std::string(Trim(fields[1])),
                       fields.size() == 3 ? ParseKind(fields[2], n + 1) : TermKind::kOther});
  }
  return Glossary(std::move(entries));
}

MaskedText MaskEntities(std::string_view text, const Glossary &glossary,
                        const PlaceholderStyle &style) {
  std::vector<const GlossaryEntry *> terms;
  for (const GlossaryEntry &e : glossary.entries()) terms.push_back(&e);
  std::stable_sort(terms.begin(), terms.end(), [](const auto *a, const auto *b) {
    return a->source_term.size() > b->source_term.size();
  });
  MaskedText masked;
  std::map<std::string_view, int> ids;
  std::size_t i = 0;
  while (i < text.size()) {
    if (auto ph = MatchPlaceholder(text, i, style)) {
      masked.text.append(text.substr(i, ph->length));
      i += ph->length;
      continue;
    }
    const GlossaryEntry *hit = nullptr;
    for (const GlossaryEntry *term : terms) {
      if (text.substr(i, term->source_term.size()) == term->source_term) {
        hit = term;
        break;
      }
    }
    if (hit == nullptr) {
      const std::size_t len = Utf8SequenceLength(text, i);
      masked.text.append(text.substr(i, len));
      i += len;
      continue;
    }
    auto [it, inserted] =
        ids.emplace(hit->source_term, static_cast<int>(ids.size()) + 1);
    if (inserted) masked.placeholders.emplace(it->second, *hit);
    masked.text += style.Format(it->second);
    i += hit->source_term.size();
  }
  return masked;
}

std::vector<int> FindPlaceholders(std::string_view text, const PlaceholderStyle &style) {
  std::vector<int> ids;
  for (std::size_t i = 0; i < text.size();) {
    if (auto ph = MatchPlaceholder(text, i, style)) {
      ids.push_back(ph->id);
      i += ph->length;
    } else {
      i += Utf8SequenceLength(text, i);
    }
  }
  return ids;
}

DictionaryBackend::DictionaryBackend(std::vector<Entry> entries, PlaceholderStyle style)
    : entries_(std::move(entries)), style_(std::move(style)) {
  std::erase_if(entries_, [](const Entry &e) { return e.source.empty(); });
  std::stable_sort(entries_.begin(), entries_.end(), [](const Entry &a, const Entry &b) {
    return a.source.size() > b.source.size();
  });
}

std::string DictionaryBackend::Translate(std::string_view text, std::string_view,
                                         std::string_view) const {
  enum class Kind { kPlaceholder, kTranslated, kRaw };
  struct Piece {
    Kind kind;
    std::string text;
  };
  std::vector<Piece> pieces;
  std::vector<std::string> numbers;
  std::vector<std::string> best_numbers;
  std::size_t i = 0;
  while (i < text.size()) {
    if (auto ph = MatchPlaceholder(text, i, style_)) {
      pieces.push_back({Kind::kPlaceholder, std::string(text.substr(i, ph->length))});
      i += ph->length;
      continue;
    }
    const Entry *best = nullptr;
    std::size_t best_len = 0;
    for (const Entry &entry : entries_) {
      auto len = MatchPhrase(entry.source, text, i, numbers);
      if (len && *len > best_len) {
        best = &entry;
        best_len = *len;
        best_numbers = numbers;
      }
    }
    if (best != nullptr) {
      std::string target = FillTarget(best->target, best_numbers);
      if (!target.empty()) pieces.push_back({Kind::kTranslated, std::move(target)});
      i += best_len;
      continue;
    }
    const std::size_t len = Utf8SequenceLength(text, i);
    if (pieces.empty() || pieces.back().kind != Kind::kRaw) {
      pieces.push_back({Kind::kRaw, {}});
    }
    pieces.back().text.append(text.substr(i, len));
    i += len;
  }
  std::string out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (k > 0) {
      const Piece &a = pieces[k - 1];
      const Piece &b = pieces[k];
      const bool space = a.kind != Kind::kRaw && b.kind != Kind::kRaw &&
                         !(a.kind == Kind::kPlaceholder && b.kind == Kind::kPlaceholder) &&
                         !a.text.ends_with(' ') && !StartsWithPunctuation(b.text);
      if (space) out.push_back(' ');
    }
    out += pieces[k].text;
  }
  return out;
}

DictionaryBackend ParseDictionary(std::string_view text, PlaceholderStyle style) {
  std::vector<DictionaryBackend::Entry> entries;
  const auto lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string &line = lines[n];
    if (Trim(line).empty() || StartsWith(line, "#")) continue;
    auto fields = Split(line, '\t');
    if (fields.size() != 2) {
      throw Error(ErrorKind::kParse, "dictionary line " + std::to_string(n + 1) +
                                         ": expected source TAB target");
    }
    entries.push_back({fields[0], fields[1]});
  }
  return DictionaryBackend(std::move(entries), std::move(style));
}

std::string TranslateMasked(const MaskedText &masked, const TranslationBackend &backend,
                            std::string_view src, std::string_view tgt,
                            const PlaceholderStyle &style) {
  std::string output = backend.Translate(masked.text, src, tgt);
  std::map<int, int> balance;
  for (int id : FindPlaceholders(masked.text, style)) ++balance[id];
  for (int id : FindPlaceholders(output, style)) --balance[id];
  std::vector<int> missing;
  std::vector<int> extra;
  for (const auto &[id, count] : balance) {
    if (count > 0) missing.push_back(id);
    if (count < 0) extra.push_back(id);
  }
  if (!missing.empty() || !extra.empty()) {
    throw Error(ErrorKind::kIntegrity, "placeholder integrity violated: missing ids " +
                                           JoinIds(missing) + ", extra ids " +
                                           JoinIds(extra));
  }
  return output;
}

std::string Unmask(std::string_view translated,
                   const std::map<int, GlossaryEntry> &placeholders,
                   const UnmaskOptions &options) {
  std::string out;
  std::size_t last_placeholder_end = std::string_view::npos;
  for (std::size_t i = 0; i < translated.size();) {
    auto ph = MatchPlaceholder(translated, i, options.style);
    if (!ph) {
      const std::size_t len = Utf8SequenceLength(translated, i);
      out.append(translated.substr(i, len));
      i += len;
      continue;
    }
    auto it = placeholders.find(ph->id);
    if (it == placeholders.end()) {
      throw Error(ErrorKind::kLookup,
                  "unknown placeholder id " + std::to_string(ph->id));
    }
    if (last_placeholder_end == i) out += options.adjacent_separator;
    out += it->second.target_term;
    i += ph->length;
    last_placeholder_end = i;
  }
  return out;
}

}  // namespace newsbot
