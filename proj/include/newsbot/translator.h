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

#ifndef NEWSBOT_TRANSLATOR_H_
#define NEWSBOT_TRANSLATOR_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace newsbot {

enum class TermKind { kTeam, kPlayer, kOther };

struct GlossaryEntry {
  std::string source_term;
  std::string target_term;
  TermKind kind = TermKind::kOther;

  bool operator==(const GlossaryEntry &other) const = default;
};

class Glossary {
 public:
  Glossary() = default;
  // Rejects empty terms and duplicate source terms with Error(kValidation).
  explicit Glossary(std::vector<GlossaryEntry> entries);

  const std::vector<GlossaryEntry> &entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // target_term -> source_term, used to localize raw table names.
  std::map<std::string, std::string, std::less<>> Inverse() const;

 private:
  std::vector<GlossaryEntry> entries_;
};

// source TAB target TAB kind (team | player | other; kind optional).
Glossary ParseGlossary(std::string_view text);

// Surface form of a placeholder: open + prefix + id + close, e.g. ⟨NE1⟩.
struct PlaceholderStyle {
  std::string open = "⟨";
  std::string prefix = "NE";
  std::string close = "⟩";

  std::string Format(int id) const { return open + prefix + std::to_string(id) + close; }
};

struct MaskedText {
  std::string text;
  std::map<int, GlossaryEntry> placeholders;  // ids 1..n, first-occurrence order
};

// Replaces glossary source terms by placeholders, scanning left to right and
// taking the longest term at each position. Repeated terms reuse their id.
// Text that already looks like a placeholder is copied through untouched.
MaskedText MaskEntities(std::string_view text, const Glossary &glossary,
                        const PlaceholderStyle &style = {});

// Placeholder ids in order of appearance (with repeats).
std::vector<int> FindPlaceholders(std::string_view text,
                                  const PlaceholderStyle &style = {});

class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  // Must return placeholder tokens verbatim.
  virtual std::string Translate(std::string_view text, std::string_view src,
                                std::string_view tgt) const = 0;
};

class IdentityBackend : public TranslationBackend {
 public:
  std::string Translate(std::string_view text, std::string_view,
                        std::string_view) const override {
    return std::string(text);
  }
};

// Phrase-table backend. Entries are tried longest-source-first at each
// position; `<num>` in a source phrase matches a run of ASCII digits, and
// `<num>` / `<ord>` in the target re-emit the captured numbers (plain or as
// English ordinals) in order. Placeholders pass through. Translated phrases
// and placeholders are joined with single spaces; no space is inserted
// before a phrase starting with punctuation, between two placeholders, or
// next to untranslated text.
class DictionaryBackend : public TranslationBackend {
 public:
  struct Entry {
    std::string source;
    std::string target;
  };

  explicit DictionaryBackend(std::vector<Entry> entries, PlaceholderStyle style = {});

  std::string Translate(std::string_view text, std::string_view src,
                        std::string_view tgt) const override;

 private:
  std::vector<Entry> entries_;
  PlaceholderStyle style_;
};

// source phrase TAB target phrase per line; blank lines and lines starting
// with "#" are ignored.
DictionaryBackend ParseDictionary(std::string_view text, PlaceholderStyle style = {});

// Runs the backend and checks that every placeholder id occurs as often in
// the output as in the input; otherwise Error(kIntegrity) listing the
// missing and extra ids.
std::string TranslateMasked(const MaskedText &masked, const TranslationBackend &backend,
                            std::string_view src, std::string_view tgt,
                            const PlaceholderStyle &style = {});

struct UnmaskOptions {
  // Inserted between two directly adjacent placeholders, e.g. " " when the
  // target language separates words with spaces.
  std::string adjacent_separator;
  PlaceholderStyle style;
};

// Restores target terms. Unknown ids raise Error(kLookup).
std::string Unmask(std::string_view translated,
                   const std::map<int, GlossaryEntry> &placeholders,
                   const UnmaskOptions &options = {});

}  // namespace newsbot

#endif  // NEWSBOT_TRANSLATOR_H_
