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

#ifndef NEWSBOT_PHONEME_TIMELINE_H_
#define NEWSBOT_PHONEME_TIMELINE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newsbot {

inline constexpr std::string_view kSilence = "SIL";

// Tone 1-5 for Chinese, stress 0-2 for English, mora accent H/L for
// Japanese; other languages carry no prosody.
enum class ProsodyKind { kNone, kTone, kStress, kMoraAccent };

ProsodyKind ProsodyKindFor(std::string_view language);

struct Prosody {
  ProsodyKind kind = ProsodyKind::kNone;
  int value = 0;  // tone or stress level; 1 = H, 0 = L for mora accent

  // "-", "tone:3", "stress:1", "accent:H"
  std::string ToString() const;
  // Lexicon suffix form: "", "3", "1", "H".
  std::string Suffix() const;
  static Prosody FromString(std::string_view text);

  bool operator==(const Prosody &other) const = default;
};

// Ordered symbol list with SIL at index 0.
class PhonemeInventory {
 public:
  PhonemeInventory();
  // SIL is inserted at the front if absent; duplicates raise kValidation.
  explicit PhonemeInventory(const std::vector<std::string> &symbols);

  const std::vector<std::string> &symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  std::optional<std::size_t> Index(std::string_view symbol) const;

  bool operator==(const PhonemeInventory &other) const {
    return symbols_ == other.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct PhonemeSegment {
  std::string phoneme;
  double duration_s = 0.0;
  Prosody prosody;

  bool operator==(const PhonemeSegment &other) const = default;
};

struct PhonemeTimeline {
  std::string language;
  std::vector<PhonemeSegment> segments;
  PhonemeInventory inventory;
  // When set, inventory symbols are phoneme + prosody suffix ("AO1").
  bool prosodic_inventory = false;

  double TotalDuration() const;
  // Inventory index of a segment under this timeline's inventory mode.
  std::size_t SymbolIndex(const PhonemeSegment &segment) const;

  bool operator==(const PhonemeTimeline &other) const = default;
};

struct LexiconPhone {
  std::string phoneme;
  Prosody prosody;
  std::optional<double> duration_s;  // per-entry override
};

struct Lexicon {
  std::string language;
  std::map<std::string, std::vector<LexiconPhone>, std::less<>> words;
  PhonemeInventory inventory;
  bool prosodic_inventory = false;
  std::size_t max_word_code_points = 0;
};

// word TAB space-separated phonemes. A phoneme may carry a prosody suffix
// (tone digit, stress digit, or H/L accent, according to the language) and
// an optional ":seconds" duration override, e.g. "AO1:0.12". Lookups are
// ASCII case-insensitive. The inventory is SIL followed by the sorted set of
// phoneme symbols (with suffixes when prosodic_inventory is set).
Lexicon ParseLexicon(std::string_view text, std::string_view language,
                     bool prosodic_inventory = false);

enum class UnknownTokenPolicy { kError, kSkip };

struct PhonemizeOptions {
  double default_duration_s = 0.08;
  std::map<std::string, double, std::less<>> phoneme_durations;
  UnknownTokenPolicy unknown_tokens = UnknownTokenPolicy::kError;
};

struct PhonemizeResult {
  PhonemeTimeline timeline;
  std::vector<std::string> warnings;
};

// Space-delimited languages are looked up word by word (edge punctuation
// stripped, then split on inner punctuation if the whole word is unknown);
// others are segmented greedily by the longest lexicon entry. Punctuation
// not in the lexicon only separates tokens. Duration per phoneme: lexicon
// override, else phoneme_durations, else default_duration_s.
PhonemizeResult TextToPhonemes(std::string_view text, std::string_view language,
                               const Lexicon &lexicon,
                               const PhonemizeOptions &options = {});

// N = round(total_duration * fps) frames; frame t takes the segment whose
// [start, end) interval contains (t + 0.5) / fps (the last segment if the
// midpoint falls past the end).
std::vector<int> TimelineToFrames(const PhonemeTimeline &timeline, double fps);

// "# language=", "# inventory=", "# prosodic_inventory=" header lines, then
// phoneme TAB duration_s TAB prosody per segment.
std::string SerializeTimeline(const PhonemeTimeline &timeline);
PhonemeTimeline ParseTimeline(std::string_view text);

// Checks the timeline invariants; throws Error(kValidation).
void ValidateTimeline(const PhonemeTimeline &timeline);

}  // namespace newsbot

#endif  // NEWSBOT_PHONEME_TIMELINE_H_
