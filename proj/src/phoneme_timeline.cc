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

#include "newsbot/phoneme_timeline.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "newsbot/error.h"
#include "newsbot/text_util.h"

namespace newsbot {

namespace {

// Splits a lexicon token like "AO1:0.12" into phone, prosody and duration.
LexiconPhone ParsePhoneToken(std::string_view token, ProsodyKind kind,
                             std::size_t line) {
  const std::string where = "lexicon line " + std::to_string(line) + ": ";
  LexiconPhone phone;
  std::size_t colon = token.find(':');
  if (colon != std::string_view::npos) {
    auto seconds = ParseDouble(token.substr(colon + 1));
    if (!seconds || !(*seconds > 0) || !std::isfinite(*seconds)) {
      throw Error(ErrorKind::kParse, where + "bad duration in '" + std::string(token) + "'");
    }
    phone.duration_s = *seconds;
    token = token.substr(0, colon);
  }
  if (token.empty()) throw Error(ErrorKind::kParse, where + "empty phoneme");
  const char last = token.back();
  if (token.size() > 1 && token != kSilence) {
    const bool digit = last >= '0' && last <= '9';
    if (kind == ProsodyKind::kTone && digit) {
      if (last < '1' || last > '5') {
        throw Error(ErrorKind::kParse, where + "tone must be 1-5 in '" + std::string(token) + "'");
      }
      phone.prosody = {kind, last - '0'};
      token.remove_suffix(1);
    } else if (kind == ProsodyKind::kStress && digit) {
      if (last > '2') {
        throw Error(ErrorKind::kParse,
                    where + "stress must be 0-2 in '" + std::string(token) + "'");
      }
      phone.prosody = {kind, last - '0'};
      token.remove_suffix(1);
    } else if (kind == ProsodyKind::kMoraAccent && (last == 'H' || last == 'L')) {
      phone.prosody = {kind, last == 'H' ? 1 : 0};
      token.remove_suffix(1);
    }
  }
  phone.phoneme = std::string(token);
  return phone;
}

std::string InventoryKey(const std::string &phoneme, const Prosody &prosody,
                         bool prosodic) {
  return prosodic ? phoneme + prosody.Suffix() : phoneme;
}

std::string StripEdgePunctuation(std::string_view word) {
  std::size_t begin = 0;
  std::size_t end = word.size();
  while (begin < end && IsPunctuation(DecodeUtf8(word, begin))) {
    begin += Utf8SequenceLength(word, begin);
  }
  // Walk back to the start of the last code point each time.
  while (end > begin) {
    std::size_t start = end - 1;
    while (start > begin && (static_cast<unsigned char>(word[start]) & 0xC0) == 0x80) {
      --start;
    }
    if (!IsPunctuation(DecodeUtf8(word, start))) break;
    end = start;
  }
  return std::string(word.substr(begin, end - begin));
}

class Phonemizer {
 public:
  Phonemizer(const Lexicon &lexicon, const PhonemizeOptions &options,
             PhonemizeResult &result)
      : lexicon_(lexicon), options_(options), result_(result) {}

  void AddWord(std::string_view word) {
    if (word.empty()) return;
    if (UsesWordSpacing(lexicon_.language)) {
      AddSpacedWord(word);
    } else {
      AddUnspacedRun(word);
    }
  }

 private:
  bool TryEmit(std::string_view word) {
    auto it = lexicon_.words.find(ToLowerAscii(word));
    if (it == lexicon_.words.end()) return false;
    for (const LexiconPhone &phone : it->second) {
      double duration = options_.default_duration_s;
      if (phone.duration_s) {
        duration = *phone.duration_s;
      } else if (auto d = options_.phoneme_durations.find(phone.phoneme);
                 d != options_.phoneme_durations.end()) {
        duration = d->second;
      }
      result_.timeline.segments.push_back({phone.phoneme, duration, phone.prosody});
    }
    return true;
  }

  void Unknown(std::string_view token) {
    if (options_.unknown_tokens == UnknownTokenPolicy::kError) {
      throw Error(ErrorKind::kLookup,
                  "token '" + std::string(token) + "' is not covered by the lexicon");
    }
    result_.warnings.push_back("skipped unknown token '" + std::string(token) + "'");
  }

  void AddSpacedWord(std::string_view raw) {
    if (TryEmit(raw)) return;
    const std::string word = StripEdgePunctuation(raw);
    if (word.empty() || TryEmit(word)) return;
    // Split on inner punctuation ("1-0" -> "1", "0") unless the punctuation
    // itself is a lexicon entry.
    std::string piece;
    auto flush = [&] {
      if (!piece.empty() && !TryEmit(piece)) Unknown(piece);
      piece.clear();
    };
    for (std::size_t i = 0; i < word.size();) {
      const std::size_t len = Utf8SequenceLength(word, i);
      const std::string_view cp = std::string_view(word).substr(i, len);
      if (IsPunctuation(DecodeUtf8(word, i))) {
        flush();
        TryEmit(cp);
      } else {
        piece.append(cp);
      }
      i += len;
    }
    flush();
  }

  void AddUnspacedRun(std::string_view run) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < run.size(); i += Utf8SequenceLength(run, i)) {
      starts.push_back(i);
    }
    starts.push_back(run.size());
    const std::size_t n = starts.size() - 1;
    std::size_t k = 0;
    std::string unknown;
    while (k < n) {
      bool matched = false;
      const std::size_t max_len = std::min(lexicon_.max_word_code_points, n - k);
      for (std::size_t len = max_len; len >= 1; --len) {
        std::string_view candidate = run.substr(starts[k], starts[k + len] - starts[k]);
        if (TryEmitAfter(candidate, unknown)) {
          k += len;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      std::string_view cp = run.substr(starts[k], starts[k + 1] - starts[k]);
      if (IsPunctuation(DecodeUtf8(run, starts[k]))) {
        FlushUnknown(unknown);
      } else {
        unknown.append(cp);
      }
      ++k;
    }
    FlushUnknown(unknown);
  }

  bool TryEmitAfter(std::string_view candidate, std::string &unknown) {
    if (lexicon_.words.find(ToLowerAscii(candidate)) == lexicon_.words.end()) {
      return false;
    }
    FlushUnknown(unknown);
    return TryEmit(candidate);
  }

  void FlushUnknown(std::string &unknown) {
    if (!unknown.empty()) Unknown(unknown);
    unknown.clear();
  }

  const Lexicon &lexicon_;
  const PhonemizeOptions &options_;
  PhonemizeResult &result_;
};

}  // namespace

ProsodyKind ProsodyKindFor(std::string_view language) {
  const std::string base = ToLowerAscii(language.substr(0, language.find('-')));
  if (base == "zh") return ProsodyKind::kTone;
  if (base == "en") return ProsodyKind::kStress;
  if (base == "ja") return ProsodyKind::kMoraAccent;
  return ProsodyKind::kNone;
}

std::string Prosody::ToString() const {
  switch (kind) {
    case ProsodyKind::kNone: return "-";
    case ProsodyKind::kTone: return "tone:" + std::to_string(value);
    case ProsodyKind::kStress: return "stress:" + std::to_string(value);
    case ProsodyKind::kMoraAccent: return value ? "accent:H" : "accent:L";
  }
  return "-";
}

std::string Prosody::Suffix() const {
  switch (kind) {
    case ProsodyKind::kNone: return "";
    case ProsodyKind::kTone:
    case ProsodyKind::kStress: return std::to_string(value);
    case ProsodyKind::kMoraAccent: return value ? "H" : "L";
  }
  return "";
}

Prosody Prosody::FromString(std::string_view text) {
  text = Trim(text);
  if (text == "-" || text.empty()) return {};
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  if (name == "accent" && (arg == "H" || arg == "L")) {
    return {ProsodyKind::kMoraAccent, arg == "H" ? 1 : 0};
  }
  auto level = ParseInt(arg);
  if (name == "tone" && level && *level >= 1 && *level <= 5) {
    return {ProsodyKind::kTone, static_cast<int>(*level)};
  }
  if (name == "stress" && level && *level >= 0 && *level <= 2) {
    return {ProsodyKind::kStress, static_cast<int>(*level)};
  }
  throw Error(ErrorKind::kParse, "malformed prosody tag '" + std::string(text) + "'");
}

PhonemeInventory::PhonemeInventory() : PhonemeInventory(std::vector<std::string>{}) {}

PhonemeInventory::PhonemeInventory(const std::vector<std::string> &symbols) {
  if (std::find(symbols.begin(), symbols.end(), kSilence) == symbols.end()) {
    symbols_.emplace_back(kSilence);
  }
  symbols_.insert(symbols_.end(), symbols.begin(), symbols.end());
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) {
      throw Error(ErrorKind::kValidation, "empty inventory symbol");
    }
    if (!index_.emplace(symbols_[i], i).second) {
      throw Error(ErrorKind::kValidation,
                  "duplicate inventory symbol '" + symbols_[i] + "'");
    }
  }
  if (symbols_.front() != kSilence) {
    throw Error(ErrorKind::kValidation, "SIL must be inventory index 0");
  }
}

std::optional<std::size_t> PhonemeInventory::Index(std::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double PhonemeTimeline::TotalDuration() const {
  double total = 0.0;
  for (const PhonemeSegment &s : segments) total += s.duration_s;
  return total;
}

std::size_t PhonemeTimeline::SymbolIndex(const PhonemeSegment &segment) const {
  const std::string key = InventoryKey(segment.phoneme, segment.prosody, prosodic_inventory);
  auto index = inventory.Index(key);
  if (!index) {
    throw Error(ErrorKind::kValidation, "phoneme '" + key + "' is not in the inventory");
  }
  return *index;
}

Lexicon ParseLexicon(std::string_view text, std::string_view language,
                     bool prosodic_inventory) {
  Lexicon lexicon;
  lexicon.language = std::string(language);
  lexicon.prosodic_inventory = prosodic_inventory;
  const ProsodyKind kind = ProsodyKindFor(language);
  std::set<std::string> symbols;
  const auto lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string &line = lines[n];
    if (Trim(line).empty() || StartsWith(line, "#")) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::kParse, "lexicon line " + std::to_string(n + 1) +
                                         ": expected word TAB phonemes");
    }
    const std::string word = ToLowerAscii(Trim(std::string_view(line).substr(0, tab)));
    if (word.empty()) {
      throw Error(ErrorKind::kParse, "lexicon line " + std::to_string(n + 1) + ": empty word");
    }
    std::vector<LexiconPhone> phones;
    for (const std::string &token : SplitWhitespace(std::string_view(line).substr(tab + 1))) {
      phones.push_back(ParsePhoneToken(token, kind, n + 1));
      symbols.insert(InventoryKey(phones.back().phoneme, phones.back().prosody,
                                  prosodic_inventory));
    }
    if (phones.empty()) {
      throw Error(ErrorKind::kParse,
                  "lexicon line " + std::to_string(n + 1) + ": no phonemes for '" + word + "'");
    }
    lexicon.max_word_code_points = std::max(lexicon.max_word_code_points, CodePointCount(word));
    lexicon.words[word] = std::move(phones);
  }
  symbols.erase(std::string(kSilence));
  lexicon.inventory = PhonemeInventory(std::vector<std::string>(symbols.begin(), symbols.end()));
  return lexicon;
}

PhonemizeResult TextToPhonemes(std::string_view text, std::string_view language,
                               const Lexicon &lexicon, const PhonemizeOptions &options) {
  if (!(options.default_duration_s > 0) || !std::isfinite(options.default_duration_s)) {
    throw Error(ErrorKind::kUsage, "default phoneme duration must be > 0");
  }
  for (const auto &[phoneme, seconds] : options.phoneme_durations) {
    if (!(seconds > 0) || !std::isfinite(seconds)) {
      throw Error(ErrorKind::kUsage, "duration for '" + phoneme + "' must be > 0");
    }
  }
  if (ToLowerAscii(language) != ToLowerAscii(lexicon.language)) {
    throw Error(ErrorKind::kValidation, "lexicon is for '" + lexicon.language +
                                            "', text is '" + std::string(language) + "'");
  }
  PhonemizeResult result;
  result.timeline.language = std::string(language);
  result.timeline.inventory = lexicon.inventory;
  result.timeline.prosodic_inventory = lexicon.prosodic_inventory;
  Phonemizer phonemizer(lexicon, options, result);
  for (const std::string &word : SplitWhitespace(text)) phonemizer.AddWord(word);
  return result;
}

std::vector<int> TimelineToFrames(const PhonemeTimeline &timeline, double fps) {
  if (!(fps > 0) || !std::isfinite(fps)) {
    throw Error(ErrorKind::kUsage, "fps must be > 0");
  }
  std::vector<int> frames;
  if (timeline.segments.empty()) return frames;
  std::vector<double> ends;
  std::vector<int> ids;
  double t = 0.0;
  for (const PhonemeSegment &s : timeline.segments) {
    t += s.duration_s;
    ends.push_back(t);
    ids.push_back(static_cast<int>(timeline.SymbolIndex(s)));
  }
  const auto count = static_cast<std::size_t>(std::llround(t * fps));
  frames.reserve(count);
  std::size_t seg = 0;
  for (std::size_t f = 0; f < count; ++f) {
    const double mid = (static_cast<double>(f) + 0.5) / fps;
    while (seg + 1 < ends.size() && mid >= ends[seg]) ++seg;
    frames.push_back(ids[seg]);
  }
  return frames;
}

std::string SerializeTimeline(const PhonemeTimeline &timeline) {
  std::string out = "# language=" + timeline.language + "\n# inventory=";
  for (std::size_t i = 0; i < timeline.inventory.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += timeline.inventory.symbols()[i];
  }
  out += "\n# prosodic_inventory=";
  out += timeline.prosodic_inventory ? "1\n" : "0\n";
  for (const PhonemeSegment &s : timeline.segments) {
    out += s.phoneme + "\t" + FormatDouble(s.duration_s) + "\t" + s.prosody.ToString() + "\n";
  }
  return out;
}

PhonemeTimeline ParseTimeline(std::string_view text) {
  PhonemeTimeline timeline;
  bool have_inventory = false;
  const auto lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string &line = lines[n];
    const std::string where = "timeline line " + std::to_string(n + 1) + ": ";
    if (Trim(line).empty()) continue;
    if (StartsWith(line, "#")) {
      std::string_view header = Trim(std::string_view(line).substr(1));
      const std::size_t eq = header.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = Trim(header.substr(0, eq));
      const std::string_view value = Trim(header.substr(eq + 1));
      if (key == "language") {
        timeline.language = std::string(value);
      } else if (key == "inventory") {
        timeline.inventory = PhonemeInventory(SplitWhitespace(value));
        have_inventory = true;
      } else if (key == "prosodic_inventory") {
        timeline.prosodic_inventory = value == "1";
      }
      continue;
    }
    auto fields = Split(line, '\t');
    if (fields.size() != 3) throw Error(ErrorKind::kParse, where + "expected 3 fields");
    auto duration = ParseDouble(fields[1]);
    if (!duration) throw Error(ErrorKind::kParse, where + "malformed duration");
    timeline.segments.push_back(
        {std::string(Trim(fields[0])), *duration, Prosody::FromString(fields[2])});
  }
  if (!have_inventory) {
    std::set<std::string> symbols;
    for (const PhonemeSegment &s : timeline.segments) {
      symbols.insert(InventoryKey(s.phoneme, s.prosody, timeline.prosodic_inventory));
    }
    symbols.erase(std::string(kSilence));
    timeline.inventory =
        PhonemeInventory(std::vector<std::string>(symbols.begin(), symbols.end()));
  }
  ValidateTimeline(timeline);
  return timeline;
}

void ValidateTimeline(const PhonemeTimeline &timeline) {
  const ProsodyKind expected = ProsodyKindFor(timeline.language);
  for (std::size_t i = 0; i < timeline.segments.size(); ++i) {
    const PhonemeSegment &s = timeline.segments[i];
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (!(s.duration_s > 0) || !std::isfinite(s.duration_s)) {
      throw Error(ErrorKind::kValidation, where + "duration must be > 0");
    }
    if (s.prosody.kind != ProsodyKind::kNone && s.prosody.kind != expected) {
      throw Error(ErrorKind::kValidation,
                  where + "prosody " + s.prosody.ToString() + " does not match language '" +
                      timeline.language + "'");
    }
    timeline.SymbolIndex(s);
  }
}

}  // namespace newsbot
