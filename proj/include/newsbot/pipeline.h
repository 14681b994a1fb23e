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

#ifndef NEWSBOT_PIPELINE_H_
#define NEWSBOT_PIPELINE_H_

// End-to-end orchestration: event table -> article -> summary -> translated
// summary -> phoneme timeline -> blendshape animation, persisted under
// <output_dir>/<id>/ together with a manifest.
//
// Config file: one key=value per line, '#' starts a comment line. Paths are
// resolved against the config file's directory.
//
//   id                 run directory name (required)
//   output_dir         parent of the run directory (default "runs")
//   events             event table CSV (required)
//   history            head-to-head history CSV (optional)
//   home, away         team names as written in the table (required)
//   templates          source-language template bank (required)
//   glossary           named-entity glossary TSV (required)
//   dictionary         phrase dictionary for the translation backend (required)
//   lexicon            target-language pronunciation lexicon (required)
//   model              lip-sync model file (required)
//   src_lang, tgt_lang language pair (default zh, en)
//   seed               generation seed (required)
//   fps                animation frame rate (default 25)
//   summary            soccer:<budget> | topk:<k> | threshold:<t> (default soccer:3)
//   summary_keywords   comma-separated keywords for topk/threshold scoring
//   translate_input    summary | article (default summary)
//   blowout_threshold  post-match blowout score difference (default 3)
//   inmatch            comma-separated in-match categories
//                      (default Score,Yellow Card,Red Card,Substitution)
//   importance.<cat>   importance weight override, e.g. importance.foul=2
//   unknown_tokens     skip | error for out-of-lexicon words (default skip)
//   default_duration   phoneme duration in seconds (default 0.08)

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "newsbot/error.h"
#include "newsbot/event_model.h"
#include "newsbot/lipsync.h"
#include "newsbot/news_gen.h"
#include "newsbot/phoneme_timeline.h"
#include "newsbot/summarizer.h"
#include "newsbot/template_dsl.h"
#include "newsbot/translator.h"

namespace newsbot {

struct SummaryRule {
  enum class Kind { kSoccer, kTopK, kThreshold };
  Kind kind = Kind::kSoccer;
  double value = 3;  // budget, k or threshold

  // "soccer:3", "topk:2", "threshold:0.6"; throws Error(kValidation).
  static SummaryRule Parse(std::string_view text);
  std::string ToString() const;
};

enum class TranslateInput { kSummary, kArticle };

struct PipelineConfig {
  std::string id;
  std::filesystem::path output_dir = "runs";
  std::filesystem::path events;
  std::optional<std::filesystem::path> history;
  std::string home;
  std::string away;
  std::filesystem::path templates;
  std::filesystem::path glossary;
  std::filesystem::path dictionary;
  std::filesystem::path lexicon;
  std::filesystem::path model;
  std::string src_lang = "zh";
  std::string tgt_lang = "en";
  std::optional<uint64_t> seed;
  double fps = 25.0;
  SummaryRule summary;
  std::vector<std::string> summary_keywords;
  TranslateInput translate_input = TranslateInput::kSummary;
  int blowout_threshold = 3;
  std::set<EventKind> inmatch_kinds = GenerationConfig{}.inmatch_kinds;
  std::map<std::string, double> importance;
  UnknownTokenPolicy unknown_tokens = UnknownTokenPolicy::kSkip;
  double default_duration = 0.08;

  // Raw key=value pairs after overrides, used for the config hash.
  std::map<std::string, std::string> raw;

  // Required keys present, fps > 0, seed set. Throws Error(kValidation).
  void Validate() const;
};

// Parses config text; `overrides` (key=value strings) win over the file.
// Relative paths are resolved against base_dir. The result is validated.
PipelineConfig ParsePipelineConfig(std::string_view text,
                                   const std::filesystem::path &base_dir,
                                   const std::vector<std::string> &overrides = {});
PipelineConfig LoadPipelineConfig(const std::filesystem::path &path,
                                  const std::vector<std::string> &overrides = {});

// Every input parsed up front so a bad file fails before any stage runs.
struct PipelineInputs {
  std::vector<EventRecord> events;
  std::vector<HistoryRecord> history;
  MatchFacts facts;
  TemplateBank templates;
  Glossary glossary;
  DictionaryBackend dictionary{{}};
  Lexicon lexicon;
  LipsyncModel model;
  // name -> sha256 of the raw file bytes
  std::map<std::string, std::string> input_hashes;
};

// Throws Error(kValidation) naming the offending input.
PipelineInputs LoadPipelineInputs(const PipelineConfig &config);

// Stage entry points shared by `run` and the stage subcommands.
GenerationConfig MakeGenerationConfig(const Glossary &glossary, int blowout_threshold,
                                      const std::set<EventKind> &inmatch_kinds);
SentenceLabels SummarizeArticle(std::span<const EventRecord> events, const Article &article,
                                const SummaryRule &rule,
                                const std::map<std::string, double> &importance,
                                const std::vector<std::string> &keywords);
// Each sentence is masked, translated and unmasked on its own; adjacent
// placeholders are joined with a space for space-delimited target languages.
Article TranslateArticle(const Article &article, const Glossary &glossary,
                         const TranslationBackend &backend, std::string_view src,
                         std::string_view tgt);
// Sentence texts joined (with a space for space-delimited languages) and
// converted with TextToPhonemes.
PhonemizeResult PhonemizeArticle(const Article &article, const Lexicon &lexicon,
                                 std::string_view language, const PhonemizeOptions &options);

// Error raised by RunPipeline; stage is "startup" for config/input problems.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, ErrorKind kind, const std::string &message)
      : Error(kind, "stage " + stage + ": " + message), stage_(std::move(stage)) {}
  const std::string &stage() const { return stage_; }
  bool at_startup() const { return stage_ == "startup"; }

 private:
  std::string stage_;
};

struct PipelineResult {
  std::filesystem::path run_dir;
  // File names written (relative to run_dir), manifest last. timings.json
  // is written alongside but is not part of the reproducible bundle.
  std::vector<std::string> bundle_files;
  std::vector<std::string> warnings;
};

inline constexpr std::string_view kTimingsFile = "timings.json";
inline constexpr std::string_view kErrorFile = "error.txt";

// Runs all stages. On failure writes error.txt (stage and cause) into the
// run directory, keeps earlier outputs and throws PipelineError.
PipelineResult RunPipeline(const PipelineConfig &config);

}  // namespace newsbot

#endif  // NEWSBOT_PIPELINE_H_
