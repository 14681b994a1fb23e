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

#include "newsbot/pipeline.h"

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "json.hpp"

#include "newsbot/hashing.h"
#include "newsbot/lipsync_io.h"
#include "newsbot/text_util.h"

namespace newsbot {
namespace {

namespace fs = std::filesystem;

const std::set<std::string> &KnownKeys() {
  static const std::set<std::string> keys = {
      "id",        "output_dir", "events",   "history",          "home",
      "away",      "templates",  "glossary", "dictionary",       "lexicon",
      "model",     "src_lang",   "tgt_lang", "seed",             "fps",
      "summary",   "summary_keywords",       "translate_input",  "blowout_threshold",
      "inmatch",   "unknown_tokens",         "default_duration",
  };
  return keys;
}

[[noreturn]] void Invalid(const std::string &message) {
  throw Error(ErrorKind::kValidation, message);
}

std::pair<std::string, std::string> SplitAssignment(std::string_view line,
                                                    const std::string &where) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) throw Error(ErrorKind::kParse, where + ": expected key=value");
  std::string key(Trim(line.substr(0, eq)));
  std::string value(Trim(line.substr(eq + 1)));
  if (key.empty()) throw Error(ErrorKind::kParse, where + ": empty key");
  return {key, value};
}

double RequireDouble(const std::string &key, const std::string &value) {
  auto v = ParseDouble(value);
  if (!v) Invalid("config key '" + key + "': '" + value + "' is not a number");
  return *v;
}

int64_t RequireInt(const std::string &key, const std::string &value) {
  auto v = ParseInt(value);
  if (!v) Invalid("config key '" + key + "': '" + value + "' is not an integer");
  return *v;
}

std::vector<std::string> CommaList(std::string_view value) {
  std::vector<std::string> items;
  for (const std::string &piece : Split(value, ',')) {
    std::string_view item = Trim(piece);
    if (!item.empty()) items.emplace_back(item);
  }
  return items;
}

std::string ReadInput(const std::string &name, const fs::path &path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw PipelineError("startup", ErrorKind::kValidation,
                        name + " file '" + path.string() + "' does not exist");
  }
  return ReadFile(path);
}

template <typename T>
T ParseInput(const std::string &name, const fs::path &path,
             const std::function<T(const std::string &)> &parse,
             std::map<std::string, std::string> &hashes) {
  const std::string bytes = ReadInput(name, path);
  hashes[name] = Sha256Hex(bytes);
  try {
    return parse(bytes);
  } catch (const Error &e) {
    throw PipelineError("startup", ErrorKind::kValidation,
                        name + " file '" + path.string() + "': " + e.what());
  }
}

std::string ConfigHash(const PipelineConfig &config) {
  std::string canonical;
  for (const auto &[key, value] : config.raw) canonical += key + "=" + value + "\n";
  return Sha256Hex(canonical);
}

std::string JoinSentences(const Article &article, std::string_view language) {
  const std::string separator = UsesWordSpacing(language) ? " " : "";
  std::string text;
  for (std::size_t i = 0; i < article.sentences.size(); ++i) {
    if (i > 0) text += separator;
    text += article.sentences[i].text;
  }
  return text;
}

}  // namespace

SummaryRule SummaryRule::Parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    Invalid("summary rule '" + std::string(text) + "' must be kind:value");
  }
  const std::string kind = ToLowerAscii(Trim(text.substr(0, colon)));
  const std::string value(Trim(text.substr(colon + 1)));
  SummaryRule rule;
  if (kind == "soccer" || kind == "topk") {
    rule.kind = kind == "soccer" ? Kind::kSoccer : Kind::kTopK;
    auto n = ParseInt(value);
    if (!n || *n < 1) Invalid("summary " + kind + " needs an integer >= 1, got '" + value + "'");
    rule.value = static_cast<double>(*n);
  } else if (kind == "threshold") {
    rule.kind = Kind::kThreshold;
    auto t = ParseDouble(value);
    if (!t || !(*t >= 0.0 && *t <= 1.0)) {
      Invalid("summary threshold must be in [0, 1], got '" + value + "'");
    }
    rule.value = *t;
  } else {
    Invalid("unknown summary rule '" + kind + "'");
  }
  return rule;
}

std::string SummaryRule::ToString() const {
  switch (kind) {
    case Kind::kSoccer:
      return "soccer:" + std::to_string(static_cast<int64_t>(value));
    case Kind::kTopK:
      return "topk:" + std::to_string(static_cast<int64_t>(value));
    case Kind::kThreshold:
      return "threshold:" + FormatDouble(value);
  }
  return {};
}

void PipelineConfig::Validate() const {
  auto require = [](bool ok, const char *key) {
    if (!ok) Invalid(std::string("config key '") + key + "' is required");
  };
  require(!id.empty(), "id");
  require(!events.empty(), "events");
  require(!home.empty(), "home");
  require(!away.empty(), "away");
  require(!templates.empty(), "templates");
  require(!glossary.empty(), "glossary");
  require(!dictionary.empty(), "dictionary");
  require(!lexicon.empty(), "lexicon");
  require(!model.empty(), "model");
  require(seed.has_value(), "seed");
  if (id.find('/') != std::string::npos || id == "." || id == "..") {
    Invalid("config id '" + id + "' must be a plain directory name");
  }
  if (!(fps > 0.0) || !std::isfinite(fps)) Invalid("fps must be > 0");
  if (!(default_duration > 0.0)) Invalid("default_duration must be > 0");
  if (blowout_threshold < 1) Invalid("blowout_threshold must be >= 1");
  if (src_lang.empty() || tgt_lang.empty()) Invalid("language codes must be non-empty");
}

PipelineConfig ParsePipelineConfig(std::string_view text, const fs::path &base_dir,
                                   const std::vector<std::string> &overrides) {
  std::map<std::string, std::string> raw;
  const auto lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = Trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    auto [key, value] = SplitAssignment(line, "config line " + std::to_string(n + 1));
    raw[key] = value;
  }
  for (const std::string &assignment : overrides) {
    auto [key, value] = SplitAssignment(assignment, "override '" + assignment + "'");
    raw[key] = value;
  }

  PipelineConfig config;
  auto path = [&base_dir](const std::string &value) {
    fs::path p(value);
    return p.is_absolute() ? p : base_dir / p;
  };
  for (const auto &[key, value] : raw) {
    if (StartsWith(key, "importance.")) {
      const std::string category = key.substr(std::string_view("importance.").size());
      const double w = RequireDouble(key, value);
      if (!(w >= 0.0) || !std::isfinite(w)) Invalid("config key '" + key + "' must be >= 0");
      config.importance[EventCategory::FromText(category).Name()] = w;
      continue;
    }
    if (!KnownKeys().count(key)) Invalid("unknown config key '" + key + "'");
    if (key == "id") {
      config.id = value;
    } else if (key == "output_dir") {
      config.output_dir = path(value);
    } else if (key == "events") {
      config.events = path(value);
    } else if (key == "history") {
      if (!value.empty()) config.history = path(value);
    } else if (key == "home") {
      config.home = value;
    } else if (key == "away") {
      config.away = value;
    } else if (key == "templates") {
      config.templates = path(value);
    } else if (key == "glossary") {
      config.glossary = path(value);
    } else if (key == "dictionary") {
      config.dictionary = path(value);
    } else if (key == "lexicon") {
      config.lexicon = path(value);
    } else if (key == "model") {
      config.model = path(value);
    } else if (key == "src_lang") {
      config.src_lang = value;
    } else if (key == "tgt_lang") {
      config.tgt_lang = value;
    } else if (key == "seed") {
      const int64_t seed = RequireInt(key, value);
      if (seed < 0) Invalid("seed must be >= 0");
      config.seed = static_cast<uint64_t>(seed);
    } else if (key == "fps") {
      config.fps = RequireDouble(key, value);
    } else if (key == "summary") {
      config.summary = SummaryRule::Parse(value);
    } else if (key == "summary_keywords") {
      config.summary_keywords = CommaList(value);
    } else if (key == "translate_input") {
      if (value == "summary") {
        config.translate_input = TranslateInput::kSummary;
      } else if (value == "article") {
        config.translate_input = TranslateInput::kArticle;
      } else {
        Invalid("translate_input must be 'summary' or 'article'");
      }
    } else if (key == "blowout_threshold") {
      config.blowout_threshold = static_cast<int>(RequireInt(key, value));
    } else if (key == "inmatch") {
      config.inmatch_kinds.clear();
      for (const std::string &name : CommaList(value)) {
        config.inmatch_kinds.insert(EventCategory::FromText(name).kind);
      }
    } else if (key == "unknown_tokens") {
      if (value == "skip") {
        config.unknown_tokens = UnknownTokenPolicy::kSkip;
      } else if (value == "error") {
        config.unknown_tokens = UnknownTokenPolicy::kError;
      } else {
        Invalid("unknown_tokens must be 'skip' or 'error'");
      }
    } else if (key == "default_duration") {
      config.default_duration = RequireDouble(key, value);
    }
  }
  config.raw = std::move(raw);
  config.Validate();
  return config;
}

PipelineConfig LoadPipelineConfig(const fs::path &path,
                                  const std::vector<std::string> &overrides) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    Invalid("config file '" + path.string() + "' does not exist");
  }
  return ParsePipelineConfig(ReadFile(path), path.parent_path(), overrides);
}

PipelineInputs LoadPipelineInputs(const PipelineConfig &config) {
  PipelineInputs in;
  auto &h = in.input_hashes;
  in.events = ParseInput<std::vector<EventRecord>>(
      "events", config.events, [](const std::string &s) { return ParseEventTable(s); }, h);
  if (config.history) {
    in.history = ParseInput<std::vector<HistoryRecord>>(
        "history", *config.history, [](const std::string &s) { return ParseHistoryTable(s); },
        h);
  }
  in.templates = ParseInput<TemplateBank>(
      "templates", config.templates,
      [&config](const std::string &s) {
        return ParseTemplateBank(s, config.templates.filename().string());
      },
      h);
  in.glossary = ParseInput<Glossary>(
      "glossary", config.glossary, [](const std::string &s) { return ParseGlossary(s); }, h);
  in.dictionary = ParseInput<DictionaryBackend>(
      "dictionary", config.dictionary, [](const std::string &s) { return ParseDictionary(s); },
      h);
  in.lexicon = ParseInput<Lexicon>(
      "lexicon", config.lexicon,
      [&config](const std::string &s) { return ParseLexicon(s, config.tgt_lang); }, h);
  in.model = ParseInput<LipsyncModel>(
      "model", config.model, [](const std::string &s) { return ParseModel(s); }, h);
  try {
    in.facts = NormalizeFacts(in.events, config.home, config.away, in.history);
  } catch (const Error &e) {
    throw PipelineError("startup", ErrorKind::kValidation, e.what());
  }
  if (!(in.model.inventory == in.lexicon.inventory) ||
      in.model.prosodic_inventory != in.lexicon.prosodic_inventory) {
    throw PipelineError("startup", ErrorKind::kValidation,
                        "lip-sync model inventory does not match the lexicon inventory");
  }
  return in;
}

GenerationConfig MakeGenerationConfig(const Glossary &glossary, int blowout_threshold,
                                      const std::set<EventKind> &inmatch_kinds) {
  GenerationConfig config;
  config.blowout_threshold = blowout_threshold;
  config.inmatch_kinds = inmatch_kinds;
  config.display_names = glossary.Inverse();
  return config;
}

SentenceLabels SummarizeArticle(std::span<const EventRecord> events, const Article &article,
                                const SummaryRule &rule,
                                const std::map<std::string, double> &importance,
                                const std::vector<std::string> &keywords) {
  if (rule.kind == SummaryRule::Kind::kSoccer) {
    ImportanceTable table = ImportanceTable::Default();
    for (const auto &[category, weight] : importance) table.Set(category, weight);
    const auto budget = static_cast<std::size_t>(rule.value);
    const auto kept = SelectSoccerSentences(events, article, table, budget);
    return SoccerLabels(events, article, table, kept);
  }
  const std::vector<std::string> sentences = SplitSentences(article);
  HeuristicScorer scorer(keywords);
  SelectionRule selection;
  if (rule.kind == SummaryRule::Kind::kTopK) {
    selection = TopK{static_cast<std::size_t>(rule.value)};
  } else {
    selection = ScoreThreshold{rule.value};
  }
  return LabelSentences(sentences, scorer, selection);
}

Article TranslateArticle(const Article &article, const Glossary &glossary,
                         const TranslationBackend &backend, std::string_view src,
                         std::string_view tgt) {
  UnmaskOptions unmask;
  if (UsesWordSpacing(tgt)) unmask.adjacent_separator = " ";
  Article out;
  for (const Sentence &sentence : article.sentences) {
    const MaskedText masked = MaskEntities(sentence.text, glossary, unmask.style);
    const std::string translated = TranslateMasked(masked, backend, src, tgt, unmask.style);
    Sentence t = sentence;
    t.text = Unmask(translated, masked.placeholders, unmask);
    out.sentences.push_back(std::move(t));
  }
  return out;
}

PhonemizeResult PhonemizeArticle(const Article &article, const Lexicon &lexicon,
                                 std::string_view language, const PhonemizeOptions &options) {
  return TextToPhonemes(JoinSentences(article, language), language, lexicon, options);
}

PipelineResult RunPipeline(const PipelineConfig &config) {
  config.Validate();
  PipelineInputs in = LoadPipelineInputs(config);

  PipelineResult result;
  result.run_dir = (config.output_dir / config.id).lexically_normal();
  std::error_code ec;
  fs::remove(result.run_dir / kErrorFile, ec);

  nlohmann::json stages = nlohmann::json::array();
  nlohmann::json timings = nlohmann::json::object();
  auto persist = [&](const std::string &name, const std::string &contents,
                     nlohmann::json &outputs) {
    WriteFile(result.run_dir / name, contents);
    outputs[name] = Sha256Hex(contents);
    result.bundle_files.push_back(name);
  };
  auto stage = [&](const std::string &name, const std::function<void(nlohmann::json &)> &body) {
    nlohmann::json outputs = nlohmann::json::object();
    const auto start = std::chrono::steady_clock::now();
    try {
      body(outputs);
    } catch (const Error &e) {
      WriteFile(result.run_dir / kErrorFile, "stage: " + name + "\nkind: " +
                                                 std::string(ErrorKindName(e.kind())) +
                                                 "\nmessage: " + e.what() + "\n");
      throw PipelineError(name, e.kind(), e.what());
    }
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    timings[name] = elapsed.count();
    stages.push_back({{"name", name}, {"outputs", outputs}});
  };

  Article article;
  stage("generate", [&](nlohmann::json &outputs) {
    const GenerationConfig gen =
        MakeGenerationConfig(in.glossary, config.blowout_threshold, config.inmatch_kinds);
    article = GenerateArticle(in.events, in.facts, in.templates, *config.seed, gen);
    persist("article.tsv", SerializeArticle(article), outputs);
  });

  Article summary;
  stage("summarize", [&](nlohmann::json &outputs) {
    const SentenceLabels labels = SummarizeArticle(in.events, article, config.summary,
                                                   config.importance, config.summary_keywords);
    summary = SelectLabeled(article, labels);
    persist("summary.tsv", SerializeArticle(summary), outputs);
    persist("summary.labels.tsv", SerializeLabels(labels), outputs);
  });

  Article translation;
  stage("translate", [&](nlohmann::json &outputs) {
    const Article &source =
        config.translate_input == TranslateInput::kSummary ? summary : article;
    translation =
        TranslateArticle(source, in.glossary, in.dictionary, config.src_lang, config.tgt_lang);
    persist("translation.tsv", SerializeArticle(translation), outputs);
  });

  PhonemeTimeline timeline;
  stage("phonemize", [&](nlohmann::json &outputs) {
    PhonemizeOptions options;
    options.default_duration_s = config.default_duration;
    options.unknown_tokens = config.unknown_tokens;
    PhonemizeResult phonemes =
        PhonemizeArticle(translation, in.lexicon, config.tgt_lang, options);
    timeline = std::move(phonemes.timeline);
    result.warnings = std::move(phonemes.warnings);
    persist("timeline.tsv", SerializeTimeline(timeline), outputs);
  });

  stage("animate", [&](nlohmann::json &outputs) {
    const BlendshapeAnimation animation = SynthesizeAnimation(in.model, timeline, config.fps);
    persist("animation.txt", SerializeAnimation(animation), outputs);
  });

  nlohmann::json manifest;
  manifest["format_version"] = 1;
  manifest["id"] = config.id;
  manifest["seed"] = *config.seed;
  manifest["config_sha256"] = ConfigHash(config);
  manifest["config"] = config.raw;
  manifest["inputs"] = in.input_hashes;
  manifest["stages"] = stages;
  manifest["warnings"] = result.warnings;
  const std::string manifest_text = manifest.dump(2) + "\n";
  WriteFile(result.run_dir / "manifest.json", manifest_text);
  result.bundle_files.push_back("manifest.json");
  WriteFile(result.run_dir / kTimingsFile, timings.dump(2) + "\n");
  return result;
}

}  // namespace newsbot
