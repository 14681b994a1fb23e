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

// newsbot command-line tool: the full pipeline (`run`) and one subcommand
// per stage. Exit codes: 0 success, 2 usage, 3 invalid input, 4 stage or
// computation failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "newsbot/error.h"
#include "newsbot/event_model.h"
#include "newsbot/lipsync.h"
#include "newsbot/lipsync_io.h"
#include "newsbot/news_gen.h"
#include "newsbot/phoneme_timeline.h"
#include "newsbot/pipeline.h"
#include "newsbot/random.h"
#include "newsbot/summarizer.h"
#include "newsbot/template_dsl.h"
#include "newsbot/text_util.h"
#include "newsbot/translator.h"

namespace {

using namespace newsbot;
namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitFailure = 4;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return kExitUsage;
    case ErrorKind::kParse:
    case ErrorKind::kValidation:
    case ErrorKind::kSyntax:
    case ErrorKind::kIo:
      return kExitInvalidInput;
    default:
      return kExitFailure;
  }
}

std::vector<std::size_t> ParseWidths(const std::string &text) {
  std::vector<std::size_t> widths;
  for (const std::string &piece : Split(text, ',')) {
    auto v = ParseInt(Trim(piece));
    if (!v || *v < 1) throw Error(ErrorKind::kUsage, "bad hidden width '" + piece + "'");
    widths.push_back(static_cast<std::size_t>(*v));
  }
  if (widths.empty()) throw Error(ErrorKind::kUsage, "at least one hidden layer is required");
  return widths;
}

struct GenerateArgs {
  std::string events, history, templates, glossary, home, away, out;
  uint64_t seed = 0;
  int blowout_threshold = 3;
  std::string inmatch;
};

int Generate(const GenerateArgs &a) {
  const auto events = ParseEventTable(ReadFile(a.events));
  std::vector<HistoryRecord> history;
  if (!a.history.empty()) history = ParseHistoryTable(ReadFile(a.history));
  const TemplateBank bank =
      ParseTemplateBank(ReadFile(a.templates), fs::path(a.templates).filename().string());
  Glossary glossary;
  if (!a.glossary.empty()) glossary = ParseGlossary(ReadFile(a.glossary));
  std::set<EventKind> kinds = GenerationConfig{}.inmatch_kinds;
  if (!a.inmatch.empty()) {
    kinds.clear();
    for (const std::string &name : Split(a.inmatch, ',')) {
      kinds.insert(EventCategory::FromText(Trim(name)).kind);
    }
  }
  const MatchFacts facts = NormalizeFacts(events, a.home, a.away, history);
  const Article article = GenerateArticle(
      events, facts, bank, a.seed, MakeGenerationConfig(glossary, a.blowout_threshold, kinds));
  WriteFile(a.out, SerializeArticle(article));
  return 0;
}

struct SummarizeArgs {
  std::string events, article, rule = "soccer:3", out, labels_out, keywords;
  std::optional<int64_t> budget;
  std::vector<std::string> importance;
};

int Summarize(const SummarizeArgs &a) {
  SummaryRule rule;
  if (a.budget) {
    if (*a.budget < 1) throw Error(ErrorKind::kUsage, "summary budget must be >= 1");
    rule.kind = SummaryRule::Kind::kSoccer;
    rule.value = static_cast<double>(*a.budget);
  } else {
    try {
      rule = SummaryRule::Parse(a.rule);
    } catch (const Error &e) {
      throw Error(ErrorKind::kUsage, e.what());
    }
  }
  std::map<std::string, double> importance;
  for (const std::string &item : a.importance) {
    const auto eq = item.find('=');
    auto w = eq == std::string::npos ? std::nullopt : ParseDouble(item.substr(eq + 1));
    if (!w) throw Error(ErrorKind::kUsage, "--importance expects category=weight");
    importance[std::string(Trim(item.substr(0, eq)))] = *w;
  }
  std::vector<std::string> keywords;
  for (const std::string &k : Split(a.keywords, ',')) {
    if (!Trim(k).empty()) keywords.emplace_back(Trim(k));
  }
  const auto events = ParseEventTable(ReadFile(a.events));
  const Article article = ParseArticle(ReadFile(a.article));
  const SentenceLabels labels = SummarizeArticle(events, article, rule, importance, keywords);
  WriteFile(a.out, SerializeArticle(SelectLabeled(article, labels)));
  if (!a.labels_out.empty()) WriteFile(a.labels_out, SerializeLabels(labels));
  return 0;
}

struct TranslateArgs {
  std::string article, glossary, dictionary, src = "zh", tgt = "en", out;
};

int Translate(const TranslateArgs &a) {
  const Article article = ParseArticle(ReadFile(a.article));
  const Glossary glossary = ParseGlossary(ReadFile(a.glossary));
  const DictionaryBackend backend = ParseDictionary(ReadFile(a.dictionary));
  WriteFile(a.out,
            SerializeArticle(TranslateArticle(article, glossary, backend, a.src, a.tgt)));
  return 0;
}

struct PhonemizeArgs {
  std::string article, text, lexicon, lang = "en", unknown_tokens = "skip", out;
  double default_duration = 0.08;
  bool prosodic = false;
};

int Phonemize(const PhonemizeArgs &a) {
  const Lexicon lexicon = ParseLexicon(ReadFile(a.lexicon), a.lang, a.prosodic);
  PhonemizeOptions options;
  options.default_duration_s = a.default_duration;
  if (a.unknown_tokens == "skip") {
    options.unknown_tokens = UnknownTokenPolicy::kSkip;
  } else if (a.unknown_tokens == "error") {
    options.unknown_tokens = UnknownTokenPolicy::kError;
  } else {
    throw Error(ErrorKind::kUsage, "--unknown-tokens must be skip or error");
  }
  PhonemizeResult result;
  if (!a.article.empty()) {
    result = PhonemizeArticle(ParseArticle(ReadFile(a.article)), lexicon, a.lang, options);
  } else {
    result = TextToPhonemes(a.text, a.lang, lexicon, options);
  }
  for (const std::string &w : result.warnings) std::cerr << "warning: " << w << "\n";
  WriteFile(a.out, SerializeTimeline(result.timeline));
  return 0;
}

struct AnimateArgs {
  std::string timeline, model, out;
  double fps = 25.0;
};

int Animate(const AnimateArgs &a) {
  const PhonemeTimeline timeline = ParseTimeline(ReadFile(a.timeline));
  const LipsyncModel model = ParseModel(ReadFile(a.model));
  const BlendshapeAnimation animation = SynthesizeAnimation(model, timeline, a.fps);
  WriteFile(a.out, SerializeAnimation(animation));
  std::cout << "frames: " << animation.frames.size() << "\n";
  return 0;
}

struct TrainArgs {
  std::string lexicon, lang = "en", dataset, hidden = "512,512,512", out, trace_out;
  bool prosodic = false;
  TrainingConfig training;
  std::size_t synthetic_sequences = 64;
  uint64_t data_seed = 0;
};

int TrainLipsync(TrainArgs a) {
  const Lexicon lexicon = ParseLexicon(ReadFile(a.lexicon), a.lang, a.prosodic);
  LipsyncModel model;
  model.inventory = lexicon.inventory;
  model.prosodic_inventory = lexicon.prosodic_inventory;
  LipsyncDataset dataset;
  if (!a.dataset.empty()) {
    dataset = ParseDataset(ReadFile(a.dataset), model.inventory.size(), model.windowing);
  } else {
    SyntheticTaskConfig synthetic;
    synthetic.inventory_size = model.inventory.size();
    synthetic.windowing = model.windowing;
    synthetic.sequences = a.synthetic_sequences;
    synthetic.seed = a.data_seed;
    dataset = MakeSyntheticTask(synthetic).dataset;
  }
  const auto widths = ParseWidths(a.hidden);
  MlpParameters init =
      InitializeMlp(model.windowing.InputSize(model.inventory.size()), widths,
                    model.windowing.OutputSize(), a.training.rng_seed);
  TrainResult result = Train(std::move(init), dataset, a.training);
  model.training = a.training;
  model.params = std::move(result.params);
  WriteFile(a.out, SerializeModel(model));
  if (!a.trace_out.empty()) {
    std::string trace;
    for (std::size_t i = 0; i < result.loss_trace.size(); ++i) {
      trace += std::to_string(i) + "\t" + FormatDouble(result.loss_trace[i]) + "\n";
    }
    WriteFile(a.trace_out, trace);
  }
  const double first = result.loss_trace.empty() ? 0.0 : result.loss_trace.front();
  const double last = result.loss_trace.empty() ? 0.0 : result.loss_trace.back();
  std::cout << "steps: " << result.loss_trace.size() << "\nfirst batch mse: "
            << FormatDouble(first) << "\nlast batch mse: " << FormatDouble(last)
            << "\ndataset mse: " << FormatDouble(EvaluateMse(model.params, dataset)) << "\n";
  return 0;
}

struct GradCheckArgs {
  std::size_t inventory_size = 4;
  std::string hidden = "8,8,8";
  std::size_t batch = 6;
  uint64_t seed = 0;
  double epsilon = 1e-4;
  double tolerance = 1e-5;
};

int RunGradCheck(const GradCheckArgs &a) {
  if (a.batch < 2) throw Error(ErrorKind::kUsage, "--batch must be >= 2 for batch norm");
  const FrameWindowing windowing;
  const MlpParameters params = InitializeMlp(windowing.InputSize(a.inventory_size),
                                             ParseWidths(a.hidden), windowing.OutputSize(),
                                             a.seed);
  RandomStream rng(DeriveSeed(a.seed, 99));
  std::vector<int> ids;
  for (std::size_t i = 0; i < a.batch; ++i) {
    ids.push_back(static_cast<int>(rng.UniformBelow(a.inventory_size)));
  }
  const Eigen::MatrixXd inputs = OneHotWindows(ids, a.inventory_size, windowing);
  Eigen::MatrixXd targets(static_cast<Eigen::Index>(windowing.OutputSize()),
                          static_cast<Eigen::Index>(a.batch));
  for (Eigen::Index i = 0; i < targets.size(); ++i) targets.data()[i] = rng.UniformDouble();
  const GradCheckResult result = GradCheck(params, inputs, targets, a.epsilon);
  std::cout << "parameters checked: " << result.parameters_checked
            << "\nmax relative error: " << result.max_relative_error << " ("
            << result.worst_parameter << ")\n";
  if (result.max_relative_error >= a.tolerance) {
    std::cout << "FAILED: above tolerance " << a.tolerance << "\n";
    return kExitFailure;
  }
  std::cout << "ok\n";
  return 0;
}

struct RunArgs {
  std::string config;
  std::vector<std::string> overrides;
};

int Run(const RunArgs &a) {
  PipelineConfig config;
  try {
    config = LoadPipelineConfig(a.config, a.overrides);
  } catch (const Error &e) {
    std::cerr << "newsbot: invalid config: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  try {
    const PipelineResult result = RunPipeline(config);
    for (const std::string &w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << result.run_dir.string() << "\n";
    return 0;
  } catch (const PipelineError &e) {
    std::cerr << "newsbot: " << e.what() << "\n";
    return e.at_startup() ? kExitInvalidInput : kExitFailure;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"newsbot: sports event tables to articles, translations and lip-sync"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto *generate = app.add_subcommand("generate", "Render an article from an event table");
  generate->add_option("--events", gen.events, "Event table CSV")->required();
  generate->add_option("--templates", gen.templates, "Template bank")->required();
  generate->add_option("--home", gen.home, "Home team")->required();
  generate->add_option("--away", gen.away, "Away team")->required();
  generate->add_option("--seed", gen.seed, "Template selection seed")->required();
  generate->add_option("--out", gen.out, "Article TSV output")->required();
  generate->add_option("--history", gen.history, "History CSV");
  generate->add_option("--glossary", gen.glossary, "Glossary for localized names");
  generate->add_option("--blowout-threshold", gen.blowout_threshold);
  generate->add_option("--inmatch", gen.inmatch, "Comma-separated in-match categories");

  SummarizeArgs sum;
  auto *summarize = app.add_subcommand("summarize", "Select summary sentences");
  summarize->add_option("--events", sum.events, "Event table CSV")->required();
  summarize->add_option("--article", sum.article, "Article TSV")->required();
  summarize->add_option("--out", sum.out, "Summary TSV output")->required();
  summarize->add_option("--labels-out", sum.labels_out, "Per-sentence labels output");
  auto *budget_opt = summarize->add_option("--budget", sum.budget, "Soccer rule budget");
  summarize->add_option("--rule", sum.rule, "soccer:N | topk:K | threshold:T")
      ->excludes(budget_opt);
  summarize->add_option("--importance", sum.importance, "category=weight override");
  summarize->add_option("--keywords", sum.keywords, "Keywords for topk/threshold");

  TranslateArgs tr;
  auto *translate = app.add_subcommand("translate", "Translate an article TSV");
  translate->add_option("--article", tr.article, "Article TSV")->required();
  translate->add_option("--glossary", tr.glossary, "Glossary TSV")->required();
  translate->add_option("--dictionary", tr.dictionary, "Phrase dictionary TSV")->required();
  translate->add_option("--src", tr.src);
  translate->add_option("--tgt", tr.tgt);
  translate->add_option("--out", tr.out, "Translated article TSV")->required();

  PhonemizeArgs ph;
  auto *phonemize = app.add_subcommand("phonemize", "Convert text to a phoneme timeline");
  auto *article_opt = phonemize->add_option("--article", ph.article, "Article TSV");
  phonemize->add_option("--text", ph.text, "Raw text")->excludes(article_opt);
  phonemize->add_option("--lexicon", ph.lexicon, "Lexicon")->required();
  phonemize->add_option("--lang", ph.lang);
  phonemize->add_option("--default-duration", ph.default_duration);
  phonemize->add_option("--unknown-tokens", ph.unknown_tokens, "skip | error");
  phonemize->add_flag("--prosodic", ph.prosodic, "Keep prosody in phoneme symbols");
  phonemize->add_option("--out", ph.out, "Timeline output")->required();

  AnimateArgs an;
  auto *animate = app.add_subcommand("animate", "Synthesize blendshape animation");
  animate->add_option("--timeline", an.timeline, "Timeline file")->required();
  animate->add_option("--model", an.model, "Lip-sync model")->required();
  animate->add_option("--fps", an.fps);
  animate->add_option("--out", an.out, "Animation output")->required();

  TrainArgs ta;
  auto *train = app.add_subcommand("train-lipsync", "Train a lip-sync model");
  train->add_option("--lexicon", ta.lexicon, "Lexicon defining the inventory")->required();
  train->add_option("--lang", ta.lang);
  train->add_flag("--prosodic", ta.prosodic);
  train->add_option("--dataset", ta.dataset, "Dataset file (default: synthetic task)");
  train->add_option("--sequences", ta.synthetic_sequences, "Synthetic sequences");
  train->add_option("--data-seed", ta.data_seed, "Synthetic data seed");
  train->add_option("--hidden", ta.hidden, "Comma-separated hidden widths");
  train->add_option("--steps", ta.training.steps);
  train->add_option("--batch-size", ta.training.batch_size);
  train->add_option("--lr", ta.training.learning_rate);
  train->add_option("--dropout", ta.training.dropout_p);
  train->add_option("--bn-momentum", ta.training.bn_momentum);
  train->add_option("--seed", ta.training.rng_seed);
  train->add_option("--out", ta.out, "Model output")->required();
  train->add_option("--trace-out", ta.trace_out, "Loss trace output");

  GradCheckArgs gc;
  auto *grad = app.add_subcommand("grad-check", "Check backprop on a seeded tiny model");
  grad->add_option("--inventory-size", gc.inventory_size);
  grad->add_option("--hidden", gc.hidden);
  grad->add_option("--batch", gc.batch);
  grad->add_option("--seed", gc.seed);
  grad->add_option("--epsilon", gc.epsilon);
  grad->add_option("--tolerance", gc.tolerance);

  RunArgs run;
  auto *run_cmd = app.add_subcommand("run", "Run the full pipeline");
  run_cmd->add_option("--config", run.config, "Config file")->required();
  run_cmd->add_option("--set", run.overrides, "key=value override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate) return Generate(gen);
    if (*summarize) return Summarize(sum);
    if (*translate) return Translate(tr);
    if (*phonemize) return Phonemize(ph);
    if (*animate) return Animate(an);
    if (*train) return TrainLipsync(ta);
    if (*grad) return RunGradCheck(gc);
    if (*run_cmd) return Run(run);
  } catch (const Error &e) {
    std::cerr << "newsbot: " << ErrorKindName(e.kind()) << " error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  }
  return kExitUsage;
}
