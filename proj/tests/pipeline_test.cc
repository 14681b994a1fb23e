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

#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "newsbot/hashing.h"
#include "newsbot/lipsync.h"
#include "newsbot/lipsync_io.h"
#include "newsbot/pipeline.h"
#include "newsbot/text_util.h"
#include "test_support.h"

namespace newsbot {
namespace {

namespace fs = std::filesystem;
using testing::DataDir;
using testing::ThrownKind;

// Untrained model whose inventory matches the lexicon file.
fs::path WriteModelFor(const fs::path &dir, const fs::path &lexicon_path) {
  const Lexicon lex = ParseLexicon(ReadFile(lexicon_path), "en");
  LipsyncModel model;
  model.inventory = lex.inventory;
  const std::vector<std::size_t> hidden = {8};
  model.params = InitializeMlp(model.windowing.InputSize(lex.inventory.size()), hidden,
                               model.windowing.OutputSize(), 1);
  const fs::path path = dir / "model.bin";
  WriteFile(path, SerializeModel(model));
  return path;
}

std::vector<std::string> Overrides(const fs::path &dir, const fs::path &model) {
  return {"output_dir=" + (dir / "out").string(), "model=" + model.string()};
}

TEST_SUITE("pipeline") {

TEST_CASE("config parsing, defaults and overrides") {
  const PipelineConfig c = ParsePipelineConfig(
      "# comment\nid = x\nevents = e.csv\nseed = 7\nsummary = topk:2\n"
      "home = H\naway = A\ntemplates = t.txt\nglossary = g.tsv\ndictionary = d.tsv\n"
      "lexicon = l.txt\nmodel = m.bin\n"
      "importance.Foul = 4\ninmatch = Score,Foul\n",
      "/base", {"seed=8", "fps=30"});
  CHECK(c.id == "x");
  CHECK(c.events == fs::path("/base/e.csv"));
  CHECK(c.seed == 8u);
  CHECK(c.fps == 30);
  CHECK(c.summary.kind == SummaryRule::Kind::kTopK);
  CHECK(c.summary.value == 2);
  CHECK(c.importance.at("Foul") == 4);
  CHECK(c.inmatch_kinds == std::set<EventKind>{EventKind::kScore, EventKind::kFoul});
  CHECK(c.src_lang == "zh");
  CHECK(c.unknown_tokens == UnknownTokenPolicy::kSkip);
  CHECK(c.raw.at("seed") == "8");
  CHECK(ThrownKind([] { ParsePipelineConfig("no equals sign\n", "/"); }) ==
        ErrorKind::kParse);
  CHECK(ThrownKind([] { ParsePipelineConfig("fps=fast\n", "/"); }) == ErrorKind::kValidation);
  CHECK(ThrownKind([] { ParsePipelineConfig("id=x\n", "/"); }) ==
        ErrorKind::kValidation);
  CHECK(ThrownKind([] { SummaryRule::Parse("best:3"); }) == ErrorKind::kValidation);
  CHECK(SummaryRule::Parse("threshold:0.6").ToString() == "threshold:0.6");
}

TEST_CASE("two-event fixture run produces the translated goal sentence") {
  const fs::path dir = testing::ScratchDir("pipeline_two_events");
  const fs::path model = WriteModelFor(dir, DataDir() / "lexicon_en.txt");
  const PipelineConfig config =
      LoadPipelineConfig(DataDir() / "two_events.conf", Overrides(dir, model));
  const PipelineResult r = RunPipeline(config);
  CHECK(r.run_dir == (dir / "out" / "two_events").lexically_normal());
  const std::string translation = ReadFile(r.run_dir / "translation.tsv");
  CHECK(translation.find("Espanyol Didac scored a goal") != std::string::npos);
  CHECK(r.bundle_files.back() == "manifest.json");
  for (const std::string &f : r.bundle_files) CHECK(fs::exists(r.run_dir / f));
  CHECK(fs::exists(r.run_dir / kTimingsFile));
  CHECK(!fs::exists(r.run_dir / kErrorFile));

  const auto manifest = nlohmann::json::parse(ReadFile(r.run_dir / "manifest.json"));
  CHECK(manifest["seed"] == 2019);
  CHECK(manifest["stages"].size() == 5);
  CHECK(manifest["stages"][0]["name"] == "generate");
  CHECK(manifest["stages"][4]["name"] == "animate");
  CHECK(manifest["stages"][1]["outputs"]["summary.tsv"] ==
        Sha256Hex(ReadFile(r.run_dir / "summary.tsv")));
  CHECK(manifest["inputs"].contains("events"));

  // Frame count follows the timeline.
  const PhonemeTimeline timeline = ParseTimeline(ReadFile(r.run_dir / "timeline.tsv"));
  const BlendshapeAnimation anim = ParseAnimation(ReadFile(r.run_dir / "animation.txt"));
  CHECK(anim.frames.size() == TimelineToFrames(timeline, 25).size());
  CHECK(!anim.frames.empty());
}

TEST_CASE("identical configs give byte-identical bundles") {
  const fs::path dir = testing::ScratchDir("pipeline_repro");
  const fs::path model = WriteModelFor(dir, DataDir() / "lexicon_en.txt");
  auto a_over = Overrides(dir, model);
  a_over[0] = "output_dir=" + (dir / "a").string();
  auto b_over = Overrides(dir, model);
  b_over[0] = "output_dir=" + (dir / "b").string();
  const PipelineResult a = RunPipeline(LoadPipelineConfig(DataDir() / "match10.conf", a_over));
  const PipelineResult b = RunPipeline(LoadPipelineConfig(DataDir() / "match10.conf", b_over));
  REQUIRE(a.bundle_files == b.bundle_files);
  for (const std::string &f : a.bundle_files) {
    CAPTURE(f);
    if (f == "manifest.json") continue;  // records the differing output_dir
    CHECK(ReadFile(a.run_dir / f) == ReadFile(b.run_dir / f));
  }
  // Same output_dir twice: every bundle file including the manifest.
  const PipelineResult c = RunPipeline(LoadPipelineConfig(DataDir() / "match10.conf", a_over));
  for (const std::string &f : a.bundle_files) CHECK(ReadFile(a.run_dir / f) == ReadFile(c.run_dir / f));
}

TEST_CASE("empty events give an empty in-match section") {
  const fs::path dir = testing::ScratchDir("pipeline_empty");
  const fs::path model = WriteModelFor(dir, DataDir() / "lexicon_en.txt");
  WriteFile(dir / "empty.csv", "time,category,player,team\n");
  auto over = Overrides(dir, model);
  over.push_back("events=" + (dir / "empty.csv").string());
  const PipelineResult r = RunPipeline(LoadPipelineConfig(DataDir() / "two_events.conf", over));
  const Article article = ParseArticle(ReadFile(r.run_dir / "article.tsv"));
  for (const Sentence &s : article.sentences) CHECK(s.section != Section::kInMatch);
  CHECK(!article.sentences.empty());
  CHECK(ReadFile(r.run_dir / "translation.tsv").find("drew 0-0") != std::string::npos);
}

TEST_CASE("missing glossary fails at startup before any stage") {
  const fs::path dir = testing::ScratchDir("pipeline_missing");
  const fs::path model = WriteModelFor(dir, DataDir() / "lexicon_en.txt");
  auto over = Overrides(dir, model);
  over.push_back("glossary=" + (dir / "nope.tsv").string());
  const PipelineConfig config = LoadPipelineConfig(DataDir() / "two_events.conf", over);
  try {
    RunPipeline(config);
    FAIL("expected a startup error");
  } catch (const PipelineError &e) {
    CHECK(e.at_startup());
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()).find("glossary") != std::string::npos);
  }
  CHECK(!fs::exists(dir / "out" / "two_events" / "article.tsv"));
}

TEST_CASE("model and lexicon inventories must agree") {
  const fs::path dir = testing::ScratchDir("pipeline_inventory");
  WriteFile(dir / "lex.txt", "ball\tB AO1 L\n");
  const fs::path model = WriteModelFor(dir, dir / "lex.txt");
  const PipelineConfig config =
      LoadPipelineConfig(DataDir() / "two_events.conf", Overrides(dir, model));
  CHECK(ThrownKind([&] { RunPipeline(config); }) == ErrorKind::kValidation);
}

TEST_CASE("a stage failure writes error.txt and keeps earlier outputs") {
  const fs::path dir = testing::ScratchDir("pipeline_stage_error");
  WriteFile(dir / "lex.txt", "ball\tB AO1 L\n");
  const fs::path model = WriteModelFor(dir, dir / "lex.txt");
  auto over = Overrides(dir, model);
  over.push_back("lexicon=" + (dir / "lex.txt").string());
  over.push_back("unknown_tokens=error");
  const PipelineConfig config = LoadPipelineConfig(DataDir() / "two_events.conf", over);
  try {
    RunPipeline(config);
    FAIL("expected a stage error");
  } catch (const PipelineError &e) {
    CHECK(e.stage() == "phonemize");
    CHECK(!e.at_startup());
  }
  const fs::path run = dir / "out" / "two_events";
  const std::string err = ReadFile(run / kErrorFile);
  CHECK(err.find("stage: phonemize") != std::string::npos);
  CHECK(fs::exists(run / "translation.tsv"));
  CHECK(!fs::exists(run / "manifest.json"));
}

TEST_CASE("stage helpers compose") {
  const auto events = ParseEventTable(testing::ReadData("two_events.csv"));
  const Glossary glossary = ParseGlossary(testing::ReadData("glossary.tsv"));
  const TemplateBank bank = ParseTemplateBank(testing::ReadData("templates_zh.txt"), "zh");
  const GenerationConfig gen = MakeGenerationConfig(glossary, 3, GenerationConfig{}.inmatch_kinds);
  CHECK(gen.display_names.at("Espanyol") == "西班牙人");
  const Article article =
      GenerateArticle(events, NormalizeFacts(events, "Espanyol", "Alavés"), bank, 1, gen);
  const SentenceLabels labels =
      SummarizeArticle(events, article, SummaryRule::Parse("soccer:1"), {}, {});
  const Article summary = SelectLabeled(article, labels);
  const Article english = TranslateArticle(summary, glossary,
                                           ParseDictionary(testing::ReadData("dictionary.tsv")),
                                           "zh", "en");
  REQUIRE(!english.sentences.empty());
  bool goal = false;
  for (const Sentence &s : english.sentences) {
    goal = goal || s.text == "In the 23rd minute, Espanyol Didac scored a goal.";
    CHECK(s.text.find("Mubarak") == std::string::npos);
  }
  CHECK(goal);
  const PhonemizeResult ph = PhonemizeArticle(
      english, ParseLexicon(testing::ReadData("lexicon_en.txt"), "en"), "en", {});
  CHECK(ph.warnings.empty());
  CHECK(!ph.timeline.segments.empty());
}

}  // TEST_SUITE

}  // namespace
}  // namespace newsbot
