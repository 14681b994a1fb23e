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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "newsbot/text_util.h"
#include "test_support.h"

namespace newsbot {
namespace {

namespace fs = std::filesystem;
using testing::DataDir;

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

std::string Quote(const fs::path &p) { return "'" + p.string() + "'"; }

// Runs the CLI with arguments; stdout and stderr land in a scratch file.
CommandResult RunCli(const std::string &args, const fs::path &scratch) {
  const fs::path log = scratch / "cli.log";
  const std::string cmd = Quote(NEWSBOT_CLI_PATH) + " " + args + " > " + Quote(log) + " 2>&1";
  const int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = fs::exists(log) ? ReadFile(log) : "";
  return r;
}

std::string Data(const std::string &name) { return Quote(DataDir() / name); }

fs::path TrainTinyModel(const fs::path &dir) {
  const fs::path model = dir / "tiny.model";
  const CommandResult r = RunCli("train-lipsync --lexicon " + Data("lexicon_en.txt") +
                                     " --hidden 16 --steps 20 --sequences 4 --out " +
                                     Quote(model),
                                 dir);
  REQUIRE(r.exit_code == 0);
  return model;
}

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  const fs::path dir = testing::ScratchDir("cli_usage");
  CHECK(RunCli("", dir).exit_code == 2);
  CHECK(RunCli("no-such-command", dir).exit_code == 2);
  CHECK(RunCli("generate --events x", dir).exit_code == 2);
  CHECK(RunCli("summarize --events " + Data("two_events.csv") + " --article a --out b --budget 0",
               dir)
            .exit_code == 2);
  CHECK(RunCli("--help", dir).exit_code == 0);
}

TEST_CASE("invalid input exits with 3") {
  const fs::path dir = testing::ScratchDir("cli_invalid");
  CHECK(RunCli("generate --events " + Quote(dir / "missing.csv") + " --templates " +
                   Data("templates_en.txt") + " --home A --away B --seed 1 --out " +
                   Quote(dir / "a.tsv"),
               dir)
            .exit_code == 3);
  WriteFile(dir / "bad.conf", "id=x\n");
  CHECK(RunCli("run --config " + Quote(dir / "bad.conf"), dir).exit_code == 3);
}

TEST_CASE("grad-check passes on a seeded tiny model") {
  const fs::path dir = testing::ScratchDir("cli_grad");
  const CommandResult r = RunCli("grad-check --seed 3", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("max relative error") != std::string::npos);
  CHECK(r.output.find("ok") != std::string::npos);
}

TEST_CASE("animate writes the frame count of the timeline") {
  const fs::path dir = testing::ScratchDir("cli_animate");
  const fs::path model = TrainTinyModel(dir);
  // 5 phonemes of 0.08 s = 0.4 s = 10 frames at 25 fps.
  const fs::path timeline = dir / "t.tsv";
  REQUIRE(RunCli("phonemize --text 'goal 1' --lexicon " + Data("lexicon_en.txt") +
                     " --lang en --out " + Quote(timeline),
                 dir)
              .exit_code == 0);
  const CommandResult r = RunCli("animate --timeline " + Quote(timeline) + " --model " +
                                     Quote(model) + " --out " + Quote(dir / "anim.txt"),
                                 dir);
  REQUIRE(r.exit_code == 0);
  const std::string anim = ReadFile(dir / "anim.txt");
  const std::size_t segments = Split(Trim(ReadFile(timeline)), '\n').size() - 3;
  CHECK(r.output.find("frames: " + std::to_string(static_cast<long>(
                                       std::llround(static_cast<double>(segments) * 0.08 * 25)))) !=
        std::string::npos);
  CHECK(anim.rfind("fps=25 num_blendshapes=32 frame_count=", 0) == 0);
}

TEST_CASE("stage subcommands compose to the same bundle as run") {
  const fs::path dir = testing::ScratchDir("cli_compose");
  const fs::path model = TrainTinyModel(dir);
  const CommandResult run = RunCli("run --config " + Data("two_events.conf") + " --set output_dir=" +
                                       Quote(dir / "out") + " --set model=" + Quote(model),
                                   dir);
  REQUIRE(run.exit_code == 0);
  const fs::path bundle = dir / "out" / "two_events";

  auto step = [&](const std::string &args) { REQUIRE(RunCli(args, dir).exit_code == 0); };
  step("generate --events " + Data("two_events.csv") + " --templates " + Data("templates_zh.txt") +
       " --home Espanyol --away Alavés --seed 2019 --glossary " + Data("glossary.tsv") +
       " --out " + Quote(dir / "article.tsv"));
  step("summarize --events " + Data("two_events.csv") + " --article " + Quote(dir / "article.tsv") +
       " --budget 3 --out " + Quote(dir / "summary.tsv") + " --labels-out " +
       Quote(dir / "summary.labels.tsv"));
  step("translate --article " + Quote(dir / "summary.tsv") + " --glossary " +
       Data("glossary.tsv") + " --dictionary " + Data("dictionary.tsv") + " --out " +
       Quote(dir / "translation.tsv"));
  step("phonemize --article " + Quote(dir / "translation.tsv") + " --lexicon " +
       Data("lexicon_en.txt") + " --out " + Quote(dir / "timeline.tsv"));
  step("animate --timeline " + Quote(dir / "timeline.tsv") + " --model " + Quote(model) +
       " --out " + Quote(dir / "animation.txt"));
  for (const char *f : {"article.tsv", "summary.tsv", "summary.labels.tsv", "translation.tsv",
                        "timeline.tsv", "animation.txt"}) {
    CAPTURE(f);
    CHECK(ReadFile(dir / f) == ReadFile(bundle / f));
  }
}

TEST_CASE("a failing stage exits with 4 and leaves error.txt") {
  const fs::path dir = testing::ScratchDir("cli_stage_fail");
  WriteFile(dir / "lex.txt", "ball\tB AO1 L\n");
  const fs::path model = dir / "m.model";
  REQUIRE(RunCli("train-lipsync --lexicon " + Quote(dir / "lex.txt") +
                     " --hidden 4 --steps 2 --sequences 2 --out " + Quote(model),
                 dir)
              .exit_code == 0);
  const CommandResult r =
      RunCli("run --config " + Data("two_events.conf") + " --set output_dir=" + Quote(dir / "out") +
                 " --set model=" + Quote(model) + " --set lexicon=" + Quote(dir / "lex.txt") +
                 " --set unknown_tokens=error",
             dir);
  CHECK(r.exit_code == 4);
  CHECK(fs::exists(dir / "out" / "two_events" / "error.txt"));
}

}  // TEST_SUITE

}  // namespace
}  // namespace newsbot
