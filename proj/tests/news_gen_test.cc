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

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "newsbot/event_model.h"
#include "newsbot/news_gen.h"
#include "newsbot/random.h"
#include "newsbot/template_dsl.h"
#include "newsbot/translator.h"
#include "test_support.h"

namespace newsbot {
namespace {

using testing::ThrownKind;

TemplateBank EnglishBank() {
  return ParseTemplateBank(testing::ReadData("templates_en.txt"), "templates_en.txt");
}

EventRecord Goal(int minute, const std::string &player, const std::string &team) {
  EventRecord e;
  e.time_minute = minute;
  e.category = EventCategory::Of(EventKind::kScore);
  e.player = player;
  e.team = team;
  return e;
}

std::vector<EventRecord> TwoEvents() {
  return ParseEventTable(testing::ReadData("two_events.csv"));
}

TEST_SUITE("news_gen") {

TEST_CASE("two-event fixture in-match sentences") {
  const TemplateBank bank = EnglishBank();
  RandomStream rng(1);
  const auto sentences = GenerateInmatch(TwoEvents(), bank, rng);
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[0].text == "In the 23rd minute, Espanyol Didac scored a goal.");
  CHECK(sentences[1].text == "In the 35th minute, Alavés Mubarak received a yellow card.");
  CHECK(sentences[0].source_event_index == 0u);
  CHECK(sentences[1].source_event_index == 1u);
  for (const Sentence &s : sentences) CHECK(s.section == Section::kInMatch);
}

TEST_CASE("chinese bank renders the two-event fixture goal") {
  const TemplateBank bank =
      ParseTemplateBank(testing::ReadData("templates_zh.txt"), "templates_zh.txt");
  GenerationConfig config;
  const Glossary glossary = ParseGlossary(testing::ReadData("glossary.tsv"));
  for (const GlossaryEntry &e : glossary.entries()) {
    config.display_names[e.target_term] = e.source_term;
  }
  RandomStream rng(1);
  const auto sentences = GenerateInmatch(TwoEvents(), bank, rng, config);
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[0].text == "第23分钟，西班牙人迪达克打入一球。");
  CHECK(sentences[1].text == "第35分钟，阿拉维斯穆巴拉克吃到一张黄牌。");
  config.display_names = {{"Espanyol", "西班牙人"}};
  CHECK(GenerateInmatch(TwoEvents(), bank, rng, config)[0].text == "第23分钟，西班牙人Didac打入一球。");
}

TEST_CASE("in-match output is time ordered and stable") {
  TemplateBank bank;
  bank.Add("score", ParseTemplate("{minute}:{player}", "t"));
  std::vector<EventRecord> events = {Goal(70, "C", "X"), Goal(10, "A", "X"),
                                     Goal(70, "D", "Y"), Goal(10, "B", "Y")};
  RandomStream rng(3);
  const auto sentences = GenerateInmatch(events, bank, rng);
  REQUIRE(sentences.size() == 4);
  CHECK(sentences[0].text == "10:A");
  CHECK(sentences[1].text == "10:B");
  CHECK(sentences[2].text == "70:C");
  CHECK(sentences[3].text == "70:D");
  CHECK(sentences[0].source_event_index == 1u);
  CHECK(sentences[3].source_event_index == 2u);
}

TEST_CASE("kinds outside the configured set are dropped") {
  const TemplateBank bank = EnglishBank();
  std::vector<EventRecord> events = TwoEvents();
  GenerationConfig config;
  config.inmatch_kinds = {EventKind::kScore};
  RandomStream rng(0);
  CHECK(GenerateInmatch(events, bank, rng, config).size() == 1);
}

TEST_CASE("unknown categories fall back to the other key") {
  const TemplateBank bank = EnglishBank();
  EventRecord corner = Goal(50, "Lucas", "Espanyol");
  corner.category = EventCategory::FromText("Corner");
  GenerationConfig config;
  config.inmatch_kinds.insert(EventKind::kOther);
  RandomStream rng(0);
  const auto sentences = GenerateInmatch(std::vector<EventRecord>{corner}, bank, rng, config);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].text == "In the 50th minute, Espanyol Lucas made a notable play.");
}

TEST_CASE("a missing category key without a fallback is a lookup error") {
  TemplateBank bank;
  bank.Add("score", ParseTemplate("goal", "t"));
  EventRecord corner = Goal(50, "Lucas", "Espanyol");
  corner.category = EventCategory::FromText("Corner");
  GenerationConfig config;
  config.inmatch_kinds.insert(EventKind::kOther);
  RandomStream rng(0);
  CHECK(ThrownKind([&] {
          GenerateInmatch(std::vector<EventRecord>{corner}, bank, rng, config);
        }) == ErrorKind::kLookup);
}

TEST_CASE("attributes are bound under attr") {
  TemplateBank bank;
  bank.Add("score", ParseTemplate("{player} assisted by {attr.assist}", "t"));
  EventRecord goal = Goal(5, "A", "X");
  goal.attributes["assist"] = "B";
  RandomStream rng(0);
  CHECK(GenerateInmatch(std::vector<EventRecord>{goal}, bank, rng)[0].text ==
        "A assisted by B");
}

TEST_CASE("post-match summary for a one-goal win") {
  const TemplateBank bank = EnglishBank();
  const MatchFacts facts = NormalizeFacts(TwoEvents(), "Espanyol", "Alavés");
  // Both variants must produce the win clause.
  for (uint64_t seed = 0; seed < 8; ++seed) {
    RandomStream rng(seed);
    const auto post = GeneratePostmatch(facts, bank, rng);
    REQUIRE(post.size() == 1);
    CHECK(post[0].section == Section::kPostMatch);
    CHECK(post[0].text.find("Espanyol won 1-0 against Alavés.") != std::string::npos);
  }
}

TEST_CASE("post-match summary for a blowout and a draw") {
  const TemplateBank bank = EnglishBank();
  std::vector<EventRecord> rout;
  for (int m : {10, 20, 30, 40}) rout.push_back(Goal(m, "Joselu", "Espanyol"));
  RandomStream rng(5);
  const auto post = GeneratePostmatch(NormalizeFacts(rout, "Espanyol", "Alavés"), bank, rng);
  REQUIRE(post.size() == 1);
  CHECK(post[0].text.find("Espanyol overwhelms Alavés, the score was 4-0.") !=
        std::string::npos);

  std::vector<EventRecord> level = {Goal(10, "Joselu", "Espanyol"),
                                    Goal(80, "Pacheco", "Alavés")};
  const auto draw = GeneratePostmatch(NormalizeFacts(level, "Espanyol", "Alavés"), bank, rng);
  CHECK(draw[0].text.find("Espanyol and Alavés drew 1-1.") != std::string::npos);
}

TEST_CASE("blowout threshold is configurable") {
  TemplateBank bank;
  bank.Add("postmatch", ParseTemplate("#if(blowout)big#elsesmall#end", "t"));
  std::vector<EventRecord> two = {Goal(1, "a", "H"), Goal(2, "a", "H")};
  const MatchFacts facts = NormalizeFacts(two, "H", "A");
  GenerationConfig config;
  RandomStream rng(0);
  CHECK(GeneratePostmatch(facts, bank, rng, config)[0].text == "small");
  config.blowout_threshold = 2;
  CHECK(GeneratePostmatch(facts, bank, rng, config)[0].text == "big");
}

TEST_CASE("prediction sentence follows the summary when present") {
  TemplateBank bank = EnglishBank();
  bank.Add("prediction", ParseTemplate("Next time.", "t"));
  RandomStream rng(0);
  const auto post =
      GeneratePostmatch(NormalizeFacts(TwoEvents(), "Espanyol", "Alavés"), bank, rng);
  REQUIRE(post.size() == 2);
  CHECK(post[1].text == "Next time.");
}

TEST_CASE("pre-match sentences") {
  const TemplateBank bank = EnglishBank();
  RandomStream rng(0);
  const MatchFacts first = NormalizeFacts(TwoEvents(), "Espanyol", "Alavés");
  const auto intro = GeneratePrematch(first, bank, rng);
  REQUIRE(intro.size() == 1);
  CHECK(intro[0].text == "This match is the first meeting between Espanyol and Alavés.");
  CHECK(intro[0].section == Section::kPreMatch);

  const MatchFacts with_history = NormalizeFacts(
      TwoEvents(), "Espanyol", "Alavés", ParseHistoryTable(testing::ReadData("history.csv")));
  const auto pre = GeneratePrematch(with_history, bank, rng);
  REQUIRE(pre.size() == 2);
  CHECK(pre[0].text == "In a previous meeting, Espanyol and Alavés played to 2-1.");

  TemplateBank bare;
  bare.Add("prematch", ParseTemplate("x", "t"));
  CHECK(GeneratePrematch(first, bare, rng).empty());
}

TEST_CASE("assemble and validate") {
  Sentence pre{"p", Section::kPreMatch, std::nullopt};
  Sentence in{"i", Section::kInMatch, 0};
  Sentence post{"o", Section::kPostMatch, std::nullopt};
  const Article a = AssembleArticle({pre}, {in}, {post});
  REQUIRE(a.sentences.size() == 3);
  CHECK(a.sentences[0].text == "p");
  CHECK(a.sentences[2].text == "o");
  CHECK_NOTHROW(ValidateArticle(a, 1));
  CHECK(ThrownKind([&] { ValidateArticle(a, 0); }) == ErrorKind::kValidation);
  Article swapped = a;
  std::swap(swapped.sentences[0], swapped.sentences[2]);
  CHECK(ThrownKind([&] { ValidateArticle(swapped, 1); }) == ErrorKind::kValidation);
  Article unlinked = a;
  unlinked.sentences[1].source_event_index.reset();
  CHECK(ThrownKind([&] { ValidateArticle(unlinked, 1); }) == ErrorKind::kValidation);
  CHECK(AssembleArticle({}, {}, {}).sentences.empty());
}

TEST_CASE("generation is deterministic per seed") {
  const TemplateBank bank = EnglishBank();
  const auto events = ParseEventTable(testing::ReadData("match10.csv"));
  const MatchFacts facts = NormalizeFacts(events, "Espanyol", "Alavés");
  const Article a = GenerateArticle(events, facts, bank, 2019);
  const Article b = GenerateArticle(events, facts, bank, 2019);
  CHECK(a == b);
  CHECK(SerializeArticle(a) == SerializeArticle(b));
  CHECK_NOTHROW(ValidateArticle(a, events.size()));
}

TEST_CASE("seeds select among variants") {
  const TemplateBank bank = EnglishBank();
  const auto events = TwoEvents();
  const MatchFacts facts = NormalizeFacts(events, "Espanyol", "Alavés");
  std::set<std::string> endings;
  for (uint64_t seed = 0; seed < 32; ++seed) {
    endings.insert(GenerateArticle(events, facts, bank, seed).sentences.back().text);
  }
  CHECK(endings.size() == 2);
}

TEST_CASE("article serialization round-trips") {
  const TemplateBank bank = EnglishBank();
  const auto events = ParseEventTable(testing::ReadData("match10.csv"));
  const Article a = GenerateArticle(events, NormalizeFacts(events, "Espanyol", "Alavés"),
                                    bank, 7);
  CHECK(ParseArticle(SerializeArticle(a)) == a);
  Article tricky;
  tricky.sentences.push_back({"tab\there\nnewline \\ back", Section::kInMatch, 3});
  CHECK(ParseArticle(SerializeArticle(tricky)) == tricky);
  CHECK(ThrownKind([] { ParseArticle("mid\t-\tx\n"); }) == ErrorKind::kParse);
  CHECK(ThrownKind([] { ParseArticle("in\tq\tx\n"); }) == ErrorKind::kParse);
  CHECK(ThrownKind([] { ParseArticle("in\t1\n"); }) == ErrorKind::kParse);
}

}  // TEST_SUITE

}  // namespace
}  // namespace newsbot
