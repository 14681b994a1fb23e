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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "newsbot/event_model.h"
#include "newsbot/news_gen.h"
#include "newsbot/random.h"
#include "newsbot/summarizer.h"
#include "test_support.h"

namespace newsbot {
namespace {

using testing::ThrownKind;

class FixedScorer : public SentenceScorer {
 public:
  explicit FixedScorer(std::vector<double> scores) : scores_(std::move(scores)) {}
  std::vector<double> Score(std::span<const std::string>) const override { return scores_; }

 private:
  std::vector<double> scores_;
};

EventRecord Event(int minute, EventKind kind, const std::string &player) {
  EventRecord e;
  e.time_minute = minute;
  e.category = EventCategory::Of(kind);
  e.player = player;
  e.team = "Espanyol";
  return e;
}

// In-match sentences linked one-to-one to events, plus one post-match line.
Article ArticleFor(const std::vector<EventRecord> &events) {
  Article a;
  a.sentences.push_back({"pre", Section::kPreMatch, std::nullopt});
  for (std::size_t i = 0; i < events.size(); ++i) {
    a.sentences.push_back({events[i].player, Section::kInMatch, i});
  }
  a.sentences.push_back({"post", Section::kPostMatch, std::nullopt});
  return a;
}

std::vector<std::string> InMatchTexts(const Article &a) {
  std::vector<std::string> out;
  for (const Sentence &s : a.sentences) {
    if (s.section == Section::kInMatch) out.push_back(s.text);
  }
  return out;
}

TEST_SUITE("summarizer") {

TEST_CASE("sentence splitting") {
  CHECK(SplitSentences(std::string_view("A。B！")) == std::vector<std::string>{"A。", "B！"});
  CHECK(SplitSentences(std::string_view("")).empty());
  CHECK(SplitSentences(std::string_view("He said \"go.\" Then left")) ==
        std::vector<std::string>{"He said \"go.\"", "Then left"});
  CHECK(SplitSentences(std::string_view("Wait?! Yes.")) ==
        std::vector<std::string>{"Wait?!", "Yes."});
  Article a;
  a.sentences.push_back({"x", Section::kInMatch, 0});
  a.sentences.push_back({"y。z。", Section::kInMatch, 1});
  CHECK(SplitSentences(a) == std::vector<std::string>{"x", "y。z。"});
}

TEST_CASE("labeling with top-k and thresholds") {
  const std::vector<std::string> s = {"a", "b", "c"};
  const FixedScorer scorer({0.9, 0.1, 0.5});
  CHECK(LabelSentences(s, scorer, TopK{1}).labels == std::vector<int>{1, 0, 0});
  CHECK(LabelSentences(s, scorer, ScoreThreshold{0.6}).labels == std::vector<int>{1, 0, 0});
  CHECK(LabelSentences(s, scorer, ScoreThreshold{0.5}).labels == std::vector<int>{1, 0, 1});
  const std::vector<std::string> four = {"a", "b", "c", "d"};
  const FixedScorer equal({0.3, 0.3, 0.3, 0.3});
  CHECK(LabelSentences(four, equal, TopK{2}).labels == std::vector<int>{1, 1, 0, 0});
}

TEST_CASE("scores outside the unit interval violate the scorer contract") {
  const std::vector<std::string> s = {"a", "b"};
  CHECK(ThrownKind([&] { LabelSentences(s, FixedScorer({0.5, 1.5}), TopK{1}); }) ==
        ErrorKind::kContract);
  CHECK(ThrownKind([&] {
          LabelSentences(s, FixedScorer({std::nan(""), 0.5}), TopK{1});
        }) == ErrorKind::kContract);
  CHECK(ThrownKind([&] { LabelSentences(s, FixedScorer({0.5}), TopK{1}); }) ==
        ErrorKind::kContract);
}

TEST_CASE("property: top-k keeps exactly min(k, n)") {
  RandomStream rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng.UniformBelow(12);
    const std::size_t k = rng.UniformBelow(15);
    std::vector<std::string> sentences(n, "s");
    std::vector<double> scores(n);
    for (double &x : scores) x = static_cast<double>(rng.UniformBelow(5)) / 4.0;
    const SentenceLabels out = LabelSentences(sentences, FixedScorer(scores), TopK{k});
    const auto kept = static_cast<std::size_t>(std::count(out.labels.begin(), out.labels.end(), 1));
    CHECK(kept == std::min(k, n));
    // Every kept score dominates every dropped score.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (out.labels[i] == 1 && out.labels[j] == 0) {
          CHECK(scores[i] >= scores[j]);
          if (scores[i] == scores[j]) CHECK(i < j);
        }
      }
    }
  }
}

TEST_CASE("heuristic scorer stays in range and prefers earlier and keyword sentences") {
  const HeuristicScorer scorer({"goal"});
  const std::vector<std::string> s = {"a goal here", "a goal here", "nothing at all"};
  const auto scores = scorer.Score(s);
  REQUIRE(scores.size() == 3);
  for (double x : scores) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  CHECK(scores[0] > scores[1]);
  CHECK(scores[1] > scores[2] - 0.2);
  CHECK(scorer.Score(std::vector<std::string>{}).empty());
}

TEST_CASE("two-event fixture soccer summary with budget 1 keeps the goal") {
  const auto events = ParseEventTable(testing::ReadData("two_events.csv"));
  const Article article = ArticleFor(events);
  const auto kept =
      SelectSoccerSentences(events, article, ImportanceTable::Default(), 1);
  CHECK(kept == std::vector<std::size_t>{1, 3});
  const Article summary = SummarizeSoccer(events, article, ImportanceTable::Default(), 1);
  CHECK(InMatchTexts(summary) == std::vector<std::string>{"Didac"});
  CHECK(summary.sentences.back().text == "post");
}

TEST_CASE("earlier goal wins an importance tie") {
  const std::vector<EventRecord> events = {Event(70, EventKind::kScore, "late"),
                                           Event(23, EventKind::kScore, "early")};
  const Article summary =
      SummarizeSoccer(events, ArticleFor(events), ImportanceTable::Default(), 1);
  CHECK(InMatchTexts(summary) == std::vector<std::string>{"early"});
}

TEST_CASE("large budgets keep every in-match sentence") {
  const auto events = ParseEventTable(testing::ReadData("match10.csv"));
  const Article article = ArticleFor(events);
  const Article summary = SummarizeSoccer(events, article, ImportanceTable::Default(), 100);
  CHECK(InMatchTexts(summary) == InMatchTexts(article));
  CHECK(ThrownKind([&] {
          SummarizeSoccer(events, article, ImportanceTable::Default(), 0);
        }) == ErrorKind::kUsage);
}

TEST_CASE("property: summaries are ordered subsequences that grow with the budget") {
  RandomStream rng(2024);
  static constexpr EventKind kKinds[] = {EventKind::kScore, EventKind::kYellowCard,
                                         EventKind::kRedCard, EventKind::kFoul,
                                         EventKind::kSubstitution};
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<EventRecord> events(rng.UniformBelow(10));
    for (std::size_t i = 0; i < events.size(); ++i) {
      events[i] = Event(static_cast<int>(rng.UniformBelow(95)), kKinds[rng.UniformBelow(5)],
                        "p" + std::to_string(i));
    }
    const Article article = ArticleFor(events);
    std::vector<std::size_t> previous;
    for (std::size_t budget = 1; budget <= events.size() + 1; ++budget) {
      const auto kept =
          SelectSoccerSentences(events, article, ImportanceTable::Default(), budget);
      CHECK(std::is_sorted(kept.begin(), kept.end()));
      CHECK(std::adjacent_find(kept.begin(), kept.end()) == kept.end());
      CHECK(std::includes(kept.begin(), kept.end(), previous.begin(), previous.end()));
      std::size_t in_match = 0;
      for (std::size_t idx : kept) {
        if (article.sentences[idx].section == Section::kInMatch) ++in_match;
      }
      CHECK(in_match == std::min(budget, events.size()));
      previous = kept;
    }
  }
}

TEST_CASE("importance table") {
  ImportanceTable table = ImportanceTable::Default();
  CHECK(table.Weight(EventCategory::Of(EventKind::kScore)) == 5.0);
  CHECK(table.Weight(EventCategory::Of(EventKind::kFoul)) == 1.0);
  CHECK(table.Weight(EventCategory::FromText("Corner")) == 0.0);
  table.Set("Foul", 9.0);
  CHECK(table.Weight(EventCategory::Of(EventKind::kFoul)) == 9.0);
  CHECK(ThrownKind([&] { table.Set("Foul", -1.0); }) == ErrorKind::kValidation);
  CHECK(ThrownKind([&] { table.Set("Foul", std::numeric_limits<double>::infinity()); }) ==
        ErrorKind::kValidation);
}

TEST_CASE("soccer labels sidecar") {
  const auto events = ParseEventTable(testing::ReadData("two_events.csv"));
  const Article article = ArticleFor(events);
  const auto table = ImportanceTable::Default();
  const auto kept = SelectSoccerSentences(events, article, table, 1);
  const SentenceLabels labels = SoccerLabels(events, article, table, kept);
  CHECK(labels.labels == std::vector<int>{0, 1, 0, 1});
  CHECK(labels.scores[0] == 0.0);
  CHECK(labels.scores[1] == doctest::Approx(1.0));
  CHECK(labels.scores[2] == doctest::Approx(0.6));
  CHECK(labels.scores[3] == 1.0);
  CHECK(SerializeLabels(labels).substr(0, 5) == "0\t0\t0");
  const Article chosen = SelectLabeled(article, labels);
  REQUIRE(chosen.sentences.size() == 2);
  CHECK(chosen.sentences[0].text == "Didac");
}

}  // TEST_SUITE

}  // namespace
}  // namespace newsbot
