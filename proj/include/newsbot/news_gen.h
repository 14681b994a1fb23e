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

#ifndef NEWSBOT_NEWS_GEN_H_
#define NEWSBOT_NEWS_GEN_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsbot/event_model.h"
#include "newsbot/random.h"
#include "newsbot/template_dsl.h"

namespace newsbot {

enum class Section { kPreMatch, kInMatch, kPostMatch };

std::string_view SectionName(Section section);  // "pre", "in", "post"

struct Sentence {
  std::string text;
  Section section = Section::kInMatch;
  std::optional<std::size_t> source_event_index;

  bool operator==(const Sentence &other) const = default;
};

struct Article {
  std::vector<Sentence> sentences;

  bool operator==(const Article &other) const = default;
};

struct GenerationConfig {
  // Categories described in the in-match section.
  std::set<EventKind> inmatch_kinds = {EventKind::kScore, EventKind::kYellowCard,
                                       EventKind::kRedCard, EventKind::kSubstitution};
  int blowout_threshold = 3;
  // Raw table names to their surface form in the article language. Names
  // without an entry are used verbatim.
  std::map<std::string, std::string, std::less<>> display_names;
};

// Bank keys used by the generator.
inline constexpr std::string_view kPrematchKey = "prematch";
inline constexpr std::string_view kPrematchFirstMeetingKey = "prematch_first";
inline constexpr std::string_view kPostmatchKey = "postmatch";
inline constexpr std::string_view kPredictionKey = "prediction";
inline constexpr std::string_view kOtherKey = "other";

// One sentence per history record from [prematch]. With no history, one
// sentence from [prematch_first] when the bank has it, otherwise none.
// Bindings: home, away, h.team_a, h.team_b, h.score_a, h.score_b, h.score,
// h.date, history_count.
std::vector<Sentence> GeneratePrematch(const MatchFacts &facts,
                                       const TemplateBank &bank, RandomStream &rng,
                                       const GenerationConfig &config = {});

// One sentence per event whose kind is in config.inmatch_kinds, in time order
// (stable for equal minutes). A category without its own key falls back to
// [other]. Bindings: minute, player, team, player_raw, team_raw, category,
// attr.<key>.
std::vector<Sentence> GenerateInmatch(std::span<const EventRecord> events,
                                      const TemplateBank &bank, RandomStream &rng,
                                      const GenerationConfig &config = {});

// One sentence from [postmatch], then one from [prediction] if present.
// Bindings: home, away, home_goals, away_goals, score, score_diff, is_draw,
// blowout, and for decided matches winner, loser, winning_score,
// winner_goals, loser_goals.
std::vector<Sentence> GeneratePostmatch(const MatchFacts &facts,
                                        const TemplateBank &bank, RandomStream &rng,
                                        const GenerationConfig &config = {});

Article AssembleArticle(std::vector<Sentence> pre, std::vector<Sentence> in,
                        std::vector<Sentence> post);

// Runs the three strategies in order against one random stream seeded with
// `seed`.
Article GenerateArticle(std::span<const EventRecord> events, const MatchFacts &facts,
                        const TemplateBank &bank, uint64_t seed,
                        const GenerationConfig &config = {});

// Throws Error(kValidation) if sections are out of order or an in-match
// sentence lacks a valid event link (event_count bounds the index).
void ValidateArticle(const Article &article, std::optional<std::size_t> event_count);

// One line per sentence: section TAB event-index-or-"-" TAB escaped text.
std::string SerializeArticle(const Article &article);
Article ParseArticle(std::string_view text);

}  // namespace newsbot

#endif  // NEWSBOT_NEWS_GEN_H_
