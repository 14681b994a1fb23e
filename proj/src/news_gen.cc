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

#include "newsbot/news_gen.h"

#include <algorithm>
#include <numeric>

#include "newsbot/error.h"
#include "newsbot/text_util.h"

namespace newsbot {

namespace {

std::string Display(const GenerationConfig &config, const std::string &name) {
  auto it = config.display_names.find(name);
  return it == config.display_names.end() ? name : it->second;
}

std::string MatchKey(const EventCategory &category, const TemplateBank &bank) {
  std::string key = category.BankKey();
  if (bank.Has(key)) return key;
  if (bank.Has(kOtherKey)) return std::string(kOtherKey);
  throw Error(ErrorKind::kLookup, "no templates for key '" + key +
                                      "' and no '" + std::string(kOtherKey) +
                                      "' fallback");
}

std::string RenderOne(const TemplateBank &bank, std::string_view key,
                      RandomStream &rng, const RenderContext &ctx) {
  return Render(SelectTemplate(bank, key, rng), ctx);
}

}  // namespace

std::string_view SectionName(Section section) {
  switch (section) {
    case Section::kPreMatch: return "pre";
    case Section::kInMatch: return "in";
    case Section::kPostMatch: return "post";
  }
  return "?";
}

std::vector<Sentence> GeneratePrematch(const MatchFacts &facts,
                                       const TemplateBank &bank, RandomStream &rng,
                                       const GenerationConfig &config) {
  std::vector<Sentence> sentences;
  RenderContext ctx;
  ctx.Bind("home", Display(config, facts.home_team));
  ctx.Bind("away", Display(config, facts.away_team));
  ctx.Bind("history_count", static_cast<int64_t>(facts.history.size()));
  if (facts.history.empty()) {
    if (bank.Has(kPrematchFirstMeetingKey)) {
      sentences.push_back({RenderOne(bank, kPrematchFirstMeetingKey, rng, ctx),
                           Section::kPreMatch, std::nullopt});
    }
    return sentences;
  }
  for (const HistoryRecord &record : facts.history) {
    ctx.Bind("h.team_a", Display(config, record.team_a));
    ctx.Bind("h.team_b", Display(config, record.team_b));
    ctx.Bind("h.score_a", static_cast<int64_t>(record.score_a));
    ctx.Bind("h.score_b", static_cast<int64_t>(record.score_b));
    ctx.Bind("h.score", std::to_string(record.score_a) + "-" +
                            std::to_string(record.score_b));
    ctx.Bind("h.date", record.date);
    sentences.push_back({RenderOne(bank, kPrematchKey, rng, ctx),
                         Section::kPreMatch, std::nullopt});
  }
  return sentences;
}

std::vector<Sentence> GenerateInmatch(std::span<const EventRecord> events,
                                      const TemplateBank &bank, RandomStream &rng,
                                      const GenerationConfig &config) {
  std::vector<std::size_t> order(events.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return events[a].time_minute < events[b].time_minute;
  });
  std::vector<Sentence> sentences;
  for (std::size_t index : order) {
    const EventRecord &event = events[index];
    if (!config.inmatch_kinds.contains(event.category.kind)) continue;
    RenderContext ctx;
    ctx.Bind("minute", static_cast<int64_t>(event.time_minute));
    ctx.Bind("player", Display(config, event.player));
    ctx.Bind("team", Display(config, event.team));
    ctx.Bind("player_raw", event.player);
    ctx.Bind("team_raw", event.team);
    ctx.Bind("category", event.category.Name());
    for (const auto &[key, value] : event.attributes) ctx.Bind("attr." + key, value);
    sentences.push_back({RenderOne(bank, MatchKey(event.category, bank), rng, ctx),
                         Section::kInMatch, index});
  }
  return sentences;
}

std::vector<Sentence> GeneratePostmatch(const MatchFacts &facts,
                                        const TemplateBank &bank, RandomStream &rng,
                                        const GenerationConfig &config) {
  RenderContext ctx;
  ctx.Bind("home", Display(config, facts.home_team));
  ctx.Bind("away", Display(config, facts.away_team));
  ctx.Bind("home_goals", static_cast<int64_t>(facts.home_goals));
  ctx.Bind("away_goals", static_cast<int64_t>(facts.away_goals));
  ctx.Bind("score", std::to_string(facts.home_goals) + "-" +
                        std::to_string(facts.away_goals));
  ctx.Bind("score_diff", static_cast<int64_t>(facts.score_diff));
  ctx.Bind("is_draw", !facts.winning_team.has_value());
  ctx.Bind("blowout", facts.score_diff >= config.blowout_threshold);
  if (facts.winning_team) {
    const bool home_won = facts.home_goals > facts.away_goals;
    ctx.Bind("winner", Display(config, *facts.winning_team));
    ctx.Bind("loser", Display(config, *facts.losing_team));
    ctx.Bind("winning_score", *facts.winning_score);
    ctx.Bind("winner_goals",
             static_cast<int64_t>(home_won ? facts.home_goals : facts.away_goals));
    ctx.Bind("loser_goals",
             static_cast<int64_t>(home_won ? facts.away_goals : facts.home_goals));
  }
  std::vector<Sentence> sentences;
  sentences.push_back(
      {RenderOne(bank, kPostmatchKey, rng, ctx), Section::kPostMatch, std::nullopt});
  if (bank.Has(kPredictionKey)) {
    sentences.push_back(
        {RenderOne(bank, kPredictionKey, rng, ctx), Section::kPostMatch, std::nullopt});
  }
  return sentences;
}

Article AssembleArticle(std::vector<Sentence> pre, std::vector<Sentence> in,
                        std::vector<Sentence> post) {
  Article article;
  article.sentences.reserve(pre.size() + in.size() + post.size());
  auto append = [&](std::vector<Sentence> &part, Section section) {
    for (Sentence &s : part) {
      s.section = section;
      article.sentences.push_back(std::move(s));
    }
  };
  append(pre, Section::kPreMatch);
  append(in, Section::kInMatch);
  append(post, Section::kPostMatch);
  return article;
}

Article GenerateArticle(std::span<const EventRecord> events, const MatchFacts &facts,
                        const TemplateBank &bank, uint64_t seed,
                        const GenerationConfig &config) {
  RandomStream rng(seed);
  auto pre = GeneratePrematch(facts, bank, rng, config);
  auto in = GenerateInmatch(events, bank, rng, config);
  auto post = GeneratePostmatch(facts, bank, rng, config);
  return AssembleArticle(std::move(pre), std::move(in), std::move(post));
}

void ValidateArticle(const Article &article, std::optional<std::size_t> event_count) {
  Section last = Section::kPreMatch;
  for (std::size_t i = 0; i < article.sentences.size(); ++i) {
    const Sentence &s = article.sentences[i];
    if (static_cast<int>(s.section) < static_cast<int>(last)) {
      throw Error(ErrorKind::kValidation,
                  "sentence " + std::to_string(i) + ": sections out of order");
    }
    last = s.section;
    if (s.section != Section::kInMatch) continue;
    if (!s.source_event_index) {
      throw Error(ErrorKind::kValidation,
                  "sentence " + std::to_string(i) + ": in-match sentence lacks an event link");
    }
    if (event_count && *s.source_event_index >= *event_count) {
      throw Error(ErrorKind::kValidation,
                  "sentence " + std::to_string(i) + ": event index " +
                      std::to_string(*s.source_event_index) + " out of range");
    }
  }
}

std::string SerializeArticle(const Article &article) {
  std::string out;
  for (const Sentence &s : article.sentences) {
    out += SectionName(s.section);
    out += '\t';
    out += s.source_event_index ? std::to_string(*s.source_event_index) : "-";
    out += '\t';
    out += EscapeTsvField(s.text);
    out += '\n';
  }
  return out;
}

Article ParseArticle(std::string_view text) {
  Article article;
  const auto lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const std::string where = "article line " + std::to_string(n + 1);
    auto fields = Split(lines[n], '\t');
    if (fields.size() != 3) {
      throw Error(ErrorKind::kParse, where + ": expected 3 tab-separated fields");
    }
    Sentence s;
    if (fields[0] == "pre") {
      s.section = Section::kPreMatch;
    } else if (fields[0] == "in") {
      s.section = Section::kInMatch;
    } else if (fields[0] == "post") {
      s.section = Section::kPostMatch;
    } else {
      throw Error(ErrorKind::kParse, where + ": unknown section '" + fields[0] + "'");
    }
    if (fields[1] != "-") {
      auto index = ParseInt(fields[1]);
      if (!index || *index < 0) {
        throw Error(ErrorKind::kParse, where + ": malformed event index");
      }
      s.source_event_index = static_cast<std::size_t>(*index);
    }
    s.text = UnescapeTsvField(fields[2]);
    article.sentences.push_back(std::move(s));
  }
  return article;
}

}  // namespace newsbot
