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

#include "newsbot/event_model.h"

#include <cstdlib>

#include "newsbot/error.h"
#include "newsbot/text_util.h"

namespace newsbot {

namespace {

std::string Canonical(std::string_view text) {
  std::string out;
  for (char c : ToLowerAscii(Trim(text))) {
    if (c != ' ' && c != '_' && c != '-') out.push_back(c);
  }
  return out;
}

std::string RowError(std::size_t row, const std::string &what) {
  return "row " + std::to_string(row + 1) + ": " + what;
}

int ParseMinute(std::string_view field, std::size_t row) {
  std::string_view s = Trim(field);
  for (std::string_view suffix : {"'", "’", "′"}) {
    if (s.size() >= suffix.size() &&
        s.substr(s.size() - suffix.size()) == suffix) {
      s.remove_suffix(suffix.size());
      break;
    }
  }
  auto value = ParseInt(s);
  if (!value || *value < 0 || *value > 100000) {
    throw Error(ErrorKind::kParse,
                RowError(row, "malformed time field '" + std::string(field) + "'"));
  }
  return static_cast<int>(*value);
}

std::map<std::string, std::string> ParseAttributes(std::string_view field,
                                                   std::size_t row) {
  std::map<std::string, std::string> attributes;
  for (const std::string &piece : Split(field, ';')) {
    std::string_view item = Trim(piece);
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    std::string_view key = eq == std::string_view::npos ? item : Trim(item.substr(0, eq));
    if (eq == std::string_view::npos || key.empty()) {
      throw Error(ErrorKind::kParse,
                  RowError(row, "malformed attribute '" + std::string(item) + "'"));
    }
    attributes[std::string(key)] = std::string(Trim(item.substr(eq + 1)));
  }
  return attributes;
}

EventRecord ParseFields(const std::vector<std::string> &fields, std::size_t row) {
  if (fields.size() < 4) {
    throw Error(ErrorKind::kParse,
                RowError(row, "expected at least 4 fields, got " +
                                  std::to_string(fields.size())));
  }
  EventRecord event;
  event.time_minute = ParseMinute(fields[0], row);
  if (Trim(fields[1]).empty()) {
    throw Error(ErrorKind::kParse, RowError(row, "empty category"));
  }
  event.category = EventCategory::FromText(fields[1]);
  event.player = std::string(Trim(fields[2]));
  event.team = std::string(Trim(fields[3]));
  if (event.player.empty()) {
    throw Error(ErrorKind::kValidation, RowError(row, "empty player"));
  }
  if (event.team.empty()) {
    throw Error(ErrorKind::kValidation, RowError(row, "empty team"));
  }
  for (std::size_t i = 4; i < fields.size(); ++i) {
    event.attributes.merge(ParseAttributes(fields[i], row));
  }
  return event;
}

bool IsHeader(const std::vector<std::string> &record, std::string_view first) {
  return !record.empty() && ToLowerAscii(Trim(record[0])) == first;
}

}  // namespace

EventCategory EventCategory::FromText(std::string_view text) {
  const std::string key = Canonical(text);
  if (key == "score") return Of(EventKind::kScore);
  if (key == "yellowcard") return Of(EventKind::kYellowCard);
  if (key == "redcard") return Of(EventKind::kRedCard);
  if (key == "foul") return Of(EventKind::kFoul);
  if (key == "substitution") return Of(EventKind::kSubstitution);
  return {EventKind::kOther, std::string(Trim(text))};
}

std::string EventCategory::Name() const {
  switch (kind) {
    case EventKind::kScore: return "Score";
    case EventKind::kYellowCard: return "Yellow Card";
    case EventKind::kRedCard: return "Red Card";
    case EventKind::kFoul: return "Foul";
    case EventKind::kSubstitution: return "Substitution";
    case EventKind::kOther: return tag;
  }
  return tag;
}

std::string EventCategory::BankKey() const {
  switch (kind) {
    case EventKind::kScore: return "score";
    case EventKind::kYellowCard: return "yellow_card";
    case EventKind::kRedCard: return "red_card";
    case EventKind::kFoul: return "foul";
    case EventKind::kSubstitution: return "substitution";
    case EventKind::kOther: return "other";
  }
  return "other";
}

bool EventCategory::operator==(const EventCategory &other) const {
  if (kind != other.kind) return false;
  return kind != EventKind::kOther || tag == other.tag;
}

std::vector<EventRecord> ParseEvents(std::span<const std::string> rows) {
  std::vector<EventRecord> events;
  events.reserve(rows.size());
  for (std::size_t row = 0; row < rows.size(); ++row) {
    std::vector<std::vector<std::string>> records;
    try {
      records = ParseCsv(rows[row]);
    } catch (const Error &e) {
      throw Error(ErrorKind::kParse, RowError(row, e.what()));
    }
    if (records.size() != 1) {
      throw Error(ErrorKind::kParse, RowError(row, "expected one record"));
    }
    events.push_back(ParseFields(records[0], row));
  }
  return events;
}

std::vector<EventRecord> ParseEventTable(std::string_view text) {
  auto records = ParseCsv(text);
  std::size_t start = !records.empty() && IsHeader(records[0], "time") ? 1 : 0;
  std::vector<EventRecord> events;
  for (std::size_t i = start; i < records.size(); ++i) {
    events.push_back(ParseFields(records[i], i - start));
  }
  return events;
}

std::string SerializeEvent(const EventRecord &event) {
  std::string attributes;
  for (const auto &[key, value] : event.attributes) {
    if (!attributes.empty()) attributes.push_back(';');
    attributes += key + "=" + value;
  }
  std::string line = std::to_string(event.time_minute) + "'," +
                     CsvField(event.category.Name()) + "," +
                     CsvField(event.player) + "," + CsvField(event.team);
  if (!attributes.empty()) line += "," + CsvField(attributes);
  return line;
}

std::string SerializeEvents(std::span<const EventRecord> events) {
  std::string out = "time,category,player,team,attributes\n";
  for (const EventRecord &event : events) out += SerializeEvent(event) + "\n";
  return out;
}

std::vector<HistoryRecord> ParseHistoryTable(std::string_view text) {
  auto records = ParseCsv(text);
  std::size_t start = !records.empty() && IsHeader(records[0], "team_a") ? 1 : 0;
  std::vector<HistoryRecord> history;
  for (std::size_t i = start; i < records.size(); ++i) {
    const auto &fields = records[i];
    const std::size_t row = i - start;
    if (fields.size() < 4) {
      throw Error(ErrorKind::kParse, RowError(row, "history needs team_a,team_b,score_a,score_b[,date]"));
    }
    auto a = ParseInt(fields[2]);
    auto b = ParseInt(fields[3]);
    if (!a || !b || *a < 0 || *b < 0) {
      throw Error(ErrorKind::kParse, RowError(row, "malformed history score"));
    }
    HistoryRecord record{std::string(Trim(fields[0])), std::string(Trim(fields[1])),
                         static_cast<int>(*a), static_cast<int>(*b),
                         fields.size() > 4 ? std::string(Trim(fields[4])) : std::string()};
    if (record.team_a.empty() || record.team_b.empty()) {
      throw Error(ErrorKind::kValidation, RowError(row, "empty history team"));
    }
    history.push_back(std::move(record));
  }
  return history;
}

MatchFacts NormalizeFacts(std::span<const EventRecord> events,
                          std::string_view home, std::string_view away,
                          std::vector<HistoryRecord> history) {
  if (Trim(home).empty() || Trim(away).empty()) {
    throw Error(ErrorKind::kValidation, "home and away teams must be named");
  }
  if (home == away) {
    throw Error(ErrorKind::kValidation,
                "home and away teams are both '" + std::string(home) + "'");
  }
  MatchFacts facts;
  facts.home_team = std::string(home);
  facts.away_team = std::string(away);
  for (const EventRecord &event : events) {
    const bool is_home = event.team == home;
    if (!is_home && event.team != away) {
      throw Error(ErrorKind::kValidation,
                  "event at minute " + std::to_string(event.time_minute) +
                      " references unknown team '" + event.team + "'");
    }
    if (event.category.kind != EventKind::kScore) continue;
    ++(is_home ? facts.home_goals : facts.away_goals);
  }
  facts.score_diff = std::abs(facts.home_goals - facts.away_goals);
  if (facts.home_goals != facts.away_goals) {
    const bool home_won = facts.home_goals > facts.away_goals;
    facts.winning_team = home_won ? facts.home_team : facts.away_team;
    facts.losing_team = home_won ? facts.away_team : facts.home_team;
    facts.winning_score = std::to_string(facts.home_goals) + "-" +
                          std::to_string(facts.away_goals);
  }
  facts.history = std::move(history);
  return facts;
}

}  // namespace newsbot
