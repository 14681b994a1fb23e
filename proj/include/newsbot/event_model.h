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

#ifndef NEWSBOT_EVENT_MODEL_H_
#define NEWSBOT_EVENT_MODEL_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace newsbot {

enum class EventKind {
  kScore,
  kYellowCard,
  kRedCard,
  kFoul,
  kSubstitution,
  kOther,
};

// Event category. Unknown categories keep their raw tag in kOther.
struct EventCategory {
  EventKind kind = EventKind::kOther;
  std::string tag;  // only meaningful for kOther

  static EventCategory Of(EventKind kind) { return {kind, {}}; }
  // Case-, space- and underscore-insensitive match against the known
  // categories ("Yellow Card", "yellow_card", "YellowCard" all agree).
  static EventCategory FromText(std::string_view text);

  // Display form as it appears in event tables.
  std::string Name() const;
  // Template bank key: score, yellow_card, red_card, foul, substitution, other.
  std::string BankKey() const;

  bool operator==(const EventCategory &other) const;
};

struct EventRecord {
  int time_minute = 0;
  EventCategory category;
  std::string player;
  std::string team;
  std::map<std::string, std::string> attributes;

  bool operator==(const EventRecord &other) const = default;
};

// Parses one comma-separated record per row: time,category,player,team and
// an optional fifth column of semicolon-separated key=value attributes.
// Times may be written "23", "23'" or "23’". Errors carry the 1-based row.
std::vector<EventRecord> ParseEvents(std::span<const std::string> rows);

// Parses a whole event file. A first record whose first field is "time" is
// treated as a header.
std::vector<EventRecord> ParseEventTable(std::string_view text);

std::string SerializeEvent(const EventRecord &event);
// Header line plus one record per event; ParseEventTable inverts it.
std::string SerializeEvents(std::span<const EventRecord> events);

// A prior meeting between two teams. Opaque to everything but the pre-match
// templates.
struct HistoryRecord {
  std::string team_a;
  std::string team_b;
  int score_a = 0;
  int score_b = 0;
  std::string date;

  bool operator==(const HistoryRecord &other) const = default;
};

// CSV rows team_a,team_b,score_a,score_b,date; header optional.
std::vector<HistoryRecord> ParseHistoryTable(std::string_view text);

struct MatchFacts {
  std::string home_team;
  std::string away_team;
  int home_goals = 0;
  int away_goals = 0;
  std::optional<std::string> winning_team;
  std::optional<std::string> losing_team;
  // "H-A" (home goals first); absent for draws.
  std::optional<std::string> winning_score;
  int score_diff = 0;
  std::vector<HistoryRecord> history;

  bool operator==(const MatchFacts &other) const = default;
};

// Derives the key-value facts templates consume. Each Score event credits
// the event's team; own goals are not modeled.
MatchFacts NormalizeFacts(std::span<const EventRecord> events,
                          std::string_view home, std::string_view away,
                          std::vector<HistoryRecord> history = {});

}  // namespace newsbot

#endif  // NEWSBOT_EVENT_MODEL_H_
