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

#include "newsbot/summarizer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "newsbot/error.h"
#include "newsbot/text_util.h"

namespace newsbot {

namespace {

bool IsSentenceFinal(char32_t cp) {
  return cp == U'。' || cp == U'！' || cp == U'？' || cp == U'.' || cp == U'!' ||
         cp == U'?';
}

bool IsClosing(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U'”' || cp == U'’' || cp == U')' ||
         cp == U'）' || cp == U'」' || cp == U'』' || cp == U'】';
}

}  // namespace

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::string current;
  std::size_t i = 0;
  auto emit = [&] {
    std::string_view trimmed = Trim(current);
    if (!trimmed.empty()) sentences.emplace_back(trimmed);
    current.clear();
  };
  while (i < text.size()) {
    std::size_t len = Utf8SequenceLength(text, i);
    char32_t cp = DecodeUtf8(text, i);
    current.append(text.substr(i, len));
    i += len;
    if (!IsSentenceFinal(cp)) continue;
    // Absorb runs like "?!" and trailing closing quotes.
    while (i < text.size()) {
      char32_t next = DecodeUtf8(text, i);
      if (!IsSentenceFinal(next) && !IsClosing(next)) break;
      std::size_t next_len = Utf8SequenceLength(text, i);
      current.append(text.substr(i, next_len));
      i += next_len;
    }
    emit();
  }
  emit();
  return sentences;
}

std::vector<std::string> SplitSentences(const Article &article) {
  std::vector<std::string> sentences;
  sentences.reserve(article.sentences.size());
  for (const Sentence &s : article.sentences) sentences.push_back(s.text);
  return sentences;
}

HeuristicScorer::HeuristicScorer(std::vector<std::string> keywords,
                                 HeuristicScorerWeights weights)
    : keywords_(std::move(keywords)), weights_(weights) {
  const double total = weights_.position + weights_.length + weights_.keywords;
  if (!(weights_.position >= 0 && weights_.length >= 0 && weights_.keywords >= 0) ||
      !(total > 0) || !std::isfinite(total)) {
    throw Error(ErrorKind::kValidation, "scorer weights must be >= 0 with a positive sum");
  }
  weights_.position /= total;
  weights_.length /= total;
  weights_.keywords /= total;
  std::erase_if(keywords_, [](const std::string &k) { return k.empty(); });
}

std::vector<double> HeuristicScorer::Score(std::span<const std::string> sentences) const {
  const std::size_t n = sentences.size();
  std::size_t max_len = 0;
  for (const std::string &s : sentences) max_len = std::max(max_len, CodePointCount(s));
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double position = 1.0 - static_cast<double>(i) / static_cast<double>(n);
    const double length =
        max_len == 0 ? 0.0
                     : static_cast<double>(CodePointCount(sentences[i])) /
                           static_cast<double>(max_len);
    double overlap = 0.0;
    if (!keywords_.empty()) {
      std::size_t hits = 0;
      for (const std::string &k : keywords_) {
        if (sentences[i].find(k) != std::string::npos) ++hits;
      }
      overlap = static_cast<double>(hits) / static_cast<double>(keywords_.size());
    }
    const double score = weights_.position * position + weights_.length * length +
                         weights_.keywords * overlap;
    scores[i] = std::clamp(score, 0.0, 1.0);
  }
  return scores;
}

SentenceLabels LabelSentences(std::span<const std::string> sentences,
                              const SentenceScorer &scorer, const SelectionRule &rule) {
  SentenceLabels result;
  result.scores = scorer.Score(sentences);
  if (result.scores.size() != sentences.size()) {
    throw Error(ErrorKind::kContract,
                "scorer returned " + std::to_string(result.scores.size()) +
                    " scores for " + std::to_string(sentences.size()) + " sentences");
  }
  for (std::size_t i = 0; i < result.scores.size(); ++i) {
    const double s = result.scores[i];
    if (!(s >= 0.0 && s <= 1.0)) {
      throw Error(ErrorKind::kContract, "scorer returned " + FormatDouble(s) +
                                            " for sentence " + std::to_string(i) +
                                            ", outside [0, 1]");
    }
  }
  result.labels.assign(sentences.size(), 0);
  if (const auto *top = std::get_if<TopK>(&rule)) {
    std::vector<std::size_t> order(sentences.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return result.scores[a] > result.scores[b];
    });
    const std::size_t k = std::min(top->k, order.size());
    for (std::size_t r = 0; r < k; ++r) result.labels[order[r]] = 1;
  } else {
    const double threshold = std::get<ScoreThreshold>(rule).threshold;
    for (std::size_t i = 0; i < result.scores.size(); ++i) {
      result.labels[i] = result.scores[i] >= threshold ? 1 : 0;
    }
  }
  return result;
}

Article SelectLabeled(const Article &article, const SentenceLabels &labels) {
  if (labels.labels.size() != article.sentences.size()) {
    throw Error(ErrorKind::kValidation, "labels do not align with the article");
  }
  Article out;
  for (std::size_t i = 0; i < article.sentences.size(); ++i) {
    if (labels.labels[i] == 1) out.sentences.push_back(article.sentences[i]);
  }
  return out;
}

ImportanceTable ImportanceTable::Default() {
  ImportanceTable table;
  table.weights_ = {{"Score", 5},        {"Red Card", 4}, {"Yellow Card", 3},
                    {"Substitution", 2}, {"Foul", 1},     {"Other", 0}};
  return table;
}

void ImportanceTable::Set(const std::string &category, double weight) {
  if (!(weight >= 0) || !std::isfinite(weight)) {
    throw Error(ErrorKind::kValidation,
                "importance weight for '" + category + "' must be finite and >= 0");
  }
  weights_[EventCategory::FromText(category).Name()] = weight;
}

double ImportanceTable::Weight(const EventCategory &category) const {
  auto it = weights_.find(category.Name());
  if (it != weights_.end()) return it->second;
  if (category.kind == EventKind::kOther) {
    it = weights_.find("Other");
    if (it != weights_.end()) return it->second;
  }
  return 0.0;
}

std::vector<std::size_t> SelectSoccerSentences(std::span<const EventRecord> events,
                                               const Article &article,
                                               const ImportanceTable &table,
                                               std::size_t budget) {
  if (budget < 1) throw Error(ErrorKind::kUsage, "summary budget must be >= 1");
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < article.sentences.size(); ++i) {
    const Sentence &s = article.sentences[i];
    if (s.section != Section::kInMatch) continue;
    if (!s.source_event_index || *s.source_event_index >= events.size()) {
      throw Error(ErrorKind::kValidation,
                  "in-match sentence " + std::to_string(i) + " has no valid event link");
    }
    candidates.push_back(i);
  }
  auto event_of = [&](std::size_t i) -> const EventRecord & {
    return events[*article.sentences[i].source_event_index];
  };
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    const double wa = table.Weight(event_of(a).category);
    const double wb = table.Weight(event_of(b).category);
    if (wa != wb) return wa > wb;
    return event_of(a).time_minute < event_of(b).time_minute;
  });
  candidates.resize(std::min(budget, candidates.size()));
  std::vector<std::size_t> kept = std::move(candidates);
  for (std::size_t i = 0; i < article.sentences.size(); ++i) {
    if (article.sentences[i].section == Section::kPostMatch) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

Article SummarizeSoccer(std::span<const EventRecord> events, const Article &article,
                        const ImportanceTable &table, std::size_t budget) {
  Article summary;
  for (std::size_t i : SelectSoccerSentences(events, article, table, budget)) {
    summary.sentences.push_back(article.sentences[i]);
  }
  return summary;
}

SentenceLabels SoccerLabels(std::span<const EventRecord> events, const Article &article,
                            const ImportanceTable &table,
                            std::span<const std::size_t> kept) {
  double max_weight = 0.0;
  for (const auto &[name, w] : table.weights()) max_weight = std::max(max_weight, w);
  SentenceLabels labels;
  labels.labels.assign(article.sentences.size(), 0);
  labels.scores.assign(article.sentences.size(), 0.0);
  for (std::size_t i : kept) labels.labels.at(i) = 1;
  for (std::size_t i = 0; i < article.sentences.size(); ++i) {
    const Sentence &s = article.sentences[i];
    if (s.section == Section::kPostMatch) {
      labels.scores[i] = 1.0;
    } else if (s.section == Section::kInMatch && s.source_event_index &&
               *s.source_event_index < events.size() && max_weight > 0) {
      labels.scores[i] = table.Weight(events[*s.source_event_index].category) / max_weight;
    }
  }
  return labels;
}

std::string SerializeLabels(const SentenceLabels &labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    out += std::to_string(i) + "\t" + std::to_string(labels.labels[i]) + "\t" +
           FormatDouble(labels.scores[i]) + "\n";
  }
  return out;
}

}  // namespace newsbot
