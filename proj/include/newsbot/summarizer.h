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

#ifndef NEWSBOT_SUMMARIZER_H_
#define NEWSBOT_SUMMARIZER_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "newsbot/event_model.h"
#include "newsbot/news_gen.h"

namespace newsbot {

// Splits raw text after sentence-final punctuation (。！？.!?), keeping the
// delimiter and any closing quotes or brackets that follow it. Whitespace
// between sentences is dropped; a trailing fragment without a delimiter is
// kept as the last sentence.
std::vector<std::string> SplitSentences(std::string_view text);

// Article records are already sentence-granular and are returned as-is.
std::vector<std::string> SplitSentences(const Article &article);

// Scores each sentence in [0, 1]. Implementations must be reentrant.
class SentenceScorer {
 public:
  virtual ~SentenceScorer() = default;
  virtual std::vector<double> Score(std::span<const std::string> sentences) const = 0;
};

struct HeuristicScorerWeights {
  double position = 0.5;
  double length = 0.2;
  double keywords = 0.3;
};

// Stand-in for a trained sentence labeler: a weighted mean of
//   position prior  1 - i / n        (earlier is better)
//   length prior    len_i / max len  (code points)
//   keyword overlap fraction of the keywords present in the sentence
// The weights are normalized to sum to 1 so the score stays in [0, 1].
class HeuristicScorer : public SentenceScorer {
 public:
  explicit HeuristicScorer(std::vector<std::string> keywords,
                           HeuristicScorerWeights weights = {});

  std::vector<double> Score(std::span<const std::string> sentences) const override;

 private:
  std::vector<std::string> keywords_;
  HeuristicScorerWeights weights_;
};

struct TopK {
  std::size_t k = 3;
};

struct ScoreThreshold {
  double threshold = 0.5;
};

using SelectionRule = std::variant<TopK, ScoreThreshold>;

struct SentenceLabels {
  std::vector<int> labels;  // 0 or 1, aligned with the input sentences
  std::vector<double> scores;
};

// Top-k keeps the k highest scores, earlier positions winning ties;
// threshold keeps every sentence with score >= threshold. A score outside
// [0, 1] (or NaN) raises Error(kContract).
SentenceLabels LabelSentences(std::span<const std::string> sentences,
                              const SentenceScorer &scorer, const SelectionRule &rule);

// Keeps the labeled records of an article, in order.
Article SelectLabeled(const Article &article, const SentenceLabels &labels);

// Per-category importance for soccer summaries, keyed by EventCategory::Name
// (with "Other" covering every untagged category).
class ImportanceTable {
 public:
  // Score 5, Red Card 4, Yellow Card 3, Substitution 2, Foul 1, Other 0.
  static ImportanceTable Default();

  // Throws Error(kValidation) for negative or non-finite weights.
  void Set(const std::string &category, double weight);
  double Weight(const EventCategory &category) const;
  const std::map<std::string, double> &weights() const { return weights_; }

 private:
  std::map<std::string, double> weights_;
};

// Indices (into article.sentences) kept by the soccer summarizer: the
// `budget` in-match sentences whose events rank highest by (importance desc,
// minute asc, position asc), plus every post-match sentence, in article
// order. budget < 1 raises Error(kUsage).
std::vector<std::size_t> SelectSoccerSentences(std::span<const EventRecord> events,
                                               const Article &article,
                                               const ImportanceTable &table,
                                               std::size_t budget);

Article SummarizeSoccer(std::span<const EventRecord> events, const Article &article,
                        const ImportanceTable &table, std::size_t budget);

// Labels sidecar for a soccer summary: kept sentences are labeled 1; the
// score is the event's importance over the table maximum for in-match
// sentences, 1 for post-match and 0 for pre-match sentences.
SentenceLabels SoccerLabels(std::span<const EventRecord> events, const Article &article,
                            const ImportanceTable &table,
                            std::span<const std::size_t> kept);

// index TAB label TAB score, one line per sentence.
std::string SerializeLabels(const SentenceLabels &labels);

}  // namespace newsbot

#endif  // NEWSBOT_SUMMARIZER_H_
