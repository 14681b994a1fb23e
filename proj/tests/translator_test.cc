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

#include <string>
#include <vector>

#include "doctest.h"
#include "newsbot/random.h"
#include "newsbot/translator.h"
#include "test_support.h"

namespace newsbot {
namespace {

using testing::ThrownKind;
using testing::ThrownMessage;

Glossary TwoEventGlossary() {
  return Glossary({{"西班牙人", "Espanyol", TermKind::kTeam},
                   {"迪达克", "Didac", TermKind::kPlayer}});
}

// Backend that deletes one placeholder from its input.
class DroppingBackend : public TranslationBackend {
 public:
  explicit DroppingBackend(std::string victim) : victim_(std::move(victim)) {}
  std::string Translate(std::string_view text, std::string_view,
                        std::string_view) const override {
    std::string out(text);
    const auto at = out.find(victim_);
    if (at != std::string::npos) out.erase(at, victim_.size());
    return out;
  }

 private:
  std::string victim_;
};

class DoublingBackend : public TranslationBackend {
 public:
  std::string Translate(std::string_view text, std::string_view,
                        std::string_view) const override {
    return std::string(text) + std::string(text);
  }
};

TEST_SUITE("translator") {

TEST_CASE("two-event fixture masking") {
  const MaskedText m = MaskEntities("西班牙人迪达克打入一球", TwoEventGlossary());
  CHECK(m.text == "⟨NE1⟩⟨NE2⟩打入一球");
  REQUIRE(m.placeholders.size() == 2);
  CHECK(m.placeholders.at(1).target_term == "Espanyol");
  CHECK(m.placeholders.at(2).target_term == "Didac");
}

TEST_CASE("empty glossary masks nothing") {
  const MaskedText m = MaskEntities("西班牙人迪达克", Glossary());
  CHECK(m.text == "西班牙人迪达克");
  CHECK(m.placeholders.empty());
}

TEST_CASE("longest match wins and repeats reuse ids") {
  const Glossary g({{"B", "b", TermKind::kOther}, {"AB", "ab", TermKind::kOther}});
  const MaskedText m = MaskEntities("AB", g);
  CHECK(m.text == "⟨NE1⟩");
  CHECK(m.placeholders.at(1).source_term == "AB");
  const MaskedText r = MaskEntities("B AB B", g);
  CHECK(r.text == "⟨NE1⟩ ⟨NE2⟩ ⟨NE1⟩");
  CHECK(FindPlaceholders(r.text) == std::vector<int>{1, 2, 1});
}

TEST_CASE("masking is idempotent") {
  const MaskedText once = MaskEntities("西班牙人迪达克打入一球", TwoEventGlossary());
  const MaskedText twice = MaskEntities(once.text, TwoEventGlossary());
  CHECK(twice.text == once.text);
  CHECK(twice.placeholders.empty());
}

TEST_CASE("glossary validation and parsing") {
  CHECK(ThrownKind([] { Glossary({{"", "x", TermKind::kOther}}); }) == ErrorKind::kValidation);
  CHECK(ThrownKind([] {
          Glossary({{"a", "x", TermKind::kOther}, {"a", "y", TermKind::kOther}});
        }) == ErrorKind::kValidation);
  const Glossary g = ParseGlossary(testing::ReadData("glossary.tsv"));
  CHECK(g.entries().size() == 9);
  CHECK(g.Inverse().at("Espanyol") == "西班牙人");
  CHECK(g.entries()[2].kind == TermKind::kPlayer);
  CHECK(ThrownKind([] { ParseGlossary("only-one-field\n"); }) == ErrorKind::kParse);
}

TEST_CASE("identity backend round trip") {
  const MaskedText m = MaskEntities("西班牙人迪达克打入一球", TwoEventGlossary());
  const std::string t = TranslateMasked(m, IdentityBackend(), "zh", "zh");
  CHECK(t == m.text);
  CHECK(Unmask(t, m.placeholders) == "EspanyolDidac打入一球");
}

TEST_CASE("dictionary backend on the two-event fixture goal") {
  const DictionaryBackend backend(std::vector<DictionaryBackend::Entry>{{"打入一球", "scored a goal"}});
  const MaskedText m = MaskEntities("西班牙人迪达克打入一球", TwoEventGlossary());
  const std::string t = TranslateMasked(m, backend, "zh", "en");
  CHECK(t == "⟨NE1⟩⟨NE2⟩ scored a goal");
  UnmaskOptions spaced;
  spaced.adjacent_separator = " ";
  CHECK(Unmask(t, m.placeholders, spaced) == "Espanyol Didac scored a goal");
}

TEST_CASE("dictionary numbers and ordinals") {
  const DictionaryBackend backend = ParseDictionary(testing::ReadData("dictionary.tsv"));
  CHECK(backend.Translate("第23分钟，⟨NE1⟩打入一球。", "zh", "en") ==
        "In the 23rd minute, ⟨NE1⟩ scored a goal.");
  CHECK(backend.Translate("⟨NE1⟩以1-0战胜⟨NE2⟩。", "zh", "en") ==
        "⟨NE1⟩ won 1-0 against ⟨NE2⟩.");
  CHECK(backend.Translate("", "zh", "en") == "");
}

TEST_CASE("lost or duplicated placeholders are integrity errors") {
  const MaskedText m = MaskEntities("西班牙人迪达克打入一球", TwoEventGlossary());
  const DroppingBackend drop("⟨NE2⟩");
  CHECK(ThrownKind([&] { TranslateMasked(m, drop, "zh", "en"); }) == ErrorKind::kIntegrity);
  const std::string msg = ThrownMessage([&] { TranslateMasked(m, drop, "zh", "en"); });
  CHECK(msg.find('2') != std::string::npos);
  CHECK(msg.find("missing") != std::string::npos);
  CHECK(ThrownKind([&] { TranslateMasked(m, DoublingBackend(), "zh", "en"); }) ==
        ErrorKind::kIntegrity);
}

TEST_CASE("unmask edge cases") {
  CHECK(Unmask("no placeholders here", {}) == "no placeholders here");
  CHECK(ThrownKind([] { Unmask("⟨NE9⟩", {}); }) == ErrorKind::kLookup);
  CHECK(ThrownMessage([] { Unmask("⟨NE9⟩", {}); }).find('9') != std::string::npos);
}

TEST_CASE("property: identity backend plus unmask restores the glossary target text") {
  // Oracle: replace source terms by target terms with an independent greedy scan.
  const Glossary g({{"AB", "<ab>", TermKind::kOther},
                    {"B", "<b>", TermKind::kOther},
                    {"西班牙人", "Espanyol", TermKind::kTeam},
                    {"CBA", "<cba>", TermKind::kOther}});
  static const char *kPieces[] = {"A", "B", "C", " ", "西班牙人", "球", "。"};
  RandomStream rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const uint64_t n = rng.UniformBelow(10);
    for (uint64_t i = 0; i < n; ++i) text += kPieces[rng.UniformBelow(7)];
    std::string expected;
    for (std::size_t pos = 0; pos < text.size();) {
      const GlossaryEntry *best = nullptr;
      for (const GlossaryEntry &e : g.entries()) {
        if (text.compare(pos, e.source_term.size(), e.source_term) == 0 &&
            (best == nullptr || e.source_term.size() > best->source_term.size())) {
          best = &e;
        }
      }
      if (best != nullptr) {
        expected += best->target_term;
        pos += best->source_term.size();
      } else {
        expected += text[pos++];
      }
    }
    CAPTURE(text);
    const MaskedText m = MaskEntities(text, g);
    CHECK(Unmask(TranslateMasked(m, IdentityBackend(), "x", "x"), m.placeholders) == expected);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace newsbot
