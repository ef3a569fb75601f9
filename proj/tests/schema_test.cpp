// Copyright 2026 The todc Authors.
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
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "todc/schema.hpp"
#include "todc/text.hpp"

namespace todc {
namespace {

using testing::make_turn;
using testing::tod_dialogue;

TEST(Text, NormalizeValue) {
  EXPECT_EQ(normalize_value("  The  Gonville\tHotel. "), "the gonville hotel");
  EXPECT_EQ(normalize_value("\"Italian\""), "italian");
  EXPECT_EQ(normalize_value("don't care"), "don't care");
  EXPECT_EQ(normalize_value("..."), "");
}

TEST(Text, TokenizeSeparatesPunctuationAndKeepsPlaceholders) {
  EXPECT_EQ(tokenize("Hello, [restaurant_name] is at [value_address]!"),
            (std::vector<std::string>{"hello", ",", "[restaurant_name]", "is", "at", "[value_address]", "!"}));
  EXPECT_EQ(tokenize("don't"), (std::vector<std::string>{"don", "'", "t"}));
  EXPECT_EQ(tokenize("[ not a placeholder]"), (std::vector<std::string>{"[", "not", "a", "placeholder", "]"}));
  EXPECT_TRUE(tokenize("   ").empty());
}

TEST(BeliefState, OneValuePerSlot) {
  BeliefState b;
  EXPECT_TRUE(b.insert("Restaurant", "food", "Italian"));
  EXPECT_TRUE(b.insert("restaurant", "food", "italian."));
  EXPECT_FALSE(b.insert("restaurant", "food", "thai"));
  EXPECT_EQ(b.get("restaurant", "food"), "italian");
  b.set("restaurant", "food", "thai");
  EXPECT_EQ(b.get("restaurant", "food"), "thai");
  EXPECT_EQ(b.size(), 1u);
}

TEST(BeliefState, EqualityIgnoresInsertionOrder) {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    auto triples = testing::random_belief(rng).triples();
    BeliefState a;
    for (const auto& t : triples) a.set(t.domain, t.slot, t.value);
    std::shuffle(triples.begin(), triples.end(), rng);
    BeliefState b;
    for (const auto& t : triples) b.set(t.domain, t.slot, t.value);
    ASSERT_EQ(a, b);
  }
}

Dialogue two_turn() {
  Dialogue d;
  d.id = "d1";
  d.dataset = "toy";
  d.domains = {"hotel"};
  d.turns = {make_turn(0, Speaker::kSpeaker1, "i need a hotel"),
             make_turn(1, Speaker::kSpeaker2, "which area?")};
  return d;
}

TEST(Validate, WellFormedDialogueHasNoViolations) {
  EXPECT_TRUE(validate_dialogue(two_turn()).empty());
  EXPECT_TRUE(validate_dialogue(tod_dialogue("x", 3)).empty());
}

TEST(Validate, EmptyTurnTextNamesTheTurn) {
  auto d = two_turn();
  d.turns[1].text = "   ";
  const auto v = validate_dialogue(d);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "turns[1].text");
  EXPECT_NE(v[0].rule.find("text non-empty"), std::string::npos);
}

TEST(Validate, McqaAnswerIndexBound) {
  auto d = two_turn();
  d.mcqa = std::vector<McqaItem>{{"q?", {"x", "y", "z"}, 3}};
  const auto v = validate_dialogue(d);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "mcqa[0].answer_index");
  d.mcqa->front().answer_index = 2;
  EXPECT_TRUE(validate_dialogue(d).empty());
}

TEST(Validate, StructuralRules) {
  auto d = two_turn();
  d.turns[1].index = 5;
  d.domains.clear();
  d.turns[0].belief = BeliefState{{"hotel", "area", "north, south"}, {"hotel", "name", "..."}};
  const auto v = validate_dialogue(d);
  auto has = [&](const std::string& field) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.field.rfind(field, 0) == 0; });
  };
  EXPECT_TRUE(has("domains"));
  EXPECT_TRUE(has("turns[1].index"));
  EXPECT_TRUE(has("turns[0].belief[hotel.area]"));
  EXPECT_TRUE(has("turns[0].belief[hotel.name]"));
  // Pure: same input, same list.
  EXPECT_EQ(v, validate_dialogue(d));
}

TEST(Validate, ConsecutiveSameSpeakerTurnsAllowed) {
  auto d = two_turn();
  d.turns[1].speaker = Speaker::kSpeaker1;
  EXPECT_TRUE(validate_dialogue(d).empty());
}

Dialogue random_dialogue(std::mt19937& rng, int i) {
  auto d = tod_dialogue("r" + std::to_string(i), 1 + i % 3);
  if (i % 2) d.summary = "summary " + testing::random_word(rng);
  if (i % 3 == 0) d.turns[0].intent = "book";
  if (i % 4 == 0) d.mcqa = std::vector<McqaItem>{{"q", {"a", "b"}, 1}};
  if (i % 5 == 0) d.nup_candidates = std::vector<NupCandidate>{{"next", true}, {"other", false}};
  if (i % 2 == 0) {
    GoalDomain g;
    g.constraints = {{"area", "north"}};
    g.requestables = {"phone", "postcode"};
    g.entity_required = i % 4 == 0;
    d.goal = Goal{{{"restaurant", g}}};
  }
  d.turns[0].belief = testing::random_belief(rng);
  return d;
}

TEST(Json, CanonicalRoundTrip) {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto d = random_dialogue(rng, i);
    ASSERT_TRUE(validate_dialogue(d).empty());
    const auto line = dialogue_to_line(d);
    EXPECT_EQ(dialogue_from_line(line), d) << line;
    EXPECT_EQ(line.find('\n'), std::string::npos);
  }
}

TEST(Json, OptionalFieldsOmitted) {
  const auto j = dialogue_to_json(two_turn());
  EXPECT_FALSE(j.contains("goal"));
  EXPECT_FALSE(j.contains("summary"));
  EXPECT_FALSE(j["turns"][0].contains("belief"));
  EXPECT_EQ(j["turns"][1]["speaker"], "speaker2");
}

TEST(Json, RejectsMalformedRecords) {
  EXPECT_THROW(dialogue_from_line("{not json"), SchemaError);
  EXPECT_THROW(dialogue_from_line(R"({"id":"a","dataset":"x","domains":["h"],"turns":[],"extra":1})"), SchemaError);
  EXPECT_THROW(dialogue_from_line(R"({"id":"a","dataset":"x","domains":["h"],"turns":[{"index":-1,"speaker":"speaker1","text":"t"}]})"),
               SchemaError);
  EXPECT_THROW(dialogue_from_line(R"({"id":"a","dataset":"x","domains":["h"],"turns":[{"index":0,"speaker":"bot","text":"t"}]})"),
               SchemaError);
  EXPECT_THROW(
      dialogue_from_line(R"({"id":"a","dataset":"x","domains":["h"],"turns":[{"index":0,"speaker":"speaker1","text":"t",)"
                         R"("belief":[{"domain":"h","slot":"s","value":"1"},{"domain":"h","slot":"s","value":"2"}]}]})"),
      SchemaError);
}

TEST(TaskKind, SevenVariantsRoundTripByName) {
  EXPECT_EQ(kAllTasks.size(), 7u);
  for (TaskKind t : kAllTasks) EXPECT_EQ(parse_task(task_name(t)), t);
  EXPECT_EQ(parse_task("DST"), TaskKind::kDst);
  EXPECT_FALSE(parse_task("nlp").has_value());
}

}  // namespace
}  // namespace todc
