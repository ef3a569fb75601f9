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

// Builders and generators shared by the unit and acceptance suites.

#ifndef TODC_TESTS_FIXTURES_HPP_
#define TODC_TESTS_FIXTURES_HPP_

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "todc/schema.hpp"

namespace todc::testing {

inline Turn make_turn(std::size_t index, Speaker s, std::string text) {
  Turn t;
  t.index = index;
  t.speaker = s;
  t.text = std::move(text);
  return t;
}

/// TOD dialogue with `exchanges` user/system pairs. Every user turn carries a
/// cumulative belief state that gains one restaurant slot per exchange.
inline Dialogue tod_dialogue(const std::string& id, std::size_t exchanges, std::string dataset = "toy") {
  static const char* kSlots[][2] = {{"food", "italian"}, {"area", "centre"}, {"pricerange", "cheap"},
                                    {"people", "2"},     {"day", "monday"},  {"time", "18:00"}};
  Dialogue d;
  d.id = id;
  d.dataset = std::move(dataset);
  d.domains = {"restaurant"};
  BeliefState state;
  for (std::size_t e = 0; e < exchanges; ++e) {
    const auto& slot = kSlots[e % 6];
    state.set("restaurant", slot[0], slot[1]);
    Turn u = make_turn(2 * e, Speaker::kSpeaker1, std::string("i want ") + slot[1] + " please " + id);
    u.belief = state;
    Turn s = make_turn(2 * e + 1, Speaker::kSpeaker2,
                       "[restaurant_name] is a " + std::string(slot[1]) + " place for " + id + " turn " +
                           std::to_string(e));
    s.acts = std::vector<DialogueAct>{{"inform", "restaurant", std::string(slot[0]), std::string(slot[1])}};
    s.db_result = e + 1;
    d.turns.push_back(std::move(u));
    d.turns.push_back(std::move(s));
  }
  return d;
}

inline std::string random_word(std::mt19937& rng, std::size_t vocab = 8) {
  static const char* kWords[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};
  return kWords[std::uniform_int_distribution<std::size_t>(0, vocab - 1)(rng)];
}

inline std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t min_len, std::size_t max_len,
                                              std::size_t vocab = 8) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(min_len, max_len)(rng);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_word(rng, vocab));
  return out;
}

/// Random valid belief state: tokens without delimiters, multi-word values.
inline BeliefState random_belief(std::mt19937& rng, std::size_t max_triples = 6) {
  static const char* kDomains[] = {"hotel", "restaurant", "taxi", "train", "attraction"};
  static const char* kSlotNames[] = {"area", "food", "stars", "day", "people", "leaveat", "book-time"};
  static const char* kValues[] = {"centre", "north", "4", "cheap", "the gonville hotel", "18:45",
                                  "don't care", "saint john's college", "a]b", "2"};
  BeliefState b;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const auto* dom = kDomains[std::uniform_int_distribution<std::size_t>(0, 4)(rng)];
    const auto* slot = kSlotNames[std::uniform_int_distribution<std::size_t>(0, 6)(rng)];
    const auto* value = kValues[std::uniform_int_distribution<std::size_t>(0, 9)(rng)];
    b.set(dom, slot, value);
  }
  return b;
}

/// Mixed corpus exercising every task annotation.
inline std::vector<Dialogue> toy_corpus(std::size_t n, unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::vector<Dialogue> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "toy-" + std::to_string(i);
    switch (i % 5) {
      case 0:
      case 1: {
        auto d = tod_dialogue(id, 1 + i % 4);
        if (i % 2 == 0) {
          GoalDomain g;
          g.constraints = {{"food", "italian"}};
          g.requestables = {"phone"};
          g.entity_required = true;
          d.goal = Goal{{{"restaurant", g}}};
        }
        out.push_back(std::move(d));
        break;
      }
      case 2: {
        Dialogue d;
        d.id = id;
        d.dataset = "toy-intent";
        d.domains = {"banking"};
        Turn t = make_turn(0, Speaker::kSpeaker1, "how do i " + random_word(rng) + " my card");
        t.intent = "intent_" + random_word(rng, 4);
        d.turns.push_back(std::move(t));
        out.push_back(std::move(d));
        break;
      }
      case 3: {
        Dialogue d;
        d.id = id;
        d.dataset = "toy-summ";
        d.domains = {"open"};
        const std::size_t turns = 2 + i % 4;
        for (std::size_t k = 0; k < turns; ++k)
          d.turns.push_back(make_turn(k, k % 2 ? Speaker::kSpeaker2 : Speaker::kSpeaker1,
                                      "line " + std::to_string(k) + " " + random_word(rng)));
        d.summary = "they talk about " + random_word(rng);
        d.mcqa = std::vector<McqaItem>{{"what is discussed?", {"cards", "loans", "weather"}, i % 3}};
        out.push_back(std::move(d));
        break;
      }
      default: {
        Dialogue d;
        d.id = id;
        d.dataset = "toy-nup";
        d.domains = {"open"};
        d.turns.push_back(make_turn(0, Speaker::kSpeaker1, "my screen is black"));
        d.turns.push_back(make_turn(1, Speaker::kSpeaker2, "did you check the cable " + std::to_string(i)));
        if (i % 10 == 4)
          d.nup_candidates = std::vector<NupCandidate>{{"yes it is plugged in", true}, {"i like cats", false}};
        out.push_back(std::move(d));
        break;
      }
    }
  }
  return out;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("todc-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(file(name), std::ios::binary) << content;
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace todc::testing

#endif  // TODC_TESTS_FIXTURES_HPP_
