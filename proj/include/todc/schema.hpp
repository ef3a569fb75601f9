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

// Canonical dialogue data model shared by every stage of the pipeline, plus
// its line-delimited JSON encoding.

#ifndef TODC_SCHEMA_HPP_
#define TODC_SCHEMA_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "todc/text.hpp"

namespace todc {

using json = nlohmann::json;

/// Raised when a record cannot be decoded into the canonical schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Speaker { kSpeaker1, kSpeaker2 };

inline std::string_view speaker_name(Speaker s) {
  return s == Speaker::kSpeaker1 ? "speaker1" : "speaker2";
}

enum class TaskKind { kNlg, kDst, kPol, kIc, kMcqa, kNup, kSumm };

// Also the fixed order in which corpus compilation emits tasks.
inline constexpr std::array<TaskKind, 7> kAllTasks = {
    TaskKind::kNlg, TaskKind::kDst,  TaskKind::kPol, TaskKind::kIc,
    TaskKind::kMcqa, TaskKind::kNup, TaskKind::kSumm};

inline std::string_view task_name(TaskKind t) {
  switch (t) {
    case TaskKind::kNlg: return "nlg";
    case TaskKind::kDst: return "dst";
    case TaskKind::kPol: return "pol";
    case TaskKind::kIc: return "ic";
    case TaskKind::kMcqa: return "mcqa";
    case TaskKind::kNup: return "nup";
    case TaskKind::kSumm: return "summ";
  }
  return "?";
}

inline std::optional<TaskKind> parse_task(std::string_view name) {
  const std::string lower = to_lower(trim(name));
  for (TaskKind t : kAllTasks)
    if (task_name(t) == lower) return t;
  return std::nullopt;
}

struct Triple {
  std::string domain;
  std::string slot;
  std::string value;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Set of (domain, slot, value) constraints with at most one value per
/// (domain, slot). Domains and slots are lowercased and trimmed, values go
/// through normalize_value, so equality is insensitive to insertion order and
/// surface formatting.
class BeliefState {
 public:
  using Key = std::pair<std::string, std::string>;

  BeliefState() = default;
  BeliefState(std::initializer_list<Triple> triples) {
    for (const auto& t : triples) set(t.domain, t.slot, t.value);
  }

  /// Inserts unless (domain, slot) already holds a different value; returns
  /// false on such a conflict and leaves the state unchanged.
  bool insert(std::string_view domain, std::string_view slot, std::string_view value) {
    Key key{to_lower(trim(domain)), to_lower(trim(slot))};
    std::string v = normalize_value(value);
    auto [it, inserted] = entries_.emplace(std::move(key), v);
    return inserted || it->second == v;
  }

  /// Inserts or overwrites.
  void set(std::string_view domain, std::string_view slot, std::string_view value) {
    entries_[Key{to_lower(trim(domain)), to_lower(trim(slot))}] = normalize_value(value);
  }

  std::optional<std::string> get(std::string_view domain, std::string_view slot) const {
    auto it = entries_.find(Key{std::string(domain), std::string(slot)});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    out.reserve(entries_.size());
    for (const auto& [k, v] : entries_) out.push_back({k.first, k.second, v});
    return out;
  }

  const std::map<Key, std::string>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const BeliefState&, const BeliefState&) = default;

 private:
  std::map<Key, std::string> entries_;
};

struct DialogueAct {
  std::string act;
  std::string domain;
  std::optional<std::string> slot;
  std::optional<std::string> value;

  friend bool operator==(const DialogueAct&, const DialogueAct&) = default;
};

struct Turn {
  std::size_t index = 0;
  Speaker speaker = Speaker::kSpeaker1;
  std::string text;
  std::optional<BeliefState> belief;
  std::optional<std::vector<DialogueAct>> acts;
  std::optional<std::string> intent;
  std::optional<std::uint64_t> db_result;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct GoalDomain {
  std::map<std::string, std::string> constraints;
  std::set<std::string> requestables;
  bool entity_required = false;

  friend bool operator==(const GoalDomain&, const GoalDomain&) = default;
};

struct Goal {
  std::map<std::string, GoalDomain> domains;

  friend bool operator==(const Goal&, const Goal&) = default;
};

struct McqaItem {
  std::string question;
  std::vector<std::string> options;
  std::size_t answer_index = 0;

  friend bool operator==(const McqaItem&, const McqaItem&) = default;
};

struct NupCandidate {
  std::string text;
  bool is_next = false;

  friend bool operator==(const NupCandidate&, const NupCandidate&) = default;
};

// Domain sentinel for open-domain corpora.
inline constexpr std::string_view kOpenDomain = "open";

struct Dialogue {
  std::string id;
  std::string dataset;
  std::set<std::string> domains;
  std::vector<Turn> turns;
  std::optional<Goal> goal;
  std::optional<std::string> summary;
  std::optional<std::vector<McqaItem>> mcqa;
  std::optional<std::vector<NupCandidate>> nup_candidates;

  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string field;
  std::string rule;

  std::string describe() const { return field + ": " + rule; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

inline bool has_any_of(std::string_view s, std::string_view chars) {
  return s.find_first_of(chars) != std::string_view::npos;
}

inline bool is_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (is_space(c)) return false;
  return true;
}

}  // namespace detail

/// Rules a belief state must satisfy to survive linearization: domain and
/// slot are single tokens free of `[`, `]` and `,`; values are non-empty and
/// free of `[` and `,`.
inline void check_belief(const BeliefState& state, const std::string& where,
                         std::vector<Violation>& out) {
  for (const auto& [key, value] : state.entries()) {
    const std::string field = where + "[" + key.first + "." + key.second + "]";
    if (!detail::is_token(key.first) || detail::has_any_of(key.first, "[],"))
      out.push_back({field, "domain must be a non-empty token without '[', ']' or ','"});
    if (!detail::is_token(key.second) || detail::has_any_of(key.second, "[],"))
      out.push_back({field, "slot must be a non-empty token without '[', ']' or ','"});
    if (value.empty())
      out.push_back({field, "value non-empty after normalization"});
    else if (detail::has_any_of(value, "[,"))
      out.push_back({field, "value must not contain '[' or ','"});
  }
}

/// Checks every structural invariant of a dialogue. Returns an empty list
/// iff the dialogue is valid; never throws.
inline std::vector<Violation> validate_dialogue(const Dialogue& d) {
  std::vector<Violation> out;
  if (trim(d.id).empty()) out.push_back({"id", "id non-empty"});
  if (trim(d.dataset).empty()) out.push_back({"dataset", "dataset non-empty"});
  if (d.domains.empty()) out.push_back({"domains", "domains non-empty"});
  for (const auto& dom : d.domains)
    if (!detail::is_token(dom)) out.push_back({"domains", "domain '" + dom + "' must be a non-empty token"});
  if (d.turns.empty()) out.push_back({"turns", "turns non-empty"});

  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    const Turn& t = d.turns[i];
    const std::string where = "turns[" + std::to_string(i) + "]";
    if (t.index != i)
      out.push_back({where + ".index", "index equals position (" + std::to_string(i) + ")"});
    if (trim(t.text).empty()) out.push_back({where + ".text", "text non-empty"});
    if (t.belief) check_belief(*t.belief, where + ".belief", out);
    if (t.acts) {
      for (std::size_t a = 0; a < t.acts->size(); ++a) {
        const auto& act = (*t.acts)[a];
        const std::string af = where + ".acts[" + std::to_string(a) + "]";
        if (trim(act.act).empty()) out.push_back({af + ".act", "act non-empty"});
        if (trim(act.domain).empty()) out.push_back({af + ".domain", "domain non-empty"});
      }
    }
    if (t.intent && trim(*t.intent).empty())
      out.push_back({where + ".intent", "intent non-empty when present"});
  }

  if (d.goal) {
    for (const auto& [dom, g] : d.goal->domains) {
      if (trim(dom).empty()) out.push_back({"goal", "goal domain key non-empty"});
      for (const auto& [slot, v] : g.constraints)
        if (trim(slot).empty()) out.push_back({"goal." + dom + ".constraints", "slot non-empty"});
    }
  }
  if (d.summary && trim(*d.summary).empty())
    out.push_back({"summary", "summary non-empty when present"});
  if (d.mcqa) {
    for (std::size_t q = 0; q < d.mcqa->size(); ++q) {
      const auto& item = (*d.mcqa)[q];
      const std::string where = "mcqa[" + std::to_string(q) + "]";
      if (trim(item.question).empty()) out.push_back({where + ".question", "question non-empty"});
      if (item.options.size() < 2) out.push_back({where + ".options", "at least 2 options"});
      for (const auto& o : item.options)
        if (trim(o).empty()) out.push_back({where + ".options", "option text non-empty"});
      if (item.answer_index >= item.options.size())
        out.push_back({where + ".answer_index",
                       "answer_index < |options| (" + std::to_string(item.answer_index) +
                           " >= " + std::to_string(item.options.size()) + ")"});
    }
  }
  if (d.nup_candidates) {
    for (std::size_t c = 0; c < d.nup_candidates->size(); ++c)
      if (trim((*d.nup_candidates)[c].text).empty())
        out.push_back({"nup_candidates[" + std::to_string(c) + "].text", "text non-empty"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical JSON encoding. Field names are snake_case; optional fields are
// omitted when absent; unknown fields are rejected.

namespace detail {

inline void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                           std::string_view what) {
  if (!obj.is_object()) throw SchemaError(std::string(what) + ": expected object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw SchemaError(std::string(what) + ": unknown field '" + key + "'");
  }
}

inline const json& require(const json& obj, const char* key, std::string_view what) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

inline std::string get_string(const json& v, std::string_view what) {
  if (!v.is_string()) throw SchemaError(std::string(what) + ": expected string");
  return v.get<std::string>();
}

inline std::uint64_t get_count(const json& v, std::string_view what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw SchemaError(std::string(what) + ": expected non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline json belief_to_json(const BeliefState& b) {
  json arr = json::array();
  for (const auto& t : b.triples())
    arr.push_back({{"domain", t.domain}, {"slot", t.slot}, {"value", t.value}});
  return arr;
}

inline BeliefState belief_from_json(const json& arr) {
  if (!arr.is_array()) throw SchemaError("belief: expected array of triples");
  BeliefState b;
  for (const auto& t : arr) {
    detail::reject_unknown(t, {"domain", "slot", "value"}, "belief triple");
    const auto domain = detail::get_string(detail::require(t, "domain", "belief"), "belief.domain");
    const auto slot = detail::get_string(detail::require(t, "slot", "belief"), "belief.slot");
    const auto value = detail::get_string(detail::require(t, "value", "belief"), "belief.value");
    if (!b.insert(domain, slot, value))
      throw SchemaError("belief: conflicting values for " + domain + "." + slot);
  }
  return b;
}

inline json act_to_json(const DialogueAct& a) {
  json j = {{"act", a.act}, {"domain", a.domain}};
  if (a.slot) j["slot"] = *a.slot;
  if (a.value) j["value"] = *a.value;
  return j;
}

inline DialogueAct act_from_json(const json& j) {
  detail::reject_unknown(j, {"act", "domain", "slot", "value"}, "act");
  DialogueAct a;
  a.act = detail::get_string(detail::require(j, "act", "act"), "act.act");
  a.domain = detail::get_string(detail::require(j, "domain", "act"), "act.domain");
  if (j.contains("slot")) a.slot = detail::get_string(j["slot"], "act.slot");
  if (j.contains("value")) a.value = detail::get_string(j["value"], "act.value");
  return a;
}

inline Speaker speaker_from_string(std::string_view s) {
  if (s == "speaker1" || s == "user") return Speaker::kSpeaker1;
  if (s == "speaker2" || s == "system") return Speaker::kSpeaker2;
  throw SchemaError("unknown speaker '" + std::string(s) + "'");
}

inline json turn_to_json(const Turn& t) {
  json j = {{"index", t.index}, {"speaker", speaker_name(t.speaker)}, {"text", t.text}};
  if (t.belief) j["belief"] = belief_to_json(*t.belief);
  if (t.acts) {
    json arr = json::array();
    for (const auto& a : *t.acts) arr.push_back(act_to_json(a));
    j["acts"] = std::move(arr);
  }
  if (t.intent) j["intent"] = *t.intent;
  if (t.db_result) j["db_result"] = *t.db_result;
  return j;
}

inline Turn turn_from_json(const json& j) {
  detail::reject_unknown(j, {"index", "speaker", "text", "belief", "acts", "intent", "db_result"},
                         "turn");
  Turn t;
  t.index = detail::get_count(detail::require(j, "index", "turn"), "turn.index");
  t.speaker = speaker_from_string(
      detail::get_string(detail::require(j, "speaker", "turn"), "turn.speaker"));
  t.text = detail::get_string(detail::require(j, "text", "turn"), "turn.text");
  if (j.contains("belief")) t.belief = belief_from_json(j["belief"]);
  if (j.contains("acts")) {
    if (!j["acts"].is_array()) throw SchemaError("turn.acts: expected array");
    std::vector<DialogueAct> acts;
    for (const auto& a : j["acts"]) acts.push_back(act_from_json(a));
    t.acts = std::move(acts);
  }
  if (j.contains("intent")) t.intent = detail::get_string(j["intent"], "turn.intent");
  if (j.contains("db_result")) t.db_result = detail::get_count(j["db_result"], "turn.db_result");
  return t;
}

inline json goal_to_json(const Goal& g) {
  json j = json::object();
  for (const auto& [dom, gd] : g.domains) {
    j[dom] = {{"constraints", gd.constraints},
              {"requestables", gd.requestables},
              {"entity_required", gd.entity_required}};
  }
  return j;
}

inline Goal goal_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("goal: expected object keyed by domain");
  Goal g;
  for (const auto& [dom, v] : j.items()) {
    detail::reject_unknown(v, {"constraints", "requestables", "entity_required"}, "goal." + dom);
    GoalDomain gd;
    if (v.contains("constraints")) {
      if (!v["constraints"].is_object()) throw SchemaError("goal.constraints: expected object");
      for (const auto& [slot, val] : v["constraints"].items())
        gd.constraints[slot] = detail::get_string(val, "goal.constraints");
    }
    if (v.contains("requestables")) {
      if (!v["requestables"].is_array()) throw SchemaError("goal.requestables: expected array");
      for (const auto& r : v["requestables"])
        gd.requestables.insert(detail::get_string(r, "goal.requestables"));
    }
    if (v.contains("entity_required")) {
      if (!v["entity_required"].is_boolean()) throw SchemaError("goal.entity_required: expected bool");
      gd.entity_required = v["entity_required"].get<bool>();
    }
    g.domains.emplace(dom, std::move(gd));
  }
  return g;
}

inline json dialogue_to_json(const Dialogue& d) {
  json j = {{"id", d.id}, {"dataset", d.dataset}, {"domains", d.domains}};
  json turns = json::array();
  for (const auto& t : d.turns) turns.push_back(turn_to_json(t));
  j["turns"] = std::move(turns);
  if (d.goal) j["goal"] = goal_to_json(*d.goal);
  if (d.summary) j["summary"] = *d.summary;
  if (d.mcqa) {
    json arr = json::array();
    for (const auto& q : *d.mcqa)
      arr.push_back({{"question", q.question}, {"options", q.options}, {"answer_index", q.answer_index}});
    j["mcqa"] = std::move(arr);
  }
  if (d.nup_candidates) {
    json arr = json::array();
    for (const auto& c : *d.nup_candidates) arr.push_back({{"text", c.text}, {"is_next", c.is_next}});
    j["nup_candidates"] = std::move(arr);
  }
  return j;
}

inline Dialogue dialogue_from_json(const json& j) {
  detail::reject_unknown(
      j, {"id", "dataset", "domains", "turns", "goal", "summary", "mcqa", "nup_candidates"},
      "dialogue");
  Dialogue d;
  d.id = detail::get_string(detail::require(j, "id", "dialogue"), "id");
  d.dataset = detail::get_string(detail::require(j, "dataset", "dialogue"), "dataset");
  const json& domains = detail::require(j, "domains", "dialogue");
  if (!domains.is_array()) throw SchemaError("domains: expected array");
  for (const auto& dom : domains) d.domains.insert(detail::get_string(dom, "domains"));
  const json& turns = detail::require(j, "turns", "dialogue");
  if (!turns.is_array()) throw SchemaError("turns: expected array");
  for (const auto& t : turns) d.turns.push_back(turn_from_json(t));
  if (j.contains("goal")) d.goal = goal_from_json(j["goal"]);
  if (j.contains("summary")) d.summary = detail::get_string(j["summary"], "summary");
  if (j.contains("mcqa")) {
    if (!j["mcqa"].is_array()) throw SchemaError("mcqa: expected array");
    std::vector<McqaItem> items;
    for (const auto& q : j["mcqa"]) {
      detail::reject_unknown(q, {"question", "options", "answer_index"}, "mcqa item");
      McqaItem item;
      item.question = detail::get_string(detail::require(q, "question", "mcqa"), "mcqa.question");
      const json& opts = detail::require(q, "options", "mcqa");
      if (!opts.is_array()) throw SchemaError("mcqa.options: expected array");
      for (const auto& o : opts) item.options.push_back(detail::get_string(o, "mcqa.options"));
      item.answer_index =
          detail::get_count(detail::require(q, "answer_index", "mcqa"), "mcqa.answer_index");
      items.push_back(std::move(item));
    }
    d.mcqa = std::move(items);
  }
  if (j.contains("nup_candidates")) {
    if (!j["nup_candidates"].is_array()) throw SchemaError("nup_candidates: expected array");
    std::vector<NupCandidate> cands;
    for (const auto& c : j["nup_candidates"]) {
      detail::reject_unknown(c, {"text", "is_next"}, "nup candidate");
      NupCandidate cand;
      cand.text = detail::get_string(detail::require(c, "text", "nup"), "nup_candidates.text");
      const json& next = detail::require(c, "is_next", "nup");
      if (!next.is_boolean()) throw SchemaError("nup_candidates.is_next: expected bool");
      cand.is_next = next.get<bool>();
      cands.push_back(std::move(cand));
    }
    d.nup_candidates = std::move(cands);
  }
  return d;
}

/// One canonical line (no trailing newline).
inline std::string dialogue_to_line(const Dialogue& d) { return dialogue_to_json(d).dump(); }

inline Dialogue dialogue_from_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return dialogue_from_json(j);
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace todc

#endif  // TODC_SCHEMA_HPP_
