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

// Dataset adapters: turn third-party dialogue formats into canonical
// Dialogue values, and load/validate canonical files.

#ifndef TODC_INGEST_HPP_
#define TODC_INGEST_HPP_

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "todc/schema.hpp"
#include "todc/text.hpp"

namespace todc {

/// Unreadable input; aborts the whole ingest.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single raw record the adapter cannot convert. Processing continues.
class AdapterRejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AdapterKind { kWizard, kIntentTable, kSummPair, kCanonical };

inline std::string_view adapter_name(AdapterKind a) {
  switch (a) {
    case AdapterKind::kWizard: return "wizard";
    case AdapterKind::kIntentTable: return "intent_table";
    case AdapterKind::kSummPair: return "summ_pair";
    case AdapterKind::kCanonical: return "canonical";
  }
  return "?";
}

inline std::optional<AdapterKind> parse_adapter(std::string_view name) {
  for (auto a : {AdapterKind::kWizard, AdapterKind::kIntentTable, AdapterKind::kSummPair,
                 AdapterKind::kCanonical})
    if (adapter_name(a) == name) return a;
  return std::nullopt;
}

struct DatasetDescriptor {
  std::string name;
  std::set<TaskKind> tasks;
  AdapterKind adapter = AdapterKind::kCanonical;
  std::optional<int> domain_count;  // nullopt means open-domain
};

/// The pre-training dataset inventory: name, annotated tasks, adapter
/// family and domain count for each of the fifteen source corpora.
inline const std::vector<DatasetDescriptor>& builtin_datasets() {
  using T = TaskKind;
  using A = AdapterKind;
  static const std::vector<DatasetDescriptor> kDatasets = {
      {"metalwoz", {T::kNlg}, A::kWizard, 47},
      {"mutual", {T::kMcqa}, A::kCanonical, std::nullopt},
      {"dream", {T::kMcqa}, A::kCanonical, std::nullopt},
      {"snips", {T::kIc}, A::kIntentTable, 9},
      {"clinc", {T::kIc}, A::kIntentTable, 10},
      {"atis", {T::kIc}, A::kIntentTable, 1},
      {"ubuntu", {T::kNup}, A::kCanonical, 1},
      {"mediasum", {T::kSumm}, A::kSummPair, std::nullopt},
      {"kvret", {T::kDst, T::kNlg}, A::kWizard, 3},
      {"woz", {T::kDst, T::kNlg}, A::kWizard, 1},
      {"taskmaster", {T::kDst, T::kNlg}, A::kWizard, 6},
      {"camrest676", {T::kDst, T::kNlg}, A::kWizard, 1},
      {"msr-e2e", {T::kDst, T::kPol, T::kNlg}, A::kCanonical, 3},
      {"frames", {T::kDst, T::kPol, T::kNlg}, A::kCanonical, 1},
      {"schema-guided", {T::kDst, T::kPol, T::kNlg}, A::kCanonical, 17},
  };
  return kDatasets;
}

inline const DatasetDescriptor* find_dataset(std::string_view name) {
  const std::string key = to_lower(trim(name));
  for (const auto& d : builtin_datasets())
    if (d.name == key) return &d;
  return nullptr;
}

/// Annotations a dialogue carries that its dataset does not define (e.g. a
/// belief state on a dataset without DST).
inline std::vector<Violation> check_against_descriptor(const Dialogue& d,
                                                       const DatasetDescriptor& desc) {
  std::vector<Violation> out;
  auto allows = [&](TaskKind t) { return desc.tasks.count(t) > 0; };
  for (const auto& t : d.turns) {
    const std::string where = "turns[" + std::to_string(t.index) + "]";
    if (t.belief && !allows(TaskKind::kDst))
      out.push_back({where + ".belief", "dataset " + desc.name + " defines no belief states"});
    if (t.acts && !allows(TaskKind::kPol))
      out.push_back({where + ".acts", "dataset " + desc.name + " defines no dialogue acts"});
    if (t.intent && !allows(TaskKind::kIc))
      out.push_back({where + ".intent", "dataset " + desc.name + " defines no intents"});
  }
  if (d.summary && !allows(TaskKind::kSumm))
    out.push_back({"summary", "dataset " + desc.name + " defines no summaries"});
  if (d.mcqa && !allows(TaskKind::kMcqa))
    out.push_back({"mcqa", "dataset " + desc.name + " defines no MCQA items"});
  return out;
}

struct Rejection {
  std::size_t ordinal = 0;
  std::string reason;
};

struct IngestStats {
  std::size_t dialogues_read = 0;  // records seen, including rejected ones
  std::size_t utterances_read = 0;  // turns over accepted dialogues
  std::vector<Rejection> rejections;

  std::size_t dialogues_rejected() const { return rejections.size(); }
};

struct IngestResult {
  std::vector<Dialogue> dialogues;
  IngestStats stats;
};

namespace detail {

// Final gate every adapter output passes through: schema validation and
// corpus-level id uniqueness.
class Accumulator {
 public:
  void accept(std::size_t ordinal, Dialogue d) {
    auto violations = validate_dialogue(d);
    if (!violations.empty()) {
      std::string reason = "invalid dialogue '" + d.id + "':";
      for (const auto& v : violations) reason += " " + v.describe() + ";";
      reject(ordinal, reason);
      return;
    }
    if (!ids_.insert(d.id).second) {
      reject(ordinal, "duplicate dialogue id '" + d.id + "'");
      return;
    }
    result_.stats.utterances_read += d.turns.size();
    result_.dialogues.push_back(std::move(d));
  }
  void reject(std::size_t ordinal, std::string reason) {
    result_.stats.rejections.push_back({ordinal, std::move(reason)});
  }
  void count_record() { ++result_.stats.dialogues_read; }
  IngestResult take() { return std::move(result_); }

 private:
  IngestResult result_;
  std::unordered_set<std::string> ids_;
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read '" + path + "'");
  return in;
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail

/// Reads canonical line-delimited dialogues. Blank lines are skipped;
/// malformed or invalid lines become rejections.
inline IngestResult load_canonical(std::istream& in) {
  detail::Accumulator acc;
  std::string line;
  std::size_t ordinal = 0;
  while (std::getline(in, line)) {
    line = detail::strip_cr(std::move(line));
    if (trim(line).empty()) continue;
    const std::size_t ord = ordinal++;
    acc.count_record();
    try {
      acc.accept(ord, dialogue_from_line(line));
    } catch (const SchemaError& e) {
      acc.reject(ord, e.what());
    }
  }
  return acc.take();
}

inline IngestResult load_canonical(const std::string& path) {
  auto in = detail::open_input(path);
  return load_canonical(in);
}

// ---------------------------------------------------------------------------
// Wizard-of-Oz style TOD records.
//
// {"id": "...", "domains": [...]?, "goal": {...}?,
//  "exchanges": [{"user": "...", "slots": [{"domain","slot","value"}]?,
//                 "intent": "..."?, "system": "...", "acts": [...]?,
//                 "db_result": N?}, ...]}
//
// `slots` holds the constraints the user adds in that exchange; the adapter
// accumulates them into the cumulative belief state carried by each user turn.
// If any exchange carries `slots`, every user turn gets a belief state.

inline Dialogue adapt_wizard_style(const json& raw, std::string_view dataset) {
  if (!raw.is_object()) throw AdapterRejection("record is not a JSON object");
  if (!raw.contains("id") || !raw["id"].is_string() || trim(raw["id"].get<std::string>()).empty())
    throw AdapterRejection("record has no id");
  const std::string id = raw["id"].get<std::string>();
  auto reject = [&](const std::string& why) { return AdapterRejection("record '" + id + "': " + why); };
  if (!raw.contains("exchanges") || !raw["exchanges"].is_array() || raw["exchanges"].empty())
    throw reject("no exchanges");

  Dialogue d;
  d.id = id;
  d.dataset = std::string(dataset);
  BeliefState state;
  std::set<std::string> seen_domains;
  bool tracks_state = false;
  for (const auto& ex : raw["exchanges"]) tracks_state = tracks_state || (ex.is_object() && ex.contains("slots"));
  try {
    for (const auto& ex : raw["exchanges"]) {
      const std::size_t user_index = d.turns.size();
      const std::size_t sys_index = user_index + 1;
      if (!ex.contains("user") || !ex["user"].is_string() || trim(ex["user"].get<std::string>()).empty())
        throw reject("turn " + std::to_string(user_index) + ": missing user utterance");
      if (!ex.contains("system") || !ex["system"].is_string() ||
          trim(ex["system"].get<std::string>()).empty())
        throw reject("turn " + std::to_string(sys_index) + ": empty system reply");

      Turn user;
      user.index = user_index;
      user.speaker = Speaker::kSpeaker1;
      user.text = ex["user"].get<std::string>();
      if (ex.contains("slots")) {
        for (const auto& s : ex["slots"]) {
          const auto domain = s.at("domain").get<std::string>();
          state.set(domain, s.at("slot").get<std::string>(), s.at("value").get<std::string>());
          seen_domains.insert(to_lower(trim(domain)));
        }
      }
      if (tracks_state) user.belief = state;
      if (ex.contains("intent")) user.intent = ex["intent"].get<std::string>();

      Turn sys;
      sys.index = sys_index;
      sys.speaker = Speaker::kSpeaker2;
      sys.text = ex["system"].get<std::string>();
      if (ex.contains("acts")) {
        std::vector<DialogueAct> acts;
        for (const auto& a : ex["acts"]) acts.push_back(act_from_json(a));
        sys.acts = std::move(acts);
      }
      if (ex.contains("db_result")) sys.db_result = detail::get_count(ex["db_result"], "db_result");

      d.turns.push_back(std::move(user));
      d.turns.push_back(std::move(sys));
    }
    if (raw.contains("goal")) d.goal = goal_from_json(raw["goal"]);
    if (raw.contains("domains")) {
      for (const auto& dom : raw["domains"]) d.domains.insert(to_lower(trim(dom.get<std::string>())));
    }
  } catch (const json::exception& e) {
    throw reject(std::string("malformed field: ") + e.what());
  } catch (const SchemaError& e) {
    throw reject(e.what());
  }
  if (d.domains.empty()) d.domains = seen_domains;
  if (d.domains.empty() && d.goal)
    for (const auto& [dom, _] : d.goal->domains) d.domains.insert(dom);
  if (d.domains.empty()) throw reject("no domain information (domains, slots or goal)");
  return d;
}

// ---------------------------------------------------------------------------
// Intent tables: one (utterance, label) row per single-turn dialogue.

struct IntentRow {
  std::string text;
  std::string label;
};

inline std::string dataset_domain_token(std::string_view dataset) {
  std::string out;
  for (char c : to_lower(trim(dataset))) out.push_back(is_space(c) ? '_' : c);
  return out;
}

/// Row ordinal i gets id `<dataset>-<i>`; rejected rows keep their ordinal,
/// so ids are stable under row-level failures.
inline IngestResult adapt_intent_table(const std::vector<IntentRow>& rows,
                                       const DatasetDescriptor& dataset) {
  detail::Accumulator acc;
  const std::string domain = dataset_domain_token(dataset.name);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    acc.count_record();
    const auto& row = rows[i];
    if (trim(row.text).empty()) {
      acc.reject(i, "row " + std::to_string(i) + ": empty text");
      continue;
    }
    if (trim(row.label).empty()) {
      acc.reject(i, "row " + std::to_string(i) + ": empty label");
      continue;
    }
    Dialogue d;
    d.id = dataset.name + "-" + std::to_string(i);
    d.dataset = dataset.name;
    d.domains = {domain};
    Turn t;
    t.index = 0;
    t.speaker = Speaker::kSpeaker1;
    t.text = row.text;
    t.intent = std::string(trim(row.label));
    d.turns.push_back(std::move(t));
    acc.accept(i, std::move(d));
  }
  return acc.take();
}

/// Tab-separated `text<TAB>label` lines; a line without a tab becomes a row
/// with an empty label (and is rejected downstream).
inline std::vector<IntentRow> read_intent_rows(std::istream& in) {
  std::vector<IntentRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::strip_cr(std::move(line));
    if (trim(line).empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos)
      rows.push_back({line, ""});
    else
      rows.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Summarization pairs with free-form speaker tags.

struct SourceTurn {
  std::string speaker;
  std::string text;
};

/// The first distinct source speaker becomes speaker1; every other speaker
/// is folded into speaker2.
inline Dialogue adapt_summ_pair(std::string id, std::string_view dataset,
                                const std::vector<SourceTurn>& turns, std::string_view summary) {
  if (turns.empty()) throw AdapterRejection("record '" + id + "': no turns");
  if (trim(summary).empty()) throw AdapterRejection("record '" + id + "': empty summary");
  Dialogue d;
  d.id = std::move(id);
  d.dataset = std::string(dataset);
  d.domains = {std::string(kOpenDomain)};
  const std::string& first = turns.front().speaker;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (trim(turns[i].text).empty())
      throw AdapterRejection("record '" + d.id + "': turn " + std::to_string(i) + " has no text");
    Turn t;
    t.index = i;
    t.speaker = turns[i].speaker == first ? Speaker::kSpeaker1 : Speaker::kSpeaker2;
    t.text = turns[i].text;
    d.turns.push_back(std::move(t));
  }
  d.summary = std::string(summary);
  return d;
}

// {"id": "...", "turns": [{"speaker": "...", "text": "..."}], "summary": "..."}
inline Dialogue adapt_summ_record(const json& raw, std::string_view dataset) {
  try {
    std::vector<SourceTurn> turns;
    for (const auto& t : raw.at("turns"))
      turns.push_back({t.at("speaker").get<std::string>(), t.at("text").get<std::string>()});
    return adapt_summ_pair(raw.at("id").get<std::string>(), dataset, turns,
                           raw.value("summary", std::string()));
  } catch (const json::exception& e) {
    throw AdapterRejection(std::string("malformed record: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

namespace detail {

template <typename Adapt>
IngestResult adapt_json_lines(std::istream& in, Adapt&& adapt) {
  Accumulator acc;
  std::string line;
  std::size_t ordinal = 0;
  while (std::getline(in, line)) {
    line = strip_cr(std::move(line));
    if (trim(line).empty()) continue;
    const std::size_t ord = ordinal++;
    acc.count_record();
    try {
      acc.accept(ord, adapt(json::parse(line)));
    } catch (const json::parse_error& e) {
      acc.reject(ord, std::string("invalid JSON: ") + e.what());
    } catch (const AdapterRejection& e) {
      acc.reject(ord, e.what());
    }
  }
  return acc.take();
}

}  // namespace detail

/// Runs one adapter over a stream. `dataset` names the source corpus for
/// adapters whose raw records do not carry it.
inline IngestResult ingest(std::istream& in, AdapterKind adapter, std::string_view dataset) {
  switch (adapter) {
    case AdapterKind::kCanonical:
      return load_canonical(in);
    case AdapterKind::kWizard:
      return detail::adapt_json_lines(in, [&](const json& j) { return adapt_wizard_style(j, dataset); });
    case AdapterKind::kSummPair:
      return detail::adapt_json_lines(in, [&](const json& j) { return adapt_summ_record(j, dataset); });
    case AdapterKind::kIntentTable: {
      DatasetDescriptor desc;
      if (const auto* known = find_dataset(dataset)) desc = *known;
      desc.name = std::string(dataset);
      return adapt_intent_table(read_intent_rows(in), desc);
    }
  }
  throw IngestError("unknown adapter");
}

inline IngestResult ingest_file(const std::string& path, AdapterKind adapter, std::string_view dataset) {
  auto in = detail::open_input(path);
  return ingest(in, adapter, dataset);
}

/// Rejection log: one `{"ordinal": N, "reason": "..."}` record per line.
inline void write_rejections(std::ostream& out, const IngestStats& stats) {
  for (const auto& r : stats.rejections) {
    nlohmann::ordered_json j;
    j["ordinal"] = r.ordinal;
    j["reason"] = r.reason;
    out << j.dump() << '\n';
  }
}

}  // namespace todc

#endif  // TODC_INGEST_HPP_
