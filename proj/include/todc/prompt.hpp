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

// Prompt compilation: wraps raw (input, output) pairs of every task in a
// task-specific template, producing seq2seq records.

#ifndef TODC_PROMPT_HPP_
#define TODC_PROMPT_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "todc/ingest.hpp"
#include "todc/random.hpp"
#include "todc/schema.hpp"
#include "todc/text.hpp"

namespace todc {

class PromptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PromptTemplate {
  TaskKind task = TaskKind::kNlg;
  std::string source_pattern;
  std::string target_pattern;
};

struct PromptedExample {
  TaskKind task = TaskKind::kNlg;
  std::string dataset;
  std::string id;
  std::string source_text;
  std::string target_text;

  friend bool operator==(const PromptedExample&, const PromptedExample&) = default;
};

using PromptFields = std::map<std::string, std::string, std::less<>>;

// ---------------------------------------------------------------------------
// Placeholders

inline const std::set<std::string>& source_placeholders(TaskKind t) {
  static const std::map<TaskKind, std::set<std::string>> kSource = {
      {TaskKind::kNlg, {"context"}},
      {TaskKind::kDst, {"context", "ontology"}},
      {TaskKind::kPol, {"context"}},
      {TaskKind::kIc, {"utterance", "context"}},
      {TaskKind::kMcqa, {"context", "question", "options"}},
      {TaskKind::kNup, {"context", "candidate"}},
      {TaskKind::kSumm, {"context"}},
  };
  return kSource.at(t);
}

inline const std::set<std::string>& target_placeholders(TaskKind t) {
  static const std::map<TaskKind, std::set<std::string>> kTarget = {
      {TaskKind::kNlg, {"response"}}, {TaskKind::kDst, {"state"}},
      {TaskKind::kPol, {"acts"}},     {TaskKind::kIc, {"intent"}},
      {TaskKind::kMcqa, {"answer"}},  {TaskKind::kNup, {"yes_no"}},
      {TaskKind::kSumm, {"summary"}},
  };
  return kTarget.at(t);
}

namespace detail {

inline bool is_placeholder_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || c == '_')) return false;
  return true;
}

// Calls on_literal(text) and on_placeholder(name) in pattern order. A brace
// pair whose content is not [a-z_]+ is literal text.
template <typename Lit, typename Ph>
void scan_pattern(std::string_view pattern, Lit&& on_literal, Ph&& on_placeholder) {
  std::size_t i = 0;
  while (i < pattern.size()) {
    const auto open = pattern.find('{', i);
    if (open == std::string_view::npos) {
      on_literal(pattern.substr(i));
      return;
    }
    const auto close = pattern.find('}', open + 1);
    if (close == std::string_view::npos) {
      on_literal(pattern.substr(i));
      return;
    }
    const auto name = pattern.substr(open + 1, close - open - 1);
    if (is_placeholder_name(name)) {
      on_literal(pattern.substr(i, open - i));
      on_placeholder(name);
      i = close + 1;
    } else {
      on_literal(pattern.substr(i, open + 1 - i));
      i = open + 1;
    }
  }
}

}  // namespace detail

inline std::vector<std::string> placeholders_in(std::string_view pattern) {
  std::vector<std::string> out;
  detail::scan_pattern(pattern, [](std::string_view) {},
                       [&](std::string_view name) { out.emplace_back(name); });
  return out;
}

/// Throws PromptError if a pattern is blank or uses a placeholder the task
/// does not define.
inline void validate_template(const PromptTemplate& t) {
  const std::string task(task_name(t.task));
  if (trim(t.source_pattern).empty()) throw PromptError(task + ".source: empty pattern");
  if (trim(t.target_pattern).empty()) throw PromptError(task + ".target: empty pattern");
  for (const auto& p : placeholders_in(t.source_pattern))
    if (!source_placeholders(t.task).count(p))
      throw PromptError(task + ".source: placeholder {" + p + "} is not defined for this task");
  for (const auto& p : placeholders_in(t.target_pattern))
    if (!target_placeholders(t.task).count(p))
      throw PromptError(task + ".target: placeholder {" + p + "} is not defined for this task");
}

inline std::string substitute(std::string_view pattern, const PromptFields& fields) {
  std::string out;
  detail::scan_pattern(
      pattern, [&](std::string_view lit) { out += lit; },
      [&](std::string_view name) {
        auto it = fields.find(name);
        if (it == fields.end())
          throw PromptError("missing value for placeholder {" + std::string(name) + "}");
        out += it->second;
      });
  return out;
}

/// Equips a raw (input, output) pair with the task's prompt. Pure string
/// substitution; nothing is truncated.
inline PromptedExample apply_prompt(TaskKind task, const PromptFields& input,
                                    const PromptFields& output, const PromptTemplate& t) {
  if (t.task != task)
    throw PromptError("template for " + std::string(task_name(t.task)) + " applied to " +
                      std::string(task_name(task)));
  PromptedExample ex;
  ex.task = task;
  ex.source_text = substitute(t.source_pattern, input);
  ex.target_text = substitute(t.target_pattern, output);
  return ex;
}

inline std::map<TaskKind, PromptTemplate> default_templates() {
  return {
      {TaskKind::kNlg, {TaskKind::kNlg, "generate system response: {context}", "{response}"}},
      {TaskKind::kDst, {TaskKind::kDst, "translate dialogue to belief state: {context}", "{state}"}},
      {TaskKind::kPol, {TaskKind::kPol, "translate dialogue to dialogue action: {context}", "{acts}"}},
      {TaskKind::kIc, {TaskKind::kIc, "classify the intent of the user utterance: {utterance}", "{intent}"}},
      {TaskKind::kMcqa,
       {TaskKind::kMcqa, "answer the question about the dialogue: {context} question: {question} options: {options}",
        "{answer}"}},
      {TaskKind::kNup,
       {TaskKind::kNup, "judge the next utterance: {context} candidate: {candidate} is this the next utterance?",
        "{yes_no}"}},
      {TaskKind::kSumm, {TaskKind::kSumm, "summarize the dialogue: {context}", "{summary}"}},
  };
}

/// Reads `<task>.source = pattern` / `<task>.target = pattern` lines on top
/// of the defaults. `#` starts a comment line. Unknown keys are errors.
inline std::map<TaskKind, PromptTemplate> read_templates(std::istream& in) {
  auto templates = default_templates();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    const std::string where = "template line " + std::to_string(lineno);
    if (eq == std::string_view::npos) throw PromptError(where + ": expected key = pattern");
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    const auto dot = key.rfind('.');
    const auto task = dot == std::string::npos ? std::nullopt : parse_task(key.substr(0, dot));
    const std::string side = dot == std::string::npos ? "" : key.substr(dot + 1);
    if (!task || (side != "source" && side != "target"))
      throw PromptError(where + ": unknown key '" + key + "'");
    (side == "source" ? templates[*task].source_pattern : templates[*task].target_pattern) = value;
  }
  for (const auto& [_, t] : templates) validate_template(t);
  return templates;
}

// ---------------------------------------------------------------------------
// Belief-state text

/// `[domain] slot value , slot value [domain2] ...` with domains and slots
/// in lexicographic order; the empty state is `none`.
inline std::string linearize_belief_state(const BeliefState& bs) {
  if (bs.empty()) return "none";
  std::string out;
  std::string current;
  for (const auto& [key, value] : bs.entries()) {
    if (key.first != current || out.empty()) {
      if (!out.empty()) out += ' ';
      out += "[" + key.first + "] ";
      current = key.first;
    } else {
      out += " , ";
    }
    out += key.second + " " + value;
  }
  return out;
}

struct BeliefParse {
  BeliefState state;
  std::size_t dropped = 0;  // malformed segments ignored
};

/// Lenient inverse of linearize_belief_state for model output.
///
/// The text is cut into groups at every `[`. A group is `[domain] ...`; its
/// body is split at `,` and each segment reads as `slot value...` where the
/// value runs to the end of the segment. Groups without a closing `]`,
/// segments without a value, leading junk and conflicting repeats of a
/// (domain, slot) are dropped and counted; the first value wins.
inline BeliefParse parse_belief_state_counted(std::string_view text) {
  BeliefParse result;
  const auto body = trim(text);
  if (to_lower(body) == "none") return result;
  const auto first = body.find('[');
  const auto lead = trim(body.substr(0, first == std::string_view::npos ? body.size() : first));
  if (!lead.empty() && to_lower(lead) != "none") ++result.dropped;
  if (first == std::string_view::npos) return result;

  std::size_t pos = first;
  while (pos < body.size()) {
    auto next = body.find('[', pos + 1);
    if (next == std::string_view::npos) next = body.size();
    const auto group = body.substr(pos + 1, next - pos - 1);
    pos = next;
    const auto close = group.find(']');
    if (close == std::string_view::npos) {
      ++result.dropped;
      continue;
    }
    const auto domain = trim(group.substr(0, close));
    if (!detail::is_token(domain) || detail::has_any_of(domain, ",")) {
      ++result.dropped;
      continue;
    }
    std::size_t segments = 0;
    for (const auto& segment : split(group.substr(close + 1), ',')) {
      if (trim(segment).empty()) continue;
      ++segments;
      auto tokens = split_whitespace(segment);
      const std::string slot = tokens.front();
      std::string value;
      if (tokens.size() >= 2) {
        tokens.erase(tokens.begin());
        value = normalize_value(join(tokens, " "));
      }
      if (value.empty() || detail::has_any_of(slot, "[]") || !result.state.insert(domain, slot, value))
        ++result.dropped;
    }
    if (segments == 0) ++result.dropped;
  }
  return result;
}

inline BeliefState parse_belief_state(std::string_view text) {
  return parse_belief_state_counted(text).state;
}

// ---------------------------------------------------------------------------
// Raw-input rendering

inline std::string collapse_ws(std::string_view s) { return join(split_whitespace(s), " "); }

inline std::string role_prefix(Speaker s) { return s == Speaker::kSpeaker1 ? "user:" : "system:"; }

/// Turns [begin, end) as `user: ... system: ...`.
inline std::string render_context(const std::vector<Turn>& turns, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end && i < turns.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += role_prefix(turns[i].speaker) + " " + collapse_ws(turns[i].text);
  }
  return out;
}

/// Dialogue acts as `[domain] act slot , act slot` groups, ordered like
/// linearize_belief_state. Values are not rendered.
inline std::string render_acts(const std::vector<DialogueAct>& acts) {
  std::map<std::string, std::set<std::string>> grouped;
  for (const auto& a : acts) {
    std::string item = to_lower(trim(a.act));
    if (a.slot && !trim(*a.slot).empty()) item += " " + to_lower(trim(*a.slot));
    grouped[to_lower(trim(a.domain))].insert(std::move(item));
  }
  if (grouped.empty()) return "none";
  std::string out;
  for (const auto& [domain, items] : grouped) {
    if (!out.empty()) out += ' ';
    out += "[" + domain + "] ";
    bool first = true;
    for (const auto& item : items) {
      if (!first) out += " , ";
      out += item;
      first = false;
    }
  }
  return out;
}

inline std::string option_label(std::size_t i) {
  return i < 26 ? std::string(1, static_cast<char>('a' + i)) : std::to_string(i + 1);
}

inline std::string render_options(const std::vector<std::string>& options) {
  std::string out;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i) out += ' ';
    out += option_label(i) + ") " + collapse_ws(options[i]);
  }
  return out;
}

/// Slot inventory per domain, rendered into the optional `{ontology}`
/// placeholder of DST prompts.
using Ontology = std::map<std::string, std::set<std::string>>;

inline std::string render_ontology(const Ontology& ontology, const std::set<std::string>& domains) {
  std::string out;
  for (const auto& d : domains) {
    if (!out.empty()) out += ' ';
    out += "[" + d + "]";
    if (auto it = ontology.find(d); it != ontology.end())
      for (const auto& s : it->second) out += " " + s;
  }
  return out;
}

/// `domain: slot slot ...` lines.
inline Ontology read_ontology(std::istream& in) {
  Ontology out;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) throw PromptError("ontology line without ':'");
    auto& slots = out[to_lower(trim(body.substr(0, colon)))];
    for (auto& s : split_whitespace(body.substr(colon + 1))) slots.insert(to_lower(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Next-utterance negatives

/// Every speaker2 turn of a compilation input; NUP negatives are drawn from
/// here.
class NupPool {
 public:
  struct Entry {
    std::string dialogue_id;
    std::size_t turn = 0;
    std::string text;
  };

  NupPool() = default;
  explicit NupPool(std::span<const Dialogue> dialogues) {
    for (const auto& d : dialogues) add(d);
  }

  void add(const Dialogue& d) {
    for (const auto& t : d.turns) {
      if (t.speaker != Speaker::kSpeaker2) continue;
      Entry e{d.id, t.index, collapse_ws(t.text)};
      ++text_counts_[e.text];
      entries_.push_back(std::move(e));
    }
  }

  const std::vector<Entry>& entries() const { return entries_; }

  /// Up to k distinct pool texts different from `positive`.
  ///
  /// The generator is seeded from (seed, key) alone, so the draw for a
  /// given turn does not depend on where the turn sits in the input. When
  /// no more than k entries qualify, all of them are returned in pool order;
  /// otherwise indices are drawn uniformly and rejected if their text equals
  /// the positive or was already taken.
  std::vector<std::string> sample_negatives(std::string_view positive, std::size_t k,
                                            std::uint64_t seed, std::string_view key) const {
    std::vector<std::string> out;
    if (k == 0) return out;
    const std::string pos(positive);
    const auto it = text_counts_.find(pos);
    const std::size_t same = it == text_counts_.end() ? 0 : it->second;
    const std::size_t eligible = entries_.size() - same;
    std::unordered_set<std::string> taken;
    if (eligible <= k) {
      for (const auto& e : entries_)
        if (e.text != pos && taken.insert(e.text).second) out.push_back(e.text);
      return out;
    }
    // Distinct texts are needed; duplicates in the pool can make fewer than k
    // distinct eligible texts exist even when eligible > k.
    std::size_t distinct = 0;
    for (const auto& [text, _] : text_counts_) distinct += text != pos;
    const std::size_t want = std::min(k, distinct);
    SeededRng rng(derive_seed(seed, key));
    while (out.size() < want) {
      const auto& e = entries_[rng.below(entries_.size())];
      if (e.text == pos || !taken.insert(e.text).second) continue;
      out.push_back(e.text);
    }
    return out;
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> text_counts_;
};

// ---------------------------------------------------------------------------
// Task derivation

struct DeriveOptions {
  std::size_t neg_k = 1;
  std::uint64_t seed = 0;
  const NupPool* pool = nullptr;  // nullptr: negatives come from the dialogue itself
  const Ontology* ontology = nullptr;
};

inline std::string example_id(const Dialogue& d, std::size_t turn, TaskKind task) {
  return d.id + ":" + std::to_string(turn) + ":" + std::string(task_name(task));
}

/// Every record the dialogue yields for one task. Returns an empty list when
/// the dialogue lacks that task's annotation.
///
/// Turn-conditioned tasks (NLG, POL, NUP) skip a speaker2 turn at index 0,
/// which has no history to condition on.
inline std::vector<PromptedExample> derive_task_examples(const Dialogue& d, TaskKind task,
                                                         const PromptTemplate& t,
                                                         const DeriveOptions& opt = {}) {
  std::vector<PromptedExample> out;
  const auto& turns = d.turns;
  const std::size_t last = turns.empty() ? 0 : turns.size() - 1;
  auto emit = [&](std::string id, const PromptFields& in, const PromptFields& target) {
    auto ex = apply_prompt(task, in, target, t);
    if (trim(ex.source_text).empty() || trim(ex.target_text).empty())
      throw PromptError("record " + id + " has an empty source or target");
    ex.dataset = d.dataset;
    ex.id = std::move(id);
    out.push_back(std::move(ex));
  };

  switch (task) {
    case TaskKind::kNlg:
      for (const auto& turn : turns) {
        if (turn.speaker != Speaker::kSpeaker2 || turn.index == 0) continue;
        std::string ctx = render_context(turns, 0, turn.index);
        if (turn.db_result) ctx += " db: " + std::to_string(*turn.db_result);
        emit(example_id(d, turn.index, task), {{"context", ctx}},
             {{"response", collapse_ws(turn.text)}});
      }
      break;
    case TaskKind::kDst:
      for (const auto& turn : turns) {
        if (turn.speaker != Speaker::kSpeaker1 || !turn.belief) continue;
        PromptFields in{{"context", render_context(turns, 0, turn.index + 1)}};
        in["ontology"] = render_ontology(opt.ontology ? *opt.ontology : Ontology{}, d.domains);
        emit(example_id(d, turn.index, task), in,
             {{"state", linearize_belief_state(*turn.belief)}});
      }
      break;
    case TaskKind::kPol:
      for (const auto& turn : turns) {
        if (turn.speaker != Speaker::kSpeaker2 || turn.index == 0 || !turn.acts || turn.acts->empty())
          continue;
        emit(example_id(d, turn.index, task), {{"context", render_context(turns, 0, turn.index)}},
             {{"acts", render_acts(*turn.acts)}});
      }
      break;
    case TaskKind::kIc:
      for (const auto& turn : turns) {
        if (!turn.intent) continue;
        emit(example_id(d, turn.index, task),
             {{"utterance", collapse_ws(turn.text)},
              {"context", render_context(turns, 0, turn.index + 1)}},
             {{"intent", collapse_ws(*turn.intent)}});
      }
      break;
    case TaskKind::kMcqa:
      if (!d.mcqa) break;
      for (std::size_t q = 0; q < d.mcqa->size(); ++q) {
        const auto& item = (*d.mcqa)[q];
        emit(example_id(d, last, task) + ":" + std::to_string(q),
             {{"context", render_context(turns, 0, turns.size())},
              {"question", collapse_ws(item.question)},
              {"options", render_options(item.options)}},
             {{"answer", option_label(item.answer_index) + ") " +
                             collapse_ws(item.options.at(item.answer_index))}});
      }
      break;
    case TaskKind::kNup: {
      if (d.nup_candidates) {
        const std::string ctx = render_context(turns, 0, turns.size());
        for (std::size_t c = 0; c < d.nup_candidates->size(); ++c) {
          const auto& cand = (*d.nup_candidates)[c];
          emit(example_id(d, last, task) + ":" + std::to_string(c),
               {{"context", ctx}, {"candidate", collapse_ws(cand.text)}},
               {{"yes_no", cand.is_next ? "yes" : "no"}});
        }
        break;
      }
      NupPool local;
      const NupPool* pool = opt.pool;
      if (!pool) {
        local.add(d);
        pool = &local;
      }
      for (const auto& turn : turns) {
        if (turn.speaker != Speaker::kSpeaker2 || turn.index == 0) continue;
        const std::string ctx = render_context(turns, 0, turn.index);
        const std::string positive = collapse_ws(turn.text);
        const std::string base = example_id(d, turn.index, task);
        emit(base + ":0", {{"context", ctx}, {"candidate", positive}}, {{"yes_no", "yes"}});
        const auto negatives = pool->sample_negatives(positive, opt.neg_k, opt.seed, base);
        for (std::size_t k = 0; k < negatives.size(); ++k)
          emit(base + ":" + std::to_string(k + 1), {{"context", ctx}, {"candidate", negatives[k]}},
               {{"yes_no", "no"}});
      }
      break;
    }
    case TaskKind::kSumm:
      if (!d.summary) break;
      emit(example_id(d, last, task), {{"context", render_context(turns, 0, turns.size())}},
           {{"summary", collapse_ws(*d.summary)}});
      break;
  }
  return out;
}

/// Whether derive_task_examples yields anything for this dialogue and task.
inline bool has_task_annotation(const Dialogue& d, TaskKind task) {
  auto any_turn = [&](auto pred) {
    for (const auto& t : d.turns)
      if (pred(t)) return true;
    return false;
  };
  auto responds = [](const Turn& t) { return t.speaker == Speaker::kSpeaker2 && t.index > 0; };
  switch (task) {
    case TaskKind::kNlg: return any_turn(responds);
    case TaskKind::kDst: return any_turn([](const Turn& t) { return t.speaker == Speaker::kSpeaker1 && t.belief.has_value(); });
    case TaskKind::kPol: return any_turn([&](const Turn& t) { return responds(t) && t.acts && !t.acts->empty(); });
    case TaskKind::kIc: return any_turn([](const Turn& t) { return t.intent.has_value(); });
    case TaskKind::kMcqa: return d.mcqa && !d.mcqa->empty();
    case TaskKind::kNup: return d.nup_candidates ? !d.nup_candidates->empty() : any_turn(responds);
    case TaskKind::kSumm: return d.summary.has_value();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Corpus compilation

struct CompileOptions {
  std::map<TaskKind, PromptTemplate> templates = default_templates();
  std::size_t neg_k = 1;
  std::uint64_t seed = 0;
  std::optional<Ontology> ontology;
  // Derive only the tasks a known dataset annotates (unknown datasets are
  // unrestricted).
  bool respect_dataset_tasks = true;
};

struct CompileStats {
  std::size_t dialogues = 0;
  std::map<TaskKind, std::size_t> per_task;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [_, c] : per_task) n += c;
    return n;
  }
};

struct CompileResult {
  std::vector<PromptedExample> records;
  CompileStats stats;
};

/// Records for dialogues x tasks, in dialogue order and then the fixed task
/// order NLG, DST, POL, IC, MCQA, NUP, SUMM. NUP negatives are drawn from the
/// speaker2 turns of the whole input.
inline CompileResult compile_corpus(std::span<const Dialogue> dialogues, const std::set<TaskKind>& tasks,
                                    const CompileOptions& opt = {}) {
  for (TaskKind t : tasks) {
    auto it = opt.templates.find(t);
    if (it == opt.templates.end())
      throw PromptError("no template for task " + std::string(task_name(t)));
    validate_template(it->second);
  }
  const NupPool pool = tasks.count(TaskKind::kNup) ? NupPool(dialogues) : NupPool();
  DeriveOptions derive{opt.neg_k, opt.seed, &pool, opt.ontology ? &*opt.ontology : nullptr};

  CompileResult result;
  for (TaskKind t : tasks) result.stats.per_task[t] = 0;
  for (const auto& d : dialogues) {
    ++result.stats.dialogues;
    const DatasetDescriptor* desc = opt.respect_dataset_tasks ? find_dataset(d.dataset) : nullptr;
    for (TaskKind t : kAllTasks) {
      if (!tasks.count(t) || (desc && !desc->tasks.count(t))) continue;
      auto records = derive_task_examples(d, t, opt.templates.at(t), derive);
      result.stats.per_task[t] += records.size();
      for (auto& r : records) result.records.push_back(std::move(r));
    }
  }
  return result;
}

inline std::string record_to_line(const PromptedExample& r) {
  nlohmann::ordered_json j;
  j["task"] = task_name(r.task);
  j["dataset"] = r.dataset;
  j["id"] = r.id;
  j["source_text"] = r.source_text;
  j["target_text"] = r.target_text;
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

inline PromptedExample record_from_line(std::string_view line) {
  try {
    const auto j = json::parse(line);
    detail::reject_unknown(j, {"task", "dataset", "id", "source_text", "target_text"}, "record");
    PromptedExample r;
    const auto task = parse_task(j.at("task").get<std::string>());
    if (!task) throw SchemaError("record: unknown task");
    r.task = *task;
    r.dataset = j.at("dataset").get<std::string>();
    r.id = j.at("id").get<std::string>();
    r.source_text = j.at("source_text").get<std::string>();
    r.target_text = j.at("target_text").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("record: ") + e.what());
  }
}

inline void write_records(std::ostream& out, const std::vector<PromptedExample>& records) {
  for (const auto& r : records) out << record_to_line(r) << '\n';
}

}  // namespace todc

#endif  // TODC_PROMPT_HPP_
