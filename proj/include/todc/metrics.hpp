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

// Evaluation metrics: corpus BLEU-4, Inform/Success, Combined Score, joint
// goal accuracy, intent accuracy and ROUGE-1/2/L. All rates are reported on
// a 0-100 scale.

#ifndef TODC_METRICS_HPP_
#define TODC_METRICS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "todc/prompt.hpp"
#include "todc/schema.hpp"
#include "todc/text.hpp"

namespace todc {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Tokens = std::vector<std::string>;

struct TokenPair {
  Tokens hypothesis;
  Tokens reference;
};

// ---------------------------------------------------------------------------
// Report

struct MetricValue {
  std::string name;
  double value = 0;
  std::optional<double> numerator;
  std::optional<double> denominator;
};

class MetricReport {
 public:
  void add(std::string name, double value) { entries_.push_back({std::move(name), value, {}, {}}); }

  /// 100 * numerator / denominator, or 0 when the denominator is 0.
  void add_rate(std::string name, double numerator, double denominator) {
    const double v = denominator > 0 ? 100.0 * numerator / denominator : 0.0;
    entries_.push_back({std::move(name), v, numerator, denominator});
  }

  void add_count(std::string name, double count) {
    entries_.push_back({std::move(name), count, count, std::nullopt});
  }

  std::optional<double> get(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e.value;
    return std::nullopt;
  }

  const MetricValue* find(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }

  const std::vector<MetricValue>& entries() const { return entries_; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
      nlohmann::ordered_json j;
      j["name"] = e.name;
      j["value"] = e.value;
      j["numerator"] = e.numerator ? nlohmann::ordered_json(*e.numerator) : nullptr;
      j["denominator"] = e.denominator ? nlohmann::ordered_json(*e.denominator) : nullptr;
      arr.push_back(std::move(j));
    }
    return arr;
  }

  std::string to_table() const {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s %10s %12s %12s\n", "metric", "value", "numerator", "denominator");
    out += buf;
    for (const auto& e : entries_) {
      auto fmt = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        char b[32];
        std::snprintf(b, sizeof b, "%.0f", *v);
        return std::string(b);
      };
      std::snprintf(buf, sizeof buf, "%-20s %10.2f %12s %12s\n", e.name.c_str(), e.value,
                    fmt(e.numerator).c_str(), fmt(e.denominator).c_str());
      out += buf;
    }
    return out;
  }

 private:
  std::vector<MetricValue> entries_;
};

// ---------------------------------------------------------------------------
// N-gram helpers

namespace detail {

inline std::unordered_map<std::string, std::size_t> ngram_counts(const Tokens& tokens, std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

// Sum over hypothesis n-grams of min(count in hypothesis, count in reference).
inline std::size_t clipped_overlap(const Tokens& hyp, const Tokens& ref, std::size_t n) {
  const auto h = ngram_counts(hyp, n);
  const auto r = ngram_counts(ref, n);
  std::size_t overlap = 0;
  for (const auto& [gram, c] : h) {
    auto it = r.find(gram);
    if (it != r.end()) overlap += std::min(c, it->second);
  }
  return overlap;
}

inline std::size_t ngram_total(const Tokens& tokens, std::size_t n) {
  return tokens.size() >= n ? tokens.size() - n + 1 : 0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// BLEU

inline constexpr std::size_t kBleuOrder = 4;

struct BleuStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  /// Aggregate modified precision for n-gram order n (1-based).
  double precision(std::size_t n) const {
    const auto total = totals.at(n - 1);
    return total ? static_cast<double>(matches.at(n - 1)) / static_cast<double>(total) : 0.0;
  }

  double brevity_penalty() const {
    if (hyp_len == 0) return 0.0;
    return std::exp(std::min(0.0, 1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len)));
  }

  /// Unsmoothed BLEU-4 on 0-100; any zero aggregate precision yields 0.
  double score() const {
    double log_sum = 0;
    for (std::size_t n = 1; n <= kBleuOrder; ++n) {
      const double p = precision(n);
      if (p <= 0) return 0.0;
      log_sum += std::log(p);
    }
    return 100.0 * brevity_penalty() * std::exp(log_sum / kBleuOrder);
  }
};

inline BleuStats bleu_stats(std::span<const TokenPair> pairs) {
  if (pairs.empty()) throw MetricError("bleu: empty corpus");
  BleuStats s;
  for (const auto& p : pairs) {
    if (p.reference.empty()) throw MetricError("bleu: empty reference");
    s.hyp_len += p.hypothesis.size();
    s.ref_len += p.reference.size();
    for (std::size_t n = 1; n <= kBleuOrder; ++n) {
      s.matches[n - 1] += detail::clipped_overlap(p.hypothesis, p.reference, n);
      s.totals[n - 1] += detail::ngram_total(p.hypothesis, n);
    }
  }
  return s;
}

/// Corpus-level BLEU-4 with uniform weights and no smoothing.
inline double bleu_corpus(std::span<const TokenPair> pairs) { return bleu_stats(pairs).score(); }

// ---------------------------------------------------------------------------
// ROUGE

struct RougeScores {
  double r1 = 0;
  double r2 = 0;
  double rl = 0;
};

inline std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace detail {

// F1 on 0-100 from an overlap count and the two denominators; 0 when the
// overlap is 0.
inline double f1_score(std::size_t overlap, std::size_t hyp_count, std::size_t ref_count) {
  if (overlap == 0 || hyp_count == 0 || ref_count == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(hyp_count);
  const double r = static_cast<double>(overlap) / static_cast<double>(ref_count);
  return 100.0 * 2.0 * p * r / (p + r);
}

}  // namespace detail

/// R1/R2 are F1 over clipped unigram/bigram overlap; RL is F1 over the LCS
/// length. A pair with no overlap of some order scores 0 for it.
inline RougeScores rouge_scores(const Tokens& hyp, const Tokens& ref) {
  if (ref.empty()) throw MetricError("rouge: empty reference");
  RougeScores s;
  if (hyp.empty()) return s;
  s.r1 = detail::f1_score(detail::clipped_overlap(hyp, ref, 1), hyp.size(), ref.size());
  s.r2 = detail::f1_score(detail::clipped_overlap(hyp, ref, 2), detail::ngram_total(hyp, 2),
                          detail::ngram_total(ref, 2));
  s.rl = detail::f1_score(lcs_length(hyp, ref), hyp.size(), ref.size());
  return s;
}

/// Unweighted mean over pairs.
inline RougeScores rouge_corpus(std::span<const TokenPair> pairs) {
  RougeScores mean;
  if (pairs.empty()) return mean;
  for (const auto& p : pairs) {
    const auto s = rouge_scores(p.hypothesis, p.reference);
    mean.r1 += s.r1;
    mean.r2 += s.r2;
    mean.rl += s.rl;
  }
  const double n = static_cast<double>(pairs.size());
  mean.r1 /= n;
  mean.r2 /= n;
  mean.rl /= n;
  return mean;
}

// ---------------------------------------------------------------------------
// Combined Score

inline double combined_score(double bleu, double inform, double success) {
  for (double v : {bleu, inform, success})
    if (!(v >= 0.0 && v <= 100.0)) throw MetricError("combined_score: input outside [0, 100]");
  return bleu + 0.5 * (inform + success);
}

// ---------------------------------------------------------------------------
// Predictions

struct TurnKey {
  std::string dialogue_id;
  std::size_t turn = 0;

  friend auto operator<=>(const TurnKey&, const TurnKey&) = default;
};

struct PredictionSet {
  TaskKind task = TaskKind::kNlg;
  std::map<TurnKey, std::string> predictions;

  const std::string* find(const std::string& dialogue_id, std::size_t turn) const {
    auto it = predictions.find(TurnKey{dialogue_id, turn});
    return it == predictions.end() ? nullptr : &it->second;
  }
};

/// Line-delimited `{"dialogue_id", "turn", "task", "text"}` records, grouped
/// by task. A second prediction for the same (dialogue, turn, task) is an
/// error.
inline std::map<TaskKind, PredictionSet> read_predictions(std::istream& in) {
  std::map<TaskKind, PredictionSet> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = "prediction line " + std::to_string(lineno);
    try {
      const auto j = json::parse(line);
      detail::reject_unknown(j, {"dialogue_id", "turn", "task", "text"}, where);
      const auto task = parse_task(j.at("task").get<std::string>());
      if (!task) throw MetricError(where + ": unknown task");
      auto& set = out[*task];
      set.task = *task;
      TurnKey key{j.at("dialogue_id").get<std::string>(), detail::get_count(j.at("turn"), where)};
      if (!set.predictions.emplace(std::move(key), j.at("text").get<std::string>()).second)
        throw MetricError(where + ": duplicate prediction");
    } catch (const json::exception& e) {
      throw MetricError(where + ": " + e.what());
    } catch (const SchemaError& e) {
      throw MetricError(where + ": " + e.what());
    }
  }
  return out;
}

inline void write_prediction(std::ostream& out, const std::string& dialogue_id, std::size_t turn,
                             TaskKind task, const std::string& text) {
  nlohmann::ordered_json j;
  j["dialogue_id"] = dialogue_id;
  j["turn"] = turn;
  j["task"] = task_name(task);
  j["text"] = text;
  out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
}

/// Predictions for dialogues absent from `gold` are tolerated and counted;
/// a prediction naming a turn the dialogue does not have is an error.
inline std::size_t check_predictions(std::span<const Dialogue> gold, const PredictionSet& preds) {
  std::unordered_map<std::string, std::size_t> lengths;
  for (const auto& d : gold) lengths[d.id] = d.turns.size();
  std::size_t unmatched = 0;
  for (const auto& [key, _] : preds.predictions) {
    auto it = lengths.find(key.dialogue_id);
    if (it == lengths.end()) {
      ++unmatched;
      continue;
    }
    if (key.turn >= it->second)
      throw MetricError("prediction for " + key.dialogue_id + " turn " + std::to_string(key.turn) +
                        ": dialogue has only " + std::to_string(it->second) + " turns");
  }
  return unmatched;
}

// ---------------------------------------------------------------------------
// Joint goal accuracy

struct RateCount {
  std::size_t correct = 0;
  std::size_t total = 0;
  std::size_t missing = 0;

  double rate() const { return total ? 100.0 * static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

/// Gold cumulative states of every annotated speaker1 turn.
inline std::map<TurnKey, BeliefState> gold_belief_states(std::span<const Dialogue> dialogues) {
  std::map<TurnKey, BeliefState> gold;
  for (const auto& d : dialogues)
    for (const auto& t : d.turns)
      if (t.speaker == Speaker::kSpeaker1 && t.belief) gold.emplace(TurnKey{d.id, t.index}, *t.belief);
  return gold;
}

/// A turn counts iff the parsed prediction equals the gold state as a set.
/// Turns without a prediction score 0 and are tallied as missing.
inline RateCount joint_goal_accuracy(const std::map<TurnKey, BeliefState>& gold, const PredictionSet& preds) {
  RateCount r;
  for (const auto& [key, state] : gold) {
    ++r.total;
    auto it = preds.predictions.find(key);
    if (it == preds.predictions.end()) {
      ++r.missing;
      continue;
    }
    if (parse_belief_state(it->second) == state) ++r.correct;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Intent accuracy

inline RateCount intent_accuracy(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
  if (gold.size() != pred.size())
    throw MetricError("intent_accuracy: " + std::to_string(gold.size()) + " gold labels vs " +
                      std::to_string(pred.size()) + " predictions");
  RateCount r;
  r.total = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (normalize_value(gold[i]) == normalize_value(pred[i])) ++r.correct;
  return r;
}

// ---------------------------------------------------------------------------
// Inform / Success

/// Venue database: per domain, entities as slot -> value maps each carrying
/// a unique `name`.
class EntityDb {
 public:
  using Entity = std::map<std::string, std::string>;

  void add(const std::string& domain, Entity entity) {
    auto name = entity.find("name");
    if (name == entity.end() || trim(name->second).empty())
      throw MetricError("entity in domain '" + domain + "' has no name");
    auto& list = domains_[to_lower(trim(domain))];
    const auto key = normalize_value(name->second);
    for (const auto& e : list)
      if (normalize_value(e.at("name")) == key)
        throw MetricError("duplicate entity name '" + name->second + "' in domain '" + domain + "'");
    list.push_back(std::move(entity));
  }

  const std::vector<Entity>* find(std::string_view domain) const {
    auto it = domains_.find(std::string(domain));
    return it == domains_.end() ? nullptr : &it->second;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [_, v] : domains_) n += v.size();
    return n;
  }

 private:
  std::map<std::string, std::vector<Entity>> domains_;
};

/// `{"domain": "...", "slots": {"name": "...", ...}}` per line.
inline EntityDb read_entity_db(std::istream& in) {
  EntityDb db;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const auto j = json::parse(line);
      EntityDb::Entity e;
      for (const auto& [k, v] : j.at("slots").items()) e[to_lower(k)] = v.get<std::string>();
      db.add(j.at("domain").get<std::string>(), std::move(e));
    } catch (const json::exception& e) {
      throw MetricError("entity db line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return db;
}

// Which belief states gate `[<domain>_name]` placeholders.
enum class BeliefSource { kGenerated, kGold };

struct InformOptions {
  BeliefSource belief_source = BeliefSource::kGenerated;
  // DST predictions backing kGenerated; when null the placeholder gate is off.
  const PredictionSet* dst_predictions = nullptr;
};

struct InformSuccessResult {
  std::size_t evaluated = 0;
  std::size_t informed = 0;
  std::size_t succeeded = 0;
  std::size_t excluded_no_goal = 0;

  double inform_rate() const { return evaluated ? 100.0 * informed / evaluated : 0.0; }
  double success_rate() const { return evaluated ? 100.0 * succeeded / evaluated : 0.0; }
};

namespace detail {

inline bool contains_tokens(const Tokens& haystack, const Tokens& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

inline bool entity_satisfies(const EntityDb::Entity& e, const GoalDomain& g) {
  for (const auto& [slot, value] : g.constraints) {
    auto it = e.find(to_lower(slot));
    if (it != e.end() && normalize_value(it->second) != normalize_value(value)) return false;
  }
  return true;
}

inline bool state_matches_goal(const BeliefState& state, const std::string& domain, const GoalDomain& g) {
  for (const auto& [slot, value] : g.constraints) {
    auto v = state.get(domain, to_lower(trim(slot)));
    if (!v || *v != normalize_value(value)) return false;
  }
  return true;
}

}  // namespace detail

/// Dialogue-level Inform and Success, averaged over dialogues with a goal.
///
/// Inform holds when every goal domain that requires an entity has some
/// predicted system response containing `[<domain>_name]` or the literal
/// name of a database entity consistent with the goal constraints. Success
/// additionally needs, for every requestable slot r of every goal domain, a
/// response containing `[<domain>_<r>]` or `[value_<r>]`.
///
/// With a belief gate active, a `[<domain>_name]` placeholder at system turn t
/// only counts when the belief state of the latest annotated user turn
/// before t carries every goal constraint of that domain.
inline InformSuccessResult inform_success(std::span<const Dialogue> dialogues, const PredictionSet& nlg,
                                          const EntityDb& db, const InformOptions& opt = {}) {
  InformSuccessResult result;
  const bool gate = opt.belief_source == BeliefSource::kGold || opt.dst_predictions != nullptr;
  for (const auto& d : dialogues) {
    if (!d.goal) {
      ++result.excluded_no_goal;
      continue;
    }
    ++result.evaluated;

    struct Response {
      std::string lower;
      Tokens tokens;
      BeliefState state;
    };
    std::vector<Response> responses;
    const Turn* last_user = nullptr;
    for (const auto& t : d.turns) {
      if (t.speaker == Speaker::kSpeaker1 && t.belief) last_user = &t;
      if (t.speaker != Speaker::kSpeaker2) continue;
      const std::string* text = nlg.find(d.id, t.index);
      if (!text) continue;
      Response r{to_lower(*text), tokenize(*text), {}};
      if (gate && last_user) {
        if (opt.belief_source == BeliefSource::kGold) {
          r.state = *last_user->belief;
        } else if (const std::string* p = opt.dst_predictions->find(d.id, last_user->index)) {
          r.state = parse_belief_state(*p);
        }
      }
      responses.push_back(std::move(r));
    }

    bool informed = true;
    for (const auto& [domain, g] : d.goal->domains) {
      if (!g.entity_required) continue;
      const std::string placeholder = "[" + domain + "_name]";
      std::vector<Tokens> names;
      if (const auto* entities = db.find(domain))
        for (const auto& e : *entities)
          if (detail::entity_satisfies(e, g)) names.push_back(tokenize(e.at("name")));
      bool offered = false;
      for (const auto& r : responses) {
        if (r.lower.find(placeholder) != std::string::npos &&
            (!gate || detail::state_matches_goal(r.state, domain, g))) {
          offered = true;
        }
        for (const auto& n : names) offered = offered || detail::contains_tokens(r.tokens, n);
        if (offered) break;
      }
      if (!offered) {
        informed = false;
        break;
      }
    }
    if (!informed) continue;
    ++result.informed;

    bool answered = true;
    for (const auto& [domain, g] : d.goal->domains) {
      for (const auto& slot : g.requestables) {
        const std::string typed = "[" + domain + "_" + to_lower(slot) + "]";
        const std::string generic = "[value_" + to_lower(slot) + "]";
        bool found = false;
        for (const auto& r : responses)
          found = found || r.lower.find(typed) != std::string::npos ||
                  r.lower.find(generic) != std::string::npos;
        answered = answered && found;
      }
    }
    if (answered) ++result.succeeded;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Task-level evaluation over canonical gold dialogues

inline MetricReport evaluate_dst(std::span<const Dialogue> gold, const PredictionSet& preds) {
  const std::size_t unmatched = check_predictions(gold, preds);
  const auto r = joint_goal_accuracy(gold_belief_states(gold), preds);
  MetricReport report;
  report.add_rate("jga", static_cast<double>(r.correct), static_cast<double>(r.total));
  report.add_count("missing", static_cast<double>(r.missing));
  report.add_count("unmatched", static_cast<double>(unmatched));
  return report;
}

/// Gold/predicted response pairs over every speaker2 turn with history; a
/// missing prediction is an empty hypothesis.
inline std::vector<TokenPair> response_pairs(std::span<const Dialogue> gold, const PredictionSet& preds,
                                             std::size_t* missing = nullptr) {
  std::vector<TokenPair> pairs;
  for (const auto& d : gold)
    for (const auto& t : d.turns) {
      if (t.speaker != Speaker::kSpeaker2 || t.index == 0) continue;
      const std::string* p = preds.find(d.id, t.index);
      if (!p && missing) ++*missing;
      pairs.push_back({p ? tokenize(*p) : Tokens{}, tokenize(t.text)});
    }
  return pairs;
}

inline MetricReport evaluate_nlg(std::span<const Dialogue> gold, const PredictionSet& preds,
                                 const EntityDb& db, const InformOptions& opt = {}) {
  const std::size_t unmatched = check_predictions(gold, preds);
  std::size_t missing = 0;
  const auto pairs = response_pairs(gold, preds, &missing);
  const double bleu = pairs.empty() ? 0.0 : bleu_corpus(pairs);
  const auto is = inform_success(gold, preds, db, opt);
  MetricReport report;
  report.add("bleu", bleu);
  report.add_rate("inform", static_cast<double>(is.informed), static_cast<double>(is.evaluated));
  report.add_rate("success", static_cast<double>(is.succeeded), static_cast<double>(is.evaluated));
  report.add("combined", combined_score(bleu, is.inform_rate(), is.success_rate()));
  report.add_count("no_goal", static_cast<double>(is.excluded_no_goal));
  report.add_count("missing", static_cast<double>(missing));
  report.add_count("unmatched", static_cast<double>(unmatched));
  return report;
}

inline MetricReport evaluate_ic(std::span<const Dialogue> gold, const PredictionSet& preds) {
  const std::size_t unmatched = check_predictions(gold, preds);
  std::vector<std::string> g, p;
  std::size_t missing = 0;
  for (const auto& d : gold)
    for (const auto& t : d.turns) {
      if (!t.intent) continue;
      g.push_back(*t.intent);
      const std::string* pred = preds.find(d.id, t.index);
      if (!pred) ++missing;
      p.push_back(pred ? *pred : std::string());
    }
  const auto r = intent_accuracy(g, p);
  MetricReport report;
  report.add_rate("accuracy", static_cast<double>(r.correct), static_cast<double>(r.total));
  report.add_count("missing", static_cast<double>(missing));
  report.add_count("unmatched", static_cast<double>(unmatched));
  return report;
}

/// Summaries are predicted at the dialogue's last turn index.
inline std::vector<TokenPair> summary_pairs(std::span<const Dialogue> gold, const PredictionSet& preds,
                                            std::size_t* missing = nullptr) {
  std::vector<TokenPair> pairs;
  for (const auto& d : gold) {
    if (!d.summary || d.turns.empty()) continue;
    const std::string* p = preds.find(d.id, d.turns.size() - 1);
    if (!p && missing) ++*missing;
    pairs.push_back({p ? tokenize(*p) : Tokens{}, tokenize(*d.summary)});
  }
  return pairs;
}

inline MetricReport evaluate_summ(std::span<const Dialogue> gold, const PredictionSet& preds) {
  const std::size_t unmatched = check_predictions(gold, preds);
  std::size_t missing = 0;
  const auto pairs = summary_pairs(gold, preds, &missing);
  const auto r = rouge_corpus(pairs);
  MetricReport report;
  report.add("rouge1", r.r1);
  report.add("rouge2", r.r2);
  report.add("rougeL", r.rl);
  report.add_count("pairs", static_cast<double>(pairs.size()));
  report.add_count("missing", static_cast<double>(missing));
  report.add_count("unmatched", static_cast<double>(unmatched));
  return report;
}

}  // namespace todc

#endif  // TODC_METRICS_HPP_
