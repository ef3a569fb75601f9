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

// Fine-grained analysis: per-dialogue aspect values, interval bucketing and
// per-bucket metric tables.

#ifndef TODC_ANALYSIS_HPP_
#define TODC_ANALYSIS_HPP_

#include <algorithm>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "todc/metrics.hpp"
#include "todc/schema.hpp"
#include "todc/text.hpp"

namespace todc {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Aspect { kSp1Len, kSp2Len, kUtrNum, kRefeLen };

inline std::string_view aspect_name(Aspect a) {
  switch (a) {
    case Aspect::kSp1Len: return "sp1_len";
    case Aspect::kSp2Len: return "sp2_len";
    case Aspect::kUtrNum: return "utr_num";
    case Aspect::kRefeLen: return "refe_len";
  }
  return "?";
}

inline std::optional<Aspect> parse_aspect(std::string_view name) {
  for (auto a : {Aspect::kSp1Len, Aspect::kSp2Len, Aspect::kUtrNum, Aspect::kRefeLen})
    if (aspect_name(a) == trim(name)) return a;
  return std::nullopt;
}

struct AspectProfile {
  double sp1_len = 0;  // mean words per speaker1 turn
  double sp2_len = 0;  // mean words per speaker2 turn
  double utr_num = 0;  // turn count
  std::optional<double> refe_len;  // words in the reference summary

  std::optional<double> value(Aspect a) const {
    switch (a) {
      case Aspect::kSp1Len: return sp1_len;
      case Aspect::kSp2Len: return sp2_len;
      case Aspect::kUtrNum: return utr_num;
      case Aspect::kRefeLen: return refe_len;
    }
    return std::nullopt;
  }
};

/// Word counts use the metric tokenizer; a speaker with no turns has mean 0.
inline AspectProfile compute_aspects(const Dialogue& d) {
  AspectProfile p;
  std::size_t words[2] = {0, 0};
  std::size_t turns[2] = {0, 0};
  for (const auto& t : d.turns) {
    const int s = t.speaker == Speaker::kSpeaker1 ? 0 : 1;
    words[s] += tokenize(t.text).size();
    ++turns[s];
  }
  p.sp1_len = turns[0] ? static_cast<double>(words[0]) / static_cast<double>(turns[0]) : 0.0;
  p.sp2_len = turns[1] ? static_cast<double>(words[1]) / static_cast<double>(turns[1]) : 0.0;
  p.utr_num = static_cast<double>(d.turns.size());
  if (d.summary) p.refe_len = static_cast<double>(tokenize(*d.summary).size());
  return p;
}

/// Half-open intervals [b0, b1), [b1, b2), ..., [bn, inf) over one aspect.
/// Values below b0 fall into the first interval, so the spec covers [0, inf).
class BucketSpec {
 public:
  BucketSpec(Aspect aspect, std::vector<double> lower_bounds, std::vector<std::string> labels = {})
      : aspect_(aspect), lower_(std::move(lower_bounds)), labels_(std::move(labels)) {
    if (lower_.empty()) throw AnalysisError("bucket spec needs at least one interval");
    if (lower_.front() < 0) throw AnalysisError("bucket spec starts below 0");
    for (std::size_t i = 1; i < lower_.size(); ++i)
      if (!(lower_[i] > lower_[i - 1])) throw AnalysisError("bucket bounds must increase strictly");
    if (labels_.empty()) {
      for (std::size_t i = 0; i < lower_.size(); ++i) {
        char buf[64];
        if (i + 1 < lower_.size())
          std::snprintf(buf, sizeof buf, "[%g,%g)", lower_[i], lower_[i + 1]);
        else
          std::snprintf(buf, sizeof buf, "[%g,inf)", lower_[i]);
        labels_.emplace_back(buf);
      }
    }
    if (labels_.size() != lower_.size()) throw AnalysisError("one label per bucket required");
  }

  /// Integer ranges such as "6-10, 11-15, 16+". Each range must
  /// start right after the previous one ends and the last must be open.
  /// "a-b" becomes [a, b+1), so fractional means such as 10.5 stay in it.
  static BucketSpec from_ranges(Aspect aspect, std::string_view ranges) {
    std::vector<double> lower;
    std::vector<std::string> labels;
    std::optional<long> expected;
    bool open = false;
    for (const auto& raw : split(ranges, ',')) {
      const std::string r(trim(raw));
      if (open) throw AnalysisError("range after open-ended '" + labels.back() + "'");
      long lo = 0, hi = 0;
      try {
        if (!r.empty() && r.back() == '+') {
          lo = std::stol(r.substr(0, r.size() - 1));
          open = true;
        } else {
          const auto dash = r.find('-');
          if (dash == std::string::npos || dash == 0) throw AnalysisError("bad range '" + r + "'");
          lo = std::stol(r.substr(0, dash));
          hi = std::stol(r.substr(dash + 1));
          if (hi < lo) throw AnalysisError("empty range '" + r + "'");
        }
      } catch (const std::logic_error&) {
        throw AnalysisError("bad range '" + r + "'");
      }
      if (expected && lo != *expected)
        throw AnalysisError("range '" + r + "' is not contiguous with the previous one");
      expected = hi + 1;
      lower.push_back(static_cast<double>(lo));
      labels.push_back(r);
    }
    if (!open) throw AnalysisError("last range must be open-ended (e.g. '16+')");
    return BucketSpec(aspect, std::move(lower), std::move(labels));
  }

  std::size_t assign(double value) const {
    const auto it = std::upper_bound(lower_.begin(), lower_.end(), value);
    return it == lower_.begin() ? 0 : static_cast<std::size_t>(it - lower_.begin()) - 1;
  }

  Aspect aspect() const { return aspect_; }
  std::size_t size() const { return lower_.size(); }
  const std::vector<double>& lower_bounds() const { return lower_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Aspect aspect_;
  std::vector<double> lower_;
  std::vector<std::string> labels_;
};

inline std::size_t assign_bucket(double value, const BucketSpec& spec) { return spec.assign(value); }

/// Three intervals per aspect.
inline std::vector<BucketSpec> default_bucket_specs() {
  return {BucketSpec::from_ranges(Aspect::kSp1Len, "6-10,11-15,16+"),
          BucketSpec::from_ranges(Aspect::kSp2Len, "6-10,11-15,16+"),
          BucketSpec::from_ranges(Aspect::kUtrNum, "2-5,6-9,10+"),
          BucketSpec::from_ranges(Aspect::kRefeLen, "4-23,24-43,44+")};
}

/// `aspect = a-b, c-d, e+` lines; `#` comments.
inline std::vector<BucketSpec> read_bucket_specs(std::istream& in) {
  std::vector<BucketSpec> specs;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw AnalysisError("bucket line without '='");
    const auto aspect = parse_aspect(trim(body.substr(0, eq)));
    if (!aspect) throw AnalysisError("unknown aspect '" + std::string(trim(body.substr(0, eq))) + "'");
    specs.push_back(BucketSpec::from_ranges(*aspect, body.substr(eq + 1)));
  }
  return specs;
}

// ---------------------------------------------------------------------------
// Reports

/// One analysed unit. Per-sample metric values are fractions in [0, 1];
/// reports scale them to 0-100.
struct Sample {
  std::string id;
  AspectProfile aspects;
  std::map<std::string, double> metrics;
};

/// Recomputes metrics that do not decompose over samples (BLEU, Inform, ...)
/// for a subset; values are already on 0-100.
using CorpusRecompute = std::function<std::map<std::string, double>(std::span<const Sample* const>)>;

inline constexpr std::string_view kUnassignedLabel = "n/a";

struct BucketRow {
  Aspect aspect = Aspect::kSp1Len;
  std::size_t bucket = 0;
  std::string label;
  std::size_t count = 0;
  std::map<std::string, std::optional<double>> metrics;
};

struct FineGrainedReport {
  std::vector<BucketRow> rows;

  std::vector<std::string> metric_names() const {
    std::set<std::string> names;
    for (const auto& r : rows)
      for (const auto& [n, _] : r.metrics) names.insert(n);
    return {names.begin(), names.end()};
  }

  std::string to_csv() const {
    const auto names = metric_names();
    std::string out = "aspect,bucket,count";
    for (const auto& n : names) out += "," + n;
    out += '\n';
    for (const auto& r : rows) {
      out += std::string(aspect_name(r.aspect)) + "," + r.label + "," + std::to_string(r.count);
      for (const auto& n : names) {
        out += ',';
        auto it = r.metrics.find(n);
        if (it != r.metrics.end() && it->second) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.4f", *it->second);
          out += buf;
        }
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["aspect"] = aspect_name(r.aspect);
      j["bucket"] = r.label;
      j["count"] = r.count;
      nlohmann::ordered_json m = nlohmann::ordered_json::object();
      for (const auto& [n, v] : r.metrics) m[n] = v ? nlohmann::ordered_json(*v) : nullptr;
      j["metrics"] = std::move(m);
      arr.push_back(std::move(j));
    }
    return arr;
  }
};

/// Per (spec, bucket): member count, mean of each per-sample metric (x100)
/// and any recomputed corpus-level metric. Empty buckets carry null metrics.
/// Members are processed in id order, so results do not depend on input
/// order. Samples lacking the aspect (refe_len without a summary) go to a
/// trailing "n/a" row that is emitted only when non-empty.
inline FineGrainedReport fine_grained_report(std::span<const Sample> samples, std::span<const BucketSpec> specs,
                                             const CorpusRecompute& recompute = {}) {
  std::vector<const Sample*> ordered;
  ordered.reserve(samples.size());
  for (const auto& s : samples) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Sample* a, const Sample* b) { return a->id < b->id; });

  std::set<std::string> sample_metrics;
  for (const auto& s : samples)
    for (const auto& [n, _] : s.metrics) sample_metrics.insert(n);

  auto summarize = [&](BucketRow& row, const std::vector<const Sample*>& members) {
    row.count = members.size();
    for (const auto& name : sample_metrics) {
      double sum = 0;
      std::size_t n = 0;
      for (const auto* s : members) {
        auto it = s->metrics.find(name);
        if (it == s->metrics.end()) continue;
        sum += it->second;
        ++n;
      }
      row.metrics[name] = n ? std::optional<double>(100.0 * sum / static_cast<double>(n)) : std::nullopt;
    }
    if (recompute) {
      if (members.empty()) {
        for (const auto& [name, _] : recompute({})) row.metrics[name] = std::nullopt;
      } else {
        for (const auto& [name, v] : recompute(members)) row.metrics[name] = v;
      }
    }
  };

  FineGrainedReport report;
  for (const auto& spec : specs) {
    std::vector<std::vector<const Sample*>> members(spec.size());
    std::vector<const Sample*> unassigned;
    for (const auto* s : ordered) {
      const auto v = s->aspects.value(spec.aspect());
      if (v)
        members[spec.assign(*v)].push_back(s);
      else
        unassigned.push_back(s);
    }
    for (std::size_t b = 0; b < spec.size(); ++b) {
      BucketRow row{spec.aspect(), b, spec.labels()[b], 0, {}};
      summarize(row, members[b]);
      report.rows.push_back(std::move(row));
    }
    if (!unassigned.empty()) {
      BucketRow row{spec.aspect(), spec.size(), std::string(kUnassignedLabel), 0, {}};
      summarize(row, unassigned);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Task wiring: build samples from gold dialogues and predictions.

struct TaskAnalysis {
  std::vector<Sample> samples;
  CorpusRecompute recompute;
};

namespace detail {

inline std::vector<Dialogue> collect_members(std::span<const Sample* const> members,
                                             const std::unordered_map<std::string, const Dialogue*>& by_id) {
  std::vector<Dialogue> out;
  out.reserve(members.size());
  for (const auto* s : members) out.push_back(*by_id.at(s->id));
  return out;
}

}  // namespace detail

/// Samples are dialogues. DST buckets recompute turn-level JGA over member
/// dialogues; NLG buckets recompute BLEU, Inform, Success and Combined;
/// SUMM and IC carry per-dialogue ROUGE and accuracy.
///
/// The returned recompute closure keeps references to `gold`, `preds` and
/// `db`; they must outlive it.
inline TaskAnalysis build_task_analysis(TaskKind task, std::span<const Dialogue> gold, const PredictionSet& preds,
                                        const EntityDb& db, const InformOptions& opt = {}) {
  TaskAnalysis out;
  auto by_id = std::make_shared<std::unordered_map<std::string, const Dialogue*>>();
  for (const auto& d : gold) (*by_id)[d.id] = &d;

  switch (task) {
    case TaskKind::kDst:
      for (const auto& d : gold) {
        bool annotated = false;
        for (const auto& t : d.turns) annotated = annotated || (t.speaker == Speaker::kSpeaker1 && t.belief);
        if (annotated) out.samples.push_back({d.id, compute_aspects(d), {}});
      }
      out.recompute = [by_id, &preds](std::span<const Sample* const> members) {
        std::map<std::string, double> m{{"jga", 0.0}};
        if (members.empty()) return m;
        const auto dialogues = detail::collect_members(members, *by_id);
        m["jga"] = joint_goal_accuracy(gold_belief_states(dialogues), preds).rate();
        return m;
      };
      break;
    case TaskKind::kNlg:
      for (const auto& d : gold) out.samples.push_back({d.id, compute_aspects(d), {}});
      out.recompute = [by_id, &preds, &db, opt](std::span<const Sample* const> members) {
        std::map<std::string, double> m{{"bleu", 0.0}, {"inform", 0.0}, {"success", 0.0}, {"combined", 0.0}};
        if (members.empty()) return m;
        const auto dialogues = detail::collect_members(members, *by_id);
        const auto pairs = response_pairs(dialogues, preds);
        m["bleu"] = pairs.empty() ? 0.0 : bleu_corpus(pairs);
        const auto is = inform_success(dialogues, preds, db, opt);
        m["inform"] = is.inform_rate();
        m["success"] = is.success_rate();
        m["combined"] = combined_score(m["bleu"], m["inform"], m["success"]);
        return m;
      };
      break;
    case TaskKind::kSumm:
      for (const auto& d : gold) {
        if (!d.summary) continue;
        const std::string* p = preds.find(d.id, d.turns.size() - 1);
        const auto r = rouge_scores(p ? tokenize(*p) : Tokens{}, tokenize(*d.summary));
        out.samples.push_back({d.id, compute_aspects(d),
                               {{"rouge1", r.r1 / 100.0}, {"rouge2", r.r2 / 100.0}, {"rougeL", r.rl / 100.0}}});
      }
      break;
    case TaskKind::kIc:
      for (const auto& d : gold) {
        std::size_t correct = 0, total = 0;
        for (const auto& t : d.turns) {
          if (!t.intent) continue;
          ++total;
          const std::string* p = preds.find(d.id, t.index);
          correct += p && normalize_value(*p) == normalize_value(*t.intent);
        }
        if (total)
          out.samples.push_back({d.id, compute_aspects(d),
                                 {{"accuracy", static_cast<double>(correct) / static_cast<double>(total)}}});
      }
      break;
    default:
      throw AnalysisError("no analysis defined for task " + std::string(task_name(task)));
  }
  return out;
}

}  // namespace todc

#endif  // TODC_ANALYSIS_HPP_
