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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "todc/analysis.hpp"
#include "todc/metrics.hpp"
#include "todc/prompt.hpp"
#include "todc/splits.hpp"

namespace {

using namespace todc;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(std::string why) {
    if (ok) detail = std::move(why);
    ok = false;
  }
};

Outcome combined_score_identity() {
  Outcome o;
  const struct {
    double bleu, inform, success, expected;
  } rows[] = {{18.57, 92.20, 79.30, 104.32}, {18.62, 89.20, 79.40, 102.92}};
  for (const auto& r : rows) {
    const double got = combined_score(r.bleu, r.inform, r.success);
    if (std::fabs(got - r.expected) > 0.005) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "got %.6f, want %.2f", got, r.expected);
      o.fail(buf);
    }
  }
  return o;
}

Outcome metric_oracle_suite() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(2024);
  std::vector<TokenPair> all;
  for (int i = 0; i < 1000 && o.ok; ++i) {
    const auto hyp = testing::random_tokens(rng, 0, 12, 6);
    const auto ref = testing::random_tokens(rng, 1, 12, 6);
    const auto got = rouge_scores(hyp, ref);
    const auto want = oracle::rouge(hyp, ref);
    if (std::fabs(got.r1 - want.r1) > 1e-9 || std::fabs(got.r2 - want.r2) > 1e-9 ||
        std::fabs(got.rl - want.rl) > 1e-9)
      o.fail("rouge mismatch on pair " + std::to_string(i));
    const std::vector<TokenPair> one = {{hyp, ref}};
    const auto stats = bleu_stats(one);
    for (std::size_t n = 1; n <= 4; ++n) {
      const double total = hyp.size() >= n ? static_cast<double>(hyp.size() - n + 1) : 0.0;
      const double want_p = total > 0 ? static_cast<double>(oracle::clipped_overlap(hyp, ref, n)) / total : 0.0;
      if (std::fabs(stats.precision(n) - want_p) > 1e-9)
        o.fail("bleu " + std::to_string(n) + "-gram precision mismatch on pair " + std::to_string(i));
    }
    all.push_back({hyp, ref});
  }
  // Corpus-level aggregation of the same counts.
  const auto corpus = bleu_stats(all);
  for (std::size_t n = 1; n <= 4 && o.ok; ++n) {
    std::size_t matches = 0, totals = 0;
    for (const auto& p : all) {
      matches += oracle::clipped_overlap(p.hypothesis, p.reference, n);
      totals += p.hypothesis.size() >= n ? p.hypothesis.size() - n + 1 : 0;
    }
    if (corpus.matches[n - 1] != matches || corpus.totals[n - 1] != totals)
      o.fail("corpus " + std::to_string(n) + "-gram tallies differ");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 10.0) o.fail("took " + std::to_string(secs) + " s");
  return o;
}

// Independent renderer: domain groups and slots in random order, so the
// comparison also exercises order insensitivity.
std::string render_shuffled(const std::set<std::vector<std::string>>& triples, std::mt19937& rng) {
  if (triples.empty()) return "none";
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& t : triples) groups[t[0]].push_back(t[1] + " " + t[2]);
  std::vector<std::string> parts;
  for (auto& [dom, items] : groups) {
    std::shuffle(items.begin(), items.end(), rng);
    std::string g = "[" + dom + "] ";
    for (std::size_t i = 0; i < items.size(); ++i) g += (i ? " , " : "") + items[i];
    parts.push_back(g);
  }
  std::shuffle(parts.begin(), parts.end(), rng);
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

Outcome jga_brute_force() {
  Outcome o;
  std::mt19937 rng(99);
  std::map<TurnKey, BeliefState> gold;
  PredictionSet preds{TaskKind::kDst, {}};
  std::size_t expected = 0, missing = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const TurnKey key{"d" + std::to_string(i / 7), i % 7};
    const auto g = testing::random_belief(rng);
    gold[key] = g;
    auto p = oracle::as_set(g);
    switch (rng() % 5) {
      case 0:  // drop a triple
        if (!p.empty()) p.erase(std::next(p.begin(), static_cast<long>(rng() % p.size())));
        break;
      case 1:  // change a value
        if (!p.empty()) {
          auto t = *p.begin();
          p.erase(p.begin());
          t[2] = t[2] == "north" ? "south" : "north";
          p.insert(t);
        }
        break;
      case 2:  // extra triple
        p.insert({"police", "area", "centre"});
        break;
      case 3:  // no prediction at all
        ++missing;
        continue;
      default:
        break;
    }
    if (p == oracle::as_set(g)) ++expected;
    preds.predictions[key] = render_shuffled(p, rng);
  }
  const auto r = joint_goal_accuracy(gold, preds);
  if (r.total != 500) o.fail("total " + std::to_string(r.total));
  if (r.correct != expected)
    o.fail("correct " + std::to_string(r.correct) + " vs oracle " + std::to_string(expected));
  if (r.missing != missing) o.fail("missing " + std::to_string(r.missing) + " vs " + std::to_string(missing));
  if (std::fabs(r.rate() - 100.0 * static_cast<double>(expected) / 500.0) > 1e-12) o.fail("rate differs");
  return o;
}

Outcome success_bounded_by_inform() {
  Outcome o;
  std::mt19937 rng(7);
  const char* domains[] = {"restaurant", "hotel", "attraction", "train"};
  const char* slots[] = {"address", "phone", "postcode", "reference", "price"};
  std::vector<Dialogue> all;
  PredictionSet preds{TaskKind::kNlg, {}};
  PredictionSet dst{TaskKind::kDst, {}};
  EntityDb db;
  db.add("restaurant", {{"name", "pizza hut"}, {"food", "italian"}});
  db.add("hotel", {{"name", "acorn guest house"}, {"area", "north"}});
  for (int i = 0; i < 200; ++i) {
    auto d = testing::tod_dialogue("f" + std::to_string(i), 1 + rng() % 4);
    Goal goal;
    const std::size_t ndom = 1 + rng() % 3;
    for (std::size_t k = 0; k < ndom; ++k) {
      GoalDomain g;
      g.entity_required = rng() % 3 != 0;
      if (rng() % 2) g.constraints["food"] = rng() % 2 ? "italian" : "thai";
      for (const char* s : slots)
        if (rng() % 3 == 0) g.requestables.insert(s);
      goal.domains[domains[rng() % 4]] = g;
    }
    d.goal = goal;
    for (const auto& t : d.turns) {
      if (t.speaker != Speaker::kSpeaker2) {
        if (t.belief && rng() % 2) dst.predictions[{d.id, t.index}] = "[restaurant] food italian";
        continue;
      }
      std::string text = "ok";
      for (int w = 0; w < 3; ++w) {
        const std::string dom = domains[rng() % 4];
        switch (rng() % 5) {
          case 0: text += " [" + dom + "_name]"; break;
          case 1: text += " [" + dom + "_" + slots[rng() % 5] + "]"; break;
          case 2: text += " [value_" + std::string(slots[rng() % 5]) + "]"; break;
          case 3: text += rng() % 2 ? " pizza hut" : " acorn guest house"; break;
          default: text += " thanks"; break;
        }
      }
      preds.predictions[{d.id, t.index}] = text;
    }
    all.push_back(std::move(d));
  }
  const InformOptions modes[] = {{BeliefSource::kGenerated, nullptr},
                                 {BeliefSource::kGold, nullptr},
                                 {BeliefSource::kGenerated, &dst}};
  std::size_t informed = 0;
  for (const auto& mode : modes) {
    for (const auto& d : all) {
      const auto r = inform_success(std::span<const Dialogue>(&d, 1), preds, db, mode);
      if (r.succeeded > r.informed) o.fail("success without inform in " + d.id);
      informed += r.informed;
    }
    const auto r = inform_success(all, preds, db, mode);
    if (r.success_rate() > r.inform_rate()) o.fail("corpus success rate exceeds inform rate");
  }
  if (informed == 0) o.fail("degenerate fixtures: nothing informed");
  return o;
}

Outcome belief_round_trip() {
  Outcome o;
  std::mt19937 rng(1234);
  for (int i = 0; i < 1000 && o.ok; ++i) {
    const auto b = testing::random_belief(rng, 10);
    const auto text = linearize_belief_state(b);
    if (!(parse_belief_state(text) == b)) o.fail("round trip failed for: " + text);
  }
  return o;
}

Outcome bucketing_partition() {
  Outcome o;
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> len(0, 60);
  std::vector<Sample> samples;
  for (int i = 0; i < 1000; ++i) {
    Sample s;
    s.id = "s" + std::to_string(i);
    s.aspects.sp1_len = len(rng);
    s.aspects.sp2_len = len(rng);
    s.aspects.utr_num = static_cast<double>(1 + rng() % 30);
    if (rng() % 4) s.aspects.refe_len = static_cast<double>(rng() % 80);
    s.metrics["acc"] = static_cast<double>(rng() % 2);
    s.metrics["score"] = std::uniform_real_distribution<double>(0, 1)(rng);
    samples.push_back(std::move(s));
  }
  double corpus_mean[2] = {0, 0};
  for (const auto& s : samples) {
    corpus_mean[0] += s.metrics.at("acc");
    corpus_mean[1] += s.metrics.at("score");
  }
  for (double& m : corpus_mean) m = 100.0 * m / 1000.0;

  auto specs = default_bucket_specs();
  specs.push_back(BucketSpec(Aspect::kSp1Len, {0, 2.5, 7, 7.5, 30}));
  specs.push_back(BucketSpec::from_ranges(Aspect::kUtrNum, "3-3,4-20,21+"));
  const auto report = fine_grained_report(samples, specs);

  std::size_t row = 0;
  for (const auto& spec : specs) {
    // Oracle: an interval test per bucket; each sample must hit exactly one.
    const auto& lo = spec.lower_bounds();
    std::vector<std::size_t> counts(spec.size() + 1, 0);
    for (const auto& s : samples) {
      const auto v = s.aspects.value(spec.aspect());
      if (!v) {
        ++counts[spec.size()];
        continue;
      }
      std::size_t hits = 0;
      for (std::size_t b = 0; b < spec.size(); ++b) {
        const double low = b == 0 ? -INFINITY : lo[b];
        const double high = b + 1 < spec.size() ? lo[b + 1] : INFINITY;
        if (*v >= low && *v < high) {
          ++hits;
          ++counts[b];
        }
      }
      if (hits != 1) o.fail("sample " + s.id + " hits " + std::to_string(hits) + " buckets");
    }
    std::size_t sum = 0;
    double weighted[2] = {0, 0};
    const std::size_t rows_for_spec = spec.size() + (counts[spec.size()] ? 1 : 0);
    for (std::size_t b = 0; b < rows_for_spec; ++b, ++row) {
      const auto& r = report.rows.at(row);
      if (r.count != counts[b]) o.fail(std::string(aspect_name(spec.aspect())) + " bucket count mismatch");
      sum += r.count;
      if (r.count) {
        weighted[0] += static_cast<double>(r.count) * *r.metrics.at("acc");
        weighted[1] += static_cast<double>(r.count) * *r.metrics.at("score");
      }
    }
    if (sum != samples.size()) o.fail("counts sum to " + std::to_string(sum));
    for (int m = 0; m < 2; ++m)
      if (std::fabs(weighted[m] / 1000.0 - corpus_mean[m]) > 1e-9) o.fail("weighted mean differs from corpus mean");
  }
  if (row != report.rows.size()) o.fail("unexpected extra rows");
  return o;
}

Outcome split_determinism() {
  Outcome o;
  std::vector<std::string> ids;
  for (int i = 0; i < 1000; ++i) ids.push_back("dlg-" + std::to_string(i));
  std::string first;
  for (int run = 0; run < 5; ++run) {
    const auto picked = percent_subsample(ids, 1, 31337);
    if (picked.size() != 10) o.fail("percent returned " + std::to_string(picked.size()) + " ids");
    std::string bytes;
    for (const auto& id : picked) bytes += id + "\n";
    if (run == 0)
      first = bytes;
    else if (bytes != first)
      o.fail("run " + std::to_string(run) + " differs");
  }

  std::vector<Dialogue> corpus;
  const char* doms[] = {"train", "taxi", "restaurant", "hotel", "attraction"};
  std::set<std::string> multi;
  for (int i = 0; i < 600; ++i) {
    auto d = testing::tod_dialogue("c" + std::to_string(i), 1);
    d.domains = {doms[i % 5]};
    if (i % 9 == 0) {
      d.domains.insert(doms[(i + 1) % 5]);
      multi.insert(d.id);
    }
    corpus.push_back(std::move(d));
  }
  const auto s = leave_one_domain_out(corpus, "taxi", 8);
  for (const auto* part : {&s.source_train, &s.source_validation, &s.target_test})
    for (const auto& id : *part)
      if (multi.count(id)) o.fail("multi-domain dialogue " + id + " leaked");
  if (s.excluded_multi_domain != multi.size()) o.fail("excluded count mismatch");
  if (s.source_validation.size() != 200)
    o.fail("validation has " + std::to_string(s.source_validation.size()) + " samples");
  return o;
}

Outcome compile_determinism() {
  Outcome o;
  const auto corpus = testing::toy_corpus(50, 314);
  const std::set<TaskKind> all(kAllTasks.begin(), kAllTasks.end());
  CompileOptions opt;
  opt.neg_k = 3;
  opt.seed = 2718;
  std::string bytes[2];
  CompileStats stats;
  for (auto& b : bytes) {
    const auto r = compile_corpus(corpus, all, opt);
    std::ostringstream os;
    write_records(os, r.records);
    b = os.str();
    stats = r.stats;
  }
  if (bytes[0] != bytes[1]) o.fail("outputs differ");
  if (bytes[0].empty()) o.fail("empty output");
  const auto want = oracle::expected_counts(corpus, opt.neg_k);
  for (TaskKind t : kAllTasks) {
    const std::size_t got = stats.per_task.count(t) ? stats.per_task.at(t) : 0;
    if (got != want.at(t))
      o.fail(std::string(task_name(t)) + ": " + std::to_string(got) + " vs recount " + std::to_string(want.at(t)));
  }
  // Recount the written records by task tag as well.
  std::map<TaskKind, std::size_t> tagged;
  std::istringstream in(bytes[0]);
  for (std::string line; std::getline(in, line);) ++tagged[record_from_line(line).task];
  for (TaskKind t : kAllTasks)
    if ((tagged.count(t) ? tagged.at(t) : 0) != want.at(t)) o.fail("record tags disagree for " + std::string(task_name(t)));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"combined score identity (104.32, 102.92 within 0.005)", combined_score_identity},
      {"metric oracle suite (1000 pairs, ROUGE and BLEU precisions to 1e-9, < 10 s)", metric_oracle_suite},
      {"JGA equals naive set-comparison oracle on 500 pairs", jga_brute_force},
      {"success <= inform on 200 randomized fixtures", success_bounded_by_inform},
      {"belief-state round trip on 1000 random states", belief_round_trip},
      {"bucketing partitions exactly and reweights to corpus means (1000 samples)", bucketing_partition},
      {"split determinism and arithmetic (percent and leave-one-domain-out)", split_determinism},
      {"compile determinism and per-task recount (50 dialogues, 7 tasks)", compile_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (o.ok) {
      std::printf("PASS  %s\n", name);
    } else {
      std::printf("FAIL  %s: %s\n", name, o.detail.c_str());
      ++failed;
    }
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
