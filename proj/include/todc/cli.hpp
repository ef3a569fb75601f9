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

// Command-line front end: compile, evaluate, analyze, split and stats verbs.

#ifndef TODC_CLI_HPP_
#define TODC_CLI_HPP_

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "todc/analysis.hpp"
#include "todc/ingest.hpp"
#include "todc/metrics.hpp"
#include "todc/prompt.hpp"
#include "todc/schema.hpp"
#include "todc/splits.hpp"

namespace todc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verb { kCompile, kEvaluate, kAnalyze, kSplit, kStats, kHelp };

inline std::string_view verb_name(Verb v) {
  switch (v) {
    case Verb::kCompile: return "compile";
    case Verb::kEvaluate: return "evaluate";
    case Verb::kAnalyze: return "analyze";
    case Verb::kSplit: return "split";
    case Verb::kStats: return "stats";
    case Verb::kHelp: return "help";
  }
  return "?";
}

/// A validated invocation. `options` holds only flags given on the command
/// line, keyed without leading dashes; defaults are applied by run().
struct Command {
  Verb verb = Verb::kHelp;
  std::map<std::string, std::string> options;
  std::string help_text;

  std::optional<std::string> get(const std::string& key) const {
    auto it = options.find(key);
    if (it == options.end()) return std::nullopt;
    return it->second;
  }
  std::string get_or(const std::string& key, std::string fallback) const {
    return get(key).value_or(std::move(fallback));
  }
};

namespace detail {

struct FlagSpec {
  const char* name;  // without dashes
  const char* help;
  bool required = false;
  bool existing_file = false;
};

inline const std::map<Verb, std::vector<FlagSpec>>& verb_flags() {
  static const std::map<Verb, std::vector<FlagSpec>> kFlags = {
      {Verb::kCompile,
       {{"in", "input dialogue file", true, true},
        {"out", "compiled record file (JSONL)", true},
        {"tasks", "comma-separated tasks or 'all' (default all)"},
        {"templates", "prompt template file", false, true},
        {"neg-k", "NUP negatives per positive (default 1)"},
        {"seed", "sampling seed (default 0)"},
        {"adapter", "wizard | intent_table | summ_pair | canonical (default canonical)"},
        {"dataset", "dataset name for adapters whose records lack one"},
        {"manifest", "split manifest restricting the input", false, true},
        {"partition", "manifest partition to keep (default: first)"},
        {"ontology", "domain: slot ... file for the {ontology} placeholder", false, true},
        {"rejects", "write rejected input records here"},
        {"all-dataset-tasks", "derive every annotated task even for datasets that do not list it (true|false)"}}},
      {Verb::kEvaluate,
       {{"task", "dst | nlg (alias e2e) | ic | summ", true},
        {"gold", "canonical gold dialogues", true, true},
        {"pred", "prediction file", true, true},
        {"db", "entity database for Inform/Success", false, true},
        {"dst-pred", "DST predictions gating name placeholders (generated belief states)", false, true},
        {"belief-source", "generated | gold (default generated)"},
        {"manifest", "split manifest restricting the gold set", false, true},
        {"partition", "manifest partition to keep (default: first)"},
        {"out", "structured report (JSON)"}}},
      {Verb::kAnalyze,
       {{"task", "dst | nlg (alias e2e) | ic | summ", true},
        {"gold", "canonical gold dialogues", true, true},
        {"pred", "prediction file", true, true},
        {"aspects", "comma-separated aspects (default: all that apply)"},
        {"buckets", "bucket file (aspect = a-b, c-d, e+)", false, true},
        {"db", "entity database for Inform/Success", false, true},
        {"dst-pred", "DST predictions gating name placeholders", false, true},
        {"belief-source", "generated | gold (default generated)"},
        {"out", "structured report (JSON)"},
        {"csv", "comma-separated report"}}},
      {Verb::kSplit,
       {{"protocol", "percent | per_intent | domain_transfer", true},
        {"in", "input dialogue file", true, true},
        {"out", "manifest file (JSON)", true},
        {"pct", "percentage for --protocol percent"},
        {"k", "examples per intent for --protocol per_intent"},
        {"target", "held-out domain for --protocol domain_transfer"},
        {"validation-size", "source validation size (default 200)"},
        {"unit", "dialogue | turn (default dialogue)"},
        {"seed", "sampling seed (default 0)"},
        {"adapter", "input adapter (default canonical)"},
        {"dataset", "dataset name for adapters"}}},
      {Verb::kStats,
       {{"in", "input dialogue file", true, true},
        {"adapter", "input adapter (default canonical)"},
        {"dataset", "dataset name for adapters"},
        {"out", "structured statistics (JSON)"}}},
  };
  return kFlags;
}

inline std::optional<Verb> parse_verb(std::string_view s) {
  for (auto v : {Verb::kCompile, Verb::kEvaluate, Verb::kAnalyze, Verb::kSplit, Verb::kStats})
    if (verb_name(v) == s) return v;
  return std::nullopt;
}

inline std::string synopsis() {
  std::ostringstream os;
  os << "usage: todc <verb> [flags]\n\nverbs:\n";
  for (const auto& [verb, flags] : verb_flags()) {
    os << "  " << verb_name(verb);
    for (const auto& f : flags)
      if (f.required) os << " --" << f.name << " " << "VALUE";
    os << " [options]\n";
  }
  os << "\nrun 'todc <verb> --help' for the flags of one verb\n";
  return os.str();
}

inline std::optional<std::string> raw_flag(const std::vector<std::string>& args, std::string_view name) {
  const std::string flag = "--" + std::string(name);
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == flag) return i + 1 < args.size() ? args[i + 1] : std::string();
    if (args[i].rfind(flag + "=", 0) == 0) return args[i].substr(flag.size() + 1);
  }
  return std::nullopt;
}

inline void check_split_flags(const std::vector<std::string>& args) {
  const auto protocol = raw_flag(args, "protocol");
  if (!protocol) return;  // reported by the parser as a missing required flag
  const auto p = parse_protocol(*protocol);
  if (!p) throw UsageError("--protocol: unknown protocol '" + *protocol + "'");
  const char* needed = *p == SplitProtocol::kPercent     ? "pct"
                       : *p == SplitProtocol::kPerIntent ? "k"
                                                         : "target";
  if (!raw_flag(args, needed))
    throw UsageError(std::string("missing required flag --") + needed + " for --protocol " + *protocol);
}

}  // namespace detail

/// Parses argv (without the program name). Throws UsageError naming the
/// offending verb or flag.
inline Command parse_command(const std::vector<std::string>& args) {
  Command cmd;
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    cmd.verb = Verb::kHelp;
    cmd.help_text = detail::synopsis();
    return cmd;
  }
  const auto verb = detail::parse_verb(args[0]);
  if (!verb) throw UsageError("unknown verb '" + args[0] + "'\n" + detail::synopsis());
  cmd.verb = *verb;

  // Protocol-specific flags are checked on the raw arguments first, so the
  // error names the missing flag even when other required flags are absent.
  if (cmd.verb == Verb::kSplit) detail::check_split_flags(args);

  CLI::App app{"todc " + args[0], "todc " + args[0]};
  std::map<std::string, std::string> storage;
  std::vector<std::pair<std::string, CLI::Option*>> bound;
  for (const auto& f : detail::verb_flags().at(*verb)) {
    auto* opt = app.add_option(std::string("--") + f.name, storage[f.name], f.help);
    if (f.required) opt->required();
    if (f.existing_file) opt->check(CLI::ExistingFile);
    bound.emplace_back(f.name, opt);
  }
  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::vector<std::string> reversed(rest.rbegin(), rest.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cmd.verb = Verb::kHelp;
    cmd.help_text = app.help();
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()));
  }
  for (const auto& [name, opt] : bound)
    if (opt->count() > 0) cmd.options[name] = storage[name];

  return cmd;
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t parse_u64(const Command& c, const std::string& key, std::uint64_t fallback) {
  const auto v = c.get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const auto n = std::stoull(*v, &used);
    if (used != v->size() || (!v->empty() && v->front() == '-')) throw std::invalid_argument(key);
    return n;
  } catch (const std::logic_error&) {
    throw UsageError("--" + key + ": expected a non-negative integer, got '" + *v + "'");
  }
}

inline double parse_double(const Command& c, const std::string& key) {
  const std::string v = c.get_or(key, "");
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(key);
    return d;
  } catch (const std::logic_error&) {
    throw UsageError("--" + key + ": expected a number, got '" + v + "'");
  }
}

inline AdapterKind adapter_of(const Command& c) {
  const std::string name = c.get_or("adapter", "canonical");
  const auto a = parse_adapter(name);
  if (!a) throw UsageError("--adapter: unknown adapter '" + name + "'");
  return *a;
}

inline IngestResult read_input(const Command& c) {
  const auto adapter = adapter_of(c);
  const std::string dataset = c.get_or("dataset", "custom");
  return ingest_file(c.get_or("in", ""), adapter, dataset);
}

// Gold files must be clean: any rejected line is a data error.
inline std::vector<Dialogue> read_gold(const std::string& path) {
  auto r = load_canonical(path);
  if (!r.stats.rejections.empty()) {
    const auto& first = r.stats.rejections.front();
    throw DataError(path + ": record " + std::to_string(first.ordinal) + ": " + first.reason);
  }
  return std::move(r.dialogues);
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

inline SplitManifest read_manifest(const std::string& path) {
  auto in = open_in(path);
  try {
    return SplitManifest::from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

inline const std::vector<std::string>& manifest_partition(const SplitManifest& m, const Command& c) {
  if (m.partitions.empty()) throw DataError("manifest has no partitions");
  const auto name = c.get("partition");
  if (!name) return m.partitions.front().second;
  const auto* ids = m.partition(*name);
  if (!ids) throw UsageError("--partition: manifest has no partition '" + *name + "'");
  return *ids;
}

inline std::set<TaskKind> parse_tasks(const std::string& spec) {
  std::set<TaskKind> tasks;
  if (trim(spec) == "all") return {kAllTasks.begin(), kAllTasks.end()};
  for (const auto& part : split(spec, ',')) {
    const auto t = parse_task(part);
    if (!t) throw UsageError("--tasks: unknown task '" + part + "'");
    tasks.insert(*t);
  }
  if (tasks.empty()) throw UsageError("--tasks: no tasks given");
  return tasks;
}

inline TaskKind eval_task(const Command& c) {
  std::string name = to_lower(c.get_or("task", ""));
  if (name == "e2e") name = "nlg";
  const auto t = parse_task(name);
  if (!t || !(*t == TaskKind::kDst || *t == TaskKind::kNlg || *t == TaskKind::kIc || *t == TaskKind::kSumm))
    throw UsageError("--task: expected dst, nlg, e2e, ic or summ, got '" + c.get_or("task", "") + "'");
  return *t;
}

// Splits a compiled record id `<dialogue>:<turn>:<task>[:<k>]`.
inline std::optional<std::pair<std::string, std::size_t>> record_turn(std::string_view id) {
  auto parts = split(id, ':');
  if (parts.size() >= 4 && parse_task(parts[parts.size() - 2])) parts.pop_back();
  if (parts.size() < 3 || !parse_task(parts.back())) return std::nullopt;
  const std::string& turn = parts[parts.size() - 2];
  if (turn.empty() || turn.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  std::string dialogue = parts[0];
  for (std::size_t i = 1; i + 2 < parts.size(); ++i) dialogue += ":" + parts[i];
  return std::make_pair(dialogue, static_cast<std::size_t>(std::stoull(turn)));
}

struct EvalInputs {
  std::vector<Dialogue> gold;
  std::map<TaskKind, PredictionSet> preds;
  EntityDb db;
  std::optional<PredictionSet> dst_preds;
  InformOptions inform;
};

inline EvalInputs load_eval_inputs(const Command& c, TaskKind task) {
  EvalInputs in;
  in.gold = read_gold(c.get_or("gold", ""));
  if (const auto m = c.get("manifest")) {
    const auto manifest = read_manifest(*m);
    if (manifest.unit() != SplitUnit::kDialogue)
      throw UsageError("--manifest: only dialogue-unit manifests can filter evaluation");
    in.gold = select_dialogues(in.gold, manifest_partition(manifest, c));
  }
  {
    auto pin = open_in(c.get_or("pred", ""));
    in.preds = read_predictions(pin);
  }
  if (!in.preds.count(task)) in.preds[task].task = task;
  if (const auto db = c.get("db")) {
    auto dbin = open_in(*db);
    in.db = read_entity_db(dbin);
  }
  const std::string source = c.get_or("belief-source", "generated");
  if (source == "gold") {
    in.inform.belief_source = BeliefSource::kGold;
  } else if (source != "generated") {
    throw UsageError("--belief-source: expected generated or gold, got '" + source + "'");
  }
  if (const auto dp = c.get("dst-pred")) {
    auto din = open_in(*dp);
    auto sets = read_predictions(din);
    in.dst_preds = sets.count(TaskKind::kDst) ? sets.at(TaskKind::kDst) : PredictionSet{TaskKind::kDst, {}};
  }
  if (in.inform.belief_source == BeliefSource::kGenerated && in.dst_preds)
    in.inform.dst_predictions = &*in.dst_preds;
  return in;
}

inline void print_ingest_summary(std::ostream& out, const IngestStats& s) {
  out << "read " << s.dialogues_read << " records, " << s.utterances_read << " utterances, "
      << s.dialogues_rejected() << " rejected\n";
}

inline void write_rejects(const Command& c, const IngestStats& s) {
  if (const auto path = c.get("rejects")) {
    auto out = open_out(*path);
    write_rejections(out, s);
  }
}

// ---------------------------------------------------------------------------

inline int run_compile(const Command& c, std::ostream& out) {
  auto input = read_input(c);
  write_rejects(c, input.stats);
  std::vector<Dialogue> dialogues = std::move(input.dialogues);

  std::optional<std::unordered_set<std::string>> turn_filter;
  if (const auto m = c.get("manifest")) {
    const auto manifest = read_manifest(*m);
    const auto& ids = manifest_partition(manifest, c);
    if (manifest.unit() == SplitUnit::kDialogue) {
      dialogues = select_dialogues(dialogues, ids);
    } else {
      turn_filter.emplace(ids.begin(), ids.end());
    }
  }

  CompileOptions opt;
  if (const auto t = c.get("templates")) {
    auto tin = open_in(*t);
    opt.templates = read_templates(tin);
  }
  if (const auto o = c.get("ontology")) {
    auto oin = open_in(*o);
    opt.ontology = read_ontology(oin);
  }
  opt.neg_k = parse_u64(c, "neg-k", 1);
  opt.seed = parse_u64(c, "seed", 0);
  const std::string all_tasks = c.get_or("all-dataset-tasks", "false");
  if (all_tasks != "true" && all_tasks != "false")
    throw UsageError("--all-dataset-tasks: expected true or false");
  opt.respect_dataset_tasks = all_tasks == "false";
  const auto tasks = parse_tasks(c.get_or("tasks", "all"));

  auto result = compile_corpus(dialogues, tasks, opt);
  if (turn_filter) {
    std::vector<PromptedExample> kept;
    for (auto& r : result.records) {
      const auto key = record_turn(r.id);
      if (key && turn_filter->count(turn_unit_id(key->first, key->second))) kept.push_back(std::move(r));
    }
    result.records = std::move(kept);
    for (auto& [_, n] : result.stats.per_task) n = 0;
    for (const auto& r : result.records) ++result.stats.per_task[r.task];
  }
  {
    auto file = open_out(c.get_or("out", ""));
    write_records(file, result.records);
  }
  print_ingest_summary(out, input.stats);
  out << "compiled " << result.stats.dialogues << " dialogues into " << result.records.size() << " records\n";
  for (const auto& [task, n] : result.stats.per_task) out << "  " << task_name(task) << "\t" << n << "\n";
  return kExitOk;
}

inline MetricReport evaluate_task(TaskKind task, const EvalInputs& in) {
  const auto& preds = in.preds.at(task);
  switch (task) {
    case TaskKind::kDst: return evaluate_dst(in.gold, preds);
    case TaskKind::kNlg: return evaluate_nlg(in.gold, preds, in.db, in.inform);
    case TaskKind::kIc: return evaluate_ic(in.gold, preds);
    case TaskKind::kSumm: return evaluate_summ(in.gold, preds);
    default: throw UsageError("no evaluation for task " + std::string(task_name(task)));
  }
}

inline int run_evaluate(const Command& c, std::ostream& out) {
  const TaskKind task = eval_task(c);
  const auto in = load_eval_inputs(c, task);
  const auto report = evaluate_task(task, in);
  out << "task " << task_name(task) << " over " << in.gold.size() << " dialogues\n" << report.to_table();
  if (const auto path = c.get("out")) {
    nlohmann::ordered_json j;
    j["task"] = task_name(task);
    j["dialogues"] = in.gold.size();
    j["metrics"] = report.to_json();
    auto file = open_out(*path);
    file << j.dump(2) << '\n';
  }
  return kExitOk;
}

inline int run_analyze(const Command& c, std::ostream& out) {
  const TaskKind task = eval_task(c);
  const auto in = load_eval_inputs(c, task);
  std::vector<BucketSpec> specs;
  if (const auto b = c.get("buckets")) {
    auto bin = open_in(*b);
    specs = read_bucket_specs(bin);
  } else {
    specs = default_bucket_specs();
  }
  std::vector<BucketSpec> chosen;
  if (const auto a = c.get("aspects")) {
    for (const auto& name : split(*a, ',')) {
      const auto aspect = parse_aspect(name);
      if (!aspect) throw UsageError("--aspects: unknown aspect '" + name + "'");
      bool found = false;
      for (const auto& s : specs)
        if (s.aspect() == *aspect) {
          chosen.push_back(s);
          found = true;
        }
      if (!found) throw UsageError("--aspects: no buckets defined for '" + name + "'");
    }
  } else {
    for (const auto& s : specs)
      if (s.aspect() != Aspect::kRefeLen || task == TaskKind::kSumm) chosen.push_back(s);
  }
  const auto analysis = build_task_analysis(task, in.gold, in.preds.at(task), in.db, in.inform);
  const auto report = fine_grained_report(analysis.samples, chosen, analysis.recompute);
  out << report.to_csv();
  if (const auto path = c.get("csv")) {
    auto file = open_out(*path);
    file << report.to_csv();
  }
  if (const auto path = c.get("out")) {
    nlohmann::ordered_json j;
    j["task"] = task_name(task);
    j["samples"] = analysis.samples.size();
    j["rows"] = report.to_json();
    auto file = open_out(*path);
    file << j.dump(2) << '\n';
  }
  return kExitOk;
}

inline int run_split(const Command& c, std::ostream& out) {
  auto input = read_input(c);
  const auto protocol = *parse_protocol(c.get_or("protocol", ""));
  const std::uint64_t seed = parse_u64(c, "seed", 0);
  const std::string unit_name = c.get_or("unit", "dialogue");
  if (unit_name != "dialogue" && unit_name != "turn")
    throw UsageError("--unit: expected dialogue or turn, got '" + unit_name + "'");
  const SplitUnit unit = unit_name == "turn" ? SplitUnit::kTurn : SplitUnit::kDialogue;
  if (unit == SplitUnit::kTurn && protocol != SplitProtocol::kPercent)
    throw UsageError("--unit turn applies to --protocol percent only");

  SplitManifest manifest;
  switch (protocol) {
    case SplitProtocol::kPercent: {
      const double pct = parse_double(c, "pct");
      if (!(pct > 0 && pct <= 100)) throw UsageError("--pct: expected a value in (0, 100]");
      if (input.dialogues.empty()) throw DataError("cannot split an empty corpus");
      manifest = make_percent_manifest(input.dialogues, pct, seed, unit);
      break;
    }
    case SplitProtocol::kPerIntent: {
      const auto k = parse_u64(c, "k", 0);
      if (k == 0) throw UsageError("--k: expected a positive integer");
      manifest = make_per_intent_manifest(input.dialogues, k, seed);
      break;
    }
    case SplitProtocol::kDomainTransfer:
      manifest = make_domain_transfer_manifest(input.dialogues, c.get_or("target", ""), seed,
                                               parse_u64(c, "validation-size", kDomainTransferValidation));
      break;
  }
  {
    auto file = open_out(c.get_or("out", ""));
    file << manifest.to_json().dump(2) << '\n';
  }
  print_ingest_summary(out, input.stats);
  out << "protocol " << protocol_name(protocol) << " seed " << seed << "\n";
  for (const auto& [name, ids] : manifest.partitions) out << "  " << name << "\t" << ids.size() << "\n";
  return kExitOk;
}

}  // namespace detail

/// Corpus statistics in the shape of a dataset inventory table.
struct CorpusStats {
  struct Row {
    std::size_t dialogues = 0;
    std::size_t utterances = 0;
    std::set<std::string> domains;
    std::map<TaskKind, std::size_t> coverage;  // dialogues carrying each task's annotation
  };
  std::map<std::string, Row> per_dataset;
  Row total;
};

inline CorpusStats corpus_stats(std::span<const Dialogue> dialogues) {
  CorpusStats s;
  auto add = [](CorpusStats::Row& row, const Dialogue& d) {
    ++row.dialogues;
    row.utterances += d.turns.size();
    for (const auto& dom : d.domains)
      if (dom != kOpenDomain) row.domains.insert(dom);
    for (TaskKind t : kAllTasks) {
      row.coverage.try_emplace(t, 0);
      if (has_task_annotation(d, t)) ++row.coverage[t];
    }
  };
  for (TaskKind t : kAllTasks) s.total.coverage[t] = 0;
  for (const auto& d : dialogues) {
    add(s.per_dataset[d.dataset], d);
    add(s.total, d);
  }
  return s;
}

namespace detail {

inline int run_stats(const Command& c, std::ostream& out) {
  const auto input = read_input(c);
  const auto stats = corpus_stats(input.dialogues);
  print_ingest_summary(out, input.stats);
  auto line = [&](const std::string& name, const CorpusStats::Row& r) {
    out << name << "\t" << r.dialogues << "\t" << r.utterances << "\t"
        << (r.domains.empty() ? std::string("open") : std::to_string(r.domains.size()));
    for (TaskKind t : kAllTasks) out << "\t" << r.coverage.at(t);
    out << "\n";
  };
  out << "dataset\tdialogues\tutterances\tdomains";
  for (TaskKind t : kAllTasks) out << "\t" << task_name(t);
  out << "\n";
  for (const auto& [name, row] : stats.per_dataset) line(name, row);
  line("total", stats.total);

  if (const auto path = c.get("out")) {
    auto row_json = [](const CorpusStats::Row& r) {
      nlohmann::ordered_json j;
      j["dialogues"] = r.dialogues;
      j["utterances"] = r.utterances;
      j["domains"] = r.domains;
      nlohmann::ordered_json cov;
      for (const auto& [t, n] : r.coverage) cov[std::string(task_name(t))] = n;
      j["coverage"] = cov;
      return j;
    };
    nlohmann::ordered_json j;
    j["total"] = row_json(stats.total);
    nlohmann::ordered_json per = nlohmann::ordered_json::object();
    for (const auto& [name, row] : stats.per_dataset) per[name] = row_json(row);
    j["datasets"] = per;
    j["rejected"] = input.stats.dialogues_rejected();
    auto file = open_out(*path);
    file << j.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace detail

/// Dispatches a parsed command. Returns 0 on success, 1 on usage errors and
/// 2 on data errors; diagnostics go to `err`.
inline int run(const Command& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    switch (c.verb) {
      case Verb::kHelp: out << c.help_text; return kExitOk;
      case Verb::kCompile: return detail::run_compile(c, out);
      case Verb::kEvaluate: return detail::run_evaluate(c, out);
      case Verb::kAnalyze: return detail::run_analyze(c, out);
      case Verb::kSplit: return detail::run_split(c, out);
      case Verb::kStats: return detail::run_stats(c, out);
    }
  } catch (const UsageError& e) {
    err << "todc " << verb_name(c.verb) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "todc " << verb_name(c.verb) << ": " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

inline int main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Command c;
  try {
    c = parse_command(args);
  } catch (const UsageError& e) {
    err << "todc: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(c, out, err);
}

}  // namespace todc::cli

#endif  // TODC_CLI_HPP_
