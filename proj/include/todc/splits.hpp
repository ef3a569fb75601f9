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

// Deterministic low-resource and domain-transfer splits.

#ifndef TODC_SPLITS_HPP_
#define TODC_SPLITS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "todc/random.hpp"
#include "todc/schema.hpp"

namespace todc {

class SplitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SplitProtocol { kPercent, kPerIntent, kDomainTransfer };

inline std::string_view protocol_name(SplitProtocol p) {
  switch (p) {
    case SplitProtocol::kPercent: return "percent";
    case SplitProtocol::kPerIntent: return "per_intent";
    case SplitProtocol::kDomainTransfer: return "domain_transfer";
  }
  return "?";
}

inline std::optional<SplitProtocol> parse_protocol(std::string_view name) {
  for (auto p : {SplitProtocol::kPercent, SplitProtocol::kPerIntent, SplitProtocol::kDomainTransfer})
    if (protocol_name(p) == name) return p;
  return std::nullopt;
}

/// Number of ids a percent split keeps: max(1, floor(n * pct / 100)).
inline std::size_t percent_count(std::size_t n, double pct) {
  const auto k = static_cast<std::size_t>(std::floor(static_cast<double>(n) * pct / 100.0));
  return std::max<std::size_t>(1, k);
}

/// Seeded uniform sample without replacement; output keeps input order.
inline std::vector<std::string> percent_subsample(std::span<const std::string> ids, double pct,
                                                  std::uint64_t seed) {
  if (ids.empty()) throw SplitError("percent_subsample: empty id list");
  if (!(pct > 0.0 && pct <= 100.0)) throw SplitError("percent_subsample: pct must be in (0, 100]");
  SeededRng rng(seed);
  std::vector<std::string> out;
  for (std::size_t i : rng.sample_indices(ids.size(), percent_count(ids.size(), pct))) out.push_back(ids[i]);
  return out;
}

struct LabeledId {
  std::string id;
  std::string label;
};

/// min(k, available) ids per label (labels compared after normalization).
/// One generator serves all labels, visited in lexicographic label order;
/// the union comes back in input order.
inline std::vector<std::string> k_per_intent(std::span<const LabeledId> examples, std::size_t k,
                                             std::uint64_t seed) {
  if (k == 0) throw SplitError("k_per_intent: k must be >= 1");
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < examples.size(); ++i) by_label[normalize_value(examples[i].label)].push_back(i);
  SeededRng rng(seed);
  std::vector<std::size_t> chosen;
  for (const auto& [_, positions] : by_label)
    for (std::size_t j : rng.sample_indices(positions.size(), k)) chosen.push_back(positions[j]);
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::string> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(examples[i].id);
  return out;
}

inline constexpr std::size_t kDomainTransferValidation = 200;

struct DomainTransferSplit {
  std::vector<std::string> source_train;
  std::vector<std::string> source_validation;
  std::vector<std::string> target_test;
  std::size_t excluded_multi_domain = 0;
};

/// Multi-domain dialogues are dropped first. Single-domain dialogues of the
/// target form the test set; `validation_size` seeded samples of the rest
/// form the validation set and the remainder is the training set. Every
/// partition keeps input order.
inline DomainTransferSplit leave_one_domain_out(std::span<const Dialogue> dialogues, std::string_view target,
                                                std::uint64_t seed,
                                                std::size_t validation_size = kDomainTransferValidation) {
  bool seen = false;
  for (const auto& d : dialogues) seen = seen || d.domains.count(std::string(target));
  if (!seen) throw SplitError("target domain '" + std::string(target) + "' does not occur in the corpus");

  DomainTransferSplit split;
  std::vector<const Dialogue*> pool;
  for (const auto& d : dialogues) {
    if (d.domains.size() > 1) {
      ++split.excluded_multi_domain;
      continue;
    }
    if (d.domains.count(std::string(target)))
      split.target_test.push_back(d.id);
    else
      pool.push_back(&d);
  }
  if (pool.size() < validation_size)
    throw SplitError("source pool has " + std::to_string(pool.size()) + " dialogues; " +
                     std::to_string(validation_size) + " are needed for validation (short by " +
                     std::to_string(validation_size - pool.size()) + ")");
  SeededRng rng(seed);
  const auto picked = rng.sample_indices(pool.size(), validation_size);
  std::size_t next = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (next < picked.size() && picked[next] == i) {
      split.source_validation.push_back(pool[i]->id);
      ++next;
    } else {
      split.source_train.push_back(pool[i]->id);
    }
  }
  return split;
}

// ---------------------------------------------------------------------------
// Manifests

enum class SplitUnit { kDialogue, kTurn };

inline std::string turn_unit_id(std::string_view dialogue_id, std::size_t turn) {
  return std::string(dialogue_id) + ":" + std::to_string(turn);
}

struct SplitManifest {
  SplitProtocol protocol = SplitProtocol::kPercent;
  std::uint64_t seed = 0;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, std::vector<std::string>>> partitions;

  const std::vector<std::string>* partition(std::string_view name) const {
    for (const auto& [n, ids] : partitions)
      if (n == name) return &ids;
    return nullptr;
  }

  SplitUnit unit() const {
    return parameters.value("unit", std::string("dialogue")) == "turn" ? SplitUnit::kTurn : SplitUnit::kDialogue;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name(protocol);
    j["seed"] = seed;
    j["parameters"] = parameters;
    nlohmann::ordered_json parts = nlohmann::ordered_json::object();
    for (const auto& [name, ids] : partitions) parts[name] = ids;
    j["partitions"] = std::move(parts);
    return j;
  }

  static SplitManifest from_json(const nlohmann::ordered_json& j) {
    try {
      SplitManifest m;
      const auto p = parse_protocol(j.at("protocol").get<std::string>());
      if (!p) throw SplitError("manifest: unknown protocol");
      m.protocol = *p;
      m.seed = j.at("seed").get<std::uint64_t>();
      m.parameters = j.value("parameters", nlohmann::ordered_json::object());
      for (const auto& [name, ids] : j.at("partitions").items())
        m.partitions.emplace_back(name, ids.get<std::vector<std::string>>());
      // Partitions must be disjoint.
      std::unordered_set<std::string> seen;
      for (const auto& [name, ids] : m.partitions)
        for (const auto& id : ids)
          if (!seen.insert(id).second) throw SplitError("manifest: id '" + id + "' appears twice");
      return m;
    } catch (const nlohmann::json::exception& e) {
      throw SplitError(std::string("manifest: ") + e.what());
    }
  }
};

/// Ids that must exist in the corpus for a manifest built over it.
inline std::vector<std::string> unit_ids(std::span<const Dialogue> dialogues, SplitUnit unit) {
  std::vector<std::string> ids;
  for (const auto& d : dialogues) {
    if (unit == SplitUnit::kDialogue) {
      ids.push_back(d.id);
    } else {
      for (const auto& t : d.turns) ids.push_back(turn_unit_id(d.id, t.index));
    }
  }
  return ids;
}

inline SplitManifest make_percent_manifest(std::span<const Dialogue> dialogues, double pct, std::uint64_t seed,
                                           SplitUnit unit = SplitUnit::kDialogue) {
  SplitManifest m;
  m.protocol = SplitProtocol::kPercent;
  m.seed = seed;
  m.parameters["pct"] = pct;
  m.parameters["unit"] = unit == SplitUnit::kTurn ? "turn" : "dialogue";
  const auto ids = unit_ids(dialogues, unit);
  m.partitions.emplace_back("train", percent_subsample(ids, pct, seed));
  return m;
}

/// Dialogues are labelled by their first intent-bearing turn.
inline SplitManifest make_per_intent_manifest(std::span<const Dialogue> dialogues, std::size_t k,
                                              std::uint64_t seed) {
  std::vector<LabeledId> examples;
  for (const auto& d : dialogues)
    for (const auto& t : d.turns)
      if (t.intent) {
        examples.push_back({d.id, *t.intent});
        break;
      }
  SplitManifest m;
  m.protocol = SplitProtocol::kPerIntent;
  m.seed = seed;
  m.parameters["k"] = k;
  m.parameters["unit"] = "dialogue";
  m.partitions.emplace_back("train", k_per_intent(examples, k, seed));
  return m;
}

inline SplitManifest make_domain_transfer_manifest(std::span<const Dialogue> dialogues, std::string_view target,
                                                   std::uint64_t seed,
                                                   std::size_t validation_size = kDomainTransferValidation) {
  auto split = leave_one_domain_out(dialogues, target, seed, validation_size);
  SplitManifest m;
  m.protocol = SplitProtocol::kDomainTransfer;
  m.seed = seed;
  m.parameters["target_domain"] = std::string(target);
  m.parameters["validation_size"] = validation_size;
  m.parameters["excluded_multi_domain"] = split.excluded_multi_domain;
  m.parameters["unit"] = "dialogue";
  m.partitions.emplace_back("source_train", std::move(split.source_train));
  m.partitions.emplace_back("source_validation", std::move(split.source_validation));
  m.partitions.emplace_back("target_test", std::move(split.target_test));
  return m;
}

/// Dialogues named by a dialogue-unit partition, in corpus order.
inline std::vector<Dialogue> select_dialogues(std::span<const Dialogue> dialogues, const std::vector<std::string>& ids) {
  const std::unordered_set<std::string> keep(ids.begin(), ids.end());
  std::vector<Dialogue> out;
  for (const auto& d : dialogues)
    if (keep.count(d.id)) out.push_back(d);
  return out;
}

}  // namespace todc

#endif  // TODC_SPLITS_HPP_
