// Copyright 2026 The opminer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPMINER_SIMGEN_HPP_
#define OPMINER_SIMGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opminer/graph.hpp"
#include "opminer/model.hpp"
#include "opminer/rulegen.hpp"

namespace opminer {

// Non-containment wiring for build_initial: `fraction` of the source-type
// elements each get `per_source` distinct targets. With `unique_targets`
// no target is used twice across the whole edge type.
struct WiringRule {
  std::string edge_type;
  std::size_t per_source = 1;
  double fraction = 1.0;
  bool unique_targets = false;

  friend bool operator==(const WiringRule&, const WiringRule&) = default;
};

struct InitialSpec {
  std::vector<std::pair<std::string, std::size_t>> counts;  // type -> count
  std::vector<WiringRule> wiring;

  // 87 Packages, 85 Components, 85 SwImplementations, 172 Ports,
  // 86 Connectors, 171 Requirements; one SwImplementation per Component,
  // two Ports per Connector, half of the Requirements allocated to a
  // Connector and half satisfied by a Component.
  static InitialSpec component_instance();

  static InitialSpec from_json(std::string_view text);
  std::string to_json() const;

  friend bool operator==(const InitialSpec&, const InitialSpec&) = default;
};

// Conformant instance with exactly the requested per-type counts. Each
// element of a containable type gets one container picked at random; uids
// are "<Type>-<k>". Deterministic per seed. Throws InputError when the
// spec cannot be satisfied.
ModelVersion build_initial(const MetaModel& mm, const InitialSpec& spec,
                           std::uint64_t seed);

struct WeightedRule {
  EditRule rule;
  double weight = 1.0;
};

struct SimConfig {
  std::size_t d = 10;
  std::size_t e = 1;
  double p = 0.0;
  std::uint64_t seed = 1;
  std::vector<WeightedRule> core_rules;
  std::vector<EditRule> perturbation_rules;
  MetaModel metamodel;
  InitialSpec initial;
  // Rules tried per application before it is logged as skipped.
  std::size_t max_attempts = 8;
  // Core applications bind their context only to elements that existed at
  // the start of the revision, so that each one shows up in the change
  // graph with preserved context exactly as in its rule pattern.
  bool core_context_from_previous = true;

  // Throws InputError unless d >= 1, e >= 1, 0 <= p <= 1, both catalogs
  // are non-empty and weights are positive.
  void validate() const;

  // Component meta-model and instance with core rule connectComponents
  // (experiment 1) or both connectComponents and addComponent with equal
  // weight (experiment 2), and the default perturbation rules.
  static SimConfig experiment(int which, std::size_t d, std::size_t e,
                              double p, std::uint64_t seed);

  // Rules, metamodel and initial spec inlined.
  std::string to_json() const;
  static SimConfig from_json(std::string_view text);
};

enum class ApplicationRole { kCore, kPerturbation };

struct ApplicationRecord {
  ApplicationRole role = ApplicationRole::kCore;
  std::string rule;
  std::uint64_t seed = 0;
  Binding binding;
  std::map<std::string, std::string> created;
  // Core: followed by a perturbation attempt.
  bool perturbed = false;
  // Perturbation: index of the core record it overlaps, in the same
  // revision.
  std::optional<std::size_t> overlaps;
  // No valid site was found; nothing was applied.
  bool skipped = false;
  std::string note;
};

struct RevisionLog {
  std::vector<ApplicationRecord> records;
};

struct RepoBundle {
  SimConfig config;
  std::vector<ModelVersion> versions;  // m0 .. md
  std::vector<RevisionLog> log;        // log[i] turns versions[i] into [i+1]
  std::vector<LabeledGraph> truth;     // change-graph encodings of core rules
  std::vector<std::string> warnings;

  std::size_t applied(ApplicationRole role) const;
  std::size_t skipped() const;
};

// d revisions of e core-rule applications each; every core application is
// followed with probability p by one perturbation whose site shares an
// element with the core application's bound or created elements. Failed
// sites are retried with other rules up to max_attempts, then logged as
// skipped with a warning.
RepoBundle simulate(const SimConfig& config);

// Re-applies the logged applications to versions[0]. Throws
// PreconditionError when a logged rule is unknown.
std::vector<ModelVersion> replay(const ModelVersion& m0,
                                 const std::vector<RevisionLog>& log,
                                 const SimConfig& config);

// Directory layout: m0.json .. m<d>.json, log.json, config.json,
// metamodel.json, truth/truth_<k>.lg.
void save_bundle(const RepoBundle& bundle, const std::string& dir);
RepoBundle load_bundle(const std::string& dir);

std::string log_to_json(const std::vector<RevisionLog>& log);
std::vector<RevisionLog> log_from_json(std::string_view text);

}  // namespace opminer

#endif  // OPMINER_SIMGEN_HPP_
