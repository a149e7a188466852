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

#include "opminer/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "io_util.hpp"
#include "json.hpp"
#include "opminer/component_model.hpp"
#include "opminer/error.hpp"
#include "opminer/transaction_io.hpp"

namespace opminer {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, v.size() - 1);
  return v[dist(rng)];
}

json parse_or_throw(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

InitialSpec InitialSpec::component_instance() {
  InitialSpec spec;
  spec.counts = {{"Package", 87},   {"Component", 85},  {"SwImplementation", 85},
                 {"Port", 172},     {"Connector", 86},  {"Requirement", 171}};
  spec.wiring = {{"implementation", 1, 1.0, true},
                 {"ends", 2, 1.0, true},
                 {"allocatedTo", 1, 0.5, false},
                 {"satisfiedBy", 1, 0.5, false}};
  return spec;
}

InitialSpec InitialSpec::from_json(std::string_view text) {
  const json doc = parse_or_throw(text, "initial spec");
  InitialSpec spec;
  try {
    for (const auto& c : doc.at("counts")) {
      spec.counts.emplace_back(c.at("type").get<std::string>(),
                               c.at("count").get<std::size_t>());
    }
    if (doc.contains("wiring")) {
      for (const auto& w : doc.at("wiring")) {
        spec.wiring.push_back(WiringRule{w.at("edgeType").get<std::string>(),
                                         w.value("perSource", std::size_t{1}),
                                         w.value("fraction", 1.0),
                                         w.value("uniqueTargets", false)});
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("initial spec: ") + e.what());
  }
  return spec;
}

std::string InitialSpec::to_json() const {
  json doc;
  doc["counts"] = json::array();
  for (const auto& [type, count] : counts) {
    doc["counts"].push_back({{"type", type}, {"count", count}});
  }
  doc["wiring"] = json::array();
  for (const auto& w : wiring) {
    doc["wiring"].push_back({{"edgeType", w.edge_type},
                             {"perSource", w.per_source},
                             {"fraction", w.fraction},
                             {"uniqueTargets", w.unique_targets}});
  }
  return doc.dump(1);
}

ModelVersion build_initial(const MetaModel& mm, const InitialSpec& spec,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ModelVersion m;
  std::map<std::string, std::vector<std::string>> pools;
  for (const auto& [type, count] : spec.counts) {
    if (!mm.has_node_type(type)) {
      throw InputError("initial spec: unknown node type " + type);
    }
    if (pools.contains(type)) {
      throw InputError("initial spec: type " + type + " listed twice");
    }
    auto& pool = pools[type];
    for (std::size_t k = 0; k < count; ++k) {
      pool.push_back(type + "-" + std::to_string(k));
      m.add_element(pool.back(), type);
    }
  }
  auto pool_of = [&](const std::string& type) -> const std::vector<std::string>& {
    static const std::vector<std::string> kEmpty;
    auto it = pools.find(type);
    return it == pools.end() ? kEmpty : it->second;
  };

  // Containment forest: every element of a containable type gets exactly
  // one container of another type.
  for (const auto& [type, count] : spec.counts) {
    std::vector<const EdgeType*> options;
    bool containable = false;
    for (const auto& et : mm.edge_types()) {
      if (!et.containment || et.tgt != type || et.src == type) continue;
      containable = true;
      if (!pool_of(et.src).empty()) options.push_back(&et);
    }
    if (!containable || count == 0) continue;
    if (options.empty()) {
      throw InputError("initial spec: no container available for " + type);
    }
    for (const auto& uid : pool_of(type)) {
      const EdgeType* et = pick(options, rng);
      m.add_reference(Reference{pick(pool_of(et->src), rng), uid, et->name});
    }
  }

  for (const auto& w : spec.wiring) {
    const EdgeType* et = mm.find_edge_type(w.edge_type);
    if (et == nullptr) {
      throw InputError("initial spec: unknown edge type " + w.edge_type);
    }
    if (et->containment) {
      throw InputError("initial spec: wiring of containment edge " + w.edge_type);
    }
    if (w.fraction < 0.0 || w.fraction > 1.0) {
      throw InputError("initial spec: fraction out of [0,1] for " + w.edge_type);
    }
    std::vector<std::string> sources = pool_of(et->src);
    std::shuffle(sources.begin(), sources.end(), rng);
    const auto wired = static_cast<std::size_t>(
        std::llround(w.fraction * static_cast<double>(sources.size())));
    sources.resize(std::min(wired, sources.size()));
    std::vector<std::string> free_targets = pool_of(et->tgt);
    std::shuffle(free_targets.begin(), free_targets.end(), rng);
    for (const auto& src : sources) {
      if (w.unique_targets) {
        if (free_targets.size() < w.per_source) {
          throw InputError("initial spec: not enough " + et->tgt +
                           " elements for unique " + w.edge_type + " targets");
        }
        for (std::size_t k = 0; k < w.per_source; ++k) {
          std::string tgt = std::move(free_targets.back());
          free_targets.pop_back();
          m.add_reference(Reference{src, std::move(tgt), et->name});
        }
        continue;
      }
      std::vector<std::string> candidates = pool_of(et->tgt);
      std::erase(candidates, src);
      if (candidates.size() < w.per_source) {
        throw InputError("initial spec: not enough " + et->tgt +
                         " elements for " + w.edge_type);
      }
      std::shuffle(candidates.begin(), candidates.end(), rng);
      for (std::size_t k = 0; k < w.per_source; ++k) {
        m.add_reference(Reference{src, candidates[k], et->name});
      }
    }
  }
  require_conformance(mm, m);
  return m;
}

void SimConfig::validate() const {
  if (d < 1) throw InputError("simulation: d must be at least 1");
  if (e < 1) throw InputError("simulation: e must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("simulation: p must be in [0,1]");
  if (core_rules.empty()) throw InputError("simulation: no core rules");
  if (perturbation_rules.empty()) {
    throw InputError("simulation: no perturbation rules");
  }
  if (max_attempts < 1) throw InputError("simulation: max_attempts must be >= 1");
  for (const auto& wr : core_rules) {
    if (!(wr.weight > 0.0)) {
      throw InputError("simulation: weight of " + wr.rule.name + " must be > 0");
    }
    wr.rule.validate();
  }
  for (const auto& r : perturbation_rules) r.validate();
}

SimConfig SimConfig::experiment(int which, std::size_t d, std::size_t e,
                                double p, std::uint64_t seed) {
  if (which != 1 && which != 2) {
    throw InputError("simulation: experiment must be 1 or 2");
  }
  SimConfig c;
  c.d = d;
  c.e = e;
  c.p = p;
  c.seed = seed;
  c.metamodel = component_metamodel();
  c.initial = InitialSpec::component_instance();
  c.core_rules.push_back({connect_components_rule(), 1.0});
  if (which == 2) c.core_rules.push_back({add_component_rule(), 1.0});
  c.perturbation_rules = default_perturbation_rules();
  return c;
}

std::string SimConfig::to_json() const {
  json doc;
  doc["d"] = d;
  doc["e"] = e;
  doc["p"] = p;
  doc["seed"] = seed;
  doc["maxAttempts"] = max_attempts;
  doc["coreContextFromPrevious"] = core_context_from_previous;
  doc["coreRules"] = json::array();
  for (const auto& wr : core_rules) {
    doc["coreRules"].push_back(
        {{"weight", wr.weight}, {"rule", json::parse(wr.rule.to_json())}});
  }
  doc["perturbationRules"] = json::array();
  for (const auto& r : perturbation_rules) {
    doc["perturbationRules"].push_back(json::parse(r.to_json()));
  }
  doc["metamodel"] = json::parse(metamodel.to_json());
  doc["initial"] = json::parse(initial.to_json());
  return doc.dump(1) + "\n";
}

SimConfig SimConfig::from_json(std::string_view text) {
  const json doc = parse_or_throw(text, "simulation config");
  SimConfig c;
  try {
    c.d = doc.at("d").get<std::size_t>();
    c.e = doc.at("e").get<std::size_t>();
    c.p = doc.at("p").get<double>();
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.max_attempts = doc.value("maxAttempts", std::size_t{8});
    c.core_context_from_previous = doc.value("coreContextFromPrevious", true);
    for (const auto& wr : doc.at("coreRules")) {
      c.core_rules.push_back(
          {EditRule::from_json(wr.at("rule").dump()), wr.value("weight", 1.0)});
    }
    for (const auto& r : doc.at("perturbationRules")) {
      c.perturbation_rules.push_back(EditRule::from_json(r.dump()));
    }
    c.metamodel = MetaModel::from_json(doc.at("metamodel").dump());
    c.initial = InitialSpec::from_json(doc.at("initial").dump());
  } catch (const json::exception& e) {
    throw InputError(std::string("simulation config: ") + e.what());
  }
  return c;
}

std::size_t RepoBundle::applied(ApplicationRole role) const {
  std::size_t n = 0;
  for (const auto& rev : log) {
    for (const auto& r : rev.records) n += r.role == role && !r.skipped;
  }
  return n;
}

std::size_t RepoBundle::skipped() const {
  std::size_t n = 0;
  for (const auto& rev : log) {
    for (const auto& r : rev.records) n += r.skipped;
  }
  return n;
}

namespace {

// Tries the rules in `order` until one applies; records the outcome.
struct Attempt {
  std::optional<ApplyResult> result;
  std::string rule;
  std::uint64_t seed = 0;
};

Attempt try_rules(const std::vector<const EditRule*>& order,
                  const SimConfig& config, const ModelVersion& m,
                  const ApplySite& site, std::uint64_t& seed_state) {
  Attempt attempt;
  for (std::size_t k = 0; k < order.size() && k < config.max_attempts; ++k) {
    const std::uint64_t seed = splitmix64(seed_state);
    try {
      attempt.result = apply(*order[k], config.metamodel, m, site, seed);
      attempt.rule = order[k]->name;
      attempt.seed = seed;
      return attempt;
    } catch (const NoMatchError&) {
    }
  }
  return attempt;
}

std::vector<std::string> touched_elements(const ApplyResult& r) {
  std::set<std::string> uids;
  for (const auto& [id, uid] : r.binding) uids.insert(uid);
  for (const auto& [id, uid] : r.created) uids.insert(uid);
  return {uids.begin(), uids.end()};
}

}  // namespace

RepoBundle simulate(const SimConfig& config) {
  config.validate();
  RepoBundle bundle;
  bundle.config = config;
  for (const auto& wr : config.core_rules) {
    bundle.truth.push_back(rule_to_pattern(wr.rule));
  }
  bundle.versions.push_back(
      build_initial(config.metamodel, config.initial, config.seed));

  std::mt19937_64 rng(config.seed);
  std::uint64_t seed_state = config.seed ^ 0x5eed5eed5eed5eedULL;
  std::vector<double> weights;
  for (const auto& wr : config.core_rules) weights.push_back(wr.weight);
  std::discrete_distribution<std::size_t> choose_core(weights.begin(),
                                                      weights.end());
  std::uniform_int_distribution<std::size_t> choose_perturbation(
      0, config.perturbation_rules.size() - 1);
  std::bernoulli_distribution perturb(config.p);

  for (std::size_t rev = 0; rev < config.d; ++rev) {
    ModelVersion model = bundle.versions.back();
    RevisionLog log;
    ApplySite core_site;
    for (std::size_t app = 0; app < config.e; ++app) {
      // Chosen rule first, the others in random order as fallbacks.
      const std::size_t first = choose_core(rng);
      std::vector<const EditRule*> order{&config.core_rules[first].rule};
      std::vector<const EditRule*> rest;
      for (std::size_t k = 0; k < config.core_rules.size(); ++k) {
        if (k != first) rest.push_back(&config.core_rules[k].rule);
      }
      std::shuffle(rest.begin(), rest.end(), rng);
      order.insert(order.end(), rest.begin(), rest.end());

      Attempt core = try_rules(order, config, model, core_site, seed_state);
      const bool wants_perturbation = perturb(rng);
      if (!core.result) {
        ApplicationRecord skip;
        skip.role = ApplicationRole::kCore;
        skip.rule = order.front()->name;
        skip.skipped = true;
        skip.note = "no valid site for any core rule";
        bundle.warnings.push_back("revision " + std::to_string(rev + 1) +
                                  ", application " + std::to_string(app + 1) +
                                  ": " + skip.note);
        log.records.push_back(std::move(skip));
        continue;
      }
      ApplicationRecord record;
      record.role = ApplicationRole::kCore;
      record.rule = core.rule;
      record.seed = core.seed;
      record.binding = core.result->binding;
      record.created = core.result->created;
      record.perturbed = wants_perturbation;
      const std::size_t core_index = log.records.size();
      log.records.push_back(std::move(record));
      model = std::move(core.result->model);
      if (config.core_context_from_previous) {
        for (const auto& [id, uid] : core.result->created) {
          core_site.avoid.push_back(uid);
        }
      }
      if (!wants_perturbation) continue;

      std::vector<const EditRule*> candidates;
      const std::size_t chosen = choose_perturbation(rng);
      candidates.push_back(&config.perturbation_rules[chosen]);
      std::vector<const EditRule*> others;
      for (std::size_t k = 0; k < config.perturbation_rules.size(); ++k) {
        if (k != chosen) others.push_back(&config.perturbation_rules[k]);
      }
      std::shuffle(others.begin(), others.end(), rng);
      candidates.insert(candidates.end(), others.begin(), others.end());
      ApplySite site;
      site.must_touch = touched_elements(*core.result);
      Attempt pert = try_rules(candidates, config, model, site, seed_state);
      ApplicationRecord precord;
      precord.role = ApplicationRole::kPerturbation;
      precord.overlaps = core_index;
      if (!pert.result) {
        precord.rule = candidates.front()->name;
        precord.skipped = true;
        precord.note = "no overlapping site for any perturbation rule";
        bundle.warnings.push_back("revision " + std::to_string(rev + 1) +
                                  ", application " + std::to_string(app + 1) +
                                  ": " + precord.note);
      } else {
        precord.rule = pert.rule;
        precord.seed = pert.seed;
        precord.binding = pert.result->binding;
        precord.created = pert.result->created;
        model = std::move(pert.result->model);
        if (config.core_context_from_previous) {
          for (const auto& [id, uid] : pert.result->created) {
            core_site.avoid.push_back(uid);
          }
        }
      }
      log.records.push_back(std::move(precord));
    }
    bundle.log.push_back(std::move(log));
    bundle.versions.push_back(std::move(model));
  }
  return bundle;
}

std::vector<ModelVersion> replay(const ModelVersion& m0,
                                 const std::vector<RevisionLog>& log,
                                 const SimConfig& config) {
  std::map<std::string, const EditRule*> rules;
  for (const auto& wr : config.core_rules) rules[wr.rule.name] = &wr.rule;
  for (const auto& r : config.perturbation_rules) rules[r.name] = &r;
  std::vector<ModelVersion> versions{m0};
  for (const auto& rev : log) {
    ModelVersion model = versions.back();
    for (const auto& record : rev.records) {
      if (record.skipped) continue;
      auto it = rules.find(record.rule);
      if (it == rules.end()) {
        throw PreconditionError("replay: unknown rule " + record.rule);
      }
      model = apply(*it->second, config.metamodel, model,
                    ApplySite::at(record.binding), record.seed)
                  .model;
    }
    versions.push_back(std::move(model));
  }
  return versions;
}

std::string log_to_json(const std::vector<RevisionLog>& log) {
  json doc;
  doc["revisions"] = json::array();
  for (std::size_t i = 0; i < log.size(); ++i) {
    json rev;
    rev["revision"] = i + 1;
    rev["applications"] = json::array();
    for (const auto& r : log[i].records) {
      json a;
      a["role"] = r.role == ApplicationRole::kCore ? "core" : "perturbation";
      a["rule"] = r.rule;
      a["seed"] = r.seed;
      a["binding"] = r.binding;
      a["created"] = r.created;
      if (r.role == ApplicationRole::kCore) a["perturbed"] = r.perturbed;
      if (r.overlaps) a["overlaps"] = *r.overlaps;
      a["skipped"] = r.skipped;
      if (!r.note.empty()) a["note"] = r.note;
      rev["applications"].push_back(std::move(a));
    }
    doc["revisions"].push_back(std::move(rev));
  }
  return doc.dump(1) + "\n";
}

std::vector<RevisionLog> log_from_json(std::string_view text) {
  const json doc = parse_or_throw(text, "log");
  std::vector<RevisionLog> log;
  try {
    for (const auto& rev : doc.at("revisions")) {
      RevisionLog rl;
      for (const auto& a : rev.at("applications")) {
        ApplicationRecord r;
        const auto role = a.at("role").get<std::string>();
        if (role == "core") {
          r.role = ApplicationRole::kCore;
        } else if (role == "perturbation") {
          r.role = ApplicationRole::kPerturbation;
        } else {
          throw InputError("log: unknown role " + role);
        }
        r.rule = a.at("rule").get<std::string>();
        r.seed = a.at("seed").get<std::uint64_t>();
        r.binding = a.at("binding").get<Binding>();
        r.created = a.at("created").get<std::map<std::string, std::string>>();
        r.perturbed = a.value("perturbed", false);
        if (a.contains("overlaps")) r.overlaps = a.at("overlaps").get<std::size_t>();
        r.skipped = a.value("skipped", false);
        r.note = a.value("note", std::string());
        rl.records.push_back(std::move(r));
      }
      log.push_back(std::move(rl));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("log: ") + e.what());
  }
  return log;
}

void save_bundle(const RepoBundle& bundle, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "truth", ec);
  if (ec) throw InputError("cannot create " + dir + ": " + ec.message());
  for (std::size_t i = 0; i < bundle.versions.size(); ++i) {
    bundle.versions[i].save((fs::path(dir) / ("m" + std::to_string(i) + ".json")).string());
  }
  internal::write_file((fs::path(dir) / "log.json").string(), log_to_json(bundle.log));
  internal::write_file((fs::path(dir) / "config.json").string(),
                       bundle.config.to_json());
  internal::write_file((fs::path(dir) / "metamodel.json").string(),
                       bundle.config.metamodel.to_json());
  for (std::size_t k = 0; k < bundle.truth.size(); ++k) {
    const std::string id = k < bundle.config.core_rules.size()
                               ? bundle.config.core_rules[k].rule.name
                               : "truth_" + std::to_string(k + 1);
    internal::write_file(
        (fs::path(dir) / "truth" / ("truth_" + std::to_string(k + 1) + ".lg")).string(),
        format_graph(bundle.truth[k], id));
  }
  if (!bundle.warnings.empty()) {
    std::ostringstream w;
    for (const auto& line : bundle.warnings) w << line << "\n";
    internal::write_file((fs::path(dir) / "warnings.txt").string(), w.str());
  }
}

RepoBundle load_bundle(const std::string& dir) {
  RepoBundle bundle;
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw InputError(dir + " is not a directory");
  bundle.config =
      SimConfig::from_json(internal::read_file((root / "config.json").string()));
  bundle.log = log_from_json(internal::read_file((root / "log.json").string()));
  for (std::size_t i = 0;; ++i) {
    const fs::path file = root / ("m" + std::to_string(i) + ".json");
    if (!fs::exists(file)) break;
    bundle.versions.push_back(ModelVersion::load(file.string()));
  }
  if (bundle.versions.empty()) throw InputError(dir + ": no m0.json");
  for (std::size_t k = 1;; ++k) {
    const fs::path file = root / "truth" / ("truth_" + std::to_string(k) + ".lg");
    if (!fs::exists(file)) break;
    for (auto& t : read_transactions_file(file.string())) {
      bundle.truth.push_back(std::move(t.graph));
    }
  }
  const fs::path warnings = root / "warnings.txt";
  if (fs::exists(warnings)) {
    std::istringstream in(internal::read_file(warnings.string()));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) bundle.warnings.push_back(line);
    }
  }
  return bundle;
}

}  // namespace opminer
