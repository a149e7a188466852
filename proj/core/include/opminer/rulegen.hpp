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

#ifndef OPMINER_RULEGEN_HPP_
#define OPMINER_RULEGEN_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opminer/graph.hpp"
#include "opminer/miner.hpp"
#include "opminer/model.hpp"

namespace opminer {

struct RuleNode {
  std::string id;
  std::string type;

  friend bool operator==(const RuleNode&, const RuleNode&) = default;
};

struct RuleEdge {
  std::string src;  // rule node id
  std::string tgt;  // rule node id
  std::string type;

  friend bool operator==(const RuleEdge&, const RuleEdge&) = default;
};

// Declarative in-place edit operation. Context nodes (and context edges)
// must be matched and are kept; deleted nodes/edges must be matched and are
// removed; created nodes/edges are added. Left-hand side = context plus
// deleted, right-hand side = context plus created.
struct EditRule {
  std::string name;
  std::vector<RuleNode> context_nodes;
  std::vector<RuleNode> created_nodes;
  std::vector<RuleNode> deleted_nodes;
  std::vector<RuleEdge> context_edges;
  std::vector<RuleEdge> created_edges;
  std::vector<RuleEdge> deleted_edges;
  std::string provenance = "authored";

  // Throws InputError on duplicate node ids, edges referencing unknown
  // nodes, created edges touching deleted nodes, deleted edges touching
  // created nodes, or context edges touching non-context nodes.
  void validate() const;

  std::size_t node_count() const {
    return context_nodes.size() + created_nodes.size() + deleted_nodes.size();
  }
  std::size_t edge_count() const {
    return context_edges.size() + created_edges.size() + deleted_edges.size();
  }

  // {"name", "contextNodes", "createdNodes", "deletedNodes", "createdEdges",
  //  "deletedEdges", optional "contextEdges", "provenance"}
  static EditRule from_json(std::string_view text);
  static EditRule load(const std::string& path);
  std::string to_json() const;

  friend bool operator==(const EditRule&, const EditRule&) = default;
};

// preserved_ -> context, create_ -> created, delete_ -> deleted. Node ids
// are "n<k>" after the pattern node id. Throws InputError naming the
// element whose label lacks a prefix or whose edge kind is inconsistent
// with its endpoints.
EditRule pattern_to_rule(const LabeledGraph& pattern, std::string name,
                         std::string provenance = "authored");
EditRule pattern_to_rule(const Pattern& pattern, std::string name);

// Change-graph encoding of a rule: what a single application of it looks
// like in a simple change graph. Node order is context, created, deleted.
LabeledGraph rule_to_pattern(const EditRule& rule);

// Graphviz text for human review.
std::string rule_to_dot(const EditRule& rule);

// rule node id -> model element uid, for context and deleted nodes.
using Binding = std::map<std::string, std::string>;

struct ApplySite {
  // Bind exactly this when set; otherwise choose uniformly at random among
  // all valid bindings.
  std::optional<Binding> binding;
  // For random sites: the binding must map at least one context or deleted
  // node onto one of these uids.
  std::vector<std::string> must_touch;
  // For random sites: no context or deleted node may be bound to these.
  std::vector<std::string> avoid;

  static ApplySite random() { return {}; }
  static ApplySite at(Binding b) { return ApplySite{std::move(b), {}, {}}; }
};

struct ApplyResult {
  ModelVersion model;
  Binding binding;
  // rule node id -> fresh uid, for created nodes.
  std::map<std::string, std::string> created;
};

// Every valid binding of the rule in `m` (optionally restricted by
// `must_touch`), in a deterministic order. Valid means: injective, types
// match, all context and deleted edges present, and no deleted node keeps a
// reference the rule does not delete.
std::vector<Binding> enumerate_bindings(
    const EditRule& rule, const ModelVersion& m,
    const std::vector<std::string>& must_touch = {});

bool is_valid_binding(const EditRule& rule, const ModelVersion& m,
                      const Binding& binding);

// Applies `rule` to a copy of `m`. Fresh uids are "<rule>-<k>-<seed>".
// Throws NoMatchError when no valid binding exists (or the explicit one is
// invalid) and ConformanceError when the result violates `mm`.
ApplyResult apply(const EditRule& rule, const MetaModel& mm,
                  const ModelVersion& m, const ApplySite& site,
                  std::uint64_t seed);

}  // namespace opminer

#endif  // OPMINER_RULEGEN_HPP_
