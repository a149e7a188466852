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

#ifndef OPMINER_MODELDIFF_HPP_
#define OPMINER_MODELDIFF_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opminer/graph.hpp"
#include "opminer/model.hpp"
#include "opminer/transaction_io.hpp"

namespace opminer {

enum class ChangeKind { kPreserved, kCreate, kDelete };

// "preserved_", "create_" or "delete_".
std::string_view change_prefix(ChangeKind kind);
std::string change_label(ChangeKind kind, std::string_view type_name);

struct SplitLabel {
  ChangeKind kind;
  std::string_view type_name;
};
// Throws InputError when the label carries no known prefix.
SplitLabel split_change_label(std::string_view label);
bool has_change_prefix(std::string_view label);

enum class Origin { kOld, kNew, kBoth };

struct Provenance {
  std::string uid;
  Origin origin = Origin::kBoth;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Difference graph or simple change graph. provenance[i] describes the
// node at dense index i of `graph`.
struct ChangeGraph {
  LabeledGraph graph;
  std::vector<Provenance> provenance;

  std::size_t count(ChangeKind kind) const;        // nodes + edges
  std::size_t changed_elements() const;           // create + delete
};

struct Correspondence {
  std::vector<std::string> elements;    // uids matched in both versions
  std::vector<Reference> references;    // references matched in both
};

// Element correspondence: equal uid and equal type. Reference
// correspondence: corresponding endpoints and equal type.
Correspondence match(const ModelVersion& old_version,
                     const ModelVersion& new_version);

// Unified graph over both versions; matched elements appear once as
// preserved_, unmatched old ones as delete_, unmatched new ones as create_.
// Nodes are ordered by (uid, origin); node ids are 0..n-1 in that order.
ChangeGraph difference_graph(const ModelVersion& old_version,
                             const ModelVersion& new_version);

// Boundary graph of the changed part: every create_/delete_ node and edge
// plus the preserved nodes that changed edges touch. Preserved edges are
// dropped. Node ids are kept from `dg`.
ChangeGraph simple_change_graph(const ChangeGraph& dg);

// Connected components of a change graph, ordered by smallest provenance
// uid; node ids are renumbered 0..k-1 following the input order.
std::vector<ChangeGraph> change_components(const ChangeGraph& cg);

// Components of several SCGs (one per revision pair, in order) as
// transactions with ids "<pair>_<component>".
std::vector<Transaction> scg_transactions(std::span<const ChangeGraph> scgs);

}  // namespace opminer

#endif  // OPMINER_MODELDIFF_HPP_
