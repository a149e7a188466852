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

#include "opminer/modeldiff.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "opminer/error.hpp"

namespace opminer {

std::string_view change_prefix(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::kPreserved:
      return "preserved_";
    case ChangeKind::kCreate:
      return "create_";
    case ChangeKind::kDelete:
      return "delete_";
  }
  return {};
}

std::string change_label(ChangeKind kind, std::string_view type_name) {
  std::string label(change_prefix(kind));
  label += type_name;
  return label;
}

bool has_change_prefix(std::string_view label) {
  for (auto kind :
       {ChangeKind::kPreserved, ChangeKind::kCreate, ChangeKind::kDelete}) {
    const auto prefix = change_prefix(kind);
    if (label.size() > prefix.size() && label.starts_with(prefix)) return true;
  }
  return false;
}

SplitLabel split_change_label(std::string_view label) {
  for (auto kind :
       {ChangeKind::kPreserved, ChangeKind::kCreate, ChangeKind::kDelete}) {
    const auto prefix = change_prefix(kind);
    if (label.size() > prefix.size() && label.starts_with(prefix)) {
      return SplitLabel{kind, label.substr(prefix.size())};
    }
  }
  throw InputError("label '" + std::string(label) +
                   "' has no preserved_/create_/delete_ prefix");
}

std::size_t ChangeGraph::count(ChangeKind kind) const {
  std::size_t n = 0;
  for (const auto& node : graph.nodes()) {
    if (split_change_label(node.label).kind == kind) ++n;
  }
  for (const auto& edge : graph.edges()) {
    if (split_change_label(edge.label).kind == kind) ++n;
  }
  return n;
}

std::size_t ChangeGraph::changed_elements() const {
  return count(ChangeKind::kCreate) + count(ChangeKind::kDelete);
}

Correspondence match(const ModelVersion& old_version,
                     const ModelVersion& new_version) {
  Correspondence c;
  for (const auto& [uid, type] : old_version.elements()) {
    auto other = new_version.find_type(uid);
    if (other && *other == type) c.elements.push_back(uid);
  }
  auto matched = [&](const std::string& uid) {
    return std::binary_search(c.elements.begin(), c.elements.end(), uid);
  };
  for (const auto& r : old_version.references()) {
    if (matched(r.src) && matched(r.tgt) && new_version.has_reference(r)) {
      c.references.push_back(r);
    }
  }
  return c;
}

ChangeGraph difference_graph(const ModelVersion& old_version,
                             const ModelVersion& new_version) {
  const Correspondence corr = match(old_version, new_version);
  auto matched = [&](const std::string& uid) {
    return std::binary_search(corr.elements.begin(), corr.elements.end(), uid);
  };

  struct PendingNode {
    std::string uid;
    Origin origin;
    ChangeKind kind;
    std::string type;
  };
  std::vector<PendingNode> pending;
  for (const auto& [uid, type] : old_version.elements()) {
    if (matched(uid)) {
      pending.push_back({uid, Origin::kBoth, ChangeKind::kPreserved, type});
    } else {
      pending.push_back({uid, Origin::kOld, ChangeKind::kDelete, type});
    }
  }
  for (const auto& [uid, type] : new_version.elements()) {
    if (!matched(uid)) {
      pending.push_back({uid, Origin::kNew, ChangeKind::kCreate, type});
    }
  }
  std::sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) {
    return std::tie(a.uid, a.origin) < std::tie(b.uid, b.origin);
  });

  ChangeGraph dg;
  std::map<std::string, std::size_t, std::less<>> old_side;
  std::map<std::string, std::size_t, std::less<>> new_side;
  for (const auto& p : pending) {
    const std::size_t index = dg.graph.add_node(
        static_cast<NodeId>(dg.provenance.size()), change_label(p.kind, p.type));
    dg.provenance.push_back(Provenance{p.uid, p.origin});
    if (p.origin != Origin::kNew) old_side.emplace(p.uid, index);
    if (p.origin != Origin::kOld) new_side.emplace(p.uid, index);
  }

  for (const auto& r : old_version.references()) {
    const bool preserved =
        std::binary_search(corr.references.begin(), corr.references.end(), r);
    dg.graph.add_edge_by_index(
        old_side.at(r.src), old_side.at(r.tgt),
        change_label(preserved ? ChangeKind::kPreserved : ChangeKind::kDelete,
                     r.type));
  }
  for (const auto& r : new_version.references()) {
    if (std::binary_search(corr.references.begin(), corr.references.end(), r)) {
      continue;
    }
    dg.graph.add_edge_by_index(new_side.at(r.src), new_side.at(r.tgt),
                               change_label(ChangeKind::kCreate, r.type));
  }
  return dg;
}

ChangeGraph simple_change_graph(const ChangeGraph& dg) {
  const LabeledGraph& g = dg.graph;
  std::vector<std::uint8_t> keep(g.node_count(), 0);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (split_change_label(g.node(i).label).kind != ChangeKind::kPreserved) {
      keep[i] = 1;
    }
  }
  std::vector<std::size_t> changed_edges;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (split_change_label(g.edge(e).label).kind != ChangeKind::kPreserved) {
      changed_edges.push_back(e);
      keep[g.edge(e).src] = 1;
      keep[g.edge(e).dst] = 1;
    }
  }
  ChangeGraph scg;
  std::vector<std::size_t> remap(g.node_count(), LabeledGraph::npos);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (!keep[i]) continue;
    remap[i] = scg.graph.add_node(g.node(i).id, g.node(i).label);
    scg.provenance.push_back(dg.provenance[i]);
  }
  for (std::size_t e : changed_edges) {
    const Edge& edge = g.edge(e);
    scg.graph.add_edge_by_index(remap[edge.src], remap[edge.dst], edge.label);
  }
  return scg;
}

std::vector<ChangeGraph> change_components(const ChangeGraph& cg) {
  auto sets = component_node_sets(cg.graph);
  auto smallest_uid = [&cg](const std::vector<std::size_t>& members) {
    std::string best = cg.provenance[members.front()].uid;
    for (std::size_t i : members) best = std::min(best, cg.provenance[i].uid);
    return best;
  };
  std::vector<std::pair<std::string, std::size_t>> keyed;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    keyed.emplace_back(smallest_uid(sets[k]), k);
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<ChangeGraph> out;
  for (const auto& [uid, k] : keyed) {
    const auto& members = sets[k];
    ChangeGraph part;
    std::vector<std::size_t> remap(cg.graph.node_count(), LabeledGraph::npos);
    for (std::size_t i : members) {
      remap[i] = part.graph.add_node(static_cast<NodeId>(part.provenance.size()),
                                     cg.graph.node(i).label);
      part.provenance.push_back(cg.provenance[i]);
    }
    for (const auto& edge : cg.graph.edges()) {
      if (remap[edge.src] != LabeledGraph::npos) {
        part.graph.add_edge_by_index(remap[edge.src], remap[edge.dst],
                                     edge.label);
      }
    }
    out.push_back(std::move(part));
  }
  return out;
}

std::vector<Transaction> scg_transactions(std::span<const ChangeGraph> scgs) {
  std::vector<Transaction> db;
  for (std::size_t pair = 0; pair < scgs.size(); ++pair) {
    const auto parts = change_components(scgs[pair]);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      db.push_back(Transaction{std::to_string(pair) + "_" + std::to_string(k),
                               parts[k].graph});
    }
  }
  return db;
}

}  // namespace opminer
