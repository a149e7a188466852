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

#include "opminer/graph.hpp"

#include <algorithm>
#include <string>

#include "opminer/error.hpp"

namespace opminer {

std::size_t LabeledGraph::add_node(NodeId id, std::string label) {
  if (index_.contains(id)) {
    throw InputError("duplicate node id " + std::to_string(id));
  }
  const std::size_t index = nodes_.size();
  nodes_.push_back(Node{id, std::move(label)});
  out_.emplace_back();
  in_.emplace_back();
  index_.emplace(id, index);
  return index;
}

std::size_t LabeledGraph::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InputError("undeclared node id " + std::to_string(id));
  }
  return it->second;
}

std::size_t LabeledGraph::add_edge(NodeId src, NodeId dst, std::string label) {
  return add_edge_by_index(index_of(src), index_of(dst), std::move(label));
}

std::size_t LabeledGraph::add_edge_by_index(std::size_t src, std::size_t dst,
                                            std::string label) {
  if (src >= nodes_.size() || dst >= nodes_.size()) {
    throw InputError("edge endpoint index out of range");
  }
  if (find_edge(src, dst, label) != npos) {
    throw InputError("parallel edge " + std::to_string(nodes_[src].id) +
                     " -> " + std::to_string(nodes_[dst].id) + " with label " +
                     label);
  }
  const std::size_t index = edges_.size();
  edges_.push_back(Edge{src, dst, std::move(label)});
  out_[src].push_back(index);
  in_[dst].push_back(index);
  return index;
}

std::size_t LabeledGraph::find_edge(std::size_t src, std::size_t dst,
                                    std::string_view label) const {
  for (std::size_t e : out_[src]) {
    if (edges_[e].dst == dst && edges_[e].label == label) return e;
  }
  return npos;
}

LabeledGraph LabeledGraph::induced(
    std::span<const std::size_t> node_indices) const {
  LabeledGraph sub;
  std::vector<std::size_t> remap(nodes_.size(), npos);
  for (std::size_t i : node_indices) {
    remap[i] = sub.add_node(nodes_[i].id, nodes_[i].label);
  }
  for (const Edge& e : edges_) {
    if (remap[e.src] != npos && remap[e.dst] != npos) {
      sub.add_edge_by_index(remap[e.src], remap[e.dst], e.label);
    }
  }
  return sub;
}

std::vector<std::vector<std::size_t>> component_node_sets(
    const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> members;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t e : g.out_edges(v)) {
        const std::size_t w = g.edge(e).dst;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
      for (std::size_t e : g.in_edges(v)) {
        const std::size_t w = g.edge(e).src;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

std::vector<LabeledGraph> connected_components(const LabeledGraph& g) {
  std::vector<LabeledGraph> result;
  for (const auto& members : component_node_sets(g)) {
    result.push_back(g.induced(members));
  }
  return result;
}

bool is_connected(const LabeledGraph& g) {
  return g.node_count() > 0 && component_node_sets(g).size() == 1;
}

}  // namespace opminer
