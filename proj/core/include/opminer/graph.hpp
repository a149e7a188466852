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

#ifndef OPMINER_GRAPH_HPP_
#define OPMINER_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace opminer {

// Caller-chosen node identifier. Local to one graph.
using NodeId = std::uint32_t;

struct Node {
  NodeId id = 0;
  std::string label;

  friend bool operator==(const Node&, const Node&) = default;
};

// Edges refer to nodes by dense index (position in LabeledGraph::nodes()),
// not by NodeId.
struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::string label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed graph with string labels on nodes and edges.
//
// At most one edge per (src, dst, label) triple; several differently
// labeled edges between the same ordered pair are allowed. Nodes and edges
// keep insertion order, which is also the serialization order.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  // Adds a node and returns its dense index. Throws InputError on a
  // duplicate id.
  std::size_t add_node(NodeId id, std::string label);

  // Adds an edge between two declared node ids. Throws InputError when an
  // endpoint is undeclared or the (src, dst, label) triple already exists.
  std::size_t add_edge(NodeId src, NodeId dst, std::string label);

  // Same as add_edge but addressed by dense node index.
  std::size_t add_edge_by_index(std::size_t src, std::size_t dst,
                                std::string label);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  const Node& node(std::size_t index) const { return nodes_[index]; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  // Edge indices leaving / entering the node at `index`.
  std::span<const std::size_t> out_edges(std::size_t index) const {
    return out_[index];
  }
  std::span<const std::size_t> in_edges(std::size_t index) const {
    return in_[index];
  }

  bool contains_node(NodeId id) const { return index_.contains(id); }
  // Throws InputError for an unknown id.
  std::size_t index_of(NodeId id) const;

  // Index of the edge (src, dst, label) given dense node indices, or npos.
  std::size_t find_edge(std::size_t src, std::size_t dst,
                        std::string_view label) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Subgraph induced by the given dense node indices; node ids are kept.
  LabeledGraph induced(std::span<const std::size_t> node_indices) const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::unordered_map<NodeId, std::size_t> index_;
};

// Weakly connected components (edge direction ignored), each returned as an
// induced subgraph. Components are ordered by their smallest node index and
// keep the original node order inside.
std::vector<LabeledGraph> connected_components(const LabeledGraph& g);

// Same partition, as lists of dense node indices.
std::vector<std::vector<std::size_t>> component_node_sets(const LabeledGraph& g);

bool is_connected(const LabeledGraph& g);

}  // namespace opminer

#endif  // OPMINER_GRAPH_HPP_
