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

#include "opminer/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "opminer/canonical.hpp"

namespace opminer {
namespace {

// Edge of the needle that links position k to an earlier position (or to
// itself), expressed in needle dense indices.
struct BackLink {
  std::size_t other;  // needle index of the earlier endpoint
  bool outgoing;      // true: edge runs from the node at k to `other`
  const std::string* label;
};

class Matcher {
 public:
  Matcher(const LabeledGraph& needle, const LabeledGraph& hay)
      : needle_(needle), hay_(hay) {}

  std::optional<std::vector<std::size_t>> run() {
    const std::size_t n = needle_.node_count();
    if (n == 0) return std::vector<std::size_t>{};
    if (n > hay_.node_count() || needle_.edge_count() > hay_.edge_count()) {
      return std::nullopt;
    }
    if (!label_counts_fit()) return std::nullopt;
    plan();
    image_.assign(n, LabeledGraph::npos);
    used_.assign(hay_.node_count(), 0);
    if (extend(0)) return image_;
    return std::nullopt;
  }

 private:
  bool label_counts_fit() const {
    std::map<std::string, long> counts;
    for (const auto& node : hay_.nodes()) ++counts[node.label];
    for (const auto& node : needle_.nodes()) {
      if (--counts[node.label] < 0) return false;
    }
    std::map<std::string, long> edge_counts;
    for (const auto& edge : hay_.edges()) ++edge_counts[edge.label];
    for (const auto& edge : needle_.edges()) {
      if (--edge_counts[edge.label] < 0) return false;
    }
    return true;
  }

  // Orders needle nodes so that each one (after the first of its
  // component) is adjacent to an earlier one, starting from the rarest label.
  void plan() {
    const std::size_t n = needle_.node_count();
    std::map<std::string, long> hay_freq;
    for (const auto& node : hay_.nodes()) ++hay_freq[node.label];
    std::vector<std::uint8_t> placed(n, 0);
    order_.clear();
    while (order_.size() < n) {
      std::size_t seed = LabeledGraph::npos;
      for (std::size_t v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (seed == LabeledGraph::npos ||
            hay_freq[needle_.node(v).label] <
                hay_freq[needle_.node(seed).label]) {
          seed = v;
        }
      }
      placed[seed] = 1;
      std::size_t head = order_.size();
      order_.push_back(seed);
      while (head < order_.size()) {
        const std::size_t v = order_[head++];
        auto visit = [&](std::size_t w) {
          if (!placed[w]) {
            placed[w] = 1;
            order_.push_back(w);
          }
        };
        for (std::size_t e : needle_.out_edges(v)) visit(needle_.edge(e).dst);
        for (std::size_t e : needle_.in_edges(v)) visit(needle_.edge(e).src);
      }
    }
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[order_[k]] = k;
    links_.assign(n, {});
    for (const auto& edge : needle_.edges()) {
      const std::size_t later = std::max(pos[edge.src], pos[edge.dst]);
      const std::size_t v = order_[later];
      if (edge.src == v) {
        links_[later].push_back(BackLink{edge.dst, true, &edge.label});
      } else {
        links_[later].push_back(BackLink{edge.src, false, &edge.label});
      }
    }
  }

  bool consistent(std::size_t k, std::size_t candidate) const {
    const std::size_t v = order_[k];
    if (used_[candidate] || hay_.node(candidate).label != needle_.node(v).label) {
      return false;
    }
    for (const BackLink& link : links_[k]) {
      const std::size_t other =
          link.other == v ? candidate : image_[link.other];
      const std::size_t src = link.outgoing ? candidate : other;
      const std::size_t dst = link.outgoing ? other : candidate;
      if (hay_.find_edge(src, dst, *link.label) == LabeledGraph::npos) {
        return false;
      }
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == order_.size()) return true;
    const std::size_t v = order_[k];
    auto attempt = [&](std::size_t candidate) {
      if (!consistent(k, candidate)) return false;
      image_[v] = candidate;
      used_[candidate] = 1;
      if (extend(k + 1)) return true;
      used_[candidate] = 0;
      image_[v] = LabeledGraph::npos;
      return false;
    };
    // Anchor on an earlier neighbour when there is one.
    for (const BackLink& link : links_[k]) {
      if (link.other == v) continue;
      const std::size_t anchor = image_[link.other];
      if (link.outgoing) {
        for (std::size_t e : hay_.in_edges(anchor)) {
          if (hay_.edge(e).label == *link.label && attempt(hay_.edge(e).src)) {
            return true;
          }
        }
      } else {
        for (std::size_t e : hay_.out_edges(anchor)) {
          if (hay_.edge(e).label == *link.label && attempt(hay_.edge(e).dst)) {
            return true;
          }
        }
      }
      return false;
    }
    for (std::size_t candidate = 0; candidate < hay_.node_count(); ++candidate) {
      if (attempt(candidate)) return true;
    }
    return false;
  }

  const LabeledGraph& needle_;
  const LabeledGraph& hay_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<BackLink>> links_;
  std::vector<std::size_t> image_;
  std::vector<std::uint8_t> used_;
};

}  // namespace

std::optional<std::vector<std::size_t>> find_embedding(
    const LabeledGraph& needle, const LabeledGraph& hay) {
  return Matcher(needle, hay).run();
}

SubgraphMatch is_subgraph_isomorphic(const LabeledGraph& needle,
                                     const LabeledGraph& hay) {
  SubgraphMatch match;
  auto image = find_embedding(needle, hay);
  if (!image) return match;
  match.found = true;
  for (std::size_t i = 0; i < image->size(); ++i) {
    match.mapping.emplace_back(needle.node(i).id, hay.node((*image)[i]).id);
  }
  return match;
}

bool are_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  if (is_connected(a) && is_connected(b)) {
    return canonical_code(a) == canonical_code(b);
  }
  // Equal sizes plus a non-induced embedding is a bijection on both sets.
  return find_embedding(a, b).has_value();
}

}  // namespace opminer
