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

#ifndef OPMINER_ISOMORPHISM_HPP_
#define OPMINER_ISOMORPHISM_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "opminer/graph.hpp"

namespace opminer {

struct SubgraphMatch {
  bool found = false;
  // (needle node id, hay node id) for every needle node when found.
  std::vector<std::pair<NodeId, NodeId>> mapping;

  explicit operator bool() const { return found; }
};

// Injective, label- and direction-preserving embedding of `needle` into
// `hay` (not necessarily induced). Dense-index form: result[i] is the hay
// index of needle node i.
std::optional<std::vector<std::size_t>> find_embedding(
    const LabeledGraph& needle, const LabeledGraph& hay);

SubgraphMatch is_subgraph_isomorphic(const LabeledGraph& needle,
                                     const LabeledGraph& hay);

bool are_isomorphic(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace opminer

#endif  // OPMINER_ISOMORPHISM_HPP_
