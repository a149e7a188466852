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

#ifndef OPMINER_RANKER_HPP_
#define OPMINER_RANKER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opminer/canonical.hpp"
#include "opminer/graph.hpp"
#include "opminer/miner.hpp"

namespace opminer {

// (support - 1) * (nodes + edges). Throws PreconditionError for support 0.
std::int64_t compression(std::size_t support, std::size_t nodes,
                         std::size_t edges);
std::int64_t compression(const Pattern& p);

// Indices (ascending) of the patterns that survive lattice pruning: a
// pattern is dropped when some strict supergraph, reachable through
// `parents` links, has equal support and at least equal compression.
std::vector<std::size_t> prune(std::span<const Pattern> patterns);

// Same rule with the supergraph relation decided by subgraph isomorphism
// instead of lattice links, for pattern sets without trustworthy links.
std::vector<std::size_t> prune_by_isomorphism(std::span<const Pattern> patterns);

enum class RankMode { kCompression, kFrequency };

std::string_view rank_mode_name(RankMode mode);
// Throws InputError for anything but "compression" or "frequency".
RankMode parse_rank_mode(std::string_view name);

struct RankedEntry {
  std::size_t rank = 0;  // 1-based
  std::size_t support = 0;
  std::int64_t compression = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  CanonicalCode code;
  LabeledGraph graph;
  std::optional<std::size_t> source_index;  // index in the mined pattern set
};

struct RankedList {
  RankMode mode = RankMode::kCompression;
  std::vector<RankedEntry> entries;
};

// Sorts the selected patterns descending by compression (or support), then
// by larger node + edge count, then by ascending canonical code.
RankedList rank(std::span<const Pattern> patterns,
                std::span<const std::size_t> selection, RankMode mode);

// prune() followed by rank(); both modes rank the same surviving set.
RankedList recommend(std::span<const Pattern> patterns, RankMode mode);

}  // namespace opminer

#endif  // OPMINER_RANKER_HPP_
