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

#include "opminer/ranker.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "opminer/error.hpp"
#include "opminer/isomorphism.hpp"

namespace opminer {

std::int64_t compression(std::size_t support, std::size_t nodes,
                         std::size_t edges) {
  if (support == 0) {
    throw PreconditionError("compression is undefined for support 0");
  }
  return static_cast<std::int64_t>(support - 1) *
         static_cast<std::int64_t>(nodes + edges);
}

std::int64_t compression(const Pattern& p) {
  return compression(p.support, p.node_count(), p.edge_count());
}

namespace {

bool dominated_by(const Pattern& g, const Pattern& super) {
  return g.support == super.support && compression(g) <= compression(super);
}

}  // namespace

std::vector<std::size_t> prune(std::span<const Pattern> patterns) {
  const std::size_t n = patterns.size();
  std::vector<std::size_t> survivors;
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    bool removed = false;
    const auto mark = static_cast<std::uint32_t>(i + 1);
    stack.assign(patterns[i].parents.begin(), patterns[i].parents.end());
    while (!stack.empty() && !removed) {
      const std::size_t j = stack.back();
      stack.pop_back();
      if (j >= n || j == i || stamp[j] == mark) continue;
      stamp[j] = mark;
      if (dominated_by(patterns[i], patterns[j])) {
        removed = true;
        break;
      }
      stack.insert(stack.end(), patterns[j].parents.begin(),
                   patterns[j].parents.end());
    }
    if (!removed) survivors.push_back(i);
  }
  return survivors;
}

std::vector<std::size_t> prune_by_isomorphism(
    std::span<const Pattern> patterns) {
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const Pattern& g = patterns[i];
    bool removed = false;
    for (std::size_t j = 0; j < patterns.size() && !removed; ++j) {
      const Pattern& super = patterns[j];
      if (j == i || super.size() <= g.size()) continue;
      if (!dominated_by(g, super)) continue;
      removed = find_embedding(g.graph, super.graph).has_value();
    }
    if (!removed) survivors.push_back(i);
  }
  return survivors;
}

std::string_view rank_mode_name(RankMode mode) {
  return mode == RankMode::kCompression ? "compression" : "frequency";
}

RankMode parse_rank_mode(std::string_view name) {
  if (name == "compression") return RankMode::kCompression;
  if (name == "frequency") return RankMode::kFrequency;
  throw InputError("unknown ranking mode '" + std::string(name) +
                   "' (expected compression or frequency)");
}

RankedList rank(std::span<const Pattern> patterns,
                std::span<const std::size_t> selection, RankMode mode) {
  std::vector<std::size_t> order(selection.begin(), selection.end());
  auto key = [&](std::size_t i) {
    const Pattern& p = patterns[i];
    const std::int64_t primary = mode == RankMode::kCompression
                                     ? compression(p)
                                     : static_cast<std::int64_t>(p.support);
    return std::make_tuple(-primary, -static_cast<std::int64_t>(p.size()),
                           std::cref(p.code));
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  RankedList list;
  list.mode = mode;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const Pattern& p = patterns[order[r]];
    list.entries.push_back(RankedEntry{r + 1, p.support, compression(p),
                                       p.node_count(), p.edge_count(), p.code,
                                       p.graph, order[r]});
  }
  return list;
}

RankedList recommend(std::span<const Pattern> patterns, RankMode mode) {
  const auto survivors = prune(patterns);
  return rank(patterns, survivors, mode);
}

}  // namespace opminer
