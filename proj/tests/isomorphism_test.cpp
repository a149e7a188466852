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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "support/oracles.hpp"

namespace opminer {
namespace {

LabeledGraph path(std::initializer_list<const char*> labels, const char* edge) {
  LabeledGraph g;
  NodeId id = 0;
  for (const char* l : labels) g.add_node(id++, l);
  for (NodeId i = 1; i < id; ++i) g.add_edge(i - 1, i, edge);
  return g;
}

TEST(IsomorphismTest, PathInsideLongerPath) {
  EXPECT_TRUE(is_subgraph_isomorphic(path({"A", "B"}, "x"), path({"A", "B", "C"}, "x")));
  EXPECT_FALSE(is_subgraph_isomorphic(path({"B", "A"}, "x"), path({"A", "B", "C"}, "x")));
  EXPECT_FALSE(is_subgraph_isomorphic(path({"A", "B"}, "y"), path({"A", "B", "C"}, "x")));
}

TEST(IsomorphismTest, EmbeddingIsNonInduced) {
  LabeledGraph tri;
  for (NodeId i = 0; i < 3; ++i) tri.add_node(i, "A");
  tri.add_edge(0, 1, "x");
  tri.add_edge(1, 2, "x");
  tri.add_edge(0, 2, "x");
  EXPECT_TRUE(is_subgraph_isomorphic(path({"A", "A", "A"}, "x"), tri));
}

TEST(IsomorphismTest, MappingIsAValidEmbedding) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const LabeledGraph hay = testing::random_graph(rng, 2 + rng() % 6, 2, 2, 0.3);
    const LabeledGraph needle = testing::random_graph(rng, 1 + rng() % 3, 2, 2, 0.2);
    const SubgraphMatch m = is_subgraph_isomorphic(needle, hay);
    if (!m) continue;
    std::map<NodeId, NodeId> f(m.mapping.begin(), m.mapping.end());
    ASSERT_EQ(f.size(), needle.node_count());
    std::set<NodeId> images;
    for (const auto& [a, b] : f) images.insert(b);
    EXPECT_EQ(images.size(), f.size());
    for (const auto& e : needle.edges()) {
      const NodeId s = f.at(needle.node(e.src).id);
      const NodeId t = f.at(needle.node(e.dst).id);
      EXPECT_NE(hay.find_edge(hay.index_of(s), hay.index_of(t), e.label),
                LabeledGraph::npos);
    }
  }
}

// Property: the search agrees with the injective-map enumeration oracle.
TEST(IsomorphismTest, AgreesWithBruteForce) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 400; ++i) {
    const LabeledGraph hay = testing::random_graph(rng, 1 + rng() % 6, 2, 2, 0.25,
                                                   rng() % 2 == 0);
    const LabeledGraph needle = testing::random_graph(rng, 1 + rng() % 4, 2, 2, 0.2,
                                                      rng() % 2 == 0);
    EXPECT_EQ(is_subgraph_isomorphic(needle, hay).found,
              testing::brute_subgraph(needle, hay));
    EXPECT_EQ(are_isomorphic(needle, hay), testing::brute_isomorphic(needle, hay));
  }
}

TEST(IsomorphismTest, PermutedCopiesAreIsomorphic) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    const LabeledGraph g = testing::random_graph(rng, 1 + rng() % 7, 3, 2, 0.2,
                                                 rng() % 2 == 0);
    EXPECT_TRUE(are_isomorphic(g, testing::shuffled_copy(g, rng)));
  }
}

}  // namespace
}  // namespace opminer
