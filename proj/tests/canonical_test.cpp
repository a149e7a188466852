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

#include "opminer/canonical.hpp"

#include <gtest/gtest.h>

#include <random>

#include "opminer/error.hpp"
#include "opminer/isomorphism.hpp"
#include "support/oracles.hpp"

namespace opminer {
namespace {

TEST(CanonicalCodeTest, SingleNode) {
  LabeledGraph g;
  g.add_node(5, "A");
  const CanonicalCode code = canonical_code(g);
  EXPECT_EQ(code.str(), "(0,A)");
  EXPECT_EQ(code.node_count(), 1u);
  EXPECT_EQ(code.edge_count(), 0u);
}

TEST(CanonicalCodeTest, DirectionIsPartOfTheCode) {
  LabeledGraph a;
  a.add_node(0, "A");
  a.add_node(1, "B");
  a.add_edge(0, 1, "x");
  LabeledGraph b;
  b.add_node(0, "A");
  b.add_node(1, "B");
  b.add_edge(1, 0, "x");
  EXPECT_NE(canonical_code(a), canonical_code(b));
  EXPECT_EQ(canonical_code(a).str(), "(0,1,A,>,x,B)");
  EXPECT_EQ(canonical_code(b).str(), "(0,1,A,<,x,B)");
}

TEST(CanonicalCodeTest, RejectsEmptyAndDisconnected) {
  EXPECT_THROW(canonical_code(LabeledGraph{}), PreconditionError);
  LabeledGraph g;
  g.add_node(0, "A");
  g.add_node(1, "A");
  EXPECT_THROW(canonical_code(g), PreconditionError);
}

TEST(CanonicalCodeTest, ParseRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const LabeledGraph g = testing::random_graph(rng, 1 + rng() % 6, 3, 2, 0.2);
    const CanonicalCode code = canonical_code(g);
    EXPECT_EQ(CanonicalCode::parse(code.str()), code);
    EXPECT_TRUE(testing::brute_isomorphic(code.to_graph(), g));
  }
  EXPECT_THROW(CanonicalCode::parse(""), InputError);
  EXPECT_THROW(CanonicalCode::parse("(0,1,A,?,x,B)"), InputError);
  EXPECT_THROW(CanonicalCode::parse("0,A"), InputError);
}

TEST(CanonicalCodeTest, OrderMapsCodePositionsToNodes) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const LabeledGraph g = testing::random_graph(rng, 2 + rng() % 5, 2, 2, 0.3);
    const CanonicalForm form = canonical_form(g);
    ASSERT_EQ(form.order.size(), g.node_count());
    for (const auto& e : form.code.entries()) {
      EXPECT_EQ(g.node(form.order[e.from]).label, e.from_label);
      EXPECT_EQ(g.node(form.order[e.to]).label, e.to_label);
    }
  }
}

// Property: the code is invariant under node relabeling and insertion
// order, and two codes are equal exactly when the permutation oracle says
// the graphs are isomorphic.
TEST(CanonicalCodeTest, CompleteInvariantAgainstPermutationOracle) {
  std::mt19937_64 rng(17);
  std::vector<LabeledGraph> graphs;
  for (int i = 0; i < 120; ++i) {
    const LabeledGraph g = testing::random_graph(rng, 1 + rng() % 5, 2, 2, 0.25);
    EXPECT_EQ(canonical_code(testing::shuffled_copy(g, rng)), canonical_code(g));
    graphs.push_back(g);
  }
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      EXPECT_EQ(canonical_code(graphs[i]) == canonical_code(graphs[j]),
                testing::brute_isomorphic(graphs[i], graphs[j]))
          << canonical_code(graphs[i]).str() << " vs "
          << canonical_code(graphs[j]).str();
    }
  }
}

TEST(CanonicalCodeTest, SymmetricGraphs) {
  // Directed 4-cycle and a star: many automorphisms, same result for any
  // insertion order.
  std::mt19937_64 rng(23);
  LabeledGraph cycle;
  for (NodeId i = 0; i < 4; ++i) cycle.add_node(i, "A");
  for (NodeId i = 0; i < 4; ++i) cycle.add_edge(i, (i + 1) % 4, "x");
  LabeledGraph star;
  star.add_node(0, "C");
  for (NodeId i = 1; i < 6; ++i) {
    star.add_node(i, "L");
    star.add_edge(0, i, "x");
  }
  for (int k = 0; k < 10; ++k) {
    EXPECT_EQ(canonical_code(testing::shuffled_copy(cycle, rng)), canonical_code(cycle));
    EXPECT_EQ(canonical_code(testing::shuffled_copy(star, rng)), canonical_code(star));
  }
  EXPECT_EQ(canonical_code(star).edge_count(), 5u);
}

TEST(CanonicalCodeTest, HashAgreesWithEquality) {
  std::mt19937_64 rng(29);
  const LabeledGraph g = testing::random_graph(rng, 5, 2, 2, 0.3);
  CanonicalCodeHash h;
  EXPECT_EQ(h(canonical_code(g)), h(canonical_code(testing::shuffled_copy(g, rng))));
}

}  // namespace
}  // namespace opminer
