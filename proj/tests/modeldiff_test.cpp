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

#include <gtest/gtest.h>

#include <random>

#include "opminer/canonical.hpp"
#include "opminer/component_model.hpp"
#include "opminer/error.hpp"
#include "opminer/isomorphism.hpp"
#include "opminer/rulegen.hpp"
#include "opminer/simgen.hpp"
#include "support/fixtures.hpp"

namespace opminer {
namespace {

TEST(ChangeLabelTest, PrefixesRoundTrip) {
  EXPECT_EQ(change_label(ChangeKind::kCreate, "Port"), "create_Port");
  const SplitLabel s = split_change_label("preserved_Component");
  EXPECT_EQ(s.kind, ChangeKind::kPreserved);
  EXPECT_EQ(s.type_name, "Component");
  EXPECT_EQ(split_change_label("delete_ends").kind, ChangeKind::kDelete);
  EXPECT_THROW(split_change_label("Port"), InputError);
  EXPECT_FALSE(has_change_prefix("modify_Port"));
}

TEST(DifferenceGraphTest, IdenticalVersionsArePreservedOnly) {
  const ModelVersion m = testing::running_example_old();
  const ChangeGraph dg = difference_graph(m, m);
  EXPECT_EQ(dg.graph.node_count(), m.element_count());
  EXPECT_EQ(dg.graph.edge_count(), m.reference_count());
  EXPECT_EQ(dg.changed_elements(), 0u);
  const ChangeGraph scg = simple_change_graph(dg);
  EXPECT_EQ(scg.graph.node_count(), 0u);
  EXPECT_TRUE(change_components(scg).empty());
}

// Connecting two components: 4 created nodes + 7 created edges, and the
// Package and both Components as preserved boundary nodes.
TEST(DifferenceGraphTest, RunningExample) {
  const ChangeGraph dg =
      difference_graph(testing::running_example_old(), testing::running_example_new());
  EXPECT_EQ(dg.count(ChangeKind::kCreate), 11u);
  EXPECT_EQ(dg.count(ChangeKind::kDelete), 0u);
  const ChangeGraph scg = simple_change_graph(dg);
  EXPECT_EQ(scg.changed_elements(), 11u);
  EXPECT_EQ(scg.count(ChangeKind::kPreserved), 3u);
  const auto parts = change_components(scg);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].graph.node_count(), 7u);
  EXPECT_EQ(parts[0].graph.edge_count(), 7u);
  EXPECT_TRUE(are_isomorphic(parts[0].graph, rule_to_pattern(connect_components_rule())));
}

TEST(DifferenceGraphTest, NodesSortedByUidWithProvenance) {
  const ChangeGraph dg =
      difference_graph(testing::running_example_old(), testing::running_example_new());
  for (std::size_t i = 1; i < dg.provenance.size(); ++i) {
    EXPECT_LE(dg.provenance[i - 1].uid, dg.provenance[i].uid);
  }
  for (std::size_t i = 0; i < dg.graph.node_count(); ++i) {
    EXPECT_EQ(dg.graph.node(i).id, i);
    const auto kind = split_change_label(dg.graph.node(i).label).kind;
    EXPECT_EQ(kind == ChangeKind::kCreate, dg.provenance[i].origin == Origin::kNew);
  }
}

TEST(DifferenceGraphTest, DeletionAndTypeChange) {
  ModelVersion old_version = testing::running_example_old();
  ModelVersion new_version = testing::running_example_old();
  new_version.remove_reference({"req0", "comp1", "satisfiedBy"});
  new_version.remove_reference({"pkg", "req0", "requirements"});
  new_version.remove_element("req0");
  // Same uid with another type: one deleted and one created node.
  new_version.remove_reference({"pkg", "impl2", "swImplementations"});
  new_version.remove_reference({"comp2", "impl2", "implementation"});
  new_version.remove_element("impl2");
  new_version.add_element("impl2", "Requirement");
  new_version.add_reference({"pkg", "impl2", "requirements"});
  const ChangeGraph dg = difference_graph(old_version, new_version);
  EXPECT_EQ(dg.count(ChangeKind::kDelete), 2u + 4u);
  EXPECT_EQ(dg.count(ChangeKind::kCreate), 1u + 1u);
  const ChangeGraph scg = simple_change_graph(dg);
  // Boundary: pkg, comp1, comp2.
  EXPECT_EQ(scg.count(ChangeKind::kPreserved), 3u);
  EXPECT_EQ(change_components(scg).size(), 1u);
}

// Properties: the SCG keeps every changed node and edge, no preserved
// edge, and only preserved nodes that a changed edge touches; components
// partition it.
TEST(SimpleChangeGraphTest, BoundaryProperties) {
  const MetaModel mm = component_metamodel();
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    SimConfig config = SimConfig::experiment(2, 2, 6, 0.5, seed);
    const RepoBundle bundle = simulate(config);
    for (std::size_t i = 1; i < bundle.versions.size(); ++i) {
      const ChangeGraph dg = difference_graph(bundle.versions[i - 1], bundle.versions[i]);
      const ChangeGraph scg = simple_change_graph(dg);
      EXPECT_EQ(scg.changed_elements(), dg.changed_elements());
      for (const auto& e : scg.graph.edges()) {
        EXPECT_NE(split_change_label(e.label).kind, ChangeKind::kPreserved);
      }
      for (std::size_t n = 0; n < scg.graph.node_count(); ++n) {
        if (split_change_label(scg.graph.node(n).label).kind != ChangeKind::kPreserved) {
          continue;
        }
        EXPECT_GT(scg.graph.out_edges(n).size() + scg.graph.in_edges(n).size(), 0u);
      }
      std::size_t nodes = 0;
      std::size_t edges = 0;
      for (const auto& part : change_components(scg)) {
        EXPECT_TRUE(is_connected(part.graph));
        nodes += part.graph.node_count();
        edges += part.graph.edge_count();
      }
      EXPECT_EQ(nodes, scg.graph.node_count());
      EXPECT_EQ(edges, scg.graph.edge_count());
    }
  }
}

TEST(ScgTransactionsTest, IdsFollowPairAndComponent) {
  const ChangeGraph scg = simple_change_graph(
      difference_graph(testing::running_example_old(), testing::running_example_new()));
  const std::vector<ChangeGraph> scgs{scg, scg};
  const auto txs = scg_transactions(scgs);
  ASSERT_EQ(txs.size(), 2u);
  EXPECT_EQ(txs[0].id, "0_0");
  EXPECT_EQ(txs[1].id, "1_0");
}

}  // namespace
}  // namespace opminer
