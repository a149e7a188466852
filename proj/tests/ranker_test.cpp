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

#include <gtest/gtest.h>

#include <random>

#include "opminer/error.hpp"
#include "support/oracles.hpp"

namespace opminer {
namespace {

Pattern make_pattern(const std::string& code, std::size_t support) {
  Pattern p;
  p.code = CanonicalCode::parse(code);
  p.graph = p.code.to_graph();
  p.support = support;
  return p;
}

TEST(CompressionTest, Formula) {
  EXPECT_EQ(compression(15, 7, 7), 196);
  EXPECT_EQ(compression(1, 7, 7), 0);
  EXPECT_EQ(compression(2, 1, 0), 1);
  EXPECT_THROW(compression(0, 1, 0), PreconditionError);
  const Pattern p = make_pattern("(0,1,A,>,x,B)", 4);
  EXPECT_EQ(compression(p), 9);
}

TEST(RankModeTest, Names) {
  EXPECT_EQ(parse_rank_mode("compression"), RankMode::kCompression);
  EXPECT_EQ(parse_rank_mode("frequency"), RankMode::kFrequency);
  EXPECT_EQ(rank_mode_name(RankMode::kFrequency), "frequency");
  EXPECT_THROW(parse_rank_mode("size"), InputError);
}

TEST(RankTest, OrderAndTieBreaks) {
  std::vector<Pattern> ps;
  ps.push_back(make_pattern("(0,A)", 10));                        // c=9
  ps.push_back(make_pattern("(0,1,A,>,x,B)", 4));                 // c=9, larger
  ps.push_back(make_pattern("(0,1,A,>,y,B)", 4));                 // c=9, same size
  ps.push_back(make_pattern("(0,1,A,>,x,B)(1,2,B,>,x,C)", 2));    // c=5
  const std::vector<std::size_t> all{0, 1, 2, 3};
  const RankedList c = rank(ps, all, RankMode::kCompression);
  ASSERT_EQ(c.entries.size(), 4u);
  EXPECT_EQ(c.entries[0].source_index, 1u);
  EXPECT_EQ(c.entries[1].source_index, 2u);
  EXPECT_EQ(c.entries[2].source_index, 0u);
  EXPECT_EQ(c.entries[3].source_index, 3u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(c.entries[i].rank, i + 1);
  const RankedList f = rank(ps, all, RankMode::kFrequency);
  EXPECT_EQ(f.entries[0].source_index, 0u);
  EXPECT_EQ(f.entries[1].source_index, 1u);
  EXPECT_EQ(f.entries[3].source_index, 3u);
  EXPECT_EQ(f.entries[0].compression, 9);
}

TEST(PruneTest, EqualSupportSupergraphDominates) {
  std::vector<Pattern> ps;
  ps.push_back(make_pattern("(0,A)", 3));
  ps.push_back(make_pattern("(0,B)", 5));
  ps.push_back(make_pattern("(0,1,A,>,x,B)", 3));
  ps[0].parents = {2};
  ps[1].parents = {2};
  link_children(ps);
  EXPECT_EQ(prune(ps), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(prune_by_isomorphism(ps), (std::vector<std::size_t>{1, 2}));
}

std::vector<Pattern> select(const std::vector<Pattern>& ps,
                            const std::vector<std::size_t>& keep) {
  std::vector<Pattern> out;
  for (std::size_t i : keep) out.push_back(ps[i]);
  return out;
}

// Lattice pruning agrees with the quadratic scan on mined lattices, and is
// idempotent (after re-linking the survivors by subgraph isomorphism).
TEST(PruneTest, MatchesQuadraticScanAndIsIdempotent) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const TransactionDB db = testing::random_db(rng, 7, 5, 2 + trial % 2);
    MiningOptions options;
    options.threshold = 1 + trial % 2;
    const MiningResult r = mine(db, options);
    const auto expected = testing::quadratic_prune(r.patterns);
    EXPECT_EQ(prune(r.patterns), expected) << "trial " << trial;
    EXPECT_EQ(prune_by_isomorphism(r.patterns), expected);
    const std::vector<Pattern> kept = select(r.patterns, expected);
    const auto again = prune_by_isomorphism(kept);
    EXPECT_EQ(again.size(), kept.size());
  }
}

TEST(RecommendTest, ModesRankTheSameSurvivors) {
  std::mt19937_64 rng(17);
  const TransactionDB db = testing::random_db(rng, 8, 6, 2);
  MiningOptions options;
  options.threshold = 2;
  const MiningResult r = mine(db, options);
  const RankedList c = recommend(r.patterns, RankMode::kCompression);
  const RankedList f = recommend(r.patterns, RankMode::kFrequency);
  ASSERT_EQ(c.entries.size(), f.entries.size());
  EXPECT_EQ(c.entries.size(), prune(r.patterns).size());
  for (std::size_t i = 1; i < c.entries.size(); ++i) {
    EXPECT_GE(c.entries[i - 1].compression, c.entries[i].compression);
    EXPECT_GE(f.entries[i - 1].support, f.entries[i].support);
  }
}

}  // namespace
}  // namespace opminer
