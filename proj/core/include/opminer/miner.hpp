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

#ifndef OPMINER_MINER_HPP_
#define OPMINER_MINER_HPP_

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opminer/canonical.hpp"
#include "opminer/graph.hpp"
#include "opminer/transaction_io.hpp"

namespace opminer {

// Graph database for transaction-based mining. Every transaction is a
// connected graph; `sources` tags each one with the diff it came from.
struct TransactionDB {
  std::vector<LabeledGraph> transactions;
  std::vector<std::string> sources;

  std::size_t size() const { return transactions.size(); }
  bool empty() const { return transactions.empty(); }

  // Tags are taken from ids of the form "<source>_<k>", else the whole id.
  // Throws InputError when a transaction is empty or disconnected.
  static TransactionDB from_transactions(std::span<const Transaction> db);
  void add(LabeledGraph g, std::string source);
};

// A frequent connected subgraph. `graph` uses the canonical node order
// (node ids 0..n-1). `parents` are the direct supergraphs (one edge
// larger) and `children` the direct subgraphs (one edge smaller, isolated
// node dropped) among the patterns of the same result, as indices.
struct Pattern {
  LabeledGraph graph;
  CanonicalCode code;
  std::size_t support = 0;
  std::vector<std::size_t> parents;
  std::vector<std::size_t> children;

  std::size_t node_count() const { return graph.node_count(); }
  std::size_t edge_count() const { return graph.edge_count(); }
  std::size_t size() const { return node_count() + edge_count(); }
};

// Stops mining once more than `limit` frequent patterns with a node count
// in [min_nodes, max_nodes] have been found.
struct PatternCountLimit {
  std::size_t min_nodes = 0;
  std::size_t max_nodes = 0;
  std::size_t limit = 0;
};

struct MiningOptions {
  std::size_t threshold = 1;
  // Throw PreconditionError instead of returning an empty result when the
  // threshold exceeds the number of transactions.
  bool strict = false;
  std::optional<std::size_t> max_nodes;
  // Grow trees only (no edge between already matched nodes).
  bool trees_only = false;
  std::chrono::milliseconds time_budget{300'000};
  // Per pattern and transaction, occurrences beyond this count are not
  // stored; they are re-enumerated when the pattern is extended.
  std::size_t occurrence_cap = 50'000;
  std::optional<PatternCountLimit> count_limit;
  unsigned jobs = 1;
};

struct MiningResult {
  // Ordered by (edge count, node count, code).
  std::vector<Pattern> patterns;
  std::size_t threshold = 0;
  // The time budget ran out; `patterns` holds what was complete so far.
  bool partial = false;
  // count_limit was exceeded.
  bool limit_hit = false;
  double elapsed_ms = 0.0;
};

// Every connected subgraph (up to isomorphism) contained in at least
// `threshold` transactions, with supports and lattice links. Throws
// PreconditionError for threshold 0, or for threshold > |db| in strict mode.
MiningResult mine(const TransactionDB& db, const MiningOptions& options);

struct CalibrationSettings {
  std::size_t t_min = 2;
  std::optional<std::size_t> t_max;  // defaults to |db|
  std::size_t size_lo = 3;
  std::size_t size_hi = 8;
  std::size_t budget = 100;
  std::chrono::milliseconds time_budget{300'000};
};

// Smallest threshold in [t_min, t_max] for which the number of frequent
// subtrees with node count in [size_lo, size_hi] is at most `budget`;
// t_max when no threshold qualifies. Throws PreconditionError on an
// empty database.
std::size_t calibrate_threshold(const TransactionDB& db,
                                const CalibrationSettings& settings);

// Number of frequent subtrees with node count in [lo, hi] at `threshold`,
// capped at cap + 1.
std::size_t count_frequent_subtrees(const TransactionDB& db,
                                    std::size_t threshold, std::size_t lo,
                                    std::size_t hi, std::size_t cap);

// ceil(ratio * |db|), at least 1.
std::size_t relative_threshold(const TransactionDB& db, double ratio);

// Node count of the t-th largest transaction (1-based). Throws
// PreconditionError when t is outside [1, |db|].
std::size_t size_at_threshold(const TransactionDB& db, std::size_t threshold);

// Mean node count over transactions (0 for an empty database).
double average_nodes_per_transaction(const TransactionDB& db);

// Rebuilds `children` from `parents`.
void link_children(std::vector<Pattern>& patterns);

}  // namespace opminer

#endif  // OPMINER_MINER_HPP_
