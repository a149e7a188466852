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

// Brute-force reference implementations and generators shared by the
// tests. Nothing here reuses the library's canonical codes or search
// routines, so the oracles stay independent of the code under test.

#ifndef OPMINER_TESTS_SUPPORT_ORACLES_HPP_
#define OPMINER_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "opminer/graph.hpp"
#include "opminer/miner.hpp"
#include "opminer/model.hpp"
#include "opminer/ranker.hpp"
#include "opminer/rulegen.hpp"

namespace opminer::testing {

// Random graph with n nodes over `labels` node labels and `edge_labels`
// edge labels; roughly `density` of ordered pairs get an edge.
inline LabeledGraph random_graph(std::mt19937_64& rng, std::size_t n,
                                 std::size_t labels, std::size_t edge_labels,
                                 double density, bool connected = true) {
  LabeledGraph g;
  std::uniform_int_distribution<std::size_t> lab(0, labels - 1);
  std::uniform_int_distribution<std::size_t> elab(0, edge_labels - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_node(static_cast<NodeId>(i), std::string(1, static_cast<char>('A' + lab(rng))));
  }
  auto try_add = [&](std::size_t a, std::size_t b) {
    const std::string l(1, static_cast<char>('x' + elab(rng)));
    if (g.find_edge(a, b, l) == LabeledGraph::npos) g.add_edge_by_index(a, b, l);
  };
  if (connected) {
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> prev(0, i - 1);
      const std::size_t j = prev(rng);
      if (rng() % 2) {
        try_add(i, j);
      } else {
        try_add(j, i);
      }
    }
  }
  std::bernoulli_distribution coin(density);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && coin(rng)) try_add(a, b);
    }
  }
  return g;
}

// Same graph with node ids permuted and nodes/edges inserted in a random
// order.
inline LabeledGraph shuffled_copy(const LabeledGraph& g, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> node_order = perm;
  std::shuffle(node_order.begin(), node_order.end(), rng);
  LabeledGraph out;
  for (std::size_t i : node_order) {
    out.add_node(static_cast<NodeId>(100 + perm[i]), g.node(i).label);
  }
  std::vector<std::size_t> edge_order(g.edge_count());
  std::iota(edge_order.begin(), edge_order.end(), 0);
  std::shuffle(edge_order.begin(), edge_order.end(), rng);
  for (std::size_t e : edge_order) {
    const Edge& edge = g.edge(e);
    out.add_edge(static_cast<NodeId>(100 + perm[edge.src]),
                 static_cast<NodeId>(100 + perm[edge.dst]), edge.label);
  }
  return out;
}

// Isomorphism by trying every node permutation.
inline bool brute_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  std::multiset<std::string> la;
  std::multiset<std::string> lb;
  for (const auto& n : a.nodes()) la.insert(n.label);
  for (const auto& n : b.nodes()) lb.insert(n.label);
  if (la != lb) return false;
  std::set<std::tuple<std::size_t, std::size_t, std::string>> eb;
  for (const auto& e : b.edges()) eb.emplace(e.src, e.dst, e.label);
  std::vector<std::size_t> perm(a.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i) {
      ok = a.node(i).label == b.node(perm[i]).label;
    }
    for (std::size_t e = 0; e < a.edge_count() && ok; ++e) {
      const Edge& edge = a.edge(e);
      ok = eb.contains({perm[edge.src], perm[edge.dst], edge.label});
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Non-induced subgraph isomorphism by trying every injective node map.
inline bool brute_subgraph(const LabeledGraph& needle, const LabeledGraph& hay) {
  const std::size_t n = needle.node_count();
  if (n > hay.node_count() || needle.edge_count() > hay.edge_count()) return false;
  std::set<std::tuple<std::size_t, std::size_t, std::string>> eh;
  for (const auto& e : hay.edges()) eh.emplace(e.src, e.dst, e.label);
  std::vector<std::size_t> map(n);
  std::vector<bool> used(hay.node_count(), false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      for (const auto& e : needle.edges()) {
        if (!eh.contains({map[e.src], map[e.dst], e.label})) return false;
      }
      return true;
    }
    for (std::size_t h = 0; h < hay.node_count(); ++h) {
      if (used[h] || hay.node(h).label != needle.node(i).label) continue;
      used[h] = true;
      map[i] = h;
      if (self(self, i + 1)) return true;
      used[h] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

// Connected components by union-find, as sorted sets of dense indices.
inline std::vector<std::vector<std::size_t>> union_find_components(
    const LabeledGraph& g) {
  std::vector<std::size_t> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) parent[find(e.src)] = find(e.dst);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.node_count(); ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

// Every connected subgraph of `g` (single nodes plus connected edge
// subsets with their endpoints), by enumerating all edge subsets.
inline std::vector<LabeledGraph> all_connected_subgraphs(const LabeledGraph& g) {
  std::vector<LabeledGraph> out;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    LabeledGraph single;
    single.add_node(0, g.node(i).label);
    out.push_back(std::move(single));
  }
  const std::size_t m = g.edge_count();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::map<std::size_t, NodeId> ids;
    for (std::size_t e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      ids.emplace(g.edge(e).src, 0);
      ids.emplace(g.edge(e).dst, 0);
    }
    LabeledGraph sub;
    NodeId next = 0;
    for (auto& [idx, id] : ids) {
      id = next++;
      sub.add_node(id, g.node(idx).label);
    }
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1) {
        sub.add_edge(ids.at(g.edge(e).src), ids.at(g.edge(e).dst), g.edge(e).label);
      }
    }
    if (is_connected(sub)) out.push_back(std::move(sub));
  }
  return out;
}

struct OracleBucket {
  LabeledGraph graph;
  std::set<std::size_t> transactions;
};

// Isomorphism invariant used only to narrow bucket lookups: node labels,
// labeled edge types and per-node (label, in, out) degrees, all sorted.
inline std::string invariant_key(const LabeledGraph& g) {
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    nodes.push_back(g.node(i).label + "/" + std::to_string(g.in_edges(i).size()) + "/" +
                    std::to_string(g.out_edges(i).size()));
  }
  std::vector<std::string> edges;
  for (const auto& e : g.edges()) {
    edges.push_back(g.node(e.src).label + ">" + e.label + ">" + g.node(e.dst).label);
  }
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end());
  std::string key;
  for (const auto& n : nodes) key += n + ";";
  key += "|";
  for (const auto& e : edges) key += e + ";";
  return key;
}

// Enumerate-and-bucket: distinct connected subgraphs (up to brute-force
// isomorphism) of every transaction with the transactions containing them.
inline std::vector<OracleBucket> bucket_subgraphs(const TransactionDB& db) {
  std::vector<OracleBucket> buckets;
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t t = 0; t < db.size(); ++t) {
    for (auto& sub : all_connected_subgraphs(db.transactions[t])) {
      auto& group = by_key[invariant_key(sub)];
      bool placed = false;
      for (std::size_t b : group) {
        if (brute_isomorphic(buckets[b].graph, sub)) {
          buckets[b].transactions.insert(t);
          placed = true;
          break;
        }
      }
      if (!placed) {
        group.push_back(buckets.size());
        buckets.push_back({std::move(sub), {t}});
      }
    }
  }
  return buckets;
}

// Quadratic SG- scan: pattern i is dropped when some other pattern is a
// strict supergraph of it (brute-force subgraph test) with equal support
// and at least equal compression.
inline std::vector<std::size_t> quadratic_prune(const std::vector<Pattern>& ps) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < ps.size() && !dominated; ++j) {
      if (i == j || ps[j].size() <= ps[i].size()) continue;
      if (ps[j].support != ps[i].support) continue;
      if (compression(ps[j]) < compression(ps[i])) continue;
      dominated = brute_subgraph(ps[i].graph, ps[j].graph);
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

// Random transaction database as used by the miner oracle checks.
inline TransactionDB random_db(std::mt19937_64& rng, std::size_t max_tx,
                               std::size_t max_nodes, std::size_t labels) {
  std::uniform_int_distribution<std::size_t> tx_count(1, max_tx);
  std::uniform_int_distribution<std::size_t> node_count(1, max_nodes);
  TransactionDB db;
  const std::size_t n = tx_count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    db.add(random_graph(rng, node_count(rng), labels, 2, 0.15),
           "t" + std::to_string(i));
  }
  return db;
}

// Random creation-only rule over `mm`: connected, every context node
// touched by a created edge, every created edge touching a created node,
// at most one containment edge into each created node and none into
// context nodes.
inline EditRule random_creation_rule(std::mt19937_64& rng, const MetaModel& mm,
                                     const std::string& name) {
  const auto& types = mm.node_types();
  const auto& edge_types = mm.edge_types();
  for (;;) {
    EditRule r;
    r.name = name;
    std::uniform_int_distribution<std::size_t> n_created(1, 4);
    std::uniform_int_distribution<std::size_t> n_context(0, 3);
    std::uniform_int_distribution<std::size_t> pick_type(0, types.size() - 1);
    const std::size_t created = n_created(rng);
    const std::size_t context = n_context(rng);
    std::vector<std::string> ids;
    std::vector<std::string> node_type;
    std::vector<bool> is_created;
    for (std::size_t i = 0; i < context; ++i) {
      ids.push_back("c" + std::to_string(i));
      node_type.push_back(types[pick_type(rng)]);
      is_created.push_back(false);
      r.context_nodes.push_back({ids.back(), node_type.back()});
    }
    for (std::size_t i = 0; i < created; ++i) {
      ids.push_back("n" + std::to_string(i));
      node_type.push_back(types[pick_type(rng)]);
      is_created.push_back(true);
      r.created_nodes.push_back({ids.back(), node_type.back()});
    }
    std::vector<bool> contained(ids.size(), false);
    std::set<std::tuple<std::size_t, std::size_t, std::string>> used;
    std::vector<std::tuple<std::size_t, std::size_t, const EdgeType*>> options;
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = 0; b < ids.size(); ++b) {
        if (a == b || (!is_created[a] && !is_created[b])) continue;
        for (const auto& et : edge_types) {
          if (et.src == node_type[a] && et.tgt == node_type[b]) {
            if (et.containment && !is_created[b]) continue;
            options.emplace_back(a, b, &et);
          }
        }
      }
    }
    if (options.empty()) continue;
    std::shuffle(options.begin(), options.end(), rng);
    std::uniform_int_distribution<std::size_t> n_edges(1, ids.size() + 2);
    const std::size_t want = n_edges(rng);
    for (const auto& [a, b, et] : options) {
      if (r.created_edges.size() >= want) break;
      if (et->containment && contained[b]) continue;
      if (!used.emplace(a, b, et->name).second) continue;
      if (et->containment) contained[b] = true;
      r.created_edges.push_back({ids[a], ids[b], et->name});
    }
    // Containment cycles among created nodes are rejected by conformance.
    LabeledGraph shape;
    for (std::size_t i = 0; i < ids.size(); ++i) shape.add_node(static_cast<NodeId>(i), node_type[i]);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
    LabeledGraph containment = shape;
    for (const auto& e : r.created_edges) {
      shape.add_edge_by_index(index[e.src], index[e.tgt], e.type);
      if (mm.find_edge_type(e.type)->containment) {
        containment.add_edge_by_index(index[e.src], index[e.tgt], e.type);
      }
    }
    if (!is_connected(shape)) continue;
    bool cyclic = false;
    for (std::size_t start = 0; start < ids.size() && !cyclic; ++start) {
      std::size_t cur = start;
      for (std::size_t step = 0; step <= ids.size(); ++step) {
        if (containment.in_edges(cur).empty()) break;
        cur = containment.edge(containment.in_edges(cur)[0]).src;
        if (cur == start) cyclic = true;
      }
    }
    if (cyclic) continue;
    return r;
  }
}

}  // namespace opminer::testing

#endif  // OPMINER_TESTS_SUPPORT_ORACLES_HPP_
