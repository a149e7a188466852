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

#include "opminer/miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "opminer/error.hpp"

namespace opminer {

void TransactionDB::add(LabeledGraph g, std::string source) {
  if (!is_connected(g)) {
    throw InputError("transaction " + std::to_string(transactions.size()) +
                     " is empty or not connected");
  }
  transactions.push_back(std::move(g));
  sources.push_back(std::move(source));
}

TransactionDB TransactionDB::from_transactions(
    std::span<const Transaction> db) {
  TransactionDB out;
  for (const auto& t : db) {
    const auto cut = t.id.rfind('_');
    std::string source = cut == std::string::npos ? t.id : t.id.substr(0, cut);
    if (!is_connected(t.graph)) {
      throw InputError("transaction " + t.id + " is empty or not connected");
    }
    out.transactions.push_back(t.graph);
    out.sources.push_back(std::move(source));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class LabelTable {
 public:
  std::uint32_t intern(const std::string& label) {
    auto [it, inserted] =
        ids_.emplace(label, static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(label);
    return it->second;
  }
  std::uint32_t id(const std::string& label) const { return ids_.at(label); }
  const std::string& name(std::uint32_t id) const { return names_[id]; }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
};

struct Incidence {
  std::uint32_t edge;
  std::uint32_t other;
  std::uint32_t label;
  bool outgoing;  // the edge leaves the node owning this list
};

struct CompactTransaction {
  std::vector<std::uint32_t> node_label;
  std::vector<std::vector<Incidence>> adj;
};

CompactTransaction compact(const LabeledGraph& g, LabelTable& labels) {
  CompactTransaction t;
  t.node_label.resize(g.node_count());
  t.adj.resize(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    t.node_label[i] = labels.intern(g.node(i).label);
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const std::uint32_t label = labels.intern(edge.label);
    const auto id = static_cast<std::uint32_t>(e);
    t.adj[edge.src].push_back(
        Incidence{id, static_cast<std::uint32_t>(edge.dst), label, true});
    if (edge.src != edge.dst) {
      t.adj[edge.dst].push_back(
          Incidence{id, static_cast<std::uint32_t>(edge.src), label, false});
    }
  }
  return t;
}

struct Occurrence {
  std::vector<std::uint32_t> nodes;  // pattern position -> transaction node
  std::vector<std::uint32_t> edges;  // sorted transaction edge ids
};

struct EdgeKeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (std::uint32_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct TxOccurrences {
  std::uint32_t tid = 0;
  std::vector<Occurrence> occurrences;
  // Occurrences were dropped past the cap; re-enumerate when extending.
  bool overflow = false;
};

struct LevelPattern {
  LabeledGraph graph;  // canonical order
  CanonicalCode code;
  std::vector<TxOccurrences> per_tx;  // sorted by tid
  std::vector<std::size_t> generators;  // indices in the previous level
};

// Extension descriptor relative to a parent pattern's positions.
struct Extension {
  std::uint8_t closing;  // 1: edge between existing positions u and v
  std::uint32_t u;
  std::uint32_t v;
  std::uint32_t edge_label;
  std::uint8_t outgoing;  // edge leaves u
  std::uint32_t node_label;

  friend auto operator<=>(const Extension&, const Extension&) = default;
};

struct ChildAccumulator {
  LabeledGraph graph;
  CanonicalCode code;
  std::vector<std::uint32_t> tid_order;
  std::unordered_map<std::uint32_t, std::size_t> slot_of_tid;
  std::vector<TxOccurrences> per_tx;
  std::vector<std::unordered_set<std::vector<std::uint32_t>, EdgeKeyHash>> keys;
  std::vector<std::size_t> generators;
};

class Registry {
 public:
  explicit Registry(std::size_t cap) : cap_(cap) {}

  std::size_t find_or_add(CanonicalForm&& form, const LabeledGraph& local) {
    auto it = index_.find(form.code);
    if (it != index_.end()) return it->second;
    ChildAccumulator acc;
    acc.graph = form.code.to_graph();
    (void)local;
    acc.code = form.code;
    const std::size_t id = children_.size();
    index_.emplace(std::move(form.code), id);
    children_.push_back(std::move(acc));
    return id;
  }

  void add_occurrence(std::size_t child, std::uint32_t tid, Occurrence&& occ) {
    ChildAccumulator& acc = children_[child];
    auto [it, inserted] = acc.slot_of_tid.emplace(tid, acc.per_tx.size());
    if (inserted) {
      acc.per_tx.push_back(TxOccurrences{tid, {}, false});
      acc.keys.emplace_back();
    }
    TxOccurrences& slot = acc.per_tx[it->second];
    if (slot.overflow) return;
    auto& keys = acc.keys[it->second];
    if (!keys.insert(occ.edges).second) return;
    if (slot.occurrences.size() >= cap_) {
      slot.overflow = true;
      slot.occurrences.clear();
      slot.occurrences.shrink_to_fit();
      keys.clear();
      return;
    }
    slot.occurrences.push_back(std::move(occ));
  }

  void add_generator(std::size_t child, std::size_t parent) {
    auto& g = children_[child].generators;
    if (g.empty() || g.back() != parent) g.push_back(parent);
  }

  std::vector<ChildAccumulator>& children() { return children_; }

  // Appends `other`'s children, merging ones with equal codes.
  void merge(Registry&& other) {
    for (auto& acc : other.children_) {
      auto it = index_.find(acc.code);
      if (it == index_.end()) {
        index_.emplace(acc.code, children_.size());
        children_.push_back(std::move(acc));
        continue;
      }
      ChildAccumulator& mine = children_[it->second];
      for (std::size_t s = 0; s < acc.per_tx.size(); ++s) {
        TxOccurrences& theirs = acc.per_tx[s];
        auto [slot_it, inserted] =
            mine.slot_of_tid.emplace(theirs.tid, mine.per_tx.size());
        if (inserted) {
          mine.per_tx.push_back(std::move(theirs));
          mine.keys.push_back(std::move(acc.keys[s]));
          continue;
        }
        TxOccurrences& ours = mine.per_tx[slot_it->second];
        if (ours.overflow) continue;
        if (theirs.overflow) {
          ours.overflow = true;
          ours.occurrences.clear();
          mine.keys[slot_it->second].clear();
          continue;
        }
        for (auto& occ : theirs.occurrences) {
          if (ours.overflow) break;
          if (!mine.keys[slot_it->second].insert(occ.edges).second) continue;
          if (ours.occurrences.size() >= cap_) {
            ours.overflow = true;
            ours.occurrences.clear();
            mine.keys[slot_it->second].clear();
            break;
          }
          ours.occurrences.push_back(std::move(occ));
        }
      }
      std::vector<std::size_t> gens = mine.generators;
      gens.insert(gens.end(), acc.generators.begin(), acc.generators.end());
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      mine.generators = std::move(gens);
    }
  }

 private:
  std::size_t cap_;
  std::unordered_map<CanonicalCode, std::size_t, CanonicalCodeHash> index_;
  std::vector<ChildAccumulator> children_;
};

// All occurrences (one mapping per distinct edge set) of a pattern in a
// transaction. Relies on every position > 0 being adjacent to an earlier
// position, which canonical order guarantees.
std::vector<Occurrence> enumerate_occurrences(const LabeledGraph& pattern,
                                              const CompactTransaction& t,
                                              const LabelTable& labels) {
  const std::size_t k = pattern.node_count();
  std::vector<std::uint32_t> plabel(k);
  for (std::size_t i = 0; i < k; ++i) plabel[i] = labels.id(pattern.node(i).label);
  struct Link {
    std::size_t other;
    bool outgoing;
    std::uint32_t label;
  };
  std::vector<std::vector<Link>> links(k);
  for (const auto& edge : pattern.edges()) {
    const std::size_t later = std::max(edge.src, edge.dst);
    const std::uint32_t label = labels.id(edge.label);
    if (edge.src == later) {
      links[later].push_back(Link{edge.dst, true, label});
    } else {
      links[later].push_back(Link{edge.src, false, label});
    }
  }
  auto find_edge = [&t](std::uint32_t src, std::uint32_t dst,
                        std::uint32_t label) -> std::int64_t {
    for (const auto& inc : t.adj[src]) {
      if (inc.outgoing && inc.other == dst && inc.label == label) {
        return inc.edge;
      }
    }
    return -1;
  };

  std::vector<Occurrence> out;
  std::unordered_set<std::vector<std::uint32_t>, EdgeKeyHash> seen;
  std::vector<std::uint32_t> image(k);
  std::vector<std::uint8_t> used(t.node_label.size(), 0);
  std::vector<std::uint32_t> edges;

  auto search = [&](auto&& self, std::size_t pos) -> void {
    if (pos == k) {
      std::vector<std::uint32_t> sorted = edges;
      std::sort(sorted.begin(), sorted.end());
      if (seen.insert(sorted).second) {
        out.push_back(Occurrence{image, std::move(sorted)});
      }
      return;
    }
    auto attempt = [&](std::uint32_t x) {
      if (used[x] || t.node_label[x] != plabel[pos]) return;
      const std::size_t mark = edges.size();
      for (const Link& link : links[pos]) {
        const std::uint32_t other =
            link.other == pos ? x : image[link.other];
        const std::int64_t e = link.outgoing ? find_edge(x, other, link.label)
                                             : find_edge(other, x, link.label);
        if (e < 0) {
          edges.resize(mark);
          return;
        }
        edges.push_back(static_cast<std::uint32_t>(e));
      }
      used[x] = 1;
      image[pos] = x;
      self(self, pos + 1);
      used[x] = 0;
      edges.resize(mark);
    };
    if (pos == 0) {
      for (std::uint32_t x = 0; x < t.node_label.size(); ++x) attempt(x);
      return;
    }
    const Link* anchor = nullptr;
    for (const Link& link : links[pos]) {
      if (link.other != pos) {
        anchor = &link;
        break;
      }
    }
    const std::uint32_t base = image[anchor->other];
    for (const auto& inc : t.adj[base]) {
      // The anchor edge runs pos -> other when anchor->outgoing.
      if (inc.label != anchor->label || inc.outgoing == anchor->outgoing) {
        continue;
      }
      attempt(inc.other);
    }
  };
  search(search, 0);
  return out;
}

class Miner {
 public:
  Miner(const TransactionDB& db, const MiningOptions& options)
      : db_(db), options_(options), start_(Clock::now()) {
    for (const auto& g : db.transactions) {
      transactions_.push_back(compact(g, labels_));
    }
  }

  MiningResult run() {
    MiningResult result;
    result.threshold = options_.threshold;
    std::vector<LevelPattern> level = single_node_level();
    std::size_t level_offset = 0;
    append(result, level, 0);
    while (!level.empty()) {
      if (limit_exceeded(result)) {
        result.limit_hit = true;
        break;
      }
      std::vector<LevelPattern> next;
      if (!grow(level, next)) {
        result.partial = true;
        break;
      }
      if (next.empty()) break;
      const std::size_t next_offset = result.patterns.size();
      append(result, next, level_offset);
      level_offset = next_offset;
      level = std::move(next);
    }
    if (!result.limit_hit && limit_exceeded(result)) result.limit_hit = true;
    for (auto& p : result.patterns) {
      std::sort(p.parents.begin(), p.parents.end());
      std::sort(p.children.begin(), p.children.end());
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return result;
  }

 private:
  bool out_of_time() const {
    return Clock::now() - start_ > options_.time_budget;
  }

  bool limit_exceeded(const MiningResult& result) const {
    if (!options_.count_limit) return false;
    const auto& lim = *options_.count_limit;
    std::size_t count = 0;
    for (const auto& p : result.patterns) {
      if (p.node_count() >= lim.min_nodes && p.node_count() <= lim.max_nodes) {
        ++count;
      }
    }
    return count > lim.limit;
  }

  std::vector<LevelPattern> single_node_level() {
    std::map<std::string, LevelPattern> by_label;
    for (std::uint32_t tid = 0; tid < transactions_.size(); ++tid) {
      const auto& t = transactions_[tid];
      for (std::uint32_t x = 0; x < t.node_label.size(); ++x) {
        const std::string& name = labels_.name(t.node_label[x]);
        LevelPattern& p = by_label[name];
        if (p.per_tx.empty() || p.per_tx.back().tid != tid) {
          p.per_tx.push_back(TxOccurrences{tid, {}, false});
        }
        p.per_tx.back().occurrences.push_back(Occurrence{{x}, {}});
      }
    }
    std::vector<LevelPattern> level;
    for (auto& [name, p] : by_label) {
      if (p.per_tx.size() < options_.threshold) continue;
      p.graph.add_node(0, name);
      p.code = CanonicalCode(name, {});
      level.push_back(std::move(p));
    }
    return level;
  }

  void append(MiningResult& result, std::vector<LevelPattern>& level,
              std::size_t previous_offset) {
    const std::size_t offset = result.patterns.size();
    for (std::size_t i = 0; i < level.size(); ++i) {
      Pattern p;
      p.graph = level[i].graph;
      p.code = level[i].code;
      p.support = level[i].per_tx.size();
      for (std::size_t g : level[i].generators) {
        const std::size_t sub = previous_offset + g;
        p.children.push_back(sub);
        result.patterns[sub].parents.push_back(offset + i);
      }
      result.patterns.push_back(std::move(p));
    }
  }

  // Extends every pattern of `level` by one edge. Returns false when the
  // time budget ran out.
  bool grow(const std::vector<LevelPattern>& level,
            std::vector<LevelPattern>& next) {
    if (out_of_time()) return false;
    const unsigned jobs =
        std::max(1u, std::min<unsigned>(options_.jobs,
                                         static_cast<unsigned>(level.size())));
    std::vector<Registry> registries(jobs, Registry(options_.occurrence_cap));
    std::vector<std::uint8_t> finished(jobs, 1);
    auto work = [&](unsigned worker) {
      const std::size_t begin = level.size() * worker / jobs;
      const std::size_t end = level.size() * (worker + 1) / jobs;
      for (std::size_t i = begin; i < end; ++i) {
        if (!extend(level[i], i, registries[worker])) {
          finished[worker] = 0;
          return;
        }
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
      for (auto& th : threads) th.join();
    }
    for (auto f : finished) {
      if (!f) return false;
    }
    Registry& merged = registries[0];
    for (unsigned w = 1; w < jobs; ++w) merged.merge(std::move(registries[w]));

    for (auto& acc : merged.children()) {
      if (acc.per_tx.size() < options_.threshold) continue;
      LevelPattern p;
      p.graph = std::move(acc.graph);
      p.code = std::move(acc.code);
      p.per_tx = std::move(acc.per_tx);
      std::sort(p.per_tx.begin(), p.per_tx.end(),
                [](const auto& a, const auto& b) { return a.tid < b.tid; });
      p.generators = std::move(acc.generators);
      std::sort(p.generators.begin(), p.generators.end());
      p.generators.erase(std::unique(p.generators.begin(), p.generators.end()),
                         p.generators.end());
      next.push_back(std::move(p));
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
      return std::make_tuple(a.graph.node_count(), std::cref(a.code)) <
             std::make_tuple(b.graph.node_count(), std::cref(b.code));
    });
    return true;
  }

  bool extend(const LevelPattern& parent, std::size_t parent_index,
              Registry& registry) {
    struct Slot {
      std::size_t child;
      std::vector<std::size_t> order;
      bool adds_node;
    };
    std::map<Extension, Slot> cache;
    const auto k = static_cast<std::uint32_t>(parent.graph.node_count());
    const bool may_add_node = !options_.max_nodes || k + 1 <= *options_.max_nodes;
    std::size_t ticks = 0;

    for (const auto& tx : parent.per_tx) {
      const CompactTransaction& t = transactions_[tx.tid];
      std::vector<Occurrence> regenerated;
      if (tx.overflow) regenerated = enumerate_occurrences(parent.graph, t, labels_);
      const auto& occurrences = tx.overflow ? regenerated : tx.occurrences;
      for (const Occurrence& occ : occurrences) {
        if ((++ticks & 255u) == 0 && out_of_time()) return false;
        for (std::uint32_t u = 0; u < k; ++u) {
          const std::uint32_t x = occ.nodes[u];
          for (const Incidence& inc : t.adj[x]) {
            if (std::binary_search(occ.edges.begin(), occ.edges.end(),
                                   inc.edge)) {
              continue;
            }
            Extension ext{};
            const auto hit = std::find(occ.nodes.begin(), occ.nodes.end(),
                                       inc.other);
            if (hit != occ.nodes.end()) {
              if (options_.trees_only || !inc.outgoing) continue;
              ext.closing = 1;
              ext.u = u;
              ext.v = static_cast<std::uint32_t>(hit - occ.nodes.begin());
              ext.edge_label = inc.label;
              ext.outgoing = 1;
            } else {
              if (!may_add_node) continue;
              ext.closing = 0;
              ext.u = u;
              ext.edge_label = inc.label;
              ext.outgoing = inc.outgoing ? 1 : 0;
              ext.node_label = t.node_label[inc.other];
            }
            auto it = cache.find(ext);
            if (it == cache.end()) {
              LabeledGraph local = parent.graph;
              const std::string& elabel = labels_.name(ext.edge_label);
              if (ext.closing) {
                local.add_edge_by_index(ext.u, ext.v, elabel);
              } else {
                local.add_node(k, labels_.name(ext.node_label));
                if (ext.outgoing) {
                  local.add_edge_by_index(ext.u, k, elabel);
                } else {
                  local.add_edge_by_index(k, ext.u, elabel);
                }
              }
              CanonicalForm form = canonical_form(local);
              Slot slot{0, form.order, !ext.closing};
              slot.child = registry.find_or_add(std::move(form), local);
              it = cache.emplace(ext, std::move(slot)).first;
              registry.add_generator(it->second.child, parent_index);
            }
            const Slot& slot = it->second;
            Occurrence child;
            child.nodes.resize(slot.order.size());
            for (std::size_t pos = 0; pos < slot.order.size(); ++pos) {
              const std::size_t local_index = slot.order[pos];
              child.nodes[pos] = local_index < k ? occ.nodes[local_index]
                                                 : inc.other;
            }
            child.edges = occ.edges;
            child.edges.insert(std::upper_bound(child.edges.begin(),
                                                child.edges.end(), inc.edge),
                               inc.edge);
            registry.add_occurrence(slot.child, tx.tid, std::move(child));
          }
        }
      }
    }
    return true;
  }

  const TransactionDB& db_;
  const MiningOptions& options_;
  Clock::time_point start_;
  LabelTable labels_;
  std::vector<CompactTransaction> transactions_;
};

}  // namespace

MiningResult mine(const TransactionDB& db, const MiningOptions& options) {
  if (options.threshold == 0) {
    throw PreconditionError("mining threshold must be at least 1");
  }
  if (options.threshold > db.size()) {
    if (options.strict) {
      throw PreconditionError(
          "threshold " + std::to_string(options.threshold) +
          " exceeds the number of transactions (" + std::to_string(db.size()) +
          ")");
    }
    MiningResult empty;
    empty.threshold = options.threshold;
    return empty;
  }
  return Miner(db, options).run();
}

std::size_t count_frequent_subtrees(const TransactionDB& db,
                                    std::size_t threshold, std::size_t lo,
                                    std::size_t hi, std::size_t cap) {
  MiningOptions options;
  options.threshold = threshold;
  options.trees_only = true;
  options.max_nodes = hi;
  options.count_limit = PatternCountLimit{lo, hi, cap};
  const MiningResult result = mine(db, options);
  std::size_t count = 0;
  for (const auto& p : result.patterns) {
    if (p.node_count() >= lo && p.node_count() <= hi) ++count;
  }
  return std::min(count, cap + 1);
}

std::size_t calibrate_threshold(const TransactionDB& db,
                                const CalibrationSettings& settings) {
  if (db.empty()) {
    throw PreconditionError("threshold calibration needs a non-empty database");
  }
  const std::size_t t_min = std::max<std::size_t>(1, settings.t_min);
  const std::size_t t_max =
      std::max(t_min, settings.t_max.value_or(db.size()));
  auto qualifies = [&](std::size_t t) {
    MiningOptions options;
    options.threshold = t;
    options.trees_only = true;
    options.max_nodes = settings.size_hi;
    options.time_budget = settings.time_budget;
    options.count_limit =
        PatternCountLimit{settings.size_lo, settings.size_hi, settings.budget};
    const MiningResult result = mine(db, options);
    if (result.partial || result.limit_hit) return false;
    std::size_t count = 0;
    for (const auto& p : result.patterns) {
      if (p.node_count() >= settings.size_lo &&
          p.node_count() <= settings.size_hi) {
        ++count;
      }
    }
    return count <= settings.budget;
  };
  if (!qualifies(t_max)) return t_max;
  std::size_t lo = t_min;
  std::size_t hi = t_max;  // qualifies(hi) holds
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (qualifies(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

std::size_t relative_threshold(const TransactionDB& db, double ratio) {
  const double raw = std::ceil(ratio * static_cast<double>(db.size()) - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(raw, 0.0)));
}

std::size_t size_at_threshold(const TransactionDB& db, std::size_t threshold) {
  if (threshold < 1 || threshold > db.size()) {
    throw PreconditionError("size_at_threshold: threshold " +
                            std::to_string(threshold) + " outside [1, " +
                            std::to_string(db.size()) + "]");
  }
  std::vector<std::size_t> sizes;
  for (const auto& g : db.transactions) sizes.push_back(g.node_count());
  std::nth_element(sizes.begin(), sizes.begin() + (threshold - 1), sizes.end(),
                   std::greater<>());
  return sizes[threshold - 1];
}

double average_nodes_per_transaction(const TransactionDB& db) {
  if (db.empty()) return 0.0;
  double total = 0.0;
  for (const auto& g : db.transactions) total += static_cast<double>(g.node_count());
  return total / static_cast<double>(db.size());
}

void link_children(std::vector<Pattern>& patterns) {
  for (auto& p : patterns) p.children.clear();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    for (std::size_t parent : patterns[i].parents) {
      patterns[parent].children.push_back(i);
    }
  }
  for (auto& p : patterns) std::sort(p.children.begin(), p.children.end());
}

}  // namespace opminer
