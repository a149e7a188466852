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

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "opminer/error.hpp"

namespace opminer {

std::size_t CanonicalCode::node_count() const {
  if (entries_.empty()) return lone_label_.empty() ? 0 : 1;
  std::uint32_t top = 0;
  for (const auto& e : entries_) top = std::max({top, e.from, e.to});
  return static_cast<std::size_t>(top) + 1;
}

std::string CanonicalCode::str() const {
  if (entries_.empty()) return "(0," + lone_label_ + ")";
  std::string out;
  for (const auto& e : entries_) {
    out += '(';
    out += std::to_string(e.from);
    out += ',';
    out += std::to_string(e.to);
    out += ',';
    out += e.from_label;
    out += ',';
    out += e.reversed ? '<' : '>';
    out += ',';
    out += e.edge_label;
    out += ',';
    out += e.to_label;
    out += ')';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view body) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      fields.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

std::uint32_t parse_position(std::string_view s) {
  if (s.empty()) throw InputError("empty position in canonical code");
  std::uint32_t value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw InputError("bad position '" + std::string(s) +
                       "' in canonical code");
    }
    value = value * 10 + static_cast<std::uint32_t>(c - '0');
  }
  return value;
}

}  // namespace

CanonicalCode CanonicalCode::parse(std::string_view text) {
  std::vector<std::string_view> groups;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '(') {
      throw InputError("canonical code: expected '(' at offset " +
                       std::to_string(pos));
    }
    const std::size_t close = text.find(')', pos);
    if (close == std::string_view::npos) {
      throw InputError("canonical code: unterminated group");
    }
    groups.push_back(text.substr(pos + 1, close - pos - 1));
    pos = close + 1;
  }
  if (groups.empty()) throw InputError("canonical code: empty text");
  if (groups.size() == 1) {
    auto fields = split_fields(groups[0]);
    if (fields.size() == 2) {
      if (parse_position(fields[0]) != 0 || fields[1].empty()) {
        throw InputError("canonical code: bad single-node group");
      }
      return CanonicalCode(std::string(fields[1]), {});
    }
  }
  std::vector<CodeEntry> entries;
  for (auto group : groups) {
    auto f = split_fields(group);
    if (f.size() != 6 || (f[3] != ">" && f[3] != "<")) {
      throw InputError("canonical code: malformed group '" +
                       std::string(group) + "'");
    }
    entries.push_back(CodeEntry{parse_position(f[0]), parse_position(f[1]),
                                std::string(f[2]), f[3] == "<",
                                std::string(f[4]), std::string(f[5])});
  }
  return CanonicalCode({}, std::move(entries));
}

LabeledGraph CanonicalCode::to_graph() const {
  LabeledGraph g;
  if (entries_.empty()) {
    if (!lone_label_.empty()) g.add_node(0, lone_label_);
    return g;
  }
  std::vector<std::string> labels(node_count());
  for (const auto& e : entries_) {
    labels[e.from] = e.from_label;
    labels[e.to] = e.to_label;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    g.add_node(static_cast<NodeId>(i), labels[i]);
  }
  for (const auto& e : entries_) {
    if (e.reversed) {
      g.add_edge(e.to, e.from, e.edge_label);
    } else {
      g.add_edge(e.from, e.to, e.edge_label);
    }
  }
  return g;
}

std::size_t CanonicalCodeHash::operator()(const CanonicalCode& code) const {
  std::size_t h = std::hash<std::string>{}(code.lone_label());
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  std::hash<std::string> sh;
  for (const auto& e : code.entries()) {
    mix(e.from);
    mix(e.to);
    mix(sh(e.from_label));
    mix(e.reversed ? 1 : 2);
    mix(sh(e.edge_label));
    mix(sh(e.to_label));
  }
  return h;
}

namespace {

// Entry with labels replaced by their rank in the graph's sorted label set;
// ordering is identical to CodeEntry's for entries of the same graph.
struct RankedEntry {
  std::uint32_t from;
  std::uint32_t to;
  std::uint32_t from_label;
  std::uint8_t reversed;
  std::uint32_t edge_label;
  std::uint32_t to_label;

  friend auto operator<=>(const RankedEntry&, const RankedEntry&) = default;
};

struct SearchState {
  std::vector<std::int32_t> position;  // per node, -1 while unvisited
  std::vector<std::uint32_t> order;    // node at each position
  std::vector<std::uint8_t> used;      // per edge

  bool operator<(const SearchState& other) const {
    return std::tie(order, used) < std::tie(other.order, other.used);
  }
};

}  // namespace

CanonicalForm canonical_form(const LabeledGraph& g) {
  if (!is_connected(g)) {
    throw PreconditionError("canonical_code requires a connected graph");
  }
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  if (m == 0) {
    return CanonicalForm{CanonicalCode(g.node(0).label, {}), {0}};
  }

  std::vector<std::string> alphabet;
  for (const auto& node : g.nodes()) alphabet.push_back(node.label);
  for (const auto& edge : g.edges()) alphabet.push_back(edge.label);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  auto rank_of = [&alphabet](const std::string& label) {
    return static_cast<std::uint32_t>(
        std::lower_bound(alphabet.begin(), alphabet.end(), label) -
        alphabet.begin());
  };
  std::vector<std::uint32_t> node_rank(n);
  for (std::size_t i = 0; i < n; ++i) node_rank[i] = rank_of(g.node(i).label);
  std::vector<std::uint32_t> edge_rank(m);
  for (std::size_t e = 0; e < m; ++e) edge_rank[e] = rank_of(g.edge(e).label);

  // Twin classes: non-adjacent nodes with equal label and identical labeled
  // neighbourhoods are interchangeable by an automorphism, so a search branch
  // only needs to visit one of them first.
  std::vector<std::vector<std::tuple<std::size_t, std::uint32_t, int>>> sig(n);
  for (std::size_t e = 0; e < m; ++e) {
    const auto& edge = g.edge(e);
    sig[edge.src].emplace_back(edge.dst, edge_rank[e], 0);
    sig[edge.dst].emplace_back(edge.src, edge_rank[e], 1);
  }
  for (auto& s : sig) std::sort(s.begin(), s.end());
  std::vector<std::size_t> twin_class(n);
  for (std::size_t v = 0; v < n; ++v) {
    twin_class[v] = v;
    for (std::size_t u = 0; u < v; ++u) {
      if (twin_class[u] == u && node_rank[u] == node_rank[v] &&
          sig[u] == sig[v]) {
        twin_class[v] = u;
        break;
      }
    }
  }

  std::vector<SearchState> frontier;
  {
    std::vector<std::uint8_t> seen_class(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (seen_class[twin_class[v]]) continue;
      seen_class[twin_class[v]] = 1;
      SearchState s;
      s.position.assign(n, -1);
      s.position[v] = 0;
      s.order.push_back(static_cast<std::uint32_t>(v));
      s.used.assign(m, 0);
      frontier.push_back(std::move(s));
    }
  }

  std::vector<RankedEntry> best_code;
  best_code.reserve(m);
  struct Move {
    std::size_t state;
    std::size_t edge;
    std::size_t new_node;  // n when the edge closes between visited nodes
  };
  std::vector<Move> moves;

  for (std::size_t step = 0; step < m; ++step) {
    bool have_best = false;
    RankedEntry best{};
    moves.clear();
    for (std::size_t si = 0; si < frontier.size(); ++si) {
      const SearchState& s = frontier[si];
      const auto next = static_cast<std::uint32_t>(s.order.size());
      for (std::size_t e = 0; e < m; ++e) {
        if (s.used[e]) continue;
        const auto& edge = g.edge(e);
        const std::int32_t ps = s.position[edge.src];
        const std::int32_t pd = s.position[edge.dst];
        if (ps < 0 && pd < 0) continue;
        RankedEntry entry{};
        std::size_t new_node = n;
        if (ps >= 0 && pd >= 0) {
          const auto a = static_cast<std::uint32_t>(ps);
          const auto b = static_cast<std::uint32_t>(pd);
          entry.from = std::min(a, b);
          entry.to = std::max(a, b);
          entry.reversed = a > b ? 1 : 0;
        } else if (ps >= 0) {
          entry.from = static_cast<std::uint32_t>(ps);
          entry.to = next;
          entry.reversed = 0;
          new_node = edge.dst;
        } else {
          entry.from = static_cast<std::uint32_t>(pd);
          entry.to = next;
          entry.reversed = 1;
          new_node = edge.src;
        }
        const std::size_t from_node = entry.reversed ? edge.dst : edge.src;
        const std::size_t to_node = entry.reversed ? edge.src : edge.dst;
        entry.from_label = node_rank[from_node];
        entry.edge_label = edge_rank[e];
        entry.to_label = node_rank[to_node];
        if (!have_best || entry < best) {
          best = entry;
          have_best = true;
          moves.clear();
        }
        if (entry == best) moves.push_back(Move{si, e, new_node});
      }
    }
    best_code.push_back(best);

    std::set<SearchState> next_frontier;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const Move& mv = moves[i];
      if (mv.new_node != n) {
        bool duplicate = false;
        for (std::size_t j = 0; j < i && !duplicate; ++j) {
          const Move& other = moves[j];
          duplicate = other.state == mv.state && other.new_node != n &&
                      twin_class[other.new_node] == twin_class[mv.new_node];
        }
        if (duplicate) continue;
      }
      SearchState s = frontier[mv.state];
      s.used[mv.edge] = 1;
      if (mv.new_node != n) {
        s.position[mv.new_node] = static_cast<std::int32_t>(s.order.size());
        s.order.push_back(static_cast<std::uint32_t>(mv.new_node));
      }
      next_frontier.insert(std::move(s));
    }
    frontier.assign(std::make_move_iterator(next_frontier.begin()),
                    std::make_move_iterator(next_frontier.end()));
  }

  std::vector<CodeEntry> entries;
  entries.reserve(m);
  for (const auto& r : best_code) {
    entries.push_back(CodeEntry{r.from, r.to, alphabet[r.from_label],
                                r.reversed != 0, alphabet[r.edge_label],
                                alphabet[r.to_label]});
  }
  const SearchState& winner = frontier.front();
  std::vector<std::size_t> order(winner.order.begin(), winner.order.end());
  return CanonicalForm{CanonicalCode({}, std::move(entries)), std::move(order)};
}

CanonicalCode canonical_code(const LabeledGraph& g) {
  return canonical_form(g).code;
}

}  // namespace opminer
