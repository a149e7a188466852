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

#include "opminer/rulegen.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "io_util.hpp"
#include "json.hpp"
#include "opminer/error.hpp"
#include "opminer/modeldiff.hpp"

namespace opminer {

using nlohmann::json;

namespace {

enum class Part { kContext, kCreated, kDeleted };

std::map<std::string, Part> node_parts(const EditRule& rule) {
  std::map<std::string, Part> parts;
  auto add = [&](const std::vector<RuleNode>& nodes, Part part) {
    for (const auto& n : nodes) {
      if (!parts.emplace(n.id, part).second) {
        throw InputError("rule " + rule.name + ": duplicate node id " + n.id);
      }
    }
  };
  add(rule.context_nodes, Part::kContext);
  add(rule.created_nodes, Part::kCreated);
  add(rule.deleted_nodes, Part::kDeleted);
  return parts;
}

json nodes_json(const std::vector<RuleNode>& nodes) {
  json arr = json::array();
  for (const auto& n : nodes) arr.push_back({{"id", n.id}, {"type", n.type}});
  return arr;
}

json edges_json(const std::vector<RuleEdge>& edges) {
  json arr = json::array();
  for (const auto& e : edges) {
    arr.push_back({{"src", e.src}, {"tgt", e.tgt}, {"type", e.type}});
  }
  return arr;
}

std::vector<RuleNode> nodes_from(const json& doc, const char* key) {
  std::vector<RuleNode> out;
  if (!doc.contains(key)) return out;
  for (const auto& n : doc.at(key)) {
    out.push_back(RuleNode{n.at("id").get<std::string>(),
                           n.at("type").get<std::string>()});
  }
  return out;
}

std::vector<RuleEdge> edges_from(const json& doc, const char* key) {
  std::vector<RuleEdge> out;
  if (!doc.contains(key)) return out;
  for (const auto& e : doc.at(key)) {
    out.push_back(RuleEdge{e.at("src").get<std::string>(),
                           e.at("tgt").get<std::string>(),
                           e.at("type").get<std::string>()});
  }
  return out;
}

}  // namespace

void EditRule::validate() const {
  const auto parts = node_parts(*this);
  auto check = [&](const std::vector<RuleEdge>& edges, const char* what,
                   auto allowed) {
    for (const auto& e : edges) {
      for (const auto* end : {&e.src, &e.tgt}) {
        auto it = parts.find(*end);
        if (it == parts.end()) {
          throw InputError("rule " + name + ": " + what + " edge " + e.type +
                           " references unknown node " + *end);
        }
        if (!allowed(it->second)) {
          throw InputError("rule " + name + ": " + what + " edge " + e.type +
                           " " + e.src + " -> " + e.tgt +
                           " touches a node of the wrong part");
        }
      }
    }
  };
  check(context_edges, "context", [](Part p) { return p == Part::kContext; });
  check(created_edges, "created", [](Part p) { return p != Part::kDeleted; });
  check(deleted_edges, "deleted", [](Part p) { return p != Part::kCreated; });
}

EditRule EditRule::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("rule: ") + e.what());
  }
  EditRule rule;
  try {
    rule.name = doc.at("name").get<std::string>();
    rule.context_nodes = nodes_from(doc, "contextNodes");
    rule.created_nodes = nodes_from(doc, "createdNodes");
    rule.deleted_nodes = nodes_from(doc, "deletedNodes");
    rule.context_edges = edges_from(doc, "contextEdges");
    rule.created_edges = edges_from(doc, "createdEdges");
    rule.deleted_edges = edges_from(doc, "deletedEdges");
    rule.provenance = doc.value("provenance", std::string("authored"));
  } catch (const json::exception& e) {
    throw InputError(std::string("rule: ") + e.what());
  }
  rule.validate();
  return rule;
}

EditRule EditRule::load(const std::string& path) {
  try {
    return from_json(internal::read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string EditRule::to_json() const {
  json doc;
  doc["name"] = name;
  doc["provenance"] = provenance;
  doc["contextNodes"] = nodes_json(context_nodes);
  doc["createdNodes"] = nodes_json(created_nodes);
  doc["deletedNodes"] = nodes_json(deleted_nodes);
  if (!context_edges.empty()) doc["contextEdges"] = edges_json(context_edges);
  doc["createdEdges"] = edges_json(created_edges);
  doc["deletedEdges"] = edges_json(deleted_edges);
  return doc.dump(2) + "\n";
}

EditRule pattern_to_rule(const LabeledGraph& pattern, std::string name,
                         std::string provenance) {
  EditRule rule;
  rule.name = std::move(name);
  rule.provenance = std::move(provenance);
  std::vector<ChangeKind> kinds(pattern.node_count());
  std::vector<std::string> ids(pattern.node_count());
  for (std::size_t i = 0; i < pattern.node_count(); ++i) {
    const Node& node = pattern.node(i);
    SplitLabel split{};
    try {
      split = split_change_label(node.label);
    } catch (const InputError&) {
      throw InputError("node " + std::to_string(node.id) + " label '" +
                       node.label + "' has no preserved_/create_/delete_ prefix");
    }
    kinds[i] = split.kind;
    ids[i] = "n" + std::to_string(node.id);
    RuleNode rn{ids[i], std::string(split.type_name)};
    switch (split.kind) {
      case ChangeKind::kPreserved:
        rule.context_nodes.push_back(std::move(rn));
        break;
      case ChangeKind::kCreate:
        rule.created_nodes.push_back(std::move(rn));
        break;
      case ChangeKind::kDelete:
        rule.deleted_nodes.push_back(std::move(rn));
        break;
    }
  }
  for (const auto& edge : pattern.edges()) {
    const std::string where = "edge " + std::to_string(pattern.node(edge.src).id) +
                              " -> " + std::to_string(pattern.node(edge.dst).id) +
                              " label '" + edge.label + "'";
    SplitLabel split{};
    try {
      split = split_change_label(edge.label);
    } catch (const InputError&) {
      throw InputError(where + " has no preserved_/create_/delete_ prefix");
    }
    const ChangeKind a = kinds[edge.src];
    const ChangeKind b = kinds[edge.dst];
    RuleEdge re{ids[edge.src], ids[edge.dst], std::string(split.type_name)};
    switch (split.kind) {
      case ChangeKind::kPreserved:
        if (a != ChangeKind::kPreserved || b != ChangeKind::kPreserved) {
          throw InputError(where + " is preserved but touches a changed node");
        }
        rule.context_edges.push_back(std::move(re));
        break;
      case ChangeKind::kCreate:
        if (a == ChangeKind::kDelete || b == ChangeKind::kDelete) {
          throw InputError(where + " is created but touches a deleted node");
        }
        rule.created_edges.push_back(std::move(re));
        break;
      case ChangeKind::kDelete:
        if (a == ChangeKind::kCreate || b == ChangeKind::kCreate) {
          throw InputError(where + " is deleted but touches a created node");
        }
        rule.deleted_edges.push_back(std::move(re));
        break;
    }
  }
  return rule;
}

EditRule pattern_to_rule(const Pattern& pattern, std::string name) {
  return pattern_to_rule(pattern.graph, std::move(name), pattern.code.str());
}

LabeledGraph rule_to_pattern(const EditRule& rule) {
  rule.validate();
  LabeledGraph g;
  std::map<std::string, NodeId> index;
  auto add_nodes = [&](const std::vector<RuleNode>& nodes, ChangeKind kind) {
    for (const auto& n : nodes) {
      const auto id = static_cast<NodeId>(index.size());
      index.emplace(n.id, id);
      g.add_node(id, change_label(kind, n.type));
    }
  };
  add_nodes(rule.context_nodes, ChangeKind::kPreserved);
  add_nodes(rule.created_nodes, ChangeKind::kCreate);
  add_nodes(rule.deleted_nodes, ChangeKind::kDelete);
  auto add_edges = [&](const std::vector<RuleEdge>& edges, ChangeKind kind) {
    for (const auto& e : edges) {
      g.add_edge(index.at(e.src), index.at(e.tgt), change_label(kind, e.type));
    }
  };
  add_edges(rule.context_edges, ChangeKind::kPreserved);
  add_edges(rule.created_edges, ChangeKind::kCreate);
  add_edges(rule.deleted_edges, ChangeKind::kDelete);
  return g;
}

std::string rule_to_dot(const EditRule& rule) {
  std::ostringstream out;
  out << "digraph \"" << rule.name << "\" {\n";
  out << "  node [shape=box];\n";
  auto nodes = [&](const std::vector<RuleNode>& list, const char* tag,
                   const char* color) {
    for (const auto& n : list) {
      out << "  \"" << n.id << "\" [label=\"<<" << tag << ">>\\n" << n.id
          << ":" << n.type << "\", color=" << color << "];\n";
    }
  };
  nodes(rule.context_nodes, "preserve", "gray");
  nodes(rule.created_nodes, "create", "green");
  nodes(rule.deleted_nodes, "delete", "red");
  auto edges = [&](const std::vector<RuleEdge>& list, const char* tag,
                   const char* color) {
    for (const auto& e : list) {
      out << "  \"" << e.src << "\" -> \"" << e.tgt << "\" [label=\"<<" << tag
          << ">> " << e.type << "\", color=" << color << "];\n";
    }
  };
  edges(rule.context_edges, "preserve", "gray");
  edges(rule.created_edges, "create", "green");
  edges(rule.deleted_edges, "delete", "red");
  out << "}\n";
  return out.str();
}

namespace {

// Rule nodes that must be matched (context + deleted) and the edges that
// must be present among them.
struct MatchProblem {
  std::vector<RuleNode> nodes;
  std::vector<RuleEdge> edges;
  std::map<std::string, std::size_t> index;
  std::vector<std::size_t> deleted_degree;  // per matched node
  std::vector<std::uint8_t> deleted;
};

MatchProblem match_problem(const EditRule& rule) {
  rule.validate();
  MatchProblem p;
  for (const auto& n : rule.context_nodes) {
    p.index.emplace(n.id, p.nodes.size());
    p.nodes.push_back(n);
    p.deleted.push_back(0);
  }
  for (const auto& n : rule.deleted_nodes) {
    p.index.emplace(n.id, p.nodes.size());
    p.nodes.push_back(n);
    p.deleted.push_back(1);
  }
  p.edges = rule.context_edges;
  p.edges.insert(p.edges.end(), rule.deleted_edges.begin(),
                 rule.deleted_edges.end());
  p.deleted_degree.assign(p.nodes.size(), 0);
  for (const auto& e : rule.deleted_edges) {
    ++p.deleted_degree[p.index.at(e.src)];
    if (e.tgt != e.src) ++p.deleted_degree[p.index.at(e.tgt)];
  }
  return p;
}

bool valid_image(const MatchProblem& p, const ModelVersion& m,
                 const std::vector<std::string>& image) {
  std::set<std::string> distinct(image.begin(), image.end());
  if (distinct.size() != image.size()) return false;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    auto type = m.find_type(image[i]);
    if (!type || *type != p.nodes[i].type) return false;
  }
  for (const auto& e : p.edges) {
    if (!m.has_reference(Reference{image[p.index.at(e.src)],
                                   image[p.index.at(e.tgt)], e.type})) {
      return false;
    }
  }
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (p.deleted[i] && m.degree(image[i]) != p.deleted_degree[i]) return false;
  }
  return true;
}

Binding to_binding(const MatchProblem& p, const std::vector<std::string>& image) {
  Binding b;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) b[p.nodes[i].id] = image[i];
  return b;
}

// Backtracking over typed candidates; nodes linked to already placed ones
// draw candidates from the model's adjacency.
class BindingSearch {
 public:
  BindingSearch(const MatchProblem& p, const ModelVersion& m) : p_(p), m_(m) {}

  void run(std::optional<std::pair<std::size_t, std::string>> pin,
           std::set<Binding>& out) {
    const std::size_t n = p_.nodes.size();
    image_.assign(n, {});
    placed_.assign(n, 0);
    order_.clear();
    if (pin) {
      if (m_.find_type(pin->second) != p_.nodes[pin->first].type) return;
      image_[pin->first] = pin->second;
      placed_[pin->first] = 1;
    }
    search(pin ? 1 : 0, out);
  }

 private:
  void search(std::size_t placed_count, std::set<Binding>& out) {
    const std::size_t n = p_.nodes.size();
    if (placed_count == n) {
      if (valid_image(p_, m_, image_)) out.insert(to_binding(p_, image_));
      return;
    }
    // Prefer a node connected to a placed one.
    std::size_t next = n;
    const RuleEdge* via = nullptr;
    for (const auto& e : p_.edges) {
      const std::size_t s = p_.index.at(e.src);
      const std::size_t t = p_.index.at(e.tgt);
      if (placed_[s] && !placed_[t]) {
        next = t;
        via = &e;
        break;
      }
      if (placed_[t] && !placed_[s]) {
        next = s;
        via = &e;
        break;
      }
    }
    std::vector<std::string> candidates;
    if (via != nullptr) {
      const std::size_t s = p_.index.at(via->src);
      if (next == s) {
        for (const auto& r : m_.incoming(image_[p_.index.at(via->tgt)])) {
          if (r.type == via->type) candidates.push_back(r.src);
        }
      } else {
        for (const auto& r : m_.outgoing(image_[s])) {
          if (r.type == via->type) candidates.push_back(r.tgt);
        }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (!placed_[i]) {
          next = i;
          break;
        }
      }
      candidates = m_.elements_of_type(p_.nodes[next].type);
    }
    for (const auto& uid : candidates) {
      if (m_.type_of(uid) != p_.nodes[next].type) continue;
      bool taken = false;
      for (std::size_t i = 0; i < n && !taken; ++i) {
        taken = placed_[i] && image_[i] == uid;
      }
      if (taken) continue;
      if (!edges_consistent(next, uid)) continue;
      image_[next] = uid;
      placed_[next] = 1;
      search(placed_count + 1, out);
      placed_[next] = 0;
    }
  }

  bool edges_consistent(std::size_t node, const std::string& uid) const {
    for (const auto& e : p_.edges) {
      const std::size_t s = p_.index.at(e.src);
      const std::size_t t = p_.index.at(e.tgt);
      if (s != node && t != node) continue;
      const bool s_known = s == node || placed_[s];
      const bool t_known = t == node || placed_[t];
      if (!s_known || !t_known) continue;
      const std::string& su = s == node ? uid : image_[s];
      const std::string& tu = t == node ? uid : image_[t];
      if (!m_.has_reference(Reference{su, tu, e.type})) return false;
    }
    return true;
  }

  const MatchProblem& p_;
  const ModelVersion& m_;
  std::vector<std::string> image_;
  std::vector<std::uint8_t> placed_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::vector<Binding> enumerate_bindings(
    const EditRule& rule, const ModelVersion& m,
    const std::vector<std::string>& must_touch) {
  const MatchProblem p = match_problem(rule);
  std::set<Binding> found;
  BindingSearch search(p, m);
  if (must_touch.empty()) {
    search.run(std::nullopt, found);
  } else {
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      for (const auto& uid : must_touch) {
        search.run(std::make_pair(i, uid), found);
      }
    }
  }
  return {found.begin(), found.end()};
}

bool is_valid_binding(const EditRule& rule, const ModelVersion& m,
                      const Binding& binding) {
  const MatchProblem p = match_problem(rule);
  if (binding.size() != p.nodes.size()) return false;
  std::vector<std::string> image(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    auto it = binding.find(p.nodes[i].id);
    if (it == binding.end()) return false;
    image[i] = it->second;
  }
  return valid_image(p, m, image);
}

namespace {

constexpr int kRejectionTries = 4000;

std::optional<Binding> sample_binding(const EditRule& rule,
                                      const ModelVersion& m,
                                      const ApplySite& site,
                                      std::mt19937_64& rng) {
  const MatchProblem p = match_problem(rule);
  if (p.nodes.empty()) return Binding{};
  const std::set<std::string> avoid(site.avoid.begin(), site.avoid.end());
  if (site.must_touch.empty()) {
    // Rejection sampling over the typed product space is uniform over the
    // valid bindings; enumeration below is the fallback when they are rare.
    std::vector<std::vector<std::string>> pools;
    for (const auto& n : p.nodes) {
      pools.push_back(m.elements_of_type(n.type));
      std::erase_if(pools.back(),
                    [&](const std::string& uid) { return avoid.contains(uid); });
      if (pools.back().empty()) return std::nullopt;
    }
    std::vector<std::string> image(p.nodes.size());
    for (int attempt = 0; attempt < kRejectionTries; ++attempt) {
      for (std::size_t i = 0; i < pools.size(); ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, pools[i].size() - 1);
        image[i] = pools[i][pick(rng)];
      }
      if (valid_image(p, m, image)) return to_binding(p, image);
    }
  }
  auto all = enumerate_bindings(rule, m, site.must_touch);
  std::erase_if(all, [&](const Binding& b) {
    for (const auto& [id, uid] : b) {
      if (avoid.contains(uid)) return true;
    }
    return false;
  });
  if (all.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

}  // namespace

ApplyResult apply(const EditRule& rule, const MetaModel& mm,
                  const ModelVersion& m, const ApplySite& site,
                  std::uint64_t seed) {
  rule.validate();
  Binding binding;
  if (site.binding) {
    if (!is_valid_binding(rule, m, *site.binding)) {
      throw NoMatchError("rule " + rule.name + ": binding is not a valid match");
    }
    binding = *site.binding;
  } else {
    std::mt19937_64 rng(seed);
    auto chosen = sample_binding(rule, m, site, rng);
    if (!chosen) {
      throw NoMatchError("rule " + rule.name + ": no valid binding" +
                         (site.must_touch.empty() ? "" : " touching the site"));
    }
    binding = std::move(*chosen);
  }

  ApplyResult result;
  result.model = m;
  ModelVersion& out = result.model;
  for (const auto& e : rule.deleted_edges) {
    out.remove_reference(
        Reference{binding.at(e.src), binding.at(e.tgt), e.type});
  }
  for (const auto& n : rule.deleted_nodes) out.remove_element(binding.at(n.id));
  for (std::size_t k = 0; k < rule.created_nodes.size(); ++k) {
    const auto& n = rule.created_nodes[k];
    std::string uid =
        rule.name + "-" + std::to_string(k) + "-" + std::to_string(seed);
    if (m.has_element(uid)) {
      throw PreconditionError("fresh uid " + uid + " already in use");
    }
    out.add_element(uid, n.type);
    result.created.emplace(n.id, std::move(uid));
  }
  auto resolve = [&](const std::string& id) -> const std::string& {
    auto it = binding.find(id);
    return it != binding.end() ? it->second : result.created.at(id);
  };
  for (const auto& e : rule.created_edges) {
    out.add_reference(Reference{resolve(e.src), resolve(e.tgt), e.type});
  }
  require_conformance(mm, out);
  result.binding = std::move(binding);
  return result;
}

}  // namespace opminer
