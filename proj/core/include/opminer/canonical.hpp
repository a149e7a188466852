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

#ifndef OPMINER_CANONICAL_HPP_
#define OPMINER_CANONICAL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opminer/graph.hpp"

namespace opminer {

// One step of a graph traversal: the edge between the nodes discovered at
// positions `from` < `to` (or `from` == `to` for a self loop). `reversed`
// is set when the edge points from `to` to `from`.
struct CodeEntry {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::string from_label;
  bool reversed = false;
  std::string edge_label;
  std::string to_label;

  friend auto operator<=>(const CodeEntry&, const CodeEntry&) = default;
  friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
};

// Isomorphism-invariant code of a connected labeled digraph: the
// lexicographically smallest entry sequence over every order in which the
// edges can be visited while keeping the visited part connected. A graph
// without edges is coded by its single node label.
class CanonicalCode {
 public:
  CanonicalCode() = default;
  CanonicalCode(std::string lone_label, std::vector<CodeEntry> entries)
      : lone_label_(std::move(lone_label)), entries_(std::move(entries)) {}

  const std::string& lone_label() const { return lone_label_; }
  const std::vector<CodeEntry>& entries() const { return entries_; }

  std::size_t node_count() const;
  std::size_t edge_count() const { return entries_.size(); }

  // Text form, e.g. "(0,1,A,>,x,B)(1,2,B,<,y,A)" or "(0,A)" for one node.
  std::string str() const;
  // Inverse of str(). Throws InputError on malformed text.
  static CanonicalCode parse(std::string_view text);

  // Graph with node ids 0..n-1 in code position order.
  LabeledGraph to_graph() const;

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;

 private:
  std::string lone_label_;
  std::vector<CodeEntry> entries_;
};

struct CanonicalCodeHash {
  std::size_t operator()(const CanonicalCode& code) const;
};

struct CanonicalForm {
  CanonicalCode code;
  // order[k] is the dense index (in the input graph) of the node placed at
  // code position k.
  std::vector<std::size_t> order;
};

// Throws PreconditionError if `g` is empty or not weakly connected.
CanonicalForm canonical_form(const LabeledGraph& g);
CanonicalCode canonical_code(const LabeledGraph& g);

}  // namespace opminer

#endif  // OPMINER_CANONICAL_HPP_
