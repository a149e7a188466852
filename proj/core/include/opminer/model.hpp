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

#ifndef OPMINER_MODEL_HPP_
#define OPMINER_MODEL_HPP_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace opminer {

struct EdgeType {
  std::string name;
  std::string src;  // node type name
  std::string tgt;  // node type name
  bool containment = false;

  friend bool operator==(const EdgeType&, const EdgeType&) = default;
};

// Type vocabulary for models: node types plus typed, directed edge types.
class MetaModel {
 public:
  void add_node_type(std::string name);
  // Throws InputError when an endpoint type is undeclared or the name is
  // already taken.
  void add_edge_type(EdgeType type);

  bool has_node_type(std::string_view name) const;
  const EdgeType* find_edge_type(std::string_view name) const;

  const std::vector<std::string>& node_types() const { return node_types_; }
  const std::vector<EdgeType>& edge_types() const { return edge_types_; }

  // {"nodeTypes": [...], "edgeTypes": [{"name","src","tgt","containment"}]}
  static MetaModel from_json(std::string_view text);
  static MetaModel load(const std::string& path);
  std::string to_json() const;

 private:
  std::vector<std::string> node_types_;
  std::vector<EdgeType> edge_types_;
};

struct Element {
  std::string uid;
  std::string type;

  friend auto operator<=>(const Element&, const Element&) = default;
};

struct Reference {
  std::string src;  // element uid
  std::string tgt;  // element uid
  std::string type;

  friend auto operator<=>(const Reference&, const Reference&) = default;
};

// A model snapshot: typed elements with persistent uids and typed
// references between them. Elements are kept sorted by uid and references
// by (src, tgt, type), which makes serialization canonical.
class ModelVersion {
 public:
  // Throws InputError on a duplicate uid.
  void add_element(std::string uid, std::string type);
  // Throws InputError when an endpoint is missing or the reference exists.
  void add_reference(Reference ref);
  // Removes the element; its incident references must already be gone
  // (throws PreconditionError otherwise).
  void remove_element(const std::string& uid);
  // Throws PreconditionError when absent.
  void remove_reference(const Reference& ref);

  bool has_element(std::string_view uid) const;
  bool has_reference(const Reference& ref) const;
  // Throws InputError for an unknown uid.
  const std::string& type_of(std::string_view uid) const;
  std::optional<std::string> find_type(std::string_view uid) const;

  const std::map<std::string, std::string, std::less<>>& elements() const {
    return elements_;
  }
  const std::set<Reference>& references() const { return references_; }
  std::size_t element_count() const { return elements_.size(); }
  std::size_t reference_count() const { return references_.size(); }

  std::vector<Reference> outgoing(std::string_view uid) const;
  std::vector<Reference> incoming(std::string_view uid) const;
  std::size_t degree(std::string_view uid) const;
  std::vector<std::string> elements_of_type(std::string_view type) const;

  // {"elements": [{"uid","type"}], "references": [{"src","tgt","type"}]}
  static ModelVersion from_json(std::string_view text);
  static ModelVersion load(const std::string& path);
  std::string to_json() const;
  void save(const std::string& path) const;

  friend bool operator==(const ModelVersion& a, const ModelVersion& b) {
    return a.elements_ == b.elements_ && a.references_ == b.references_;
  }

 private:
  std::map<std::string, std::string, std::less<>> elements_;
  std::set<Reference> references_;
  // (tgt, src, type) ordering for incoming lookups.
  std::set<Reference> reversed_;
};

// Empty when `m` conforms: element and reference types declared, reference
// endpoints typed as the edge type requires, at most one container per
// element and no containment cycles.
std::vector<std::string> conformance_violations(const MetaModel& mm,
                                                const ModelVersion& m);
// Throws ConformanceError listing the first violations.
void require_conformance(const MetaModel& mm, const ModelVersion& m);

}  // namespace opminer

#endif  // OPMINER_MODEL_HPP_
