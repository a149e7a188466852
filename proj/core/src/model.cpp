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

#include "opminer/model.hpp"

#include <algorithm>
#include <functional>

#include "io_util.hpp"
#include "json.hpp"
#include "opminer/error.hpp"

namespace opminer {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const std::string& string_field(const json& obj, const char* key,
                                std::string_view what) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string()) {
    throw InputError(std::string(what) + ": missing string field '" + key +
                     "' in " + obj.dump());
  }
  return obj.at(key).get_ref<const std::string&>();
}

}  // namespace

void MetaModel::add_node_type(std::string name) {
  if (has_node_type(name)) throw InputError("duplicate node type " + name);
  node_types_.push_back(std::move(name));
}

void MetaModel::add_edge_type(EdgeType type) {
  if (!has_node_type(type.src) || !has_node_type(type.tgt)) {
    throw InputError("edge type " + type.name +
                     " references an undeclared node type");
  }
  if (find_edge_type(type.name) != nullptr) {
    throw InputError("duplicate edge type " + type.name);
  }
  edge_types_.push_back(std::move(type));
}

bool MetaModel::has_node_type(std::string_view name) const {
  return std::find(node_types_.begin(), node_types_.end(), name) !=
         node_types_.end();
}

const EdgeType* MetaModel::find_edge_type(std::string_view name) const {
  for (const auto& t : edge_types_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

MetaModel MetaModel::from_json(std::string_view text) {
  const json doc = parse_json(text, "meta-model");
  if (!doc.is_object() || !doc.contains("nodeTypes") ||
      !doc.at("nodeTypes").is_array()) {
    throw InputError("meta-model: missing 'nodeTypes' array");
  }
  MetaModel mm;
  for (const auto& t : doc.at("nodeTypes")) {
    if (!t.is_string()) throw InputError("meta-model: node type not a string");
    mm.add_node_type(t.get<std::string>());
  }
  if (doc.contains("edgeTypes")) {
    for (const auto& t : doc.at("edgeTypes")) {
      EdgeType type{string_field(t, "name", "meta-model"),
                    string_field(t, "src", "meta-model"),
                    string_field(t, "tgt", "meta-model"),
                    t.value("containment", false)};
      mm.add_edge_type(std::move(type));
    }
  }
  return mm;
}

MetaModel MetaModel::load(const std::string& path) {
  try {
    return from_json(internal::read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string MetaModel::to_json() const {
  json doc;
  doc["nodeTypes"] = node_types_;
  doc["edgeTypes"] = json::array();
  for (const auto& t : edge_types_) {
    doc["edgeTypes"].push_back({{"name", t.name},
                                {"src", t.src},
                                {"tgt", t.tgt},
                                {"containment", t.containment}});
  }
  return doc.dump(2) + "\n";
}

void ModelVersion::add_element(std::string uid, std::string type) {
  if (elements_.contains(uid)) throw InputError("duplicate uid " + uid);
  elements_.emplace(std::move(uid), std::move(type));
}

void ModelVersion::add_reference(Reference ref) {
  if (!has_element(ref.src) || !has_element(ref.tgt)) {
    throw InputError("reference " + ref.type + " from " + ref.src + " to " +
                     ref.tgt + " has an unknown endpoint");
  }
  Reference rev{ref.tgt, ref.src, ref.type};
  if (!references_.insert(std::move(ref)).second) {
    throw InputError("duplicate reference " + rev.type + " from " + rev.tgt +
                     " to " + rev.src);
  }
  reversed_.insert(std::move(rev));
}

void ModelVersion::remove_element(const std::string& uid) {
  if (degree(uid) != 0) {
    throw PreconditionError("element " + uid + " still has references");
  }
  if (elements_.erase(uid) == 0) {
    throw PreconditionError("no element " + uid);
  }
}

void ModelVersion::remove_reference(const Reference& ref) {
  if (references_.erase(ref) == 0) {
    throw PreconditionError("no reference " + ref.type + " from " + ref.src +
                            " to " + ref.tgt);
  }
  reversed_.erase(Reference{ref.tgt, ref.src, ref.type});
}

bool ModelVersion::has_element(std::string_view uid) const {
  return elements_.find(uid) != elements_.end();
}

bool ModelVersion::has_reference(const Reference& ref) const {
  return references_.contains(ref);
}

const std::string& ModelVersion::type_of(std::string_view uid) const {
  auto it = elements_.find(uid);
  if (it == elements_.end()) {
    throw InputError("unknown uid " + std::string(uid));
  }
  return it->second;
}

std::optional<std::string> ModelVersion::find_type(std::string_view uid) const {
  auto it = elements_.find(uid);
  if (it == elements_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<Reference> range_from(const std::set<Reference>& refs,
                                  std::string_view key) {
  std::vector<Reference> out;
  for (auto it = refs.lower_bound(Reference{std::string(key), "", ""});
       it != refs.end() && it->src == key; ++it) {
    out.push_back(*it);
  }
  return out;
}

}  // namespace

std::vector<Reference> ModelVersion::outgoing(std::string_view uid) const {
  return range_from(references_, uid);
}

std::vector<Reference> ModelVersion::incoming(std::string_view uid) const {
  std::vector<Reference> out;
  for (auto& r : range_from(reversed_, uid)) {
    out.push_back(Reference{r.tgt, r.src, r.type});
  }
  return out;
}

std::size_t ModelVersion::degree(std::string_view uid) const {
  std::size_t count = 0;
  for (const auto* refs : {&references_, &reversed_}) {
    for (auto it = refs->lower_bound(Reference{std::string(uid), "", ""});
         it != refs->end() && it->src == uid; ++it) {
      ++count;
    }
  }
  return count;
}

std::vector<std::string> ModelVersion::elements_of_type(
    std::string_view type) const {
  std::vector<std::string> out;
  for (const auto& [uid, t] : elements_) {
    if (t == type) out.push_back(uid);
  }
  return out;
}

ModelVersion ModelVersion::from_json(std::string_view text) {
  const json doc = parse_json(text, "model");
  if (!doc.is_object() || !doc.contains("elements") ||
      !doc.at("elements").is_array()) {
    throw InputError("model: missing 'elements' array");
  }
  ModelVersion m;
  for (const auto& e : doc.at("elements")) {
    m.add_element(string_field(e, "uid", "model"),
                  string_field(e, "type", "model"));
  }
  if (doc.contains("references")) {
    if (!doc.at("references").is_array()) {
      throw InputError("model: 'references' is not an array");
    }
    for (const auto& r : doc.at("references")) {
      m.add_reference(Reference{string_field(r, "src", "model"),
                                string_field(r, "tgt", "model"),
                                string_field(r, "type", "model")});
    }
  }
  return m;
}

ModelVersion ModelVersion::load(const std::string& path) {
  try {
    return from_json(internal::read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string ModelVersion::to_json() const {
  json doc;
  doc["elements"] = json::array();
  for (const auto& [uid, type] : elements_) {
    doc["elements"].push_back({{"uid", uid}, {"type", type}});
  }
  doc["references"] = json::array();
  for (const auto& r : references_) {
    doc["references"].push_back(
        {{"src", r.src}, {"tgt", r.tgt}, {"type", r.type}});
  }
  return doc.dump(1) + "\n";
}

void ModelVersion::save(const std::string& path) const {
  internal::write_file(path, to_json());
}

std::vector<std::string> conformance_violations(const MetaModel& mm,
                                                const ModelVersion& m) {
  std::vector<std::string> problems;
  for (const auto& [uid, type] : m.elements()) {
    if (!mm.has_node_type(type)) {
      problems.push_back("element " + uid + " has undeclared type " + type);
    }
  }
  std::map<std::string, std::string, std::less<>> container;
  for (const auto& r : m.references()) {
    const EdgeType* et = mm.find_edge_type(r.type);
    if (et == nullptr) {
      problems.push_back("reference " + r.src + " -> " + r.tgt +
                         " has undeclared type " + r.type);
      continue;
    }
    if (m.type_of(r.src) != et->src || m.type_of(r.tgt) != et->tgt) {
      problems.push_back("reference " + r.type + " " + r.src + " -> " + r.tgt +
                         " connects " + m.type_of(r.src) + " to " +
                         m.type_of(r.tgt) + ", expected " + et->src + " to " +
                         et->tgt);
    }
    if (et->containment) {
      auto [it, inserted] = container.emplace(r.tgt, r.src);
      if (!inserted) {
        problems.push_back("element " + r.tgt + " has two containers (" +
                           it->second + ", " + r.src + ")");
      }
    }
  }
  // Walk up the container chain; a chain longer than the element count
  // means a cycle.
  for (const auto& [uid, parent] : container) {
    std::string_view cursor = parent;
    std::size_t steps = 0;
    while (steps <= container.size()) {
      if (cursor == uid) {
        problems.push_back("containment cycle through " + uid);
        break;
      }
      auto it = container.find(cursor);
      if (it == container.end()) break;
      cursor = it->second;
      ++steps;
    }
  }
  return problems;
}

void require_conformance(const MetaModel& mm, const ModelVersion& m) {
  const auto problems = conformance_violations(mm, m);
  if (problems.empty()) return;
  std::string message = "model does not conform: " + problems.front();
  if (problems.size() > 1) {
    message += " (and " + std::to_string(problems.size() - 1) + " more)";
  }
  throw ConformanceError(message);
}

}  // namespace opminer
