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

#include "opminer/pattern_io.hpp"

#include "io_util.hpp"
#include "json.hpp"
#include "opminer/error.hpp"
#include "opminer/transaction_io.hpp"

namespace opminer {

using nlohmann::json;

namespace {

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

LabeledGraph graph_from_text(const std::string& text) {
  auto db = parse_transactions(text);
  if (db.size() != 1) {
    throw InputError("expected exactly one graph in a pattern entry");
  }
  return std::move(db.front().graph);
}

json entry_json(const RankedEntry& e) {
  json j = {{"rank", e.rank},
            {"support", e.support},
            {"compression", e.compression},
            {"nodes", e.nodes},
            {"edges", e.edges},
            {"code", e.code.str()},
            {"graph", format_graph(e.graph, std::to_string(e.rank))}};
  if (e.source_index) j["pattern"] = *e.source_index;
  return j;
}

RankedList ranked_from(const json& doc) {
  RankedList list;
  try {
    list.mode = parse_rank_mode(doc.at("mode").get<std::string>());
    for (const auto& j : doc.at("entries")) {
      RankedEntry e;
      e.rank = j.at("rank").get<std::size_t>();
      e.support = j.at("support").get<std::size_t>();
      e.compression = j.at("compression").get<std::int64_t>();
      e.nodes = j.at("nodes").get<std::size_t>();
      e.edges = j.at("edges").get<std::size_t>();
      e.code = CanonicalCode::parse(j.at("code").get<std::string>());
      e.graph = graph_from_text(j.at("graph").get<std::string>());
      if (j.contains("pattern")) e.source_index = j.at("pattern").get<std::size_t>();
      list.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("ranked list: ") + e.what());
  }
  return list;
}

json ranked_json(const RankedList& list) {
  json doc;
  doc["mode"] = std::string(rank_mode_name(list.mode));
  doc["entries"] = json::array();
  for (const auto& e : list.entries) doc["entries"].push_back(entry_json(e));
  return doc;
}

}  // namespace

std::string pattern_document_to_json(const PatternDocument& doc) {
  json j;
  j["threshold"] = doc.header.threshold;
  j["threshold_mode"] = doc.header.threshold_mode;
  if (doc.header.ratio) j["ratio"] = *doc.header.ratio;
  j["transactions"] = doc.header.transactions;
  j["partial"] = doc.header.partial;
  if (doc.header.elapsed_ms) j["elapsed_ms"] = *doc.header.elapsed_ms;
  j["patterns"] = json::array();
  for (std::size_t i = 0; i < doc.patterns.size(); ++i) {
    const Pattern& p = doc.patterns[i];
    j["patterns"].push_back({{"index", i},
                             {"code", p.code.str()},
                             {"graph", format_graph(p.graph, std::to_string(i))},
                             {"support", p.support},
                             {"nodes", p.node_count()},
                             {"edges", p.edge_count()},
                             {"parents", p.parents}});
  }
  if (doc.ranked) j["ranked"] = ranked_json(*doc.ranked);
  return j.dump(1) + "\n";
}

PatternDocument pattern_document_from_json(std::string_view text) {
  const json j = parse(text, "pattern document");
  PatternDocument doc;
  try {
    doc.header.threshold = j.at("threshold").get<std::size_t>();
    doc.header.threshold_mode = j.value("threshold_mode", std::string("fixed"));
    if (j.contains("ratio")) doc.header.ratio = j.at("ratio").get<double>();
    doc.header.transactions = j.value("transactions", std::size_t{0});
    doc.header.partial = j.value("partial", false);
    if (j.contains("elapsed_ms")) {
      doc.header.elapsed_ms = j.at("elapsed_ms").get<double>();
    }
    for (const auto& pj : j.at("patterns")) {
      Pattern p;
      p.code = CanonicalCode::parse(pj.at("code").get<std::string>());
      p.graph = graph_from_text(pj.at("graph").get<std::string>());
      p.support = pj.at("support").get<std::size_t>();
      p.parents = pj.value("parents", std::vector<std::size_t>{});
      doc.patterns.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("pattern document: ") + e.what());
  }
  for (const auto& p : doc.patterns) {
    for (std::size_t parent : p.parents) {
      if (parent >= doc.patterns.size()) {
        throw InputError("pattern document: parent index out of range");
      }
    }
  }
  link_children(doc.patterns);
  if (j.contains("ranked")) doc.ranked = ranked_from(j.at("ranked"));
  return doc;
}

std::string ranked_list_to_json(const RankedList& list) {
  return ranked_json(list).dump(1) + "\n";
}

RankedList ranked_list_from_json(std::string_view text) {
  return ranked_from(parse(text, "ranked list"));
}

RankedList load_ranked_list(const std::string& path) {
  const std::string text = internal::read_file(path);
  const json j = parse(text, path.c_str());
  if (j.contains("entries")) return ranked_from(j);
  PatternDocument doc = pattern_document_from_json(text);
  if (doc.ranked) return *doc.ranked;
  return recommend(doc.patterns, RankMode::kCompression);
}

}  // namespace opminer
