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

#ifndef OPMINER_PATTERN_IO_HPP_
#define OPMINER_PATTERN_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opminer/miner.hpp"
#include "opminer/ranker.hpp"

namespace opminer {

// Header echoed into mining output documents.
struct MiningHeader {
  std::size_t threshold = 0;
  std::string threshold_mode;  // "fixed", "relative" or "calibrated"
  std::optional<double> ratio;
  std::size_t transactions = 0;
  bool partial = false;
  // Wall time; left out of the document when unset so that outputs are
  // reproducible byte for byte.
  std::optional<double> elapsed_ms;
};

struct PatternDocument {
  MiningHeader header;
  std::vector<Pattern> patterns;
  std::optional<RankedList> ranked;
};

// JSON document: header fields, "patterns" (index, code, graph in line
// format, support, nodes, edges, parents) and optionally "ranked".
std::string pattern_document_to_json(const PatternDocument& doc);
// Throws InputError on malformed input; `children` are rebuilt.
PatternDocument pattern_document_from_json(std::string_view text);

// JSON document: {"mode", "entries": [{rank, support, compression, nodes,
// edges, code, graph}]}.
std::string ranked_list_to_json(const RankedList& list);
RankedList ranked_list_from_json(std::string_view text);

// Accepts either a ranked-list document or a pattern document; for the
// latter the embedded ranking is used, or the patterns are ranked by
// compression when none is present.
RankedList load_ranked_list(const std::string& path);

}  // namespace opminer

#endif  // OPMINER_PATTERN_IO_HPP_
