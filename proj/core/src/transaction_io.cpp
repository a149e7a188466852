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

#include "opminer/transaction_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "opminer/error.hpp"

namespace opminer {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw InputError("line " + std::to_string(line_no) + ": " + what);
}

NodeId parse_id(std::string_view token, std::size_t line_no) {
  NodeId value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(line_no, "expected a non-negative integer id, got '" +
                      std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::vector<Transaction> read_transactions(std::istream& in) {
  std::vector<Transaction> db;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    try {
      if (tokens[0] == "t") {
        if (tokens.size() != 3 || tokens[1] != "#") {
          fail(line_no, "expected 't # <id>'");
        }
        db.push_back(Transaction{std::string(tokens[2]), {}});
      } else if (tokens[0] == "v") {
        if (db.empty()) fail(line_no, "node before any 't' line");
        if (tokens.size() != 3) fail(line_no, "expected 'v <id> <label>'");
        db.back().graph.add_node(parse_id(tokens[1], line_no),
                                 std::string(tokens[2]));
      } else if (tokens[0] == "e") {
        if (db.empty()) fail(line_no, "edge before any 't' line");
        if (tokens.size() != 4) {
          fail(line_no, "expected 'e <src> <dst> <label>'");
        }
        db.back().graph.add_edge(parse_id(tokens[1], line_no),
                                 parse_id(tokens[2], line_no),
                                 std::string(tokens[3]));
      } else {
        fail(line_no, "unknown record type '" + std::string(tokens[0]) + "'");
      }
    } catch (const InputError& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      fail(line_no, what);
    }
  }
  return db;
}

std::vector<Transaction> read_transactions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return read_transactions(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<Transaction> parse_transactions(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_transactions(in);
}

void write_transaction(std::ostream& out, std::string_view id,
                       const LabeledGraph& g) {
  out << "t # " << id << '\n';
  for (const auto& node : g.nodes()) {
    out << "v " << node.id << ' ' << node.label << '\n';
  }
  for (const auto& edge : g.edges()) {
    out << "e " << g.node(edge.src).id << ' ' << g.node(edge.dst).id << ' '
        << edge.label << '\n';
  }
}

void write_transactions(std::ostream& out, std::span<const Transaction> db) {
  for (const auto& t : db) write_transaction(out, t.id, t.graph);
}

std::string format_graph(const LabeledGraph& g, std::string_view id) {
  std::ostringstream out;
  write_transaction(out, id, g);
  return out.str();
}

}  // namespace opminer
