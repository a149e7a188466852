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

#ifndef OPMINER_TRANSACTION_IO_HPP_
#define OPMINER_TRANSACTION_IO_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opminer/graph.hpp"

namespace opminer {

// One graph of the line-based transaction format:
//
//   t # <transaction-id>
//   v <node-id> <label>
//   e <src-id> <dst-id> <label>
struct Transaction {
  std::string id;
  LabeledGraph graph;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

// Throws InputError naming the offending line.
std::vector<Transaction> read_transactions(std::istream& in);
std::vector<Transaction> read_transactions_file(const std::string& path);
std::vector<Transaction> parse_transactions(std::string_view text);

void write_transaction(std::ostream& out, std::string_view id,
                       const LabeledGraph& g);
void write_transactions(std::ostream& out, std::span<const Transaction> db);
std::string format_graph(const LabeledGraph& g, std::string_view id);

}  // namespace opminer

#endif  // OPMINER_TRANSACTION_IO_HPP_
