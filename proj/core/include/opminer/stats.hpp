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

#ifndef OPMINER_STATS_HPP_
#define OPMINER_STATS_HPP_

#include <span>
#include <vector>

namespace opminer {

// 1-based ranks; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of the average ranks. Returns 0 when either side has
// no variance (all values tied). Throws PreconditionError on a length
// mismatch or fewer than two samples.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace opminer

#endif  // OPMINER_STATS_HPP_
