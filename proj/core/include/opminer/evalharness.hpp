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

#ifndef OPMINER_EVALHARNESS_HPP_
#define OPMINER_EVALHARNESS_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opminer/graph.hpp"
#include "opminer/miner.hpp"
#include "opminer/modeldiff.hpp"
#include "opminer/ranker.hpp"
#include "opminer/simgen.hpp"

namespace opminer {

// A rank cutoff; std::nullopt stands for infinity.
using Cutoff = std::optional<std::size_t>;

std::string cutoff_name(Cutoff k);  // "1", "10", "inf"
// Throws InputError unless `text` is a positive integer or "inf".
Cutoff parse_cutoff(std::string_view text);

// 1-based rank of the first entry whose canonical code equals that of each
// truth graph; std::nullopt when absent.
std::vector<std::optional<std::size_t>> locate_truth(
    const RankedList& ranked, std::span<const LabeledGraph> truth);

// Sum over relevant items at distinct ranks r <= k of P(r) (relevant items
// at or above r, divided by r), divided by `total_relevant`. Absent items
// contribute 0. Throws PreconditionError when total_relevant is 0.
double ap_at_k(std::span<const std::optional<std::size_t>> ranks, Cutoff k,
               std::size_t total_relevant);

// Arithmetic mean; 0 for an empty set.
double mean_average_precision(std::span<const double> ap);

enum class ThresholdMode { kFixed, kRelative, kCalibrated };

struct ThresholdPolicy {
  ThresholdMode mode = ThresholdMode::kCalibrated;
  std::size_t value = 2;  // kFixed
  double ratio = 0.4;     // kRelative
  CalibrationSettings calibration;

  std::string name() const;  // "fixed", "relative" or "calibrated"
};

// Threshold for `db` under `policy`; 1 for an empty database.
std::size_t choose_threshold(const TransactionDB& db,
                             const ThresholdPolicy& policy);

struct PipelineOptions {
  ThresholdPolicy threshold;
  std::vector<Cutoff> ks = {1, 2, 5, 10, std::nullopt};
  std::chrono::milliseconds time_budget{300'000};
  std::optional<std::size_t> max_nodes;
};

// Simple change graphs of consecutive versions.
std::vector<ChangeGraph> history_scgs(std::span<const ModelVersion> versions);
// Their components as a transaction database, tagged by revision pair.
TransactionDB history_transactions(std::span<const ModelVersion> versions);

// One row per dataset and ranking mode.
struct ReportRow {
  int experiment = 1;
  std::size_t d = 0;
  std::size_t e = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t transactions = 0;
  std::size_t threshold = 0;
  double mining_ms = 0.0;
  double avg_nodes_per_component = 0.0;
  std::optional<std::size_t> size_at_threshold;
  std::vector<std::optional<std::size_t>> truth_ranks;
  std::vector<double> ap;  // parallel to the report's ks
  RankMode mode = RankMode::kCompression;
  bool partial = false;
  std::string error;
};

struct EvalReport {
  std::vector<Cutoff> ks;
  std::vector<ReportRow> rows;

  // MAP per cutoff over the rows of `mode` (parallel to ks).
  std::vector<double> map(RankMode mode) const;
  std::vector<const ReportRow*> rows_of(RankMode mode) const;
};

// Pipeline on an existing history: diff, SCG, threshold, mine, prune, rank
// in both modes, locate `truth`, AP@k. Returns one row per mode; failures
// are recorded in `error` instead of thrown.
std::vector<ReportRow> evaluate_history(std::span<const ModelVersion> versions,
                                        std::span<const LabeledGraph> truth,
                                        const PipelineOptions& options);
// Same for a simulated bundle; fills d, e, p and seed from its config.
std::vector<ReportRow> evaluate_bundle(const RepoBundle& bundle,
                                       const PipelineOptions& options,
                                       int experiment);

struct GridSpec {
  std::vector<std::size_t> d = {10};
  std::vector<std::size_t> e = {5, 10, 20};
  std::vector<double> p = {0.1, 0.2};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  int experiment = 1;
  PipelineOptions pipeline;
  unsigned jobs = 1;

  // {"d": [...], "e": [...], "p": [...], "seeds": [...] or n (1..n),
  //  "experiment": 1|2, "threshold": {"mode": "calibrated"|"relative"|
  //  "fixed", "ratio", "value", "tMin", "sizeLo", "sizeHi", "budget"},
  //  "k": [1, 2, 5, 10, "inf"], "jobs", "timeBudgetS", "maxNodes"}
  static GridSpec from_json(std::string_view text);
  static GridSpec load(const std::string& path);
  std::string to_json() const;
  std::size_t cell_count() const;
};

// Simulates and evaluates every (d, e, p, seed) cell; the simulation seed
// of a cell is its grid seed. Rows are ordered by (d, e, p, seed, mode)
// whatever the number of jobs. `progress` is called after each cell.
EvalReport run_grid(const GridSpec& spec,
                    const std::function<void(std::size_t done, std::size_t total)>&
                        progress = {});

// CSV with header d,e,p,seed,threshold,mining_ms,avg_nodes_per_component,
// size_at_threshold,rank_truth_1,rank_truth_2,ap@<k>...,mode followed by
// experiment,truths,transactions,partial,error. Missing values are "NA".
std::string report_to_csv(const EvalReport& report);
EvalReport report_from_csv(std::string_view text);

// MAP@k table for both modes plus Spearman correlations of compression
// AP@inf with the dataset drivers.
std::string format_report(const EvalReport& report);

struct DriverCorrelation {
  std::string driver;
  double rho = 0.0;
  std::size_t samples = 0;
};
// Spearman of AP@inf (or the largest cutoff) against p, e, d, average
// component size, size at threshold and mining time, for one mode.
std::vector<DriverCorrelation> driver_correlations(const EvalReport& report,
                                                   RankMode mode);

}  // namespace opminer

#endif  // OPMINER_EVALHARNESS_HPP_
