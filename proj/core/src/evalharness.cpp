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

#include "opminer/evalharness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "io_util.hpp"
#include "json.hpp"
#include "opminer/canonical.hpp"
#include "opminer/error.hpp"
#include "opminer/stats.hpp"

namespace opminer {

using nlohmann::json;

std::string cutoff_name(Cutoff k) {
  return k ? std::to_string(*k) : std::string("inf");
}

Cutoff parse_cutoff(std::string_view text) {
  if (text == "inf") return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw InputError("invalid cutoff '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::optional<std::size_t>> locate_truth(
    const RankedList& ranked, std::span<const LabeledGraph> truth) {
  std::vector<std::optional<std::size_t>> ranks;
  for (const auto& t : truth) {
    std::optional<std::size_t> found;
    if (t.node_count() > 0 && is_connected(t)) {
      const CanonicalCode code = canonical_code(t);
      for (const auto& entry : ranked.entries) {
        if (entry.code == code) {
          found = entry.rank;
          break;
        }
      }
    }
    ranks.push_back(found);
  }
  return ranks;
}

double ap_at_k(std::span<const std::optional<std::size_t>> ranks, Cutoff k,
               std::size_t total_relevant) {
  if (total_relevant == 0) {
    throw PreconditionError("ap_at_k: no relevant items");
  }
  std::set<std::size_t> distinct;
  for (const auto& r : ranks) {
    if (r && (!k || *r <= *k)) distinct.insert(*r);
  }
  double sum = 0.0;
  std::size_t seen = 0;
  for (std::size_t r : distinct) {
    ++seen;
    sum += static_cast<double>(seen) / static_cast<double>(r);
  }
  return sum / static_cast<double>(total_relevant);
}

double mean_average_precision(std::span<const double> ap) {
  if (ap.empty()) return 0.0;
  double sum = 0.0;
  for (double v : ap) sum += v;
  return sum / static_cast<double>(ap.size());
}

std::string ThresholdPolicy::name() const {
  switch (mode) {
    case ThresholdMode::kFixed:
      return "fixed";
    case ThresholdMode::kRelative:
      return "relative";
    case ThresholdMode::kCalibrated:
      return "calibrated";
  }
  return "fixed";
}

std::size_t choose_threshold(const TransactionDB& db,
                             const ThresholdPolicy& policy) {
  if (db.empty()) return 1;
  switch (policy.mode) {
    case ThresholdMode::kFixed:
      return std::max<std::size_t>(policy.value, 1);
    case ThresholdMode::kRelative:
      return relative_threshold(db, policy.ratio);
    case ThresholdMode::kCalibrated:
      return calibrate_threshold(db, policy.calibration);
  }
  return 1;
}

std::vector<ChangeGraph> history_scgs(std::span<const ModelVersion> versions) {
  std::vector<ChangeGraph> scgs;
  for (std::size_t i = 1; i < versions.size(); ++i) {
    scgs.push_back(simple_change_graph(difference_graph(versions[i - 1], versions[i])));
  }
  return scgs;
}

TransactionDB history_transactions(std::span<const ModelVersion> versions) {
  const auto scgs = history_scgs(versions);
  const auto txs = scg_transactions(scgs);
  return TransactionDB::from_transactions(txs);
}

std::vector<double> EvalReport::map(RankMode mode) const {
  std::vector<double> out;
  const auto rows = rows_of(mode);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<double> ap;
    for (const ReportRow* r : rows) ap.push_back(r->ap.at(i));
    out.push_back(mean_average_precision(ap));
  }
  return out;
}

std::vector<const ReportRow*> EvalReport::rows_of(RankMode mode) const {
  std::vector<const ReportRow*> out;
  for (const auto& r : rows) {
    if (r.mode == mode) out.push_back(&r);
  }
  return out;
}

std::vector<ReportRow> evaluate_history(std::span<const ModelVersion> versions,
                                        std::span<const LabeledGraph> truth,
                                        const PipelineOptions& options) {
  ReportRow base;
  base.ap.assign(options.ks.size(), 0.0);
  base.truth_ranks.assign(truth.size(), std::nullopt);
  std::optional<RankedList> ranked[2];
  try {
    const TransactionDB db = history_transactions(versions);
    base.transactions = db.size();
    base.avg_nodes_per_component = average_nodes_per_transaction(db);
    if (!db.empty()) {
      ThresholdPolicy policy = options.threshold;
      policy.calibration.time_budget = options.time_budget;
      base.threshold = choose_threshold(db, policy);
      if (base.threshold <= db.size()) {
        base.size_at_threshold = size_at_threshold(db, base.threshold);
      }
      MiningOptions mo;
      mo.threshold = base.threshold;
      mo.time_budget = options.time_budget;
      mo.max_nodes = options.max_nodes;
      const MiningResult mined = mine(db, mo);
      base.mining_ms = mined.elapsed_ms;
      base.partial = mined.partial;
      ranked[0] = recommend(mined.patterns, RankMode::kCompression);
      ranked[1] = recommend(mined.patterns, RankMode::kFrequency);
    }
  } catch (const std::exception& e) {
    base.error = e.what();
  }
  std::vector<ReportRow> rows;
  for (int m = 0; m < 2; ++m) {
    ReportRow row = base;
    row.mode = m == 0 ? RankMode::kCompression : RankMode::kFrequency;
    if (ranked[m] && !truth.empty()) {
      row.truth_ranks = locate_truth(*ranked[m], truth);
      for (std::size_t i = 0; i < options.ks.size(); ++i) {
        row.ap[i] = ap_at_k(row.truth_ranks, options.ks[i], truth.size());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> evaluate_bundle(const RepoBundle& bundle,
                                       const PipelineOptions& options,
                                       int experiment) {
  auto rows = evaluate_history(bundle.versions, bundle.truth, options);
  for (auto& r : rows) {
    r.experiment = experiment;
    r.d = bundle.config.d;
    r.e = bundle.config.e;
    r.p = bundle.config.p;
    r.seed = bundle.config.seed;
  }
  return rows;
}

GridSpec GridSpec::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("grid spec: ") + e.what());
  }
  GridSpec spec;
  try {
    if (doc.contains("d")) spec.d = doc.at("d").get<std::vector<std::size_t>>();
    if (doc.contains("e")) spec.e = doc.at("e").get<std::vector<std::size_t>>();
    if (doc.contains("p")) spec.p = doc.at("p").get<std::vector<double>>();
    if (doc.contains("seeds")) {
      const auto& s = doc.at("seeds");
      if (s.is_number_unsigned()) {
        spec.seeds.clear();
        for (std::uint64_t k = 1; k <= s.get<std::uint64_t>(); ++k) {
          spec.seeds.push_back(k);
        }
      } else {
        spec.seeds = s.get<std::vector<std::uint64_t>>();
      }
    }
    spec.experiment = doc.value("experiment", 1);
    spec.jobs = doc.value("jobs", 1u);
    if (doc.contains("timeBudgetS")) {
      spec.pipeline.time_budget = std::chrono::milliseconds(
          static_cast<std::int64_t>(doc.at("timeBudgetS").get<double>() * 1000.0));
    }
    if (doc.contains("maxNodes") && !doc.at("maxNodes").is_null()) {
      spec.pipeline.max_nodes = doc.at("maxNodes").get<std::size_t>();
    }
    if (doc.contains("k")) {
      spec.pipeline.ks.clear();
      for (const auto& k : doc.at("k")) {
        spec.pipeline.ks.push_back(k.is_string()
                                       ? parse_cutoff(k.get<std::string>())
                                       : parse_cutoff(std::to_string(k.get<std::size_t>())));
      }
    }
    if (doc.contains("threshold")) {
      const auto& t = doc.at("threshold");
      ThresholdPolicy& policy = spec.pipeline.threshold;
      const auto mode = t.value("mode", std::string("calibrated"));
      if (mode == "fixed") {
        policy.mode = ThresholdMode::kFixed;
        policy.value = t.at("value").get<std::size_t>();
      } else if (mode == "relative") {
        policy.mode = ThresholdMode::kRelative;
        policy.ratio = t.value("ratio", 0.4);
      } else if (mode == "calibrated") {
        policy.mode = ThresholdMode::kCalibrated;
        policy.calibration.t_min = t.value("tMin", policy.calibration.t_min);
        policy.calibration.size_lo = t.value("sizeLo", policy.calibration.size_lo);
        policy.calibration.size_hi = t.value("sizeHi", policy.calibration.size_hi);
        policy.calibration.budget = t.value("budget", policy.calibration.budget);
      } else {
        throw InputError("grid spec: unknown threshold mode " + mode);
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("grid spec: ") + e.what());
  }
  if (spec.experiment != 1 && spec.experiment != 2) {
    throw InputError("grid spec: experiment must be 1 or 2");
  }
  if (spec.d.empty() || spec.e.empty() || spec.p.empty() || spec.seeds.empty()) {
    throw InputError("grid spec: d, e, p and seeds must be non-empty");
  }
  if (spec.pipeline.ks.empty()) throw InputError("grid spec: no cutoffs");
  if (spec.jobs == 0) spec.jobs = 1;
  return spec;
}

GridSpec GridSpec::load(const std::string& path) {
  try {
    return from_json(internal::read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string GridSpec::to_json() const {
  json doc;
  doc["d"] = d;
  doc["e"] = e;
  doc["p"] = p;
  doc["seeds"] = seeds;
  doc["experiment"] = experiment;
  doc["jobs"] = jobs;
  doc["timeBudgetS"] =
      static_cast<double>(pipeline.time_budget.count()) / 1000.0;
  if (pipeline.max_nodes) doc["maxNodes"] = *pipeline.max_nodes;
  doc["k"] = json::array();
  for (const auto& k : pipeline.ks) {
    if (k) {
      doc["k"].push_back(*k);
    } else {
      doc["k"].push_back("inf");
    }
  }
  const ThresholdPolicy& t = pipeline.threshold;
  json th;
  th["mode"] = t.name();
  if (t.mode == ThresholdMode::kFixed) th["value"] = t.value;
  if (t.mode == ThresholdMode::kRelative) th["ratio"] = t.ratio;
  if (t.mode == ThresholdMode::kCalibrated) {
    th["tMin"] = t.calibration.t_min;
    th["sizeLo"] = t.calibration.size_lo;
    th["sizeHi"] = t.calibration.size_hi;
    th["budget"] = t.calibration.budget;
  }
  doc["threshold"] = th;
  return doc.dump(1) + "\n";
}

std::size_t GridSpec::cell_count() const {
  return d.size() * e.size() * p.size() * seeds.size();
}

EvalReport run_grid(
    const GridSpec& spec,
    const std::function<void(std::size_t, std::size_t)>& progress) {
  struct Cell {
    std::size_t d, e;
    double p;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (auto d : spec.d) {
    for (auto e : spec.e) {
      for (auto p : spec.p) {
        for (auto s : spec.seeds) cells.push_back({d, e, p, s});
      }
    }
  }
  std::vector<std::vector<ReportRow>> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      std::vector<ReportRow> rows;
      try {
        const RepoBundle bundle =
            simulate(SimConfig::experiment(spec.experiment, c.d, c.e, c.p, c.seed));
        rows = evaluate_bundle(bundle, spec.pipeline, spec.experiment);
      } catch (const std::exception& ex) {
        for (RankMode mode : {RankMode::kCompression, RankMode::kFrequency}) {
          ReportRow r;
          r.experiment = spec.experiment;
          r.d = c.d;
          r.e = c.e;
          r.p = c.p;
          r.seed = c.seed;
          r.mode = mode;
          r.ap.assign(spec.pipeline.ks.size(), 0.0);
          r.error = ex.what();
          rows.push_back(std::move(r));
        }
      }
      results[i] = std::move(rows);
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(finished, cells.size());
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(
      spec.jobs, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  EvalReport report;
  report.ks = spec.pipeline.ks;
  for (auto& rows : results) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  return report;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string fmt(double v, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

std::string fmt_g(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

template <typename T>
T parse_number(const std::string& s, const std::string& column, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("line " + std::to_string(line) + ": bad " + column + " '" +
                     s + "'");
  }
  return value;
}

std::optional<std::size_t> parse_optional(const std::string& s,
                                          const std::string& column,
                                          std::size_t line) {
  if (s == "NA") return std::nullopt;
  return parse_number<std::size_t>(s, column, line);
}

}  // namespace

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "d,e,p,seed,threshold,mining_ms,avg_nodes_per_component,"
         "size_at_threshold,rank_truth_1,rank_truth_2";
  for (const auto& k : report.ks) out << ",ap@" << cutoff_name(k);
  out << ",mode,experiment,truths,transactions,partial,error\n";
  auto opt = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("NA");
  };
  for (const auto& r : report.rows) {
    out << r.d << ',' << r.e << ',' << fmt_g(r.p) << ',' << r.seed << ','
        << r.threshold << ',' << fmt(r.mining_ms, 3) << ','
        << fmt(r.avg_nodes_per_component, 4) << ',' << opt(r.size_at_threshold)
        << ',' << opt(r.truth_ranks.size() > 0 ? r.truth_ranks[0] : std::nullopt)
        << ',' << opt(r.truth_ranks.size() > 1 ? r.truth_ranks[1] : std::nullopt);
    for (double ap : r.ap) out << ',' << fmt(ap, 6);
    out << ',' << rank_mode_name(r.mode) << ',' << r.experiment << ','
        << r.truth_ranks.size() << ',' << r.transactions << ',' << (r.partial ? 1 : 0) << ','
        << csv_quote(r.error) << '\n';
  }
  return out.str();
}

EvalReport report_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw InputError("report: empty input");
  const auto header = csv_split(line);
  std::map<std::string, std::size_t> col;
  EvalReport report;
  std::vector<std::size_t> ap_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    col[header[i]] = i;
    if (header[i].rfind("ap@", 0) == 0) {
      report.ks.push_back(parse_cutoff(header[i].substr(3)));
      ap_cols.push_back(i);
    }
  }
  for (const char* needed : {"d", "e", "p", "seed", "threshold", "mining_ms",
                             "avg_nodes_per_component", "size_at_threshold",
                             "rank_truth_1", "rank_truth_2", "mode"}) {
    if (!col.contains(needed)) {
      throw InputError(std::string("report: missing column ") + needed);
    }
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != header.size()) {
      throw InputError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(f.size()));
    }
    ReportRow r;
    auto at = [&](const char* name) -> const std::string& { return f[col.at(name)]; };
    r.d = parse_number<std::size_t>(at("d"), "d", lineno);
    r.e = parse_number<std::size_t>(at("e"), "e", lineno);
    r.p = parse_number<double>(at("p"), "p", lineno);
    r.seed = parse_number<std::uint64_t>(at("seed"), "seed", lineno);
    r.threshold = parse_number<std::size_t>(at("threshold"), "threshold", lineno);
    r.mining_ms = parse_number<double>(at("mining_ms"), "mining_ms", lineno);
    r.avg_nodes_per_component = parse_number<double>(
        at("avg_nodes_per_component"), "avg_nodes_per_component", lineno);
    r.size_at_threshold =
        parse_optional(at("size_at_threshold"), "size_at_threshold", lineno);
    r.truth_ranks.push_back(parse_optional(at("rank_truth_1"), "rank_truth_1", lineno));
    r.truth_ranks.push_back(parse_optional(at("rank_truth_2"), "rank_truth_2", lineno));
    for (std::size_t c : ap_cols) {
      r.ap.push_back(parse_number<double>(f[c], header[c], lineno));
    }
    try {
      r.mode = parse_rank_mode(at("mode"));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (col.contains("experiment")) {
      r.experiment = parse_number<int>(at("experiment"), "experiment", lineno);
    }
    if (col.contains("truths")) {
      r.truth_ranks.resize(std::min<std::size_t>(
          r.truth_ranks.size(),
          parse_number<std::size_t>(at("truths"), "truths", lineno)));
    }
    if (col.contains("transactions")) {
      r.transactions =
          parse_number<std::size_t>(at("transactions"), "transactions", lineno);
    }
    if (col.contains("partial")) r.partial = at("partial") == "1";
    if (col.contains("error")) r.error = at("error");
    report.rows.push_back(std::move(r));
  }
  return report;
}

std::vector<DriverCorrelation> driver_correlations(const EvalReport& report,
                                                   RankMode mode) {
  std::vector<DriverCorrelation> out;
  if (report.ks.empty()) return out;
  std::size_t kcol = report.ks.size() - 1;
  for (std::size_t i = 0; i < report.ks.size(); ++i) {
    if (!report.ks[i]) kcol = i;
  }
  const auto rows = report.rows_of(mode);
  using Getter = std::optional<double> (*)(const ReportRow&);
  const std::pair<const char*, Getter> drivers[] = {
      {"p", [](const ReportRow& r) -> std::optional<double> { return r.p; }},
      {"e", [](const ReportRow& r) -> std::optional<double> {
         return static_cast<double>(r.e);
       }},
      {"d", [](const ReportRow& r) -> std::optional<double> {
         return static_cast<double>(r.d);
       }},
      {"avg_nodes_per_component",
       [](const ReportRow& r) -> std::optional<double> {
         return r.avg_nodes_per_component;
       }},
      {"size_at_threshold", [](const ReportRow& r) -> std::optional<double> {
         if (!r.size_at_threshold) return std::nullopt;
         return static_cast<double>(*r.size_at_threshold);
       }},
      {"threshold", [](const ReportRow& r) -> std::optional<double> {
         return static_cast<double>(r.threshold);
       }},
      {"mining_ms",
       [](const ReportRow& r) -> std::optional<double> { return r.mining_ms; }},
  };
  for (const auto& [name, get] : drivers) {
    std::vector<double> ap;
    std::vector<double> x;
    for (const ReportRow* r : rows) {
      const auto v = get(*r);
      if (!v) continue;
      ap.push_back(r->ap[kcol]);
      x.push_back(*v);
    }
    DriverCorrelation c;
    c.driver = name;
    c.samples = ap.size();
    c.rho = ap.size() >= 2 ? spearman(ap, x) : 0.0;
    out.push_back(c);
  }
  return out;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  const std::size_t datasets = report.rows_of(RankMode::kCompression).size();
  std::size_t failed = 0;
  std::size_t partial = 0;
  for (const ReportRow* r : report.rows_of(RankMode::kCompression)) {
    failed += !r->error.empty();
    partial += r->partial;
  }
  out << "datasets: " << datasets << " (failed " << failed << ", partial "
      << partial << ")\n\n";
  out << std::left << std::setw(12) << "mode";
  for (const auto& k : report.ks) {
    out << std::right << std::setw(10) << ("MAP@" + cutoff_name(k));
  }
  out << "\n";
  for (RankMode mode : {RankMode::kCompression, RankMode::kFrequency}) {
    out << std::left << std::setw(12) << rank_mode_name(mode);
    for (double v : report.map(mode)) out << std::right << std::setw(10) << fmt(v, 3);
    out << "\n";
  }
  std::size_t located_all = 0;
  for (const ReportRow* r : report.rows_of(RankMode::kCompression)) {
    bool all = !r->truth_ranks.empty();
    for (const auto& t : r->truth_ranks) all = all && t.has_value();
    located_all += all;
  }
  out << "\nall truths located (compression): " << located_all << "/" << datasets
      << "\n\nSpearman correlation with AP (compression):\n";
  for (const auto& c : driver_correlations(report, RankMode::kCompression)) {
    out << "  " << std::left << std::setw(26) << c.driver << std::right
        << std::setw(8) << fmt(c.rho, 3) << "  (n=" << c.samples << ")\n";
  }
  return out.str();
}

}  // namespace opminer
