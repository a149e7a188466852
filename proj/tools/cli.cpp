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

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "opminer/component_model.hpp"
#include "opminer/error.hpp"
#include "opminer/evalharness.hpp"
#include "opminer/miner.hpp"
#include "opminer/model.hpp"
#include "opminer/modeldiff.hpp"
#include "opminer/pattern_io.hpp"
#include "opminer/ranker.hpp"
#include "opminer/rulegen.hpp"
#include "opminer/simgen.hpp"
#include "opminer/transaction_io.hpp"

namespace opminer::cli {
namespace {

namespace fs = std::filesystem;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Flag value first, then OPMINER_TIME_BUDGET_S, then `fallback`.
std::chrono::milliseconds time_budget(std::optional<double> flag,
                                      std::chrono::milliseconds fallback) {
  std::optional<double> seconds = flag;
  if (!seconds) {
    if (const char* env = std::getenv("OPMINER_TIME_BUDGET_S")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0.0)) {
        throw InputError(std::string("OPMINER_TIME_BUDGET_S: invalid value '") +
                         env + "'");
      }
      seconds = v;
    }
  }
  if (!seconds) return fallback;
  if (!(*seconds > 0.0)) throw InputError("time budget must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(*seconds * 1000.0));
}

std::string fmt_ms(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << ms << " ms";
  return out.str();
}

void print_change_summary(std::ostream& os, std::span<const ChangeGraph> scgs,
                          std::size_t components) {
  std::size_t created = 0;
  std::size_t deleted = 0;
  std::size_t boundary = 0;
  for (const auto& scg : scgs) {
    created += scg.count(ChangeKind::kCreate);
    deleted += scg.count(ChangeKind::kDelete);
    boundary += scg.count(ChangeKind::kPreserved);
  }
  os << "components: " << components << "\n"
     << "created: " << created << "\n"
     << "deleted: " << deleted << "\n"
     << "changed elements: " << created + deleted << "\n"
     << "boundary nodes: " << boundary << "\n";
}

std::vector<fs::path> bundle_versions(const fs::path& dir) {
  std::vector<fs::path> files;
  for (std::size_t i = 0;; ++i) {
    const fs::path f = dir / ("m" + std::to_string(i) + ".json");
    if (!fs::exists(f)) break;
    files.push_back(f);
  }
  if (files.empty()) throw InputError(dir.string() + ": no m0.json");
  return files;
}

std::optional<MetaModel> load_metamodel(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return MetaModel::load(path);
}

std::vector<ModelVersion> load_versions(std::span<const fs::path> files,
                                        const std::optional<MetaModel>& mm) {
  std::vector<ModelVersion> versions;
  for (const auto& f : files) {
    ModelVersion m = ModelVersion::load(f.string());
    if (mm) {
      try {
        require_conformance(*mm, m);
      } catch (const ConformanceError& e) {
        throw ConformanceError(f.string() + ": " + e.what());
      }
    }
    versions.push_back(std::move(m));
  }
  return versions;
}

// --- diff ------------------------------------------------------------------

struct DiffArgs {
  std::vector<std::string> files;
  std::string repo;
  std::string metamodel;
  std::string out;
};

int cmd_diff(const DiffArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  std::optional<MetaModel> mm = load_metamodel(a.metamodel);
  if (!a.repo.empty()) {
    if (!a.files.empty()) throw InputError("diff: give either --repo or two files");
    files = bundle_versions(a.repo);
    if (!mm && fs::exists(fs::path(a.repo) / "metamodel.json")) {
      mm = MetaModel::load((fs::path(a.repo) / "metamodel.json").string());
    }
  } else {
    if (a.files.size() != 2) throw InputError("diff: expected <old> <new>");
    files = {a.files[0], a.files[1]};
  }
  const auto versions = load_versions(files, mm);
  const auto scgs = history_scgs(versions);
  const auto txs = scg_transactions(scgs);
  std::ostringstream text;
  write_transactions(text, txs);
  std::ostream& summary = a.out.empty() ? err : out;
  if (a.out.empty()) {
    out << text.str();
  } else {
    write_text(a.out, text.str());
  }
  print_change_summary(summary, scgs, txs.size());
  return kOk;
}

// --- mine ------------------------------------------------------------------

struct MineArgs {
  std::vector<std::string> inputs;
  std::optional<double> threshold;
  bool relative = false;
  bool automatic = false;
  std::optional<std::size_t> max_nodes;
  std::string by = "compression";
  std::string out;
  unsigned jobs = 1;
  std::optional<double> budget_s;
};

TransactionDB load_database(const std::vector<std::string>& inputs) {
  TransactionDB db;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      const auto files = bundle_versions(in);
      const auto versions = load_versions(files, std::nullopt);
      TransactionDB part = history_transactions(versions);
      for (std::size_t i = 0; i < part.size(); ++i) {
        db.add(std::move(part.transactions[i]), std::move(part.sources[i]));
      }
    } else {
      const auto txs = read_transactions_file(in);
      TransactionDB part = TransactionDB::from_transactions(txs);
      for (std::size_t i = 0; i < part.size(); ++i) {
        db.add(std::move(part.transactions[i]), std::move(part.sources[i]));
      }
    }
  }
  return db;
}

int cmd_mine(const MineArgs& a, std::ostream& out, std::ostream& err) {
  const int modes = (a.automatic ? 1 : 0) + (a.threshold ? 1 : 0);
  if (modes > 1) throw InputError("mine: --auto and --threshold exclude each other");
  if (a.relative && !a.threshold) {
    throw InputError("mine: --relative needs --threshold <ratio>");
  }
  const RankMode mode = parse_rank_mode(a.by);
  const auto budget = time_budget(a.budget_s, std::chrono::milliseconds(300'000));
  const TransactionDB db = load_database(a.inputs);

  PatternDocument doc;
  ThresholdPolicy policy;
  if (a.threshold && a.relative) {
    if (!(*a.threshold > 0.0 && *a.threshold <= 1.0)) {
      throw InputError("mine: relative threshold must be in (0, 1]");
    }
    policy.mode = ThresholdMode::kRelative;
    policy.ratio = *a.threshold;
    doc.header.ratio = *a.threshold;
  } else if (a.threshold) {
    const double t = *a.threshold;
    if (t < 1.0 || std::floor(t) != t) {
      throw InputError("mine: absolute threshold must be a positive integer");
    }
    policy.mode = ThresholdMode::kFixed;
    policy.value = static_cast<std::size_t>(t);
  } else {
    policy.mode = ThresholdMode::kCalibrated;
  }
  policy.calibration.time_budget = budget;
  doc.header.threshold_mode = policy.name();
  doc.header.transactions = db.size();

  const auto start = std::chrono::steady_clock::now();
  doc.header.threshold = choose_threshold(db, policy);
  MiningResult mined;
  if (!db.empty()) {
    MiningOptions mo;
    mo.threshold = doc.header.threshold;
    mo.max_nodes = a.max_nodes;
    mo.time_budget = budget;
    mo.jobs = std::max(1u, a.jobs);
    mined = mine(db, mo);
  }
  const double wall = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  doc.header.partial = mined.partial;
  doc.patterns = std::move(mined.patterns);
  doc.ranked = recommend(doc.patterns, mode);
  const std::string json = pattern_document_to_json(doc);
  if (a.out.empty()) {
    out << json;
  } else {
    write_text(a.out, json);
  }
  std::ostream& info = a.out.empty() ? err : out;
  info << "transactions: " << db.size() << "\n"
       << "threshold: " << doc.header.threshold << " (" << doc.header.threshold_mode
       << ")\n"
       << "patterns: " << doc.patterns.size() << "\n"
       << "recommended: " << doc.ranked->entries.size() << "\n"
       << "wall time: " << fmt_ms(wall) << "\n";
  if (mined.partial) {
    err << "mine: time budget exceeded; partial results written\n";
    return kBudgetExceeded;
  }
  return kOk;
}

// --- rank ------------------------------------------------------------------

struct RankArgs {
  std::string input;
  std::string by = "compression";
  std::string out;
  std::optional<std::size_t> top;
};

int cmd_rank(const RankArgs& a, std::ostream& out, std::ostream& err) {
  const RankMode mode = parse_rank_mode(a.by);
  const PatternDocument doc = pattern_document_from_json(read_text(a.input));
  RankedList list = recommend(doc.patterns, mode);
  if (a.top && list.entries.size() > *a.top) list.entries.resize(*a.top);
  const std::string json = ranked_list_to_json(list);
  if (a.out.empty()) {
    out << json;
  } else {
    write_text(a.out, json);
    out << "ranked: " << list.entries.size() << " (" << rank_mode_name(mode)
        << ")\n";
  }
  if (doc.header.partial) err << "rank: input comes from a partial mining run\n";
  return kOk;
}

// --- rules -----------------------------------------------------------------

struct RulesArgs {
  std::string input;
  std::string out;
  std::optional<std::size_t> top;
  bool dot = false;
};

int cmd_rules(const RulesArgs& a, std::ostream& out, std::ostream& err) {
  const RankedList list = load_ranked_list(a.input);
  fs::create_directories(a.out);
  std::size_t written = 0;
  std::size_t failed = 0;
  const std::size_t n =
      a.top ? std::min(*a.top, list.entries.size()) : list.entries.size();
  for (std::size_t i = 0; i < n; ++i) {
    const RankedEntry& entry = list.entries[i];
    std::ostringstream name;
    name << "rule_" << std::setw(3) << std::setfill('0') << entry.rank;
    try {
      const EditRule rule = pattern_to_rule(entry.graph, name.str(), entry.code.str());
      write_text((fs::path(a.out) / (name.str() + ".json")).string(), rule.to_json());
      if (a.dot) {
        write_text((fs::path(a.out) / (name.str() + ".dot")).string(),
                   rule_to_dot(rule));
      }
      ++written;
    } catch (const InputError& e) {
      err << "rules: rank " << entry.rank << ": " << e.what() << "\n";
      ++failed;
    }
  }
  out << "rules written: " << written << "\n";
  if (failed > 0) {
    out << "rules failed: " << failed << "\n";
    return kPartialFailure;
  }
  return kOk;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string metamodel;
  std::size_t d = 10;
  std::size_t e = 1;
  double p = 0.0;
  std::uint64_t seed = 1;
  int experiment = 1;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  SimConfig config = SimConfig::experiment(a.experiment, a.d, a.e, a.p, a.seed);
  if (!a.metamodel.empty()) config.metamodel = MetaModel::load(a.metamodel);
  const RepoBundle bundle = simulate(config);
  save_bundle(bundle, a.out);
  out << "versions: " << bundle.versions.size() << "\n"
      << "core applications: " << bundle.applied(ApplicationRole::kCore) << "\n"
      << "perturbations: " << bundle.applied(ApplicationRole::kPerturbation) << "\n"
      << "skipped: " << bundle.skipped() << "\n";
  for (const auto& w : bundle.warnings) err << "warning: " << w << "\n";
  return kOk;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string grid;
  std::string out;
  unsigned jobs = 0;
  std::optional<double> budget_s;
  std::string ranked;
  std::vector<std::string> truth;
  std::vector<std::string> ks;
  bool quiet = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.ranked.empty()) {
    if (!a.grid.empty()) throw InputError("eval: give either --grid or --ranked");
    if (a.truth.empty()) throw InputError("eval: --ranked needs --truth");
    std::vector<LabeledGraph> truth;
    for (const auto& f : a.truth) {
      for (auto& t : read_transactions_file(f)) truth.push_back(std::move(t.graph));
    }
    if (truth.empty()) throw InputError("eval: no truth graphs");
    const RankedList list = load_ranked_list(a.ranked);
    const auto ranks = locate_truth(list, truth);
    std::vector<Cutoff> ks;
    if (a.ks.empty()) {
      ks = PipelineOptions{}.ks;
    } else {
      for (const auto& k : a.ks) ks.push_back(parse_cutoff(k));
    }
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      out << "rank_truth_" << i + 1 << ": "
          << (ranks[i] ? std::to_string(*ranks[i]) : std::string("NA")) << "\n";
    }
    for (const auto& k : ks) {
      out << "ap@" << cutoff_name(k) << ": " << std::fixed << std::setprecision(6)
          << ap_at_k(ranks, k, truth.size()) << "\n";
    }
    return kOk;
  }
  if (a.grid.empty() || a.out.empty()) {
    throw InputError("eval: --grid and --out are required");
  }
  GridSpec spec = GridSpec::load(a.grid);
  if (a.jobs > 0) spec.jobs = a.jobs;
  spec.pipeline.time_budget = time_budget(a.budget_s, spec.pipeline.time_budget);
  fs::create_directories(a.out);
  write_text((fs::path(a.out) / "grid.json").string(), spec.to_json());
  const auto start = std::chrono::steady_clock::now();
  const EvalReport report = run_grid(spec, [&](std::size_t done, std::size_t total) {
    if (!a.quiet) err << "\r" << done << "/" << total << " datasets" << std::flush;
  });
  if (!a.quiet) err << "\n";
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  write_text((fs::path(a.out) / "report.csv").string(), report_to_csv(report));
  out << format_report(report);
  out << "\nwall time: " << std::fixed << std::setprecision(1) << wall << " s\n";
  std::size_t failed = 0;
  for (const auto& r : report.rows) failed += !r.error.empty();
  return failed > 0 ? kPartialFailure : kOk;
}

// --- report ----------------------------------------------------------------

int cmd_report(const std::string& in, std::ostream& out) {
  fs::path path(in);
  if (fs::is_directory(path)) path /= "report.csv";
  const EvalReport report = report_from_csv(read_text(path.string()));
  out << format_report(report);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Mine recurring edit operations from model histories", "opminer"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  DiffArgs diff_args;
  auto* diff = app.add_subcommand("diff", "Simple change graph components of two versions");
  diff->add_option("files", diff_args.files, "<old.json> <new.json>");
  diff->add_option("--repo", diff_args.repo, "Bundle directory; diffs m<i> -> m<i+1>");
  diff->add_option("--metamodel", diff_args.metamodel, "Check conformance first");
  diff->add_option("-o,--out", diff_args.out, "Output file (line format)");

  MineArgs mine_args;
  auto* mine_cmd = app.add_subcommand("mine", "Mine, prune and rank frequent subgraphs");
  mine_cmd->add_option("inputs", mine_args.inputs,
                       "Transaction files or bundle directories")->required();
  mine_cmd->add_option("--threshold", mine_args.threshold,
                       "Absolute support, or a ratio with --relative");
  mine_cmd->add_flag("--relative", mine_args.relative,
                     "Treat --threshold as a fraction of the transactions");
  mine_cmd->add_flag("--auto", mine_args.automatic,
                     "Calibrate the threshold with the subtree budget (default)");
  mine_cmd->add_option("--max-nodes", mine_args.max_nodes, "Largest pattern size");
  mine_cmd->add_option("--by", mine_args.by, "compression or frequency");
  mine_cmd->add_option("-o,--out", mine_args.out, "Output pattern document");
  mine_cmd->add_option("-j,--jobs", mine_args.jobs, "Worker threads");
  mine_cmd->add_option("--time-budget", mine_args.budget_s, "Seconds");

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "Prune and rank a pattern document");
  rank_cmd->add_option("input", rank_args.input, "Pattern document")->required();
  rank_cmd->add_option("--by", rank_args.by, "compression or frequency");
  rank_cmd->add_option("--top", rank_args.top, "Keep the first n entries");
  rank_cmd->add_option("-o,--out", rank_args.out, "Output ranked list");

  RulesArgs rules_args;
  auto* rules = app.add_subcommand("rules", "Turn ranked patterns into edit rules");
  rules->add_option("input", rules_args.input, "Ranked list or pattern document")
      ->required();
  rules->add_option("-o,--out", rules_args.out, "Output directory")->required();
  rules->add_option("--top", rules_args.top, "Only the first n entries");
  rules->add_flag("--dot", rules_args.dot, "Also write Graphviz files");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic model history");
  sim->add_option("--metamodel", sim_args.metamodel, "Meta-model JSON");
  sim->add_option("--d", sim_args.d, "Revisions")->required();
  sim->add_option("--e", sim_args.e, "Core applications per revision")->required();
  sim->add_option("--p", sim_args.p, "Perturbation probability")->required();
  sim->add_option("--seed", sim_args.seed, "Seed");
  sim->add_option("--experiment", sim_args.experiment, "1 (one core rule) or 2 (two)");
  sim->add_option("-o,--out", sim_args.out, "Bundle directory")->required();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Run an experiment grid or score one ranking");
  eval->add_option("--grid", eval_args.grid, "Grid spec JSON");
  eval->add_option("-o,--out", eval_args.out, "Output directory");
  eval->add_option("-j,--jobs", eval_args.jobs, "Parallel grid cells");
  eval->add_option("--time-budget", eval_args.budget_s, "Mining seconds per dataset");
  eval->add_option("--ranked", eval_args.ranked, "Ranked list to score");
  eval->add_option("--truth", eval_args.truth, "Ground-truth graphs (line format)");
  eval->add_option("--k", eval_args.ks, "Cutoffs, e.g. 1 5 inf");
  eval->add_flag("-q,--quiet", eval_args.quiet, "No progress output");

  std::string report_in;
  auto* report = app.add_subcommand("report", "Print MAP tables of an eval run");
  report->add_option("--in", report_in, "Eval output directory or CSV")->required();

  std::vector<std::string> argv_storage{"opminer"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*diff) return cmd_diff(diff_args, out, err);
    if (*mine_cmd) return cmd_mine(mine_args, out, err);
    if (*rank_cmd) return cmd_rank(rank_args, out, err);
    if (*rules) return cmd_rules(rules_args, out, err);
    if (*sim) return cmd_simulate(sim_args, out, err);
    if (*eval) return cmd_eval(eval_args, out, err);
    if (*report) return cmd_report(report_in, out);
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kPartialFailure;
  }
  return kInputError;
}

}  // namespace opminer::cli
