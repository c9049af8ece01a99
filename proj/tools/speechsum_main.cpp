// Copyright 2026 The speechsum Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// speechsum: pre-generate data summaries, answer queries from the store,
// and check the optimizers.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speechsum/dataset.hpp"
#include "speechsum/errors.hpp"
#include "speechsum/kernels.hpp"
#include "speechsum/oracle.hpp"
#include "speechsum/pipeline.hpp"
#include "speechsum/runtime.hpp"
#include "speechsum/store.hpp"
#include "speechsum/synth.hpp"
#include "speechsum/verify.hpp"

namespace {

using namespace speechsum;

enum Exit : int { kOk = 0, kInputError = 1, kStoreError = 2, kNoMatch = 3 };

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// preprocess

struct PreprocessArgs {
  std::string config;
  std::string out;
  std::string algo;
  int threads = 0;
  double timeout_secs = 0.0;
};

int cmd_preprocess(const PreprocessArgs& a) {
  EngineConfig cfg = load_config(a.config);
  if (!a.algo.empty()) cfg.algorithm = parse_algorithm(a.algo);
  const Dataset ds = load_dataset(cfg.data, cfg);
  if (ds.dropped_rows() > 0) {
    std::cerr << "warning: dropped " << ds.dropped_rows()
              << " rows without any target value\n";
  }

  PreprocessOptions opts;
  opts.threads = a.threads;
  if (a.timeout_secs > 0.0) {
    opts.group_timeout = std::chrono::milliseconds(
        static_cast<long long>(a.timeout_secs * 1000.0));
  }
  PreprocessReport report;
  const SpeechStore store = build_store(ds, cfg, opts, &report);
  save_store(store, a.out);

  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const TargetTiming& t : report.targets) {
    std::cout << "target " << t.target << ": " << t.records << " records in "
              << fixed(t.millis, 1) << " ms\n";
  }
  std::cout << "algorithm: " << to_string(cfg.algorithm) << '\n'
            << "records: " << report.records << '\n'
            << "fact gain evaluations: " << report.gain_evaluations << '\n'
            << "empty scopes skipped: " << report.skipped_empty << '\n'
            << "timeouts: " << report.timeouts << '\n'
            << "store: " << a.out << '\n';
  return kOk;
}

// query / repl

SpeechStore open_store(const std::string& path) {
  SpeechStore store = load_store(path);
  const auto& cfg = store.manifest().config;
  if (cfg.contains("data") && cfg["data"].is_string()) {
    // The manifest keeps the file name only; look next to the store.
    const auto data = std::filesystem::path(path).parent_path() /
                      cfg["data"].get<std::string>();
    if (std::filesystem::exists(data)) {
      if (auto warning = check_fingerprint(store, data)) {
        std::cerr << "warning: " << *warning << '\n';
      }
    }
  }
  return store;
}

int cmd_query(const std::string& store_path, const std::string& text) {
  const SpeechStore store = open_store(store_path);
  const SpeechRecord& r = lookup(store, parse_query(text, store.manifest().schema));
  std::cout << r.text << '\n' << provenance_line(r) << '\n';
  return kOk;
}

int cmd_repl(const std::string& store_path) {
  const SpeechStore store = open_store(store_path);
  std::cout << store.size() << " speeches loaded; :schema lists names, :quit exits\n";
  run_repl(store, std::cin, std::cout);
  return kOk;
}

// verify

std::optional<Instance> config_instance(const EngineConfig& cfg) {
  auto ds = std::make_shared<const Dataset>(load_dataset(cfg.data, cfg));
  Slice slice(*ds, 0, all_rows(*ds));
  const std::vector<ColumnSet> groups =
      candidate_fact_groups({}, ds->n_dims(), cfg.max_extra_fact_preds,
                            required_columns(*ds, cfg));
  std::vector<Fact> facts = generate_facts(slice, groups);
  const auto m = static_cast<std::size_t>(cfg.speech_length);
  if (subsets_up_to(facts.size(), m) > kDefaultOracleBudget) return std::nullopt;
  const double prior = resolve_prior(*ds, 0, cfg);
  return Instance{ds, std::move(slice), std::move(facts), m, prior,
                  "config " + cfg.data.filename().string()};
}

int cmd_verify(const std::string& config, std::size_t instances, std::uint64_t seed) {
  VerifyOptions opts;
  opts.instances = instances;
  opts.seed = seed;
  std::vector<Instance> all = verification_instances(opts);
  if (!config.empty()) {
    const EngineConfig cfg = load_config(config);
    if (auto inst = config_instance(cfg)) {
      all.push_back(std::move(*inst));
    } else {
      std::cout << "note: configured data exceeds the oracle budget; not included\n";
    }
  }

  std::vector<SuiteResult> results;
  results.push_back(check_oracle_equivalence(all));
  results.push_back(check_greedy_guarantee(all));
  results.push_back(check_pruning_equivalence(all));
  results.push_back(check_submodularity(opts.submodularity_triples, seed + 1));
  results.push_back(check_permutation_elimination(all));

  bool ok = true;
  std::printf("%-26s %7s %8s  %s\n", "suite", "cases", "result", "detail");
  for (const SuiteResult& r : results) {
    std::string detail = r.first_failure;
    if (r.metric) detail = r.metric_name + " = " + fixed(*r.metric, 4) +
                           (detail.empty() ? "" : "; " + detail);
    std::printf("%-26s %7zu %8s  %s\n", r.name.c_str(), r.cases,
                r.passed() ? "PASS" : "FAIL", detail.c_str());
    ok = ok && r.passed();
  }
  return ok ? kOk : kInputError;
}

// bench

struct BenchArgs {
  std::size_t dims = 3;
  std::size_t values = 10;
  std::size_t rows = 10000;
  std::string speech_lengths = "3";
  int extra_preds = 2;
  std::string algos = "greedy,greedy-pruned,greedy-opt";
  std::string out;
  std::uint64_t seed = 1;
  bool skewed = false;
  bool no_overall = false;
  double timeout_secs = 0.0;
  int threads = 0;
};

int cmd_bench(const BenchArgs& a) {
  if (a.threads > 0) kernels::set_threads(a.threads);
  const Dataset ds = a.skewed ? skewed_dataset(a.rows, a.values, a.seed)
                              : synthetic_dataset(a.dims, a.values, a.rows, a.seed);
  const Slice slice(ds, 0, all_rows(ds));
  std::vector<ColumnSet> groups = candidate_fact_groups({}, ds.n_dims(), a.extra_preds);
  if (a.no_overall) std::erase(groups, ColumnSet{});
  const FactCatalog catalog = FactCatalog::generate(slice, groups);
  const double prior = ds.target(0).mean();

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw ConfigError("cannot write " + a.out);
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  out << "algo,dims,values,rows,m,facts,gain_evals,millis,utility\n";

  std::vector<std::size_t> lengths;
  for (const std::string& s : split_list(a.speech_lengths)) lengths.push_back(std::stoul(s));
  for (const std::string& name : split_list(a.algos)) {
    const Algorithm algo = parse_algorithm(name);
    for (std::size_t m : lengths) {
      const Deadline deadline =
          a.timeout_secs > 0.0
              ? Deadline::after(std::chrono::milliseconds(
                    static_cast<long long>(a.timeout_secs * 1000.0)))
              : Deadline();
      const auto start = std::chrono::steady_clock::now();
      std::string evals = "timeout";
      std::string utility = "timeout";
      try {
        const SummaryResult r = summarize(catalog, prior, m, algo, PruningConfig{}, true, deadline);
        evals = std::to_string(r.gain_evaluations);
        utility = fixed(r.utility, 6);
      } catch (const TimeoutError&) {
      }
      const double millis = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
      out << name << ',' << ds.n_dims() << ',' << a.values << ',' << ds.n_rows() << ','
          << m << ',' << catalog.size() << ',' << evals << ',' << fixed(millis, 3) << ','
          << utility << '\n';
    }
  }
  return kOk;
}

// synth

int cmd_synth(const std::string& kind, const std::string& out, std::size_t dims,
              std::size_t values, std::size_t rows, std::uint64_t seed) {
  Dataset ds = kind == "flights"    ? flight_fixture()
               : kind == "skewed"   ? skewed_dataset(rows, values, seed)
               : kind == "synthetic" ? synthetic_dataset(dims, values, rows, seed)
                                     : throw ConfigError("unknown dataset kind '" + kind + "'");
  std::ofstream file(out);
  if (!file) throw ConfigError("cannot write " + out);
  write_csv(ds, file);
  std::cout << "wrote " << ds.n_rows() << " rows to " << out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pre-generated data summaries: build a speech store and query it"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* preprocess = app.add_subcommand("preprocess", "Summarize every query scope into a store");
  preprocess->add_option("--config", pre.config, "Engine config (JSON)")->required();
  preprocess->add_option("--out", pre.out, "Store file to write")->required();
  preprocess->add_option("--algo", pre.algo, "exact|greedy|greedy-pruned|greedy-opt");
  preprocess->add_option("--threads", pre.threads, "Worker threads (default: all)");
  preprocess->add_option("--timeout-secs", pre.timeout_secs,
                         "Abort a query-scope group after this many seconds");

  std::string store_path;
  std::string query_text;
  auto* query = app.add_subcommand("query", "Answer one query from a store");
  query->add_option("--store", store_path, "Store file")->required();
  query->add_option("text", query_text, "TARGET [where COL = VALUE {and COL = VALUE}]")
      ->required();

  auto* repl = app.add_subcommand("repl", "Answer queries interactively");
  repl->add_option("--store", store_path, "Store file")->required();

  std::string verify_config;
  std::size_t instances = 50;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the optimizer property suites");
  verify->add_option("--config", verify_config, "Also check the configured dataset");
  verify->add_option("--instances", instances, "Random instances");
  verify->add_option("--seed", seed, "Random seed");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time the algorithms on synthetic data");
  bench->add_option("--dims", bench_args.dims, "Dimension columns");
  bench->add_option("--values", bench_args.values, "Values per dimension");
  bench->add_option("--rows", bench_args.rows, "Rows");
  bench->add_option("--speech-length", bench_args.speech_lengths, "Comma-separated lengths");
  bench->add_option("--extra-preds", bench_args.extra_preds, "Fact predicates");
  bench->add_option("--algos", bench_args.algos, "Comma-separated algorithms");
  bench->add_option("--out", bench_args.out, "Report file (default: stdout)");
  bench->add_option("--seed", bench_args.seed, "Random seed");
  bench->add_option("--timeout-secs", bench_args.timeout_secs, "Per-run limit");
  bench->add_option("--threads", bench_args.threads, "Worker threads");
  bench->add_flag("--skewed", bench_args.skewed,
                  "Two dims: 2 values carrying the signal, --values noise values");
  bench->add_flag("--no-overall", bench_args.no_overall,
                  "Drop the unrestricted fact (it equals the prior)");

  std::string synth_kind = "synthetic";
  std::string synth_out;
  std::size_t synth_dims = 3;
  std::size_t synth_values = 5;
  std::size_t synth_rows = 1000;
  std::uint64_t synth_seed = 1;
  auto* synth = app.add_subcommand("synth", "Write a generated dataset as CSV");
  synth->add_option("--kind", synth_kind, "flights|synthetic|skewed");
  synth->add_option("--out", synth_out, "CSV file")->required();
  synth->add_option("--dims", synth_dims, "Dimension columns");
  synth->add_option("--values", synth_values, "Values per dimension");
  synth->add_option("--rows", synth_rows, "Rows");
  synth->add_option("--seed", synth_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (*preprocess) return cmd_preprocess(pre);
    if (*query) return cmd_query(store_path, query_text);
    if (*repl) return cmd_repl(store_path);
    if (*verify) return cmd_verify(verify_config, instances, seed);
    if (*bench) return cmd_bench(bench_args);
    if (*synth) {
      return cmd_synth(synth_kind, synth_out, synth_dims, synth_values, synth_rows, synth_seed);
    }
  } catch (const StoreError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStoreError;
  } catch (const QueryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoMatch;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
