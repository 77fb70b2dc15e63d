// Command-line front end: generate benchmark graphs, run detection, evaluate
// partitions against ground truth and sweep benchmark suites to CSV.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "veco/actors.hpp"
#include "veco/detection.hpp"
#include "veco/edge_list.hpp"
#include "veco/errors.hpp"
#include "veco/generators.hpp"
#include "veco/karate.hpp"
#include "veco/metrics.hpp"
#include "veco/rng.hpp"
#include "veco/sweep.hpp"

namespace {

using namespace veco;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

struct DetectFlags {
  std::string input;
  std::string out;
  double tau = 0.2;
  std::uint64_t seed = 0;
  std::string ties = "seeded";
  std::string norm = "degree";
  std::string k_rule = "half";
  std::string engine = "pipeline";
  std::uint32_t pollers = 1;
  std::string poll_plan = "blocks";
  int threads = 1;
  bool strict = false;
};

DetectionParams make_params(const DetectFlags& flags) {
  DetectionParams params;
  params.tau = flags.tau;
  params.seed = flags.seed;
  params.ties = flags.ties == "lowest" ? TiePolicy::lowest_id : TiePolicy::seeded_random;
  params.norm = flags.norm == "list" ? ThresholdNorm::min_list_size : ThresholdNorm::min_degree;
  if (flags.k_rule == "one") {
    params.k_rule = one_k;
  } else if (flags.k_rule == "full") {
    params.k_rule = full_k;
  } else {
    params.k_rule = half_degree_k;
  }
  return params;
}

Execution make_exec(int threads) {
  Execution exec;
  exec.parallel = threads > 1;
  exec.threads = threads;
  return exec;
}

LoadedGraph load_input(const std::string& input, bool strict = false) {
  LoadOptions opts;
  opts.strip_isolated = !strict;
  LoadedGraph loaded;
  if (input == "@karate") {
    std::istringstream in(karate_edge_text());
    loaded = load_edge_list(in, opts);
  } else if (input == "-") {
    loaded = load_edge_list(std::cin, opts);
  } else {
    loaded = load_edge_list_file(input, opts);
  }
  if (loaded.stats.self_loops_dropped > 0) {
    std::cerr << "warning: dropped " << loaded.stats.self_loops_dropped << " self-loop(s)\n";
  }
  if (loaded.stats.duplicates_collapsed > 0) {
    std::cerr << "warning: collapsed " << loaded.stats.duplicates_collapsed
              << " duplicate edge(s)\n";
  }
  if (loaded.stats.isolated_stripped > 0) {
    std::cerr << "warning: stripped " << loaded.stats.isolated_stripped
              << " isolated vertex(es)\n";
  }
  return loaded;
}

int cmd_detect(const DetectFlags& flags) {
  LoadedGraph loaded = load_input(flags.input, flags.strict);
  ValidationReport report = validate(loaded.graph);
  if (!report.ok()) {
    throw DataError("input graph failed validation: " + report.to_string());
  }

  DetectionParams params = make_params(flags);
  Execution exec = make_exec(flags.threads);

  Assignment assignment;
  if (flags.engine == "actors") {
    assignment = run_rounds(loaded.graph, params, exec).assignment;
  } else {
    CandidateLists lists = compile_all_candidates(loaded.graph, params, exec);
    assignment = select_all_preferred(loaded.graph, lists, params, exec);
  }

  const std::size_t n = loaded.graph.vertex_count();
  PollerPlan plan = flags.poll_plan == "random"
                        ? random_cover_plan(n, flags.pollers, params.seed)
                        : block_plan(n, flags.pollers);
  Partition partition = poll_and_merge(assignment, plan, exec);

  // report communities by the original id of their lowest-id member
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  rows.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto rep = static_cast<VertexId>(partition.labels[v]);
    rows.emplace_back(loaded.remap.to_external[v], loaded.remap.to_external[rep]);
  }
  std::sort(rows.begin(), rows.end());

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!flags.out.empty()) {
    file.open(flags.out);
    if (!file) {
      throw DataError("cannot open output file: " + flags.out);
    }
    out = &file;
  }
  for (const auto& [v, label] : rows) {
    *out << v << ' ' << label << '\n';
  }
  return kExitOk;
}

std::vector<std::pair<std::int64_t, std::int64_t>> read_labels(const std::string& path) {
  if (path == "@karate") {
    std::istringstream in(karate_truth_text());
    return read_partition_pairs(in);
  }
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open partition file: " + path);
  }
  return read_partition_pairs(in);
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path) {
  auto [pred, truth] = align_partition_pair(read_labels(pred_path), read_labels(truth_path));
  std::printf("ARI=%.6f NMI=%.6f\n", ari(pred, truth), nmi(pred, truth));
  return kExitOk;
}

void write_benchmark(const GeneratedGraph& bench, const std::string& prefix) {
  const std::string edges_path = prefix + ".edges";
  const std::string truth_path = prefix + ".truth";
  std::ofstream edges(edges_path);
  if (!edges) {
    throw DataError("cannot open output file: " + edges_path);
  }
  write_edge_list(edges, bench.graph);
  std::ofstream truth(truth_path);
  if (!truth) {
    throw DataError("cannot open output file: " + truth_path);
  }
  write_partition(truth, bench.truth);
  std::cerr << "wrote " << edges_path << " (" << bench.graph.vertex_count() << " vertices, "
            << bench.graph.edge_count() << " edges) and " << truth_path << "\n";
}

std::vector<double> parse_sweep(const std::string& spec, double default_step) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad sweep component: " + item);
    }
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("sweep must be LO:HI or LO:HI:STEP, got " + spec);
  }
  const double lo = parts[0];
  const double hi = parts[1];
  const double step = parts.size() == 3 ? parts[2] : default_step;
  if (step <= 0.0 || hi < lo) {
    throw ConfigError("sweep range must satisfy LO <= HI and STEP > 0");
  }
  std::vector<double> values;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) {
    values.push_back(lo + i * step);
  }
  return values;
}

std::vector<double> parse_taus(const std::string& spec) {
  std::vector<double> taus;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      taus.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad tau value: " + item);
    }
  }
  if (taus.empty()) {
    throw ConfigError("tau list is empty");
  }
  return taus;
}

// SNAP ground-truth format: one community per line, members tab-separated.
std::unordered_map<std::int64_t, std::vector<std::int64_t>> read_snap_communities(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open community file: " + path +
                    " (download com-amazon.all.dedup.cmty.txt from the SNAP com-Amazon page)");
  }
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> memberships;
  std::string line;
  std::int64_t community = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::stringstream ss(line);
    std::int64_t member = 0;
    bool any = false;
    while (ss >> member) {
      memberships[member].push_back(community);
      any = true;
    }
    if (any) {
      ++community;
    }
  }
  return memberships;
}

int cmd_amazon(const std::string& edges_path, const std::string& truth_path, double tau,
               std::uint64_t seed, int threads) {
  std::ifstream probe(edges_path);
  if (!probe) {
    throw DataError("cannot open edge file: " + edges_path +
                    " (download com-amazon.ungraph.txt from the SNAP com-Amazon page)");
  }
  probe.close();

  LoadedGraph loaded = load_edge_list_file(edges_path);
  auto memberships = read_snap_communities(truth_path);

  DetectionParams params;
  params.tau = tau;
  params.seed = seed;
  DetectionResult result = detect(loaded.graph, params, make_exec(threads));

  // keep only vertices with ground truth; multi-membership resolves to one
  // community picked at random
  std::vector<std::int64_t> pred;
  std::vector<std::int64_t> truth;
  const std::size_t n = loaded.graph.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    auto it = memberships.find(loaded.remap.to_external[v]);
    if (it == memberships.end()) {
      continue;
    }
    const auto& options = it->second;
    std::int64_t chosen = options.size() == 1
                              ? options.front()
                              : options[derive_seed(seed, v, 0x616dULL) % options.size()];
    pred.push_back(result.partition.labels[v]);
    truth.push_back(chosen);
  }
  if (pred.empty()) {
    throw DataError("no graph vertex has a ground-truth community");
  }
  std::cerr << "n=" << n << " m=" << loaded.graph.edge_count() << " evaluated=" << pred.size()
            << "\n";
  std::printf("ARI=%.6f NMI=%.6f\n", ari(pred, truth), nmi(pred, truth));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex-centred local community detection"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "generate a benchmark graph with ground truth");
  generate->require_subcommand(1);

  PlantedConfig planted_cfg;
  std::string planted_out;
  auto* planted = generate->add_subcommand("planted", "equal-size planted communities");
  planted->add_option("--n", planted_cfg.n, "vertex count");
  planted->add_option("--groups", planted_cfg.groups, "community count");
  planted->add_option("--z", planted_cfg.z, "expected total degree");
  planted->add_option("--zout", planted_cfg.z_out, "expected inter-community degree");
  planted->add_option("--seed", planted_cfg.seed, "generator seed");
  planted->add_option("--out", planted_out, "output prefix")->required();

  LfrLikeConfig lfr_cfg;
  std::string lfr_out;
  auto* lfr = generate->add_subcommand("lfr-like", "power-law degrees and community sizes");
  lfr->add_option("--n", lfr_cfg.n, "vertex count");
  lfr->add_option("--mu", lfr_cfg.mu, "mixing fraction");
  lfr->add_option("--deg-exp", lfr_cfg.degree_exponent, "degree exponent");
  lfr->add_option("--size-exp", lfr_cfg.community_size_exponent, "community size exponent");
  lfr->add_option("--avg-degree", lfr_cfg.avg_degree, "average degree");
  lfr->add_option("--max-degree", lfr_cfg.max_degree, "degree cap");
  lfr->add_option("--min-community", lfr_cfg.min_community, "smallest community size");
  lfr->add_option("--max-community", lfr_cfg.max_community, "largest community size");
  lfr->add_option("--seed", lfr_cfg.seed, "generator seed");
  lfr->add_option("--out", lfr_out, "output prefix")->required();

  // detect
  DetectFlags detect_flags;
  auto* det = app.add_subcommand("detect", "run community detection on an edge list");
  det->add_option("--in", detect_flags.input, "edge list path, '-' for stdin, or @karate")
      ->required();
  det->add_option("--tau", detect_flags.tau, "agreement acceptance threshold");
  det->add_option("--seed", detect_flags.seed, "tie-break seed");
  det->add_option("--ties", detect_flags.ties, "tie policy: seeded|lowest")
      ->check(CLI::IsMember({"seeded", "lowest"}));
  det->add_option("--norm", detect_flags.norm, "threshold normalisation: degree|list")
      ->check(CLI::IsMember({"degree", "list"}));
  det->add_option("--k", detect_flags.k_rule, "candidate list size rule: half|one|full")
      ->check(CLI::IsMember({"half", "one", "full"}));
  det->add_option("--engine", detect_flags.engine, "pipeline|actors")
      ->check(CLI::IsMember({"pipeline", "actors"}));
  det->add_option("--pollers", detect_flags.pollers, "number of polling entities");
  det->add_option("--poll-plan", detect_flags.poll_plan, "poller cover: blocks|random")
      ->check(CLI::IsMember({"blocks", "random"}));
  det->add_option("--threads", detect_flags.threads, "worker threads (1 = serial)");
  det->add_option("--out", detect_flags.out, "write the community file here instead of stdout");
  det->add_flag("--strict", detect_flags.strict, "error on isolated vertices instead of stripping");

  // eval
  std::string pred_path;
  std::string truth_path;
  auto* eval = app.add_subcommand("eval", "compare two partition files (ARI and NMI)");
  eval->add_option("--pred", pred_path, "predicted community file")->required();
  eval->add_option("--truth", truth_path, "ground-truth community file or @karate")->required();

  // bench
  std::string bench_suite = "planted";
  std::string bench_sweep;
  std::string bench_taus = "0.2";
  BenchConfig bench_cfg;
  int bench_threads = 1;
  auto* bench = app.add_subcommand("bench", "sweep a benchmark suite, CSV on stdout");
  bench->add_option("--suite", bench_suite, "planted|lfr-like")
      ->check(CLI::IsMember({"planted", "lfr-like"}));
  bench->add_option("--sweep", bench_sweep, "LO:HI[:STEP] over z_out or mu");
  bench->add_option("--repeats", bench_cfg.repeats, "runs per sweep value");
  bench->add_option("--tau", bench_taus, "comma-separated tau values");
  bench->add_option("--seed", bench_cfg.master_seed, "master seed");
  bench->add_option("--threads", bench_threads, "worker threads (1 = serial)");
  bench->add_option("--n", bench_cfg.lfr.n, "lfr-like vertex count");

  // amazon
  std::string amazon_edges;
  std::string amazon_truth;
  double amazon_tau = 0.2;
  std::uint64_t amazon_seed = 0;
  int amazon_threads = 1;
  auto* amazon = app.add_subcommand("amazon", "evaluate on the SNAP co-purchasing network");
  amazon->add_option("--edges", amazon_edges, "com-amazon.ungraph.txt path")->required();
  amazon->add_option("--truth", amazon_truth, "com-amazon.all.dedup.cmty.txt path")->required();
  amazon->add_option("--tau", amazon_tau, "agreement acceptance threshold");
  amazon->add_option("--seed", amazon_seed, "seed for ties and membership resolution");
  amazon->add_option("--threads", amazon_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (planted->parsed()) {
      write_benchmark(gen_planted(planted_cfg), planted_out);
      return kExitOk;
    }
    if (lfr->parsed()) {
      write_benchmark(gen_lfr_like(lfr_cfg), lfr_out);
      return kExitOk;
    }
    if (det->parsed()) {
      return cmd_detect(detect_flags);
    }
    if (eval->parsed()) {
      return cmd_eval(pred_path, truth_path);
    }
    if (bench->parsed()) {
      bench_cfg.suite = bench_suite == "planted" ? BenchSuite::planted : BenchSuite::lfr_like;
      const double default_step = bench_cfg.suite == BenchSuite::planted ? 1.0 : 0.1;
      bench_cfg.sweep_values = bench_sweep.empty() ? default_sweep(bench_cfg.suite)
                                                   : parse_sweep(bench_sweep, default_step);
      bench_cfg.taus = parse_taus(bench_taus);
      bench_cfg.exec = make_exec(bench_threads);
      auto rows = run_bench(bench_cfg);
      write_csv(std::cout, rows);
      return kExitOk;
    }
    if (amazon->parsed()) {
      return cmd_amazon(amazon_edges, amazon_truth, amazon_tau, amazon_seed, amazon_threads);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
