#include "veco/sweep.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "veco/errors.hpp"
#include "veco/metrics.hpp"
#include "veco/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace veco {

namespace {

struct RunOutcome {
  double nmi = 0.0;
  double ari = 0.0;
  double ms = 0.0;
};

RunOutcome one_run(const BenchConfig& cfg, double value, std::uint32_t run) {
  const std::uint64_t seed = run_seed(cfg.master_seed, value, run);
  GeneratedGraph bench;
  if (cfg.suite == BenchSuite::planted) {
    PlantedConfig pc = cfg.planted;
    pc.z_out = value;
    pc.seed = derive_seed(seed, 0x67656eULL);
    bench = gen_planted(pc);
  } else {
    LfrLikeConfig lc = cfg.lfr;
    lc.mu = value;
    lc.seed = derive_seed(seed, 0x67656eULL);
    bench = gen_lfr_like(lc);
  }
  RunOutcome out;
  DetectionParams params = cfg.detect;
  params.seed = derive_seed(seed, 0x646574ULL);
  const auto started = std::chrono::steady_clock::now();
  DetectionResult result = detect(bench.graph, params);
  const auto finished = std::chrono::steady_clock::now();
  out.ms = std::chrono::duration<double, std::milli>(finished - started).count();
  out.nmi = nmi(result.partition, bench.truth);
  out.ari = ari(result.partition, bench.truth);
  return out;
}

}  // namespace

std::vector<double> default_sweep(BenchSuite suite) {
  std::vector<double> values;
  if (suite == BenchSuite::planted) {
    for (int z = 1; z <= 8; ++z) {
      values.push_back(static_cast<double>(z));
    }
  } else {
    for (int i = 1; i <= 8; ++i) {
      values.push_back(static_cast<double>(i) / 10.0);
    }
  }
  return values;
}

std::uint64_t run_seed(std::uint64_t master, double value, std::uint32_t run) {
  return derive_seed(master, std::bit_cast<std::uint64_t>(value), run);
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.repeats == 0) {
    throw ConfigError("repeats must be at least 1");
  }
  std::vector<double> values =
      config.sweep_values.empty() ? default_sweep(config.suite) : config.sweep_values;

  struct Task {
    std::size_t row;
    double value;
    double tau;
    std::uint32_t run;
  };
  std::vector<Task> tasks;
  std::vector<BenchRow> rows;
  for (double value : values) {
    for (double tau : config.taus) {
      const std::size_t row = rows.size();
      rows.push_back({value, tau, config.repeats, 0, 0, 0, 0, 0});
      for (std::uint32_t r = 0; r < config.repeats; ++r) {
        tasks.push_back({row, value, tau, r});
      }
    }
  }

  std::vector<RunOutcome> outcomes(tasks.size());
  const auto task_count = static_cast<std::int64_t>(tasks.size());
#ifdef _OPENMP
  if (config.exec.parallel) {
    const int nt = config.exec.threads > 0 ? config.exec.threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(dynamic)
    for (std::int64_t i = 0; i < task_count; ++i) {
      BenchConfig local = config;
      local.detect.tau = tasks[i].tau;
      outcomes[i] = one_run(local, tasks[i].value, tasks[i].run);
    }
  } else
#endif
  {
    for (std::int64_t i = 0; i < task_count; ++i) {
      BenchConfig local = config;
      local.detect.tau = tasks[i].tau;
      outcomes[i] = one_run(local, tasks[i].value, tasks[i].run);
    }
  }

  // aggregate in task order so results do not depend on scheduling
  std::vector<double> nmi_sum(rows.size(), 0.0);
  std::vector<double> nmi_sq(rows.size(), 0.0);
  std::vector<double> ari_sum(rows.size(), 0.0);
  std::vector<double> ari_sq(rows.size(), 0.0);
  std::vector<double> ms_sum(rows.size(), 0.0);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::size_t r = tasks[i].row;
    nmi_sum[r] += outcomes[i].nmi;
    nmi_sq[r] += outcomes[i].nmi * outcomes[i].nmi;
    ari_sum[r] += outcomes[i].ari;
    ari_sq[r] += outcomes[i].ari * outcomes[i].ari;
    ms_sum[r] += outcomes[i].ms;
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double count = static_cast<double>(rows[r].repeats);
    rows[r].nmi_mean = nmi_sum[r] / count;
    rows[r].ari_mean = ari_sum[r] / count;
    rows[r].ms_mean = ms_sum[r] / count;
    rows[r].nmi_std = std::sqrt(std::max(0.0, nmi_sq[r] / count - rows[r].nmi_mean * rows[r].nmi_mean));
    rows[r].ari_std = std::sqrt(std::max(0.0, ari_sq[r] / count - rows[r].ari_mean * rows[r].ari_mean));
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "sweep,tau,repeats,nmi_mean,nmi_std,ari_mean,ari_std,ms_mean\n";
  char buf[256];
  for (const BenchRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%g,%g,%u,%.6f,%.6f,%.6f,%.6f,%.3f\n", row.sweep, row.tau,
                  row.repeats, row.nmi_mean, row.nmi_std, row.ari_mean, row.ari_std, row.ms_mean);
    out << buf;
  }
}

}  // namespace veco
