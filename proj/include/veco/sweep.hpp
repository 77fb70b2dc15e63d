#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "veco/detection.hpp"
#include "veco/execution.hpp"
#include "veco/generators.hpp"

namespace veco {

// One aggregated line of a benchmark sweep.
struct BenchRow {
  double sweep = 0.0;  // z_out or mu
  double tau = 0.0;
  std::uint32_t repeats = 0;
  double nmi_mean = 0.0;
  double nmi_std = 0.0;
  double ari_mean = 0.0;
  double ari_std = 0.0;
  double ms_mean = 0.0;  // detection wall time per run
};

enum class BenchSuite : std::uint8_t { planted, lfr_like };

struct BenchConfig {
  BenchSuite suite = BenchSuite::planted;
  std::vector<double> sweep_values;  // defaults: z_out 1..8 / mu 0.1..0.8
  std::vector<double> taus{0.2};
  std::uint32_t repeats = 10;
  std::uint64_t master_seed = 0;
  PlantedConfig planted{};   // z_out and seed are overridden per run
  LfrLikeConfig lfr{};       // mu and seed are overridden per run
  DetectionParams detect{};  // tau and seed are overridden per run
  Execution exec{};          // fans independent runs out across workers
};

std::vector<double> default_sweep(BenchSuite suite);

// Seed for run `run` at sweep value `value`; every run is independently
// derivable so sweeps can execute in any order.
std::uint64_t run_seed(std::uint64_t master, double value, std::uint32_t run);

std::vector<BenchRow> run_bench(const BenchConfig& config);

// CSV with header "sweep,tau,repeats,nmi_mean,nmi_std,ari_mean,ari_std,ms_mean".
void write_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace veco
