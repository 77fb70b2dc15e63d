// Times the serial reference kernels against the OpenMP ones on a generated
// graph and verifies that both produce identical results.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>

#include "veco/detection.hpp"
#include "veco/generators.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace veco;

namespace {

double time_ms(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

double best_of(int repeats, const std::function<void()>& body) {
  double best = time_ms(body);
  for (int i = 1; i < repeats; ++i) {
    best = std::min(best, time_ms(body));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel benchmark"};
  std::uint32_t n = 100000;
  double mu = 0.3;
  double avg_degree = 20.0;
  std::uint32_t max_degree = 50;
  int repeats = 3;
  int threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--n", n, "vertex count");
  app.add_option("--mu", mu, "mixing fraction");
  app.add_option("--avg-degree", avg_degree, "average degree");
  app.add_option("--max-degree", max_degree, "degree cap");
  app.add_option("--repeats", repeats, "timing repeats (best-of)");
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  LfrLikeConfig cfg;
  cfg.n = n;
  cfg.mu = mu;
  cfg.avg_degree = avg_degree;
  cfg.max_degree = max_degree;
  cfg.seed = seed;

  std::printf("generating lfr-like graph: n=%u mu=%.2f avg_degree=%.1f\n", n, mu, avg_degree);
  GeneratedGraph bench = gen_lfr_like(cfg);
  const Graph& g = bench.graph;
  std::printf("graph ready: %zu vertices, %zu edges\n", g.vertex_count(), g.edge_count());
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", threads > 0 ? threads : omp_get_max_threads());
#else
  std::printf("built without openmp; parallel kernels run serially\n");
#endif

  DetectionParams params;
  params.seed = seed;

  CandidateLists lists_serial;
  CandidateLists lists_parallel;
  const double t_cand_s =
      best_of(repeats, [&] { lists_serial = compile_all_candidates_serial(g, params); });
  const double t_cand_p = best_of(
      repeats, [&] { lists_parallel = compile_all_candidates_parallel(g, params, threads); });

  Assignment assign_serial;
  Assignment assign_parallel;
  const double t_sel_s = best_of(
      repeats, [&] { assign_serial = select_all_preferred_serial(g, lists_serial, params); });
  const double t_sel_p = best_of(repeats, [&] {
    assign_parallel = select_all_preferred_parallel(g, lists_parallel, params, threads);
  });

  Partition part_serial;
  Partition part_parallel;
  const double t_unc_s = best_of(repeats, [&] { part_serial = uncover_serial(assign_serial); });
  const double t_unc_p =
      best_of(repeats, [&] { part_parallel = uncover_parallel(assign_parallel, threads); });

  const bool same = lists_serial == lists_parallel && assign_serial == assign_parallel &&
                    part_serial == part_parallel;

  std::printf("\n%-22s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");
  auto row = [](const char* name, double s, double p) {
    std::printf("%-22s %12.2f %12.2f %8.2fx\n", name, s, p, p > 0.0 ? s / p : 0.0);
  };
  row("candidate lists", t_cand_s, t_cand_p);
  row("agreement+assignment", t_sel_s, t_sel_p);
  row("uncovering", t_unc_s, t_unc_p);
  row("total", t_cand_s + t_sel_s + t_unc_s, t_cand_p + t_sel_p + t_unc_p);
  std::printf("\nresults %s\n", same ? "MATCH" : "MISMATCH");
  return same ? 0 : 1;
}
