#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "veco/edge_list.hpp"
#include "veco/errors.hpp"
#include "veco/generators.hpp"

using namespace veco;

namespace {

// fraction of edges whose endpoints share a truth label
double intra_fraction(const GeneratedGraph& bench) {
  std::uint64_t intra = 0;
  const auto& g = bench.graph;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (u > v && bench.truth.labels[u] == bench.truth.labels[v]) {
        ++intra;
      }
    }
  }
  return static_cast<double>(intra) / static_cast<double>(g.edge_count());
}

}  // namespace

TEST_CASE("planted graphs with z_out 0 have no inter-community edges") {
  PlantedConfig cfg;
  cfg.z_out = 0.0;
  cfg.seed = 3;
  auto bench = gen_planted(cfg);
  CHECK(intra_fraction(bench) == 1.0);
  CHECK(validate(bench.graph).ok());
}

TEST_CASE("planted ground truth has equal-size groups") {
  PlantedConfig cfg;
  cfg.z_out = 6.0;
  auto bench = gen_planted(cfg);
  auto sizes = bench.truth.community_sizes();
  CHECK(sizes.size() == 4);
  for (const auto& [label, size] : sizes) {
    CHECK(size == 32);
  }
}

TEST_CASE("planted config violations are rejected") {
  PlantedConfig cfg;
  cfg.z_out = 20.0;  // > z
  CHECK_THROWS_AS(gen_planted(cfg), ConfigError);

  PlantedConfig odd;
  odd.n = 130;  // not divisible by 4 groups
  CHECK_THROWS_AS(gen_planted(odd), ConfigError);

  PlantedConfig dense;
  dense.n = 16;
  dense.groups = 4;  // group size 4 cannot host z_in = 16
  dense.z_out = 0.0;
  CHECK_THROWS_AS(gen_planted(dense), ConfigError);
}

TEST_CASE("planted degrees meet their expectations over many seeds") {
  PlantedConfig cfg;
  cfg.z_out = 6.0;
  const int seeds = 200;
  double total_mean = 0.0;
  double intra_mean = 0.0;
  double inter_mean = 0.0;
  std::vector<double> intra_by_seed;
  std::vector<double> inter_by_seed;
  for (int s = 0; s < seeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    auto bench = gen_planted(cfg);
    const double m = static_cast<double>(bench.graph.edge_count());
    const double intra = intra_fraction(bench) * m;
    intra_by_seed.push_back(2.0 * intra / cfg.n);
    inter_by_seed.push_back(2.0 * (m - intra) / cfg.n);
    total_mean += 2.0 * m / cfg.n;
    CHECK(validate(bench.graph).ok());
  }
  total_mean /= seeds;
  CHECK(total_mean == doctest::Approx(16.0).epsilon(0.5 / 16.0));

  auto mean_and_se = [&](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) {
      mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) {
      var += (x - mean) * (x - mean);
    }
    var /= static_cast<double>(xs.size() - 1);
    return std::pair{mean, std::sqrt(var / static_cast<double>(xs.size()))};
  };
  auto [mi, si] = mean_and_se(intra_by_seed);
  auto [mo, so] = mean_and_se(inter_by_seed);
  intra_mean = mi;
  inter_mean = mo;
  CHECK(std::abs(intra_mean - 10.0) <= 3.0 * si);
  CHECK(std::abs(inter_mean - 6.0) <= 3.0 * so);
}

TEST_CASE("planted generation is deterministic per seed") {
  PlantedConfig cfg;
  cfg.z_out = 4.0;
  cfg.seed = 77;
  auto a = gen_planted(cfg);
  auto b = gen_planted(cfg);
  CHECK(a.graph == b.graph);
  CHECK(a.truth == b.truth);
}

TEST_CASE("lfr-like with mu 0 keeps every edge inside its community") {
  LfrLikeConfig cfg;
  cfg.n = 400;
  cfg.mu = 0.0;
  // at mu 0 a vertex's whole degree must fit inside one community
  cfg.max_degree = 45;
  cfg.seed = 5;
  auto bench = gen_lfr_like(cfg);
  CHECK(intra_fraction(bench) == 1.0);
  CHECK(validate(bench.graph).ok());
}

TEST_CASE("lfr-like mixing lands near mu") {
  LfrLikeConfig cfg;
  cfg.n = 1000;
  cfg.mu = 0.3;
  double inter = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    inter += 1.0 - intra_fraction(gen_lfr_like(cfg));
  }
  inter /= seeds;
  CHECK(inter >= 0.25);
  CHECK(inter <= 0.35);
}

TEST_CASE("lfr-like respects the degree cap and size bounds") {
  LfrLikeConfig cfg;
  cfg.n = 800;
  cfg.mu = 0.2;
  cfg.seed = 11;
  auto bench = gen_lfr_like(cfg);
  for (VertexId v = 0; v < bench.graph.vertex_count(); ++v) {
    CHECK(bench.graph.degree(v) <= cfg.max_degree);
  }
  for (const auto& [label, size] : bench.truth.community_sizes()) {
    CHECK(size >= cfg.min_community);
    CHECK(size <= cfg.max_community);
  }
  CHECK(validate(bench.graph).ok());
}

TEST_CASE("lfr-like is deterministic per seed and rejects nonsense") {
  LfrLikeConfig cfg;
  cfg.n = 300;
  cfg.seed = 13;
  auto a = gen_lfr_like(cfg);
  auto b = gen_lfr_like(cfg);
  CHECK(a.graph == b.graph);
  CHECK(a.truth == b.truth);

  LfrLikeConfig bad;
  bad.mu = 1.5;
  CHECK_THROWS_AS(gen_lfr_like(bad), ConfigError);

  LfrLikeConfig impossible;
  impossible.n = 200;
  impossible.avg_degree = 40.0;
  impossible.max_degree = 45;
  impossible.min_community = 10;
  impossible.max_community = 12;  // cannot host intra-degrees near 40
  impossible.mu = 0.0;
  CHECK_THROWS_AS(gen_lfr_like(impossible), ConfigError);
}

TEST_CASE("lfr file ingestion matches the documented example") {
  std::istringstream network("1 2\n2 1\n2 3\n");
  std::istringstream community("1 1\n2 1\n3 2\n");
  auto bench = load_lfr_files(network, community);
  CHECK(bench.graph.vertex_count() == 3);
  CHECK(bench.graph.edge_count() == 2);
  CHECK(bench.truth.labels == std::vector<std::int64_t>{1, 1, 2});
}

TEST_CASE("lfr ingestion rejects vertices without a community") {
  std::istringstream network("1 2\n2 3\n");
  std::istringstream community("1 1\n2 1\n");
  CHECK_THROWS_WITH_AS(load_lfr_files(network, community), doctest::Contains("3"), DataError);
}

TEST_CASE("generated benchmarks round-trip through the file formats") {
  LfrLikeConfig cfg;
  cfg.n = 200;
  cfg.seed = 21;
  auto bench = gen_lfr_like(cfg);

  std::ostringstream net;
  write_edge_list(net, bench.graph);
  std::ostringstream com;
  write_partition(com, bench.truth);

  std::istringstream net_in(net.str());
  std::istringstream com_in(com.str());
  auto loaded = load_lfr_files(net_in, com_in);
  CHECK(vt::same_graph_under_remap(bench.graph, loaded.graph, loaded.remap));
  for (VertexId v = 0; v < bench.graph.vertex_count(); ++v) {
    CHECK(loaded.truth.labels[loaded.remap.to_internal.at(v)] == bench.truth.labels[v]);
  }
}
