#pragma once

#include <cstdint>
#include <iosfwd>

#include "veco/graph.hpp"

namespace veco {

struct GeneratedGraph {
  Graph graph;
  Partition truth;
};

// Equal-size planted communities with Bernoulli edges chosen so that the
// expected intra- and inter-community degrees are z - z_out and z_out.
struct PlantedConfig {
  std::uint32_t n = 128;
  std::uint32_t groups = 4;
  double z = 16.0;      // expected total degree
  double z_out = 6.0;   // expected inter-community degree, in [0, z]
  std::uint64_t seed = 0;
};

GeneratedGraph gen_planted(const PlantedConfig& config);

// Power-law degrees and community sizes with a mixing fraction mu of each
// vertex's edges leaving its community, realised by stub matching. An
// approximation of the standard LFR benchmark, not a reimplementation.
struct LfrLikeConfig {
  std::uint32_t n = 1000;
  double mu = 0.3;                      // fraction of inter-community edges
  double degree_exponent = 2.0;
  double community_size_exponent = 1.0;
  double avg_degree = 20.0;
  std::uint32_t max_degree = 50;
  std::uint32_t min_community = 10;
  std::uint32_t max_community = 50;
  std::uint64_t seed = 0;
};

GeneratedGraph gen_lfr_like(const LfrLikeConfig& config);

// Ingests the output of the reference LFR tool: a network file of "u v"
// lines (every edge may appear in both directions) and a community file of
// "v label" lines. Ids are remapped to dense 0-based ones.
struct LoadedBenchmark {
  Graph graph;
  Partition truth;
  IdRemap remap;
};

LoadedBenchmark load_lfr_files(std::istream& network, std::istream& community);
LoadedBenchmark load_lfr_files(const std::string& network_path, const std::string& community_path);

}  // namespace veco
