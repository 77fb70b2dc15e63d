#pragma once

#include "veco/graph.hpp"

namespace veco {

// Zachary's karate club (34 members, 78 ties) with the observed two-faction
// split as ground truth. Vertex ids in the bundled data are the customary
// 1-based member numbers; the remap carries them.
struct KarateClub {
  Graph graph;
  Partition truth;
  IdRemap remap;
};

KarateClub karate();

// raw bundled text, exposed so the CLI can treat "@karate" as a file
const std::string& karate_edge_text();
const std::string& karate_truth_text();

}  // namespace veco
