#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "veco/graph.hpp"

namespace veco {

// Edge-list text format: one "u v" pair per line, whitespace separated,
// lines starting with '#' ignored. Arbitrary integer ids are remapped to
// dense 0-based ids in first-appearance order.

struct LoadOptions {
  bool strip_isolated = true;  // drop 0-degree vertices instead of erroring
  bool dedupe = true;          // collapse repeated edges instead of erroring
};

struct LoadStats {
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_collapsed = 0;
  std::uint64_t isolated_stripped = 0;
};

struct LoadedGraph {
  Graph graph;
  IdRemap remap;
  LoadStats stats;
};

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& opts = {});
LoadedGraph load_edge_list_file(const std::string& path, const LoadOptions& opts = {});

// One line per undirected edge, smaller endpoint first, vertices in dense-id
// order (original ids when a remap is supplied).
void write_edge_list(std::ostream& out, const Graph& g, const IdRemap* remap = nullptr);

// Partition text format: one "vertex label" pair per line.
void write_partition(std::ostream& out, const Partition& p, const IdRemap* remap = nullptr);

std::vector<std::pair<std::int64_t, std::int64_t>> read_partition_pairs(std::istream& in);

// Aligns file pairs onto a loaded graph's dense ids. Every graph vertex must
// be labelled; labels for unknown vertices are an error unless
// ignore_unknown is set.
Partition partition_for_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                              const IdRemap& remap, bool ignore_unknown = false);

// Aligns two labelled vertex sets onto a shared dense carrier (sorted by
// vertex id). Throws DataError listing the symmetric difference when the
// carriers disagree.
std::pair<Partition, Partition> align_partition_pair(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& a,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& b);

}  // namespace veco
