#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace veco {

using VertexId = std::uint32_t;

// Undirected simple graph in CSR form: no self-loops, no duplicate edges,
// no isolated vertices, neighbour lists sorted ascending. Immutable after
// construction; concurrent reads are safe.
struct Graph {
  std::vector<std::uint64_t> offsets;  // size n+1 (empty for the empty graph)
  std::vector<VertexId> adjacency;     // size 2m

  std::size_t vertex_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t edge_count() const { return adjacency.size() / 2; }

  std::uint32_t degree(VertexId v) const {
    return static_cast<std::uint32_t>(offsets[v + 1] - offsets[v]);
  }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency.data() + offsets[v], adjacency.data() + offsets[v + 1]};
  }

  bool has_edge(VertexId u, VertexId v) const;

  bool operator==(const Graph&) const = default;

  // Builds the CSR form from one entry per undirected edge (either
  // orientation). Duplicate entries are collapsed. Throws
  // std::invalid_argument on self-loops or out-of-range ids.
  static Graph from_edges(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges);
};

// One community label per vertex; label values are arbitrary integers.
struct Partition {
  std::vector<std::int64_t> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t community_count() const;
  std::unordered_map<std::int64_t, std::uint64_t> community_sizes() const;

  bool operator==(const Partition&) const = default;
};

// Dense-id <-> original-id translation retained by the loaders.
struct IdRemap {
  std::vector<std::int64_t> to_external;                      // dense id -> source id
  std::unordered_map<std::int64_t, VertexId> to_internal;
};

// Per-invariant violation counts; empty report <=> valid graph.
struct ValidationReport {
  std::uint64_t self_loops = 0;
  std::uint64_t duplicate_entries = 0;
  std::uint64_t asymmetric_entries = 0;
  std::uint64_t isolated_vertices = 0;
  std::uint64_t unsorted_lists = 0;

  bool ok() const {
    return self_loops == 0 && duplicate_entries == 0 && asymmetric_entries == 0 &&
           isolated_vertices == 0 && unsorted_lists == 0;
  }
  std::string to_string() const;
};

ValidationReport validate(const Graph& g);

}  // namespace veco
