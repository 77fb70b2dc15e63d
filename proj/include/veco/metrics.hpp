#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "veco/graph.hpp"

namespace veco {

// Pairwise intersection counts between two labellings of the same carrier.
// Rows index distinct labels of the first partition (sorted by label value),
// columns those of the second; cells with zero count are not stored.
struct ContingencyTable {
  struct Cell {
    std::uint32_t row;
    std::uint32_t col;
    std::uint64_t count;
  };

  std::vector<std::int64_t> row_labels;
  std::vector<std::int64_t> col_labels;
  std::vector<std::uint64_t> row_sums;
  std::vector<std::uint64_t> col_sums;
  std::vector<Cell> cells;
  std::uint64_t total = 0;
};

ContingencyTable contingency(std::span<const std::int64_t> p, std::span<const std::int64_t> q);

// Rand index adjusted for chance: 1 for identical partitions, ~0 for
// independent random ones, down to -1. The integer terms are combined in
// 128-bit arithmetic so small cases come out exact.
double ari(const ContingencyTable& table);
double ari(std::span<const std::int64_t> p, std::span<const std::int64_t> q);
double ari(const Partition& p, const Partition& q);

// Mutual information normalised by the arithmetic mean of the two Shannon
// entropies. Degenerate cases: both entropies zero -> 1 (two copies of the
// trivial partition), exactly one zero -> 0.
double nmi(const ContingencyTable& table);
double nmi(std::span<const std::int64_t> p, std::span<const std::int64_t> q);
double nmi(const Partition& p, const Partition& q);

}  // namespace veco
