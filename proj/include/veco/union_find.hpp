#pragma once

#include <atomic>
#include <cstdint>
#include <numeric>
#include <vector>

#include "veco/graph.hpp"

namespace veco {

// Disjoint sets over dense vertex ids with path halving. Roots are always
// the smallest id in their set, so the extracted labelling is canonical and
// independent of merge order.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }

  VertexId find(VertexId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return;
    }
    if (b < a) {
      std::swap(a, b);
    }
    parent_[b] = a;
  }

  Partition to_partition() {
    Partition p;
    p.labels.resize(parent_.size());
    for (VertexId v = 0; v < parent_.size(); ++v) {
      p.labels[v] = static_cast<std::int64_t>(find(v));
    }
    return p;
  }

 private:
  std::vector<VertexId> parent_;
};

// Lock-free variant for concurrent merges: unite() links the larger root
// under the smaller via CAS and retries on contention. The final set
// structure equals the serial one because merging is commutative and
// idempotent.
class ConcurrentUnionFind {
 public:
  explicit ConcurrentUnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      parent_[i].store(static_cast<VertexId>(i), std::memory_order_relaxed);
    }
  }

  VertexId find(VertexId x) {
    while (true) {
      VertexId p = parent_[x].load(std::memory_order_relaxed);
      if (p == x) {
        return x;
      }
      VertexId gp = parent_[p].load(std::memory_order_relaxed);
      if (gp == p) {
        return p;
      }
      parent_[x].compare_exchange_weak(p, gp, std::memory_order_relaxed);
      x = gp;
    }
  }

  void unite(VertexId a, VertexId b) {
    while (true) {
      VertexId ra = find(a);
      VertexId rb = find(b);
      if (ra == rb) {
        return;
      }
      if (rb < ra) {
        std::swap(ra, rb);
      }
      VertexId expected = rb;
      if (parent_[rb].compare_exchange_strong(expected, ra, std::memory_order_relaxed)) {
        return;
      }
    }
  }

  // Call only after all concurrent unite() calls have joined.
  Partition to_partition() {
    Partition p;
    p.labels.resize(parent_.size());
    for (VertexId v = 0; v < parent_.size(); ++v) {
      p.labels[v] = static_cast<std::int64_t>(find(v));
    }
    return p;
  }

 private:
  std::vector<std::atomic<VertexId>> parent_;
};

}  // namespace veco
