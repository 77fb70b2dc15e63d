#pragma once

// Shared test fixtures and independent oracles. The oracles deliberately take
// different algorithmic routes than the library (pair enumeration instead of
// contingency algebra, BFS instead of union-find) so they can catch it lying.

#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "veco/detection.hpp"
#include "veco/graph.hpp"
#include "veco/rng.hpp"

namespace vt {

// G(n, p) with isolated vertices repaired, so the result satisfies the
// model's assumptions.
inline veco::Graph random_graph(veco::Rng& rng, std::uint32_t n, double p) {
  std::vector<std::pair<veco::VertexId, veco::VertexId>> edges;
  std::vector<std::uint32_t> deg(n, 0);
  for (veco::VertexId i = 0; i < n; ++i) {
    for (veco::VertexId j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) {
        edges.emplace_back(i, j);
        ++deg[i];
        ++deg[j];
      }
    }
  }
  for (veco::VertexId v = 0; v < n; ++v) {
    if (deg[v] == 0) {
      veco::VertexId u = v;
      while (u == v) {
        u = rng.below32(n);
      }
      edges.emplace_back(v, u);
      ++deg[v];
      ++deg[u];
    }
  }
  return veco::Graph::from_edges(n, edges);
}

// Random functional map with f(v) != v, i.e. a synthetic assignment.
inline veco::Assignment random_assignment(veco::Rng& rng, std::uint32_t n) {
  veco::Assignment a;
  a.preferred.resize(n);
  a.provenance.assign(n, veco::Provenance::agreement);
  for (veco::VertexId v = 0; v < n; ++v) {
    veco::VertexId u = v;
    while (u == v) {
      u = rng.below32(n);
    }
    a.preferred[v] = u;
  }
  return a;
}

// Weakly-connected components of the {v -> a_v} digraph by breadth-first
// traversal, labelled by smallest member id.
inline veco::Partition bfs_components(const veco::Assignment& assignment) {
  const std::size_t n = assignment.size();
  std::vector<std::vector<veco::VertexId>> adj(n);
  for (veco::VertexId v = 0; v < n; ++v) {
    adj[v].push_back(assignment.preferred[v]);
    adj[assignment.preferred[v]].push_back(v);
  }
  veco::Partition p;
  p.labels.assign(n, -1);
  for (veco::VertexId start = 0; start < n; ++start) {
    if (p.labels[start] >= 0) {
      continue;
    }
    std::queue<veco::VertexId> frontier;
    frontier.push(start);
    p.labels[start] = start;  // start is the smallest unvisited id
    while (!frontier.empty()) {
      veco::VertexId v = frontier.front();
      frontier.pop();
      for (veco::VertexId u : adj[v]) {
        if (p.labels[u] < 0) {
          p.labels[u] = start;
          frontier.push(u);
        }
      }
    }
  }
  return p;
}

// ARI from raw pair counts: a = pairs together in both partitions, etc.
inline double brute_ari(const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& q) {
  const std::size_t n = p.size();
  double a = 0;
  double b = 0;
  double c = 0;
  double d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sp = p[i] == p[j];
      const bool sq = q[i] == q[j];
      a += sp && sq;
      b += sp && !sq;
      c += !sp && sq;
      d += !sp && !sq;
    }
  }
  const double den = (a + b) * (b + d) + (a + c) * (c + d);
  if (den == 0.0) {
    return 1.0;
  }
  return 2.0 * (a * d - b * c) / den;
}

// NMI from direct probability sums over label maps.
inline double brute_nmi(const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& q) {
  const double n = static_cast<double>(p.size());
  std::map<std::int64_t, double> cp;
  std::map<std::int64_t, double> cq;
  std::map<std::pair<std::int64_t, std::int64_t>, double> joint;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cp[p[i]] += 1.0;
    cq[q[i]] += 1.0;
    joint[{p[i], q[i]}] += 1.0;
  }
  auto entropy = [&](const std::map<std::int64_t, double>& counts) {
    double h = 0.0;
    for (const auto& [_, c] : counts) {
      h -= (c / n) * std::log(c / n);
    }
    return h;
  };
  const double hp = entropy(cp);
  const double hq = entropy(cq);
  if (hp == 0.0 && hq == 0.0) {
    return 1.0;
  }
  if (hp == 0.0 || hq == 0.0) {
    return 0.0;
  }
  double info = 0.0;
  for (const auto& [labels, c] : joint) {
    const double pij = c / n;
    info += pij * std::log(pij / ((cp.at(labels.first) / n) * (cq.at(labels.second) / n)));
  }
  return info / (0.5 * (hp + hq));
}

inline std::vector<std::int64_t> random_labels(veco::Rng& rng, std::size_t n, std::uint32_t k) {
  std::vector<std::int64_t> labels(n);
  for (auto& l : labels) {
    l = static_cast<std::int64_t>(rng.below(k));
  }
  return labels;
}

// Loaded copies keep their own dense ids; equality must go through the remap.
inline bool same_graph_under_remap(const veco::Graph& original, const veco::Graph& loaded,
                                   const veco::IdRemap& remap) {
  if (original.vertex_count() != loaded.vertex_count() ||
      original.edge_count() != loaded.edge_count()) {
    return false;
  }
  for (veco::VertexId v = 0; v < original.vertex_count(); ++v) {
    auto it = remap.to_internal.find(static_cast<std::int64_t>(v));
    if (it == remap.to_internal.end()) {
      return false;
    }
    std::vector<veco::VertexId> expect;
    for (veco::VertexId u : original.neighbors(v)) {
      auto uit = remap.to_internal.find(static_cast<std::int64_t>(u));
      if (uit == remap.to_internal.end()) {
        return false;
      }
      expect.push_back(uit->second);
    }
    std::sort(expect.begin(), expect.end());
    auto got = loaded.neighbors(it->second);
    if (!std::equal(expect.begin(), expect.end(), got.begin(), got.end())) {
      return false;
    }
  }
  return true;
}

}  // namespace vt
