#include "veco/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace veco {

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    }
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(std::max(u, v)) +
                                  " >= " + std::to_string(n));
    }
  }

  std::vector<std::uint64_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }

  Graph g;
  g.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    g.offsets[i + 1] = g.offsets[i] + deg[i];
  }
  g.adjacency.resize(g.offsets[n]);

  std::vector<std::uint64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency[cursor[u]++] = v;
    g.adjacency[cursor[v]++] = u;
  }

  // sort each list and drop duplicate entries in place
  std::vector<VertexId> compact;
  compact.reserve(g.adjacency.size());
  std::vector<std::uint64_t> new_offsets(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adjacency.begin() + static_cast<std::ptrdiff_t>(g.offsets[v]);
    auto last = g.adjacency.begin() + static_cast<std::ptrdiff_t>(g.offsets[v + 1]);
    std::sort(first, last);
    auto end = std::unique(first, last);
    compact.insert(compact.end(), first, end);
    new_offsets[v + 1] = compact.size();
  }
  g.offsets = std::move(new_offsets);
  g.adjacency = std::move(compact);
  return g;
}

std::size_t Partition::community_count() const {
  std::vector<std::int64_t> uniq(labels);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  return uniq.size();
}

std::unordered_map<std::int64_t, std::uint64_t> Partition::community_sizes() const {
  std::unordered_map<std::int64_t, std::uint64_t> sizes;
  for (std::int64_t l : labels) {
    ++sizes[l];
  }
  return sizes;
}

std::string ValidationReport::to_string() const {
  if (ok()) {
    return "valid";
  }
  std::ostringstream os;
  const char* sep = "";
  auto emit = [&](const char* name, std::uint64_t count) {
    if (count > 0) {
      os << sep << name << "=" << count;
      sep = " ";
    }
  };
  emit("self_loops", self_loops);
  emit("duplicate_entries", duplicate_entries);
  emit("asymmetric_entries", asymmetric_entries);
  emit("isolated_vertices", isolated_vertices);
  emit("unsorted_lists", unsorted_lists);
  return os.str();
}

ValidationReport validate(const Graph& g) {
  ValidationReport r;
  const std::size_t n = g.vertex_count();
  std::vector<bool> sorted(n, true);
  for (VertexId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    if (nb.empty()) {
      ++r.isolated_vertices;
    }
    if (!std::is_sorted(nb.begin(), nb.end())) {
      sorted[v] = false;
      ++r.unsorted_lists;
    }
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == v) {
        ++r.self_loops;
      }
      if (i > 0 && nb[i] == nb[i - 1]) {
        ++r.duplicate_entries;
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (u >= n) {
        ++r.asymmetric_entries;
        continue;
      }
      auto back = g.neighbors(u);
      bool found = sorted[u] ? std::binary_search(back.begin(), back.end(), v)
                             : std::find(back.begin(), back.end(), v) != back.end();
      if (!found) {
        ++r.asymmetric_entries;
      }
    }
  }
  return r;
}

}  // namespace veco
