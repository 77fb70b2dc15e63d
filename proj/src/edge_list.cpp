#include "veco/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "veco/errors.hpp"

namespace veco {

namespace {

bool parse_int64(const char*& p, const char* end, std::int64_t& out) {
  while (p != end && (*p == ' ' || *p == '\t')) {
    ++p;
  }
  auto [next, ec] = std::from_chars(p, end, out);
  if (ec != std::errc{} || next == p) {
    return false;
  }
  p = next;
  return true;
}

bool rest_is_blank(const char* p, const char* end) {
  while (p != end) {
    if (*p != ' ' && *p != '\t' && *p != '\r') {
      return false;
    }
    ++p;
  }
  return true;
}

// Parses "u v" lines; returns false on comment/blank lines.
bool parse_pair_line(const std::string& line, std::size_t line_no, std::int64_t& a,
                     std::int64_t& b) {
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p != end && (*p == ' ' || *p == '\t')) {
    ++p;
  }
  if (p == end || *p == '#' || *p == '\r') {
    return false;
  }
  if (!parse_int64(p, end, a) || !parse_int64(p, end, b) || !rest_is_blank(p, end)) {
    throw ParseError("line " + std::to_string(line_no) + ": expected two integer ids, got \"" +
                     line + "\"");
  }
  return true;
}

std::string join_ids(const std::vector<std::int64_t>& ids, std::size_t cap = 20) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size() && i < cap; ++i) {
    os << (i ? ", " : "") << ids[i];
  }
  if (ids.size() > cap) {
    os << ", ... and " << (ids.size() - cap) << " more";
  }
  return os.str();
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& opts) {
  // slot = provisional dense id in first-appearance order (before stripping)
  std::unordered_map<std::int64_t, VertexId> slot_of;
  std::vector<std::int64_t> slot_external;
  auto slot = [&](std::int64_t ext) {
    auto [it, inserted] = slot_of.try_emplace(ext, static_cast<VertexId>(slot_external.size()));
    if (inserted) {
      slot_external.push_back(ext);
    }
    return it->second;
  };

  std::vector<std::pair<VertexId, VertexId>> edges;
  std::unordered_set<std::uint64_t> seen_edges;
  LoadStats stats;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!parse_pair_line(line, line_no, a, b)) {
      continue;
    }
    VertexId u = slot(a);
    VertexId v = slot(b);
    if (u == v) {
      ++stats.self_loops_dropped;
      continue;
    }
    std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    if (!seen_edges.insert(key).second) {
      ++stats.duplicates_collapsed;
      continue;
    }
    edges.emplace_back(u, v);
  }

  if (stats.duplicates_collapsed > 0 && !opts.dedupe) {
    throw DataError("duplicate edges in input: " + std::to_string(stats.duplicates_collapsed) +
                    " repeated entries");
  }

  std::vector<std::uint32_t> deg(slot_external.size(), 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }

  std::vector<std::int64_t> isolated;
  for (std::size_t s = 0; s < deg.size(); ++s) {
    if (deg[s] == 0) {
      isolated.push_back(slot_external[s]);
    }
  }
  if (!isolated.empty() && !opts.strip_isolated) {
    throw DataError("isolated vertices in input: " + join_ids(isolated));
  }
  stats.isolated_stripped = isolated.size();

  // final dense ids skip stripped slots but keep first-appearance order
  IdRemap remap;
  std::vector<VertexId> dense_of_slot(deg.size(), 0);
  for (std::size_t s = 0; s < deg.size(); ++s) {
    if (deg[s] == 0) {
      continue;
    }
    dense_of_slot[s] = static_cast<VertexId>(remap.to_external.size());
    remap.to_internal.emplace(slot_external[s], dense_of_slot[s]);
    remap.to_external.push_back(slot_external[s]);
  }
  for (auto& [u, v] : edges) {
    u = dense_of_slot[u];
    v = dense_of_slot[v];
  }

  LoadedGraph out;
  out.graph = Graph::from_edges(remap.to_external.size(), edges);
  out.remap = std::move(remap);
  out.stats = stats;
  return out;
}

LoadedGraph load_edge_list_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open edge list file: " + path);
  }
  return load_edge_list(in, opts);
}

void write_edge_list(std::ostream& out, const Graph& g, const IdRemap* remap) {
  const std::size_t n = g.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : g.neighbors(v)) {
      if (u > v) {
        if (remap) {
          out << remap->to_external[v] << ' ' << remap->to_external[u] << '\n';
        } else {
          out << v << ' ' << u << '\n';
        }
      }
    }
  }
}

void write_partition(std::ostream& out, const Partition& p, const IdRemap* remap) {
  if (!remap) {
    for (std::size_t v = 0; v < p.labels.size(); ++v) {
      out << v << ' ' << p.labels[v] << '\n';
    }
    return;
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  rows.reserve(p.labels.size());
  for (std::size_t v = 0; v < p.labels.size(); ++v) {
    rows.emplace_back(remap->to_external[v], p.labels[v]);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [ext, label] : rows) {
    out << ext << ' ' << label << '\n';
  }
}

std::vector<std::pair<std::int64_t, std::int64_t>> read_partition_pairs(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::unordered_set<std::int64_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::int64_t v = 0;
    std::int64_t label = 0;
    if (!parse_pair_line(line, line_no, v, label)) {
      continue;
    }
    if (!seen.insert(v).second) {
      throw ParseError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                       " labelled twice");
    }
    pairs.emplace_back(v, label);
  }
  return pairs;
}

Partition partition_for_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                              const IdRemap& remap, bool ignore_unknown) {
  Partition p;
  p.labels.assign(remap.to_external.size(), 0);
  std::vector<bool> covered(remap.to_external.size(), false);
  std::vector<std::int64_t> unknown;
  for (const auto& [ext, label] : pairs) {
    auto it = remap.to_internal.find(ext);
    if (it == remap.to_internal.end()) {
      unknown.push_back(ext);
      continue;
    }
    p.labels[it->second] = label;
    covered[it->second] = true;
  }
  if (!unknown.empty() && !ignore_unknown) {
    throw DataError("labels for vertices not in the graph: " + join_ids(unknown));
  }
  std::vector<std::int64_t> missing;
  for (std::size_t v = 0; v < covered.size(); ++v) {
    if (!covered[v]) {
      missing.push_back(remap.to_external[v]);
    }
  }
  if (!missing.empty()) {
    throw DataError("graph vertices missing from the label file: " + join_ids(missing));
  }
  return p;
}

std::pair<Partition, Partition> align_partition_pair(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& a,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& b) {
  std::map<std::int64_t, std::int64_t> ma(a.begin(), a.end());
  std::map<std::int64_t, std::int64_t> mb(b.begin(), b.end());
  std::vector<std::int64_t> only_a;
  std::vector<std::int64_t> only_b;
  for (const auto& [v, _] : ma) {
    if (!mb.count(v)) {
      only_a.push_back(v);
    }
  }
  for (const auto& [v, _] : mb) {
    if (!ma.count(v)) {
      only_b.push_back(v);
    }
  }
  if (!only_a.empty() || !only_b.empty()) {
    std::string msg = "partitions cover different vertex sets";
    if (!only_a.empty()) {
      msg += "; only in first: " + join_ids(only_a);
    }
    if (!only_b.empty()) {
      msg += "; only in second: " + join_ids(only_b);
    }
    throw DataError(msg);
  }
  std::pair<Partition, Partition> out;
  out.first.labels.reserve(ma.size());
  out.second.labels.reserve(ma.size());
  for (const auto& [v, label] : ma) {
    out.first.labels.push_back(label);
    out.second.labels.push_back(mb.at(v));
  }
  return out;
}

}  // namespace veco
