#include "veco/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "veco/edge_list.hpp"
#include "veco/errors.hpp"
#include "veco/rng.hpp"

namespace veco {

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
  return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
}

// Truncated continuous power law on [lo, hi) with density ~ x^-exponent.
struct PowerLaw {
  double lo;
  double hi;
  double exponent;

  double cdf(double x) const {
    x = std::clamp(x, lo, hi);
    if (std::abs(exponent - 1.0) < 1e-12) {
      return std::log(x / lo) / std::log(hi / lo);
    }
    const double e = 1.0 - exponent;
    return (std::pow(x, e) - std::pow(lo, e)) / (std::pow(hi, e) - std::pow(lo, e));
  }

  double inv_cdf(double u) const {
    if (std::abs(exponent - 1.0) < 1e-12) {
      return lo * std::pow(hi / lo, u);
    }
    const double e = 1.0 - exponent;
    return std::pow(std::pow(lo, e) + u * (std::pow(hi, e) - std::pow(lo, e)), 1.0 / e);
  }

  // E[floor(X)], the mean of the integer samples this law produces
  double floored_mean() const {
    double mean = 0.0;
    const auto first = static_cast<std::uint64_t>(std::floor(lo));
    const auto last = static_cast<std::uint64_t>(std::ceil(hi)) - 1;
    for (std::uint64_t k = first; k <= last; ++k) {
      const double p = cdf(static_cast<double>(k + 1)) - cdf(static_cast<double>(k));
      mean += p * static_cast<double>(k);
    }
    return mean;
  }

  std::uint32_t sample(Rng& rng) const {
    double x = inv_cdf(rng.uniform01());
    auto k = static_cast<std::uint32_t>(std::floor(x));
    return std::clamp<std::uint32_t>(k, static_cast<std::uint32_t>(std::floor(lo)),
                                     static_cast<std::uint32_t>(std::ceil(hi)) - 1);
  }
};

// Finds lo so that integer samples from [lo, hi) average to `target`.
PowerLaw solve_power_law_mean(double target, double hi, double exponent) {
  double a = 1.0;
  double b = hi - 1.0;
  PowerLaw law{a, hi, exponent};
  if (target < PowerLaw{a, hi, exponent}.floored_mean() ||
      target > PowerLaw{b, hi, exponent}.floored_mean()) {
    throw ConfigError("average degree " + std::to_string(target) +
                      " not attainable with max degree " + std::to_string(hi - 1.0));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    law.lo = mid;
    if (law.floored_mean() < target) {
      a = mid;
    } else {
      b = mid;
    }
  }
  law.lo = 0.5 * (a + b);
  return law;
}

// Random stub matching with rejection of self-pairs, forbidden pairs and
// duplicates. Unmatched leftovers are paired greedily; whatever still cannot
// be placed is dropped.
template <class Forbidden>
void match_stubs(std::vector<VertexId>& stubs, Forbidden forbidden,
                 std::unordered_set<std::uint64_t>& edge_set,
                 std::vector<std::pair<VertexId, VertexId>>& edges, Rng& rng) {
  auto try_commit = [&](VertexId u, VertexId v) {
    if (u == v || forbidden(u, v) || edge_set.count(edge_key(u, v))) {
      return false;
    }
    edge_set.insert(edge_key(u, v));
    edges.emplace_back(u, v);
    return true;
  };

  for (int round = 0; round < 40 && stubs.size() >= 2; ++round) {
    rng.shuffle(stubs);
    std::vector<VertexId> carry;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      if (!try_commit(stubs[i], stubs[i + 1])) {
        carry.push_back(stubs[i]);
        carry.push_back(stubs[i + 1]);
      }
    }
    if (stubs.size() % 2 == 1) {
      carry.push_back(stubs.back());
    }
    stubs = std::move(carry);
  }
  // last resort: quadratic scan over the few leftovers
  for (std::size_t i = 0; i < stubs.size(); ++i) {
    if (stubs[i] == static_cast<VertexId>(-1)) {
      continue;
    }
    for (std::size_t j = i + 1; j < stubs.size(); ++j) {
      if (stubs[j] == static_cast<VertexId>(-1)) {
        continue;
      }
      if (try_commit(stubs[i], stubs[j])) {
        stubs[i] = static_cast<VertexId>(-1);
        stubs[j] = static_cast<VertexId>(-1);
        break;
      }
    }
  }
  stubs.clear();
}

}  // namespace

GeneratedGraph gen_planted(const PlantedConfig& config) {
  if (config.groups == 0 || config.n == 0 || config.n % config.groups != 0) {
    throw ConfigError("n must be a positive multiple of groups");
  }
  const std::uint32_t group_size = config.n / config.groups;
  if (group_size < 2) {
    throw ConfigError("groups must hold at least 2 vertices each");
  }
  if (config.z_out < 0.0 || config.z_out > config.z) {
    throw ConfigError("z_out must lie in [0, z]; got z_out=" + std::to_string(config.z_out) +
                      ", z=" + std::to_string(config.z));
  }
  const double z_in = config.z - config.z_out;
  const double p_in = z_in / static_cast<double>(group_size - 1);
  const double p_out = config.groups == 1
                           ? 0.0
                           : config.z_out / static_cast<double>(config.n - group_size);
  if (p_in > 1.0) {
    throw ConfigError("z - z_out exceeds the intra-community degree capacity " +
                      std::to_string(group_size - 1));
  }
  if (p_out > 1.0) {
    throw ConfigError("z_out exceeds the inter-community degree capacity");
  }
  if (config.groups == 1 && config.z_out > 0.0) {
    throw ConfigError("z_out > 0 requires at least 2 groups");
  }

  Rng rng(config.seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::uint32_t> deg(config.n, 0);
  auto group_of = [&](VertexId v) { return v / group_size; };
  for (VertexId i = 0; i < config.n; ++i) {
    for (VertexId j = i + 1; j < config.n; ++j) {
      const double p = group_of(i) == group_of(j) ? p_in : p_out;
      if (rng.bernoulli(p)) {
        edges.emplace_back(i, j);
        ++deg[i];
        ++deg[j];
      }
    }
  }
  // the model forbids isolated vertices: attach any to a random peer
  for (VertexId v = 0; v < config.n; ++v) {
    if (deg[v] > 0) {
      continue;
    }
    const VertexId base = static_cast<VertexId>(group_of(v) * group_size);
    VertexId u = v;
    while (u == v) {
      u = base + rng.below32(group_size);
    }
    edges.emplace_back(v, u);
    ++deg[v];
    ++deg[u];
  }

  GeneratedGraph out;
  out.graph = Graph::from_edges(config.n, edges);
  out.truth.labels.resize(config.n);
  for (VertexId v = 0; v < config.n; ++v) {
    out.truth.labels[v] = static_cast<std::int64_t>(group_of(v));
  }
  return out;
}

namespace {

struct LfrDraw {
  std::vector<std::uint32_t> degree;
  std::vector<std::uint32_t> intra_degree;
  std::vector<std::uint32_t> community_size;
  std::vector<std::uint32_t> community_of;
};

// One full attempt at realising the configuration; returns false when the
// drawn degrees cannot be hosted by the drawn community sizes.
bool draw_lfr(const LfrLikeConfig& cfg, const PowerLaw& degree_law, Rng& rng, LfrDraw& d) {
  const std::uint32_t n = cfg.n;
  d.degree.resize(n);
  for (auto& deg : d.degree) {
    deg = std::clamp<std::uint32_t>(degree_law.sample(rng), 1, cfg.max_degree);
  }

  // community sizes: power law, trimmed so they sum to exactly n
  PowerLaw size_law{static_cast<double>(cfg.min_community),
                    static_cast<double>(cfg.max_community) + 1.0, cfg.community_size_exponent};
  d.community_size.clear();
  std::uint64_t total = 0;
  while (total < n) {
    std::uint32_t s = size_law.sample(rng);
    d.community_size.push_back(s);
    total += s;
  }
  std::uint64_t excess = total - n;
  while (excess > 0) {
    bool changed = false;
    for (auto& s : d.community_size) {
      if (excess == 0) {
        break;
      }
      if (s > cfg.min_community) {
        --s;
        --excess;
        changed = true;
      }
    }
    if (!changed) {
      // all communities at the minimum: drop one whole community if possible
      if (excess >= cfg.min_community && !d.community_size.empty()) {
        d.community_size.pop_back();
        excess -= cfg.min_community;
        changed = true;
      }
    }
    if (!changed) {
      return false;
    }
  }

  // intra degree: randomised rounding of (1 - mu) * d keeps the expectation exact
  d.intra_degree.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    const double x = (1.0 - cfg.mu) * static_cast<double>(d.degree[v]);
    auto lo = static_cast<std::uint32_t>(std::floor(x));
    d.intra_degree[v] = lo + (rng.uniform01() < (x - static_cast<double>(lo)) ? 1 : 0);
    d.intra_degree[v] = std::min(d.intra_degree[v], d.degree[v]);
  }

  // place high-intra-degree vertices first; each needs a community with a
  // free slot and size > intra degree
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) {
    order[v] = v;
  }
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return d.intra_degree[a] > d.intra_degree[b];
  });

  const auto communities = static_cast<std::uint32_t>(d.community_size.size());
  std::vector<std::uint32_t> free_slots(d.community_size.begin(), d.community_size.end());
  d.community_of.assign(n, 0);
  std::vector<std::uint32_t> feasible;
  for (VertexId v : order) {
    feasible.clear();
    for (std::uint32_t c = 0; c < communities; ++c) {
      if (free_slots[c] > 0 && d.community_size[c] > d.intra_degree[v]) {
        feasible.push_back(c);
      }
    }
    if (feasible.empty()) {
      return false;
    }
    const std::uint32_t c = feasible[rng.below(feasible.size())];
    d.community_of[v] = c;
    --free_slots[c];
  }
  return true;
}

}  // namespace

GeneratedGraph gen_lfr_like(const LfrLikeConfig& cfg) {
  if (cfg.n < 2) {
    throw ConfigError("n must be at least 2");
  }
  if (cfg.mu < 0.0 || cfg.mu > 1.0) {
    throw ConfigError("mu must lie in [0, 1]");
  }
  if (cfg.avg_degree < 1.0 || static_cast<double>(cfg.max_degree) < cfg.avg_degree) {
    throw ConfigError("need 1 <= avg_degree <= max_degree");
  }
  if (cfg.max_degree >= cfg.n) {
    throw ConfigError("max_degree must be smaller than n");
  }
  if (cfg.min_community < 2 || cfg.min_community > cfg.max_community) {
    throw ConfigError("need 2 <= min_community <= max_community");
  }
  if (cfg.max_community > cfg.n) {
    throw ConfigError("max_community must not exceed n");
  }

  const PowerLaw degree_law =
      solve_power_law_mean(cfg.avg_degree, static_cast<double>(cfg.max_degree) + 1.0,
                           cfg.degree_exponent);

  Rng rng(cfg.seed);
  LfrDraw d;
  constexpr int kAttempts = 30;
  bool placed = false;
  for (int attempt = 0; attempt < kAttempts && !placed; ++attempt) {
    placed = draw_lfr(cfg, degree_law, rng, d);
  }
  if (!placed) {
    throw ConfigError("community sizes cannot host the drawn intra-degrees after " +
                      std::to_string(kAttempts) + " attempts; loosen the size bounds or mu");
  }

  const std::uint32_t n = cfg.n;
  const auto communities = static_cast<std::uint32_t>(d.community_size.size());
  std::vector<std::vector<VertexId>> members(communities);
  for (VertexId v = 0; v < n; ++v) {
    members[d.community_of[v]].push_back(v);
  }

  std::unordered_set<std::uint64_t> edge_set;
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(cfg.avg_degree * n / 2.0));

  // intra-community stub matching
  std::vector<VertexId> stubs;
  for (std::uint32_t c = 0; c < communities; ++c) {
    stubs.clear();
    std::uint64_t sum = 0;
    for (VertexId v : members[c]) {
      sum += d.intra_degree[v];
    }
    if (sum % 2 == 1) {
      // drop one intra stub outright (from the degree too, so it does not
      // reappear as an inter stub)
      std::vector<VertexId> candidates;
      for (VertexId v : members[c]) {
        if (d.intra_degree[v] > 0) {
          candidates.push_back(v);
        }
      }
      const VertexId victim = candidates[rng.below(candidates.size())];
      --d.intra_degree[victim];
      --d.degree[victim];
    }
    for (VertexId v : members[c]) {
      stubs.insert(stubs.end(), d.intra_degree[v], v);
    }
    match_stubs(stubs, [](VertexId, VertexId) { return false; }, edge_set, edges, rng);
  }

  // inter-community stub matching
  stubs.clear();
  for (VertexId v = 0; v < n; ++v) {
    stubs.insert(stubs.end(), d.degree[v] - d.intra_degree[v], v);
  }
  match_stubs(
      stubs, [&](VertexId u, VertexId v) { return d.community_of[u] == d.community_of[v]; },
      edge_set, edges, rng);

  // matching drops can zero out a vertex; the model forbids that
  std::vector<std::uint32_t> realized(n, 0);
  for (const auto& [u, v] : edges) {
    ++realized[u];
    ++realized[v];
  }
  for (VertexId v = 0; v < n; ++v) {
    if (realized[v] > 0) {
      continue;
    }
    const auto& home = members[d.community_of[v]];
    VertexId u = v;
    while (u == v) {
      u = home[rng.below(home.size())];
    }
    edge_set.insert(edge_key(u, v));
    edges.emplace_back(v, u);
    ++realized[v];
    ++realized[u];
  }

  GeneratedGraph out;
  out.graph = Graph::from_edges(n, edges);
  out.truth.labels.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    out.truth.labels[v] = static_cast<std::int64_t>(d.community_of[v]);
  }
  return out;
}

LoadedBenchmark load_lfr_files(std::istream& network, std::istream& community) {
  LoadedGraph loaded = load_edge_list(network);
  auto pairs = read_partition_pairs(community);
  // community files may label vertices the network never mentions; those
  // would be isolated and are ignored
  Partition truth = partition_for_graph(pairs, loaded.remap, /*ignore_unknown=*/true);
  return {std::move(loaded.graph), std::move(truth), std::move(loaded.remap)};
}

LoadedBenchmark load_lfr_files(const std::string& network_path,
                               const std::string& community_path) {
  std::ifstream net(network_path);
  if (!net) {
    throw DataError("cannot open network file: " + network_path);
  }
  std::ifstream com(community_path);
  if (!com) {
    throw DataError("cannot open community file: " + community_path);
  }
  return load_lfr_files(net, com);
}

}  // namespace veco
