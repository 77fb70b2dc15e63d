#include "veco/actors.hpp"

#include <algorithm>
#include <sstream>

#include "veco/errors.hpp"
#include "veco/rng.hpp"
#include "veco/union_find.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace veco {

MessageBus::MessageBus(const Graph& g)
    : graph_(&g), staged_(g.adjacency.size()), current_(g.adjacency.size()) {}

bool MessageBus::send(VertexId from, VertexId to, Message msg) {
  auto nbrs = graph_->neighbors(to);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), from);
  if (it == nbrs.end() || *it != from) {
    violations_.fetch_add(1, std::memory_order_relaxed);
    return false;
  }
  msg.sender = from;
  staged_[graph_->offsets[to] + static_cast<std::uint64_t>(it - nbrs.begin())] = std::move(msg);
  sent_.fetch_add(1, std::memory_order_relaxed);
  return true;
}

void MessageBus::end_round() {
  std::swap(staged_, current_);
  ++stats_.rounds;
  stats_.messages_per_round.push_back(sent_.exchange(0, std::memory_order_relaxed));
  stats_.locality_violations += violations_.exchange(0, std::memory_order_relaxed);
  std::fill(staged_.begin(), staged_.end(), Message{});
}

void VertexActor::receive_degrees(std::span<const Message> inbox, const DetectionParams& params) {
  nbr_ids.clear();
  nbr_degrees.clear();
  std::vector<std::pair<VertexId, std::uint32_t>> pool;
  pool.reserve(inbox.size());
  for (const Message& m : inbox) {
    if (m.kind != Message::Kind::degree_announce) {
      continue;
    }
    nbr_ids.push_back(m.sender);
    nbr_degrees.push_back(m.degree);
    pool.emplace_back(m.sender, m.degree);
  }
  auto members = std::make_shared<std::vector<VertexId>>();
  detail::select_top_k(pool, detail::clamped_k(params.k_rule, degree), *members);
  own_list = std::move(members);
}

void VertexActor::receive_lists(std::span<const Message> inbox, const DetectionParams& params) {
  static thread_local std::vector<std::span<const VertexId>> lists;
  lists.clear();
  for (const Message& m : inbox) {
    if (m.kind != Message::Kind::list_announce || !m.members) {
      continue;
    }
    lists.emplace_back(m.members->data(), m.members->size());
  }
  auto [pref, prov] =
      detail::choose_preferred(id, degree, {own_list->data(), own_list->size()}, nbr_ids,
                               nbr_degrees, lists, params);
  preferred = pref;
  provenance = prov;
}

ActorRunResult run_rounds(const Graph& g, const DetectionParams& params, const Execution& exec) {
  ValidationReport report = validate(g);
  if (!report.ok()) {
    throw DataError("graph violates model assumptions: " + report.to_string());
  }
  const std::size_t n = g.vertex_count();
  MessageBus bus(g);
  std::vector<VertexActor> actors(n);
  for (VertexId v = 0; v < n; ++v) {
    actors[v].id = v;
    actors[v].degree = g.degree(v);
  }

  auto for_each_vertex = [&](auto&& body) {
#ifdef _OPENMP
    if (exec.parallel) {
      const int nt = exec.threads > 0 ? exec.threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(dynamic, 512)
      for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
        body(static_cast<VertexId>(v));
      }
      return;
    }
#endif
    for (VertexId v = 0; v < n; ++v) {
      body(v);
    }
  };

  // round 1: every vertex announces its degree to its neighbourhood
  for_each_vertex([&](VertexId v) {
    Message m;
    m.kind = Message::Kind::degree_announce;
    m.degree = actors[v].degree;
    for (VertexId u : g.neighbors(v)) {
      bus.send(v, u, m);
    }
  });
  bus.end_round();
  for_each_vertex([&](VertexId v) { actors[v].receive_degrees(bus.inbox(v), params); });

  // round 2: every vertex broadcasts its candidate list
  for_each_vertex([&](VertexId v) {
    Message m;
    m.kind = Message::Kind::list_announce;
    m.members = actors[v].own_list;
    for (VertexId u : g.neighbors(v)) {
      bus.send(v, u, m);
    }
  });
  bus.end_round();
  for_each_vertex([&](VertexId v) { actors[v].receive_lists(bus.inbox(v), params); });

  ActorRunResult out;
  out.assignment.preferred.resize(n);
  out.assignment.provenance.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    out.assignment.preferred[v] = actors[v].preferred;
    out.assignment.provenance[v] = actors[v].provenance;
  }
  out.stats = bus.stats();
  return out;
}

PollerPlan block_plan(std::size_t n, std::uint32_t pollers) {
  pollers = std::max<std::uint32_t>(1, pollers);
  PollerPlan plan;
  plan.subsets.resize(pollers);
  const std::size_t chunk = (n + pollers - 1) / pollers;
  for (std::uint32_t p = 0; p < pollers; ++p) {
    const std::size_t lo = std::min(n, p * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    for (std::size_t v = lo; v < hi; ++v) {
      plan.subsets[p].push_back(static_cast<VertexId>(v));
    }
  }
  return plan;
}

PollerPlan random_cover_plan(std::size_t n, std::uint32_t pollers, std::uint64_t seed) {
  pollers = std::max<std::uint32_t>(1, pollers);
  PollerPlan plan;
  plan.subsets.resize(pollers);
  Rng rng(derive_seed(seed, 0x706c616eULL));
  for (std::size_t v = 0; v < n; ++v) {
    // at least one subset per vertex, sometimes more (overlap is allowed)
    std::uint32_t copies = 1 + static_cast<std::uint32_t>(rng.below(pollers) == 0 ? rng.below(2) : 0);
    for (std::uint32_t c = 0; c < copies; ++c) {
      plan.subsets[rng.below32(pollers)].push_back(static_cast<VertexId>(v));
    }
  }
  for (auto& subset : plan.subsets) {
    rng.shuffle(subset);
  }
  return plan;
}

Partition poll_and_merge(const Assignment& assignment, const PollerPlan& plan,
                         const Execution& exec) {
  const std::size_t n = assignment.size();
  std::vector<bool> covered(n, false);
  for (const auto& subset : plan.subsets) {
    for (VertexId v : subset) {
      if (v >= n) {
        throw DataError("poller plan names vertex " + std::to_string(v) +
                        " outside the assignment carrier");
      }
      covered[v] = true;
    }
  }
  std::vector<VertexId> missing;
  for (VertexId v = 0; v < n; ++v) {
    if (!covered[v]) {
      missing.push_back(v);
    }
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << "poller plan does not cover vertices:";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
      os << ' ' << missing[i];
    }
    if (missing.size() > 20) {
      os << " ... and " << (missing.size() - 20) << " more";
    }
    throw DataError(os.str());
  }

#ifdef _OPENMP
  if (exec.parallel) {
    ConcurrentUnionFind uf(n);
    const int nt = exec.threads > 0 ? exec.threads : omp_get_max_threads();
    const auto subsets = static_cast<std::int64_t>(plan.subsets.size());
#pragma omp parallel for num_threads(nt) schedule(dynamic)
    for (std::int64_t s = 0; s < subsets; ++s) {
      for (VertexId v : plan.subsets[s]) {
        uf.unite(v, assignment.preferred[v]);
      }
    }
    return uf.to_partition();
  }
#endif
  UnionFind uf(n);
  for (const auto& subset : plan.subsets) {
    for (VertexId v : subset) {
      uf.unite(v, assignment.preferred[v]);
    }
  }
  return uf.to_partition();
}

}  // namespace veco
