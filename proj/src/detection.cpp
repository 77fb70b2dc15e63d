#include "veco/detection.hpp"

#include <algorithm>
#include <stdexcept>

#include "veco/errors.hpp"
#include "veco/rng.hpp"
#include "veco/union_find.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace veco {

std::uint32_t half_degree_k(std::uint32_t d) { return std::max<std::uint32_t>(1, (d + 1) / 2); }
std::uint32_t one_k(std::uint32_t) { return 1; }
std::uint32_t full_k(std::uint32_t d) { return d; }

namespace detail {

std::uint32_t clamped_k(KRule rule, std::uint32_t degree) {
  if (degree == 0) {
    return 0;
  }
  std::uint32_t k = rule ? rule(degree) : half_degree_k(degree);
  return std::clamp<std::uint32_t>(k, 1, degree);
}

void select_top_k(std::vector<std::pair<VertexId, std::uint32_t>>& pool, std::uint32_t k,
                  std::vector<VertexId>& out) {
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (k < pool.size()) {
    std::nth_element(pool.begin(), pool.begin() + k - 1, pool.end(), by_rank);
  }
  out.clear();
  for (std::uint32_t i = 0; i < k && i < pool.size(); ++i) {
    out.push_back(pool[i].first);
  }
  std::sort(out.begin(), out.end());
}

VertexId pick_tied(std::span<const VertexId> tied, const DetectionParams& params, VertexId owner) {
  if (tied.size() == 1 || params.ties == TiePolicy::lowest_id) {
    return tied.front();
  }
  return tied[derive_seed(params.seed, owner, 0x7165ULL) % tied.size()];
}

std::pair<VertexId, Provenance> choose_preferred(
    VertexId v, std::uint32_t dv, std::span<const VertexId> own_list,
    std::span<const VertexId> nbr_ids, std::span<const std::uint32_t> nbr_degrees,
    std::span<const std::span<const VertexId>> nbr_lists, const DetectionParams& params) {
  if (nbr_ids.empty()) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " has no neighbours");
  }
  static thread_local std::vector<VertexId> tied;
  tied.clear();
  std::uint32_t best = 0;
  bool any = false;
  for (std::size_t i = 0; i < nbr_ids.size(); ++i) {
    std::uint32_t agree = agreement(own_list, nbr_lists[i]);
    double scale = params.norm == ThresholdNorm::min_degree
                       ? static_cast<double>(std::min(nbr_degrees[i], dv))
                       : static_cast<double>(std::min(nbr_lists[i].size(), own_list.size()));
    if (static_cast<double>(agree) < params.tau * scale) {
      continue;
    }
    if (!any || agree > best) {
      any = true;
      best = agree;
      tied.clear();
      tied.push_back(nbr_ids[i]);
    } else if (agree == best) {
      tied.push_back(nbr_ids[i]);
    }
  }
  if (any) {
    // equal-agreement candidates: the higher-degree one wins, the policy
    // only resolves what is still tied after that. Keeps run-to-run
    // variance minimal instead of scattering boundary vertices.
    static thread_local std::vector<VertexId> keep;
    keep.clear();
    std::uint32_t best_deg = 0;
    for (std::size_t i = 0, j = 0; i < nbr_ids.size() && j < tied.size(); ++i) {
      if (nbr_ids[i] != tied[j]) {
        continue;
      }
      ++j;
      if (keep.empty() || nbr_degrees[i] > best_deg) {
        best_deg = nbr_degrees[i];
        keep.clear();
        keep.push_back(nbr_ids[i]);
      } else if (nbr_degrees[i] == best_deg) {
        keep.push_back(nbr_ids[i]);
      }
    }
    return {pick_tied(keep, params, v), Provenance::agreement};
  }
  // nobody passed the threshold: fall back to the highest-degree neighbour
  std::uint32_t best_deg = 0;
  for (std::size_t i = 0; i < nbr_ids.size(); ++i) {
    if (tied.empty() || nbr_degrees[i] > best_deg) {
      best_deg = nbr_degrees[i];
      tied.clear();
      tied.push_back(nbr_ids[i]);
    } else if (nbr_degrees[i] == best_deg) {
      tied.push_back(nbr_ids[i]);
    }
  }
  return {pick_tied(tied, params, v), Provenance::degree_fallback};
}

}  // namespace detail

namespace {

void check_params(const DetectionParams& params) {
  if (params.tau < 0.0 || params.tau > 1.0) {
    throw ConfigError("tau must lie in [0, 1], got " + std::to_string(params.tau));
  }
}

void compile_one(const Graph& g, VertexId v, const DetectionParams& params,
                 std::vector<std::pair<VertexId, std::uint32_t>>& pool,
                 std::vector<VertexId>& out) {
  pool.clear();
  for (VertexId u : g.neighbors(v)) {
    pool.emplace_back(u, g.degree(u));
  }
  detail::select_top_k(pool, detail::clamped_k(params.k_rule, g.degree(v)), out);
}

std::vector<std::uint64_t> list_offsets(const Graph& g, const DetectionParams& params) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) {
    offsets[v + 1] = offsets[v] + detail::clamped_k(params.k_rule, g.degree(v));
  }
  return offsets;
}

std::pair<VertexId, Provenance> select_one(const Graph& g, VertexId v, const CandidateLists& lists,
                                           const DetectionParams& params,
                                           std::vector<std::uint32_t>& degs,
                                           std::vector<std::span<const VertexId>>& spans) {
  auto nbrs = g.neighbors(v);
  degs.clear();
  spans.clear();
  for (VertexId u : nbrs) {
    degs.push_back(g.degree(u));
    spans.push_back(lists.of(u));
  }
  return detail::choose_preferred(v, g.degree(v), lists.of(v), nbrs, degs, spans, params);
}

}  // namespace

CandidateList compile_candidates(const Graph& g, VertexId v, const DetectionParams& params) {
  check_params(params);
  std::vector<std::pair<VertexId, std::uint32_t>> pool;
  CandidateList list{v, {}};
  compile_one(g, v, params, pool, list.members);
  return list;
}

CandidateLists compile_all_candidates_serial(const Graph& g, const DetectionParams& params) {
  check_params(params);
  const std::size_t n = g.vertex_count();
  CandidateLists lists;
  lists.offsets = list_offsets(g, params);
  lists.members.resize(lists.offsets[n]);
  std::vector<std::pair<VertexId, std::uint32_t>> pool;
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    compile_one(g, v, params, pool, out);
    std::copy(out.begin(), out.end(), lists.members.begin() + lists.offsets[v]);
  }
  return lists;
}

CandidateLists compile_all_candidates_parallel(const Graph& g, const DetectionParams& params,
                                               int threads) {
  check_params(params);
  const std::size_t n = g.vertex_count();
  CandidateLists lists;
  lists.offsets = list_offsets(g, params);
  lists.members.resize(lists.offsets[n]);
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
  {
    std::vector<std::pair<VertexId, std::uint32_t>> pool;
    std::vector<VertexId> out;
#pragma omp for schedule(dynamic, 512)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
      compile_one(g, static_cast<VertexId>(v), params, pool, out);
      std::copy(out.begin(), out.end(), lists.members.begin() + lists.offsets[v]);
    }
  }
#else
  (void)threads;
  std::vector<std::pair<VertexId, std::uint32_t>> pool;
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    compile_one(g, v, params, pool, out);
    std::copy(out.begin(), out.end(), lists.members.begin() + lists.offsets[v]);
  }
#endif
  return lists;
}

CandidateLists compile_all_candidates(const Graph& g, const DetectionParams& params,
                                      const Execution& exec) {
  return exec.parallel ? compile_all_candidates_parallel(g, params, exec.threads)
                       : compile_all_candidates_serial(g, params);
}

std::uint32_t agreement(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::uint32_t count = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::pair<VertexId, Provenance> select_preferred(const Graph& g, VertexId v,
                                                 const CandidateLists& lists,
                                                 const DetectionParams& params) {
  check_params(params);
  std::vector<std::uint32_t> degs;
  std::vector<std::span<const VertexId>> spans;
  return select_one(g, v, lists, params, degs, spans);
}

Assignment select_all_preferred_serial(const Graph& g, const CandidateLists& lists,
                                       const DetectionParams& params) {
  check_params(params);
  const std::size_t n = g.vertex_count();
  Assignment a;
  a.preferred.resize(n);
  a.provenance.resize(n);
  std::vector<std::uint32_t> degs;
  std::vector<std::span<const VertexId>> spans;
  for (VertexId v = 0; v < n; ++v) {
    auto [pref, prov] = select_one(g, v, lists, params, degs, spans);
    a.preferred[v] = pref;
    a.provenance[v] = prov;
  }
  return a;
}

Assignment select_all_preferred_parallel(const Graph& g, const CandidateLists& lists,
                                         const DetectionParams& params, int threads) {
  check_params(params);
  const std::size_t n = g.vertex_count();
  Assignment a;
  a.preferred.resize(n);
  a.provenance.resize(n);
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
  {
    std::vector<std::uint32_t> degs;
    std::vector<std::span<const VertexId>> spans;
#pragma omp for schedule(dynamic, 512)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
      auto [pref, prov] = select_one(g, static_cast<VertexId>(v), lists, params, degs, spans);
      a.preferred[v] = pref;
      a.provenance[v] = prov;
    }
  }
#else
  (void)threads;
  std::vector<std::uint32_t> degs;
  std::vector<std::span<const VertexId>> spans;
  for (VertexId v = 0; v < n; ++v) {
    auto [pref, prov] = select_one(g, v, lists, params, degs, spans);
    a.preferred[v] = pref;
    a.provenance[v] = prov;
  }
#endif
  return a;
}

Assignment select_all_preferred(const Graph& g, const CandidateLists& lists,
                                const DetectionParams& params, const Execution& exec) {
  return exec.parallel ? select_all_preferred_parallel(g, lists, params, exec.threads)
                       : select_all_preferred_serial(g, lists, params);
}

namespace {

void check_assignment(const Assignment& assignment) {
  const std::size_t n = assignment.preferred.size();
  for (VertexId v = 0; v < n; ++v) {
    VertexId a = assignment.preferred[v];
    if (a >= n || a == v) {
      throw std::invalid_argument("assignment must map every vertex to a different vertex");
    }
  }
}

}  // namespace

Partition uncover_serial(const Assignment& assignment) {
  check_assignment(assignment);
  UnionFind uf(assignment.size());
  for (VertexId v = 0; v < assignment.size(); ++v) {
    uf.unite(v, assignment.preferred[v]);
  }
  return uf.to_partition();
}

Partition uncover_parallel(const Assignment& assignment, int threads) {
  check_assignment(assignment);
  const std::size_t n = assignment.size();
  ConcurrentUnionFind uf(n);
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(static)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
    uf.unite(static_cast<VertexId>(v), assignment.preferred[v]);
  }
#else
  (void)threads;
  for (VertexId v = 0; v < n; ++v) {
    uf.unite(v, assignment.preferred[v]);
  }
#endif
  return uf.to_partition();
}

Partition uncover(const Assignment& assignment, const Execution& exec) {
  return exec.parallel ? uncover_parallel(assignment, exec.threads) : uncover_serial(assignment);
}

DetectionResult detect(const Graph& g, const DetectionParams& params, const Execution& exec) {
  check_params(params);
  ValidationReport report = validate(g);
  if (!report.ok()) {
    throw DataError("graph violates model assumptions: " + report.to_string());
  }
  CandidateLists lists = compile_all_candidates(g, params, exec);
  Assignment assignment = select_all_preferred(g, lists, params, exec);
  Partition partition = uncover(assignment, exec);
  return {std::move(partition), std::move(assignment)};
}

}  // namespace veco
