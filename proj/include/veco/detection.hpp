#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "veco/execution.hpp"
#include "veco/graph.hpp"

namespace veco {

// k rule: how many top-degree neighbours a vertex keeps in its candidate
// list, as a function of its own degree. Results are clamped to [1, d].
using KRule = std::uint32_t (*)(std::uint32_t degree);

// default: max(1, ceil(d/2))
std::uint32_t half_degree_k(std::uint32_t d);
// keep only the single highest-degree neighbour
std::uint32_t one_k(std::uint32_t d);
// keep the whole neighbourhood
std::uint32_t full_k(std::uint32_t d);

// Resolves whatever is still tied after the built-in preferences: candidates
// with equal maximal agreement are first narrowed to the highest degree (a
// vertex joins the better-connected option), and the fallback branch is
// already a degree argmax.
enum class TiePolicy : std::uint8_t {
  seeded_random,  // draw from a stream keyed by (seed, vertex id)
  lowest_id,
};

// Normalisation of the acceptance threshold tau. min_degree is the standard
// rule (agreement >= tau * min(d_u, d_v)); min_list_size normalises by the
// attainable maximum instead and is exposed for experimentation.
enum class ThresholdNorm : std::uint8_t {
  min_degree,
  min_list_size,
};

struct DetectionParams {
  double tau = 0.2;
  KRule k_rule = half_degree_k;
  TiePolicy ties = TiePolicy::seeded_random;
  ThresholdNorm norm = ThresholdNorm::min_degree;
  std::uint64_t seed = 0;
};

// All candidate lists, flat CSR layout; members sorted ascending per vertex.
struct CandidateLists {
  std::vector<std::uint64_t> offsets;  // size n+1
  std::vector<VertexId> members;

  std::span<const VertexId> of(VertexId v) const {
    return {members.data() + offsets[v], members.data() + offsets[v + 1]};
  }
  bool operator==(const CandidateLists&) const = default;
};

// Single-vertex candidate list, for callers that want just one.
struct CandidateList {
  VertexId owner;
  std::vector<VertexId> members;  // sorted ascending
};

enum class Provenance : std::uint8_t {
  agreement,        // chosen by maximal agreement above the threshold
  degree_fallback,  // no neighbour passed the threshold; max degree wins
};

// a_v for every vertex, plus which selection branch produced it.
struct Assignment {
  std::vector<VertexId> preferred;
  std::vector<Provenance> provenance;

  std::size_t size() const { return preferred.size(); }
  bool operator==(const Assignment&) const = default;
};

struct DetectionResult {
  Partition partition;
  Assignment assignment;
};

// --- step 1: candidate list compiling -------------------------------------

CandidateList compile_candidates(const Graph& g, VertexId v, const DetectionParams& params);

CandidateLists compile_all_candidates_serial(const Graph& g, const DetectionParams& params);
CandidateLists compile_all_candidates_parallel(const Graph& g, const DetectionParams& params,
                                               int threads = 0);
CandidateLists compile_all_candidates(const Graph& g, const DetectionParams& params,
                                      const Execution& exec = {});

// --- step 2: agreement and assignment --------------------------------------

// |a ∩ b| for two ascending-sorted member lists.
std::uint32_t agreement(std::span<const VertexId> a, std::span<const VertexId> b);

std::pair<VertexId, Provenance> select_preferred(const Graph& g, VertexId v,
                                                 const CandidateLists& lists,
                                                 const DetectionParams& params);

Assignment select_all_preferred_serial(const Graph& g, const CandidateLists& lists,
                                       const DetectionParams& params);
Assignment select_all_preferred_parallel(const Graph& g, const CandidateLists& lists,
                                         const DetectionParams& params, int threads = 0);
Assignment select_all_preferred(const Graph& g, const CandidateLists& lists,
                                const DetectionParams& params, const Execution& exec = {});

// --- step 3: community uncovering ------------------------------------------

// Communities = connected components of the {v, a_v} pairs, labelled by
// smallest member id. Order-independent by construction.
Partition uncover_serial(const Assignment& assignment);
Partition uncover_parallel(const Assignment& assignment, int threads = 0);
Partition uncover(const Assignment& assignment, const Execution& exec = {});

// Full pipeline. Validates the graph first and throws DataError when it
// breaks the model's assumptions (isolated vertices, self-loops, ...).
DetectionResult detect(const Graph& g, const DetectionParams& params = {},
                       const Execution& exec = {});

namespace detail {

// Top-k of (degree desc, id asc) over (id, degree) pairs; used by both the
// direct pipeline and the message-passing actors so the two cannot drift.
// Reorders `pool`, writes the chosen ids ascending into `out`.
void select_top_k(std::vector<std::pair<VertexId, std::uint32_t>>& pool, std::uint32_t k,
                  std::vector<VertexId>& out);

// Tie resolution among candidates collected in ascending-id order.
VertexId pick_tied(std::span<const VertexId> tied, const DetectionParams& params, VertexId owner);

// Shared selection core: neighbour arrays must be in ascending-id order.
std::pair<VertexId, Provenance> choose_preferred(
    VertexId v, std::uint32_t dv, std::span<const VertexId> own_list,
    std::span<const VertexId> nbr_ids, std::span<const std::uint32_t> nbr_degrees,
    std::span<const std::span<const VertexId>> nbr_lists, const DetectionParams& params);

std::uint32_t clamped_k(KRule rule, std::uint32_t degree);

}  // namespace detail

}  // namespace veco
