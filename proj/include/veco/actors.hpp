#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "veco/detection.hpp"
#include "veco/execution.hpp"
#include "veco/graph.hpp"

namespace veco {

// Detection restated as a two-round protocol between vertex actors: round 1
// announces degrees, round 2 broadcasts candidate lists. Every vertex sends
// one message per neighbour per round, so each round carries 2m messages and
// nothing travels further than one hop.

struct Message {
  enum class Kind : std::uint8_t { none, degree_announce, list_announce };

  Kind kind = Kind::none;
  VertexId sender = 0;
  std::uint32_t degree = 0;                               // degree_announce
  std::shared_ptr<const std::vector<VertexId>> members;   // list_announce (shared broadcast payload)
};

struct BusStats {
  std::uint32_t rounds = 0;
  std::vector<std::uint64_t> messages_per_round;
  std::uint64_t locality_violations = 0;

  std::uint64_t total_messages() const {
    std::uint64_t total = 0;
    for (std::uint64_t m : messages_per_round) {
      total += m;
    }
    return total;
  }
};

// Reliable in-process bus. A message from u to v lands in the inbox slot
// reserved for that ordered pair, so delivery order per receiver is fixed
// (ascending sender id) no matter how sends interleave. Sends to
// non-neighbours are dropped and counted as locality violations.
class MessageBus {
 public:
  explicit MessageBus(const Graph& g);

  bool send(VertexId from, VertexId to, Message msg);

  // Publishes everything sent since the previous barrier.
  void end_round();

  std::span<const Message> inbox(VertexId v) const {
    return {current_.data() + graph_->offsets[v], current_.data() + graph_->offsets[v + 1]};
  }

  const BusStats& stats() const { return stats_; }

 private:
  const Graph* graph_;
  std::vector<Message> staged_;
  std::vector<Message> current_;
  std::atomic<std::uint64_t> sent_{0};
  std::atomic<std::uint64_t> violations_{0};
  BusStats stats_;
};

// Per-vertex protocol state. Knows its own id and degree; everything else
// arrives through the inbox.
struct VertexActor {
  VertexId id = 0;
  std::uint32_t degree = 0;
  std::vector<VertexId> nbr_ids;         // learned, ascending
  std::vector<std::uint32_t> nbr_degrees;
  std::shared_ptr<const std::vector<VertexId>> own_list;
  VertexId preferred = 0;
  Provenance provenance = Provenance::degree_fallback;

  void receive_degrees(std::span<const Message> inbox, const DetectionParams& params);
  void receive_lists(std::span<const Message> inbox, const DetectionParams& params);
};

struct ActorRunResult {
  Assignment assignment;
  BusStats stats;
};

// Runs the two rounds and returns the same assignment (values and
// provenance) as the direct pipeline under identical params.
ActorRunResult run_rounds(const Graph& g, const DetectionParams& params,
                          const Execution& exec = {});

// Vertex subsets handed to polling entities; together they must cover all
// vertices, overlaps are fine.
struct PollerPlan {
  std::vector<std::vector<VertexId>> subsets;
};

PollerPlan block_plan(std::size_t n, std::uint32_t pollers);
PollerPlan random_cover_plan(std::size_t n, std::uint32_t pollers, std::uint64_t seed);

// Each poller merges C(v) with C(a_v) for the vertices it polls. The result
// equals uncover(assignment) for every covering plan. Throws DataError
// naming uncovered vertices when the plan is not a cover.
Partition poll_and_merge(const Assignment& assignment, const PollerPlan& plan,
                         const Execution& exec = {});

}  // namespace veco
