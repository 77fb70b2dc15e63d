#include <doctest.h>

#include "helpers.hpp"
#include "veco/actors.hpp"
#include "veco/detection.hpp"
#include "veco/errors.hpp"

using namespace veco;

TEST_CASE("two rounds on a triangle reproduce the pipeline assignment") {
  auto g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  DetectionParams params;
  params.seed = 42;
  auto lists = compile_all_candidates(g, params);
  auto pipeline = select_all_preferred(g, lists, params);
  auto run = run_rounds(g, params);
  CHECK(run.assignment == pipeline);
}

TEST_CASE("every star leaf is assigned to the center") {
  auto g = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto run = run_rounds(g, {});
  for (VertexId leaf = 1; leaf < 5; ++leaf) {
    CHECK(run.assignment.preferred[leaf] == 0);
    CHECK(run.assignment.provenance[leaf] == Provenance::degree_fallback);
  }
}

TEST_CASE("the bus records 2 rounds of 2m messages and no locality violations") {
  Rng rng(10);
  for (int i = 0; i < 10; ++i) {
    auto g = vt::random_graph(rng, 60, 0.08);
    auto run = run_rounds(g, {});
    const std::uint64_t m = g.edge_count();
    CHECK(run.stats.rounds == 2);
    REQUIRE(run.stats.messages_per_round.size() == 2);
    CHECK(run.stats.messages_per_round[0] == 2 * m);
    CHECK(run.stats.messages_per_round[1] == 2 * m);
    CHECK(run.stats.total_messages() == 4 * m);
    CHECK(run.stats.locality_violations == 0);
  }
}

TEST_CASE("the bus drops and counts sends to non-neighbours") {
  auto g = Graph::from_edges(4, {{0, 1}, {2, 3}});
  MessageBus bus(g);
  Message m;
  m.kind = Message::Kind::degree_announce;
  m.degree = 1;
  CHECK(bus.send(0, 1, m));
  CHECK_FALSE(bus.send(0, 2, m));  // not an edge
  bus.end_round();
  CHECK(bus.stats().messages_per_round[0] == 1);
  CHECK(bus.stats().locality_violations == 1);
  const bool dropped = bus.inbox(2).empty() || bus.inbox(2)[0].kind == Message::Kind::none;
  CHECK(dropped);
}

TEST_CASE("actor and pipeline engines agree on random graphs, serial and parallel") {
  Rng rng(12);
  DetectionParams params;
  params.seed = 7;
  for (int i = 0; i < 25; ++i) {
    auto g = vt::random_graph(rng, 2 + rng.below32(150), 0.08);
    auto pipeline = detect(g, params);
    auto serial = run_rounds(g, params);
    CHECK(serial.assignment == pipeline.assignment);
    auto parallel = run_rounds(g, params, {.parallel = true, .threads = 3});
    CHECK(parallel.assignment == pipeline.assignment);
    CHECK(uncover(serial.assignment) == pipeline.partition);
  }
}

TEST_CASE("one poller over the whole vertex set reproduces uncover") {
  Rng rng(14);
  auto g = vt::random_graph(rng, 50, 0.1);
  auto assignment = detect(g, {}).assignment;
  PollerPlan plan = block_plan(g.vertex_count(), 1);
  CHECK(poll_and_merge(assignment, plan) == uncover(assignment));
}

TEST_CASE("fully overlapping pollers change nothing") {
  Rng rng(15);
  auto g = vt::random_graph(rng, 50, 0.1);
  auto assignment = detect(g, {}).assignment;
  PollerPlan plan;
  plan.subsets.push_back(block_plan(g.vertex_count(), 1).subsets[0]);
  plan.subsets.push_back(plan.subsets[0]);  // same subset twice
  CHECK(poll_and_merge(assignment, plan) == uncover(assignment));
}

TEST_CASE("random overlapping covers always equal uncover") {
  Rng rng(16);
  for (int i = 0; i < 50; ++i) {
    auto g = vt::random_graph(rng, 2 + rng.below32(100), 0.1);
    auto assignment = detect(g, {}).assignment;
    const auto pollers = 1 + rng.below32(6);
    PollerPlan plan = random_cover_plan(g.vertex_count(), pollers, rng.next_u64());
    auto expected = uncover(assignment);
    CHECK(poll_and_merge(assignment, plan) == expected);
    CHECK(poll_and_merge(assignment, plan, {.parallel = true, .threads = 3}) == expected);
  }
}

TEST_CASE("applying a plan twice is idempotent") {
  Rng rng(18);
  auto g = vt::random_graph(rng, 40, 0.12);
  auto assignment = detect(g, {}).assignment;
  PollerPlan once = block_plan(g.vertex_count(), 3);
  PollerPlan twice = once;
  for (const auto& subset : once.subsets) {
    twice.subsets.push_back(subset);
  }
  CHECK(poll_and_merge(assignment, twice) == poll_and_merge(assignment, once));
}

TEST_CASE("uncovered vertices are named in the error") {
  Rng rng(19);
  auto g = vt::random_graph(rng, 10, 0.3);
  auto assignment = detect(g, {}).assignment;
  PollerPlan plan;
  plan.subsets.push_back({0, 1, 2, 3, 4, 5, 6, 7, 8});  // vertex 9 missing
  CHECK_THROWS_WITH_AS(poll_and_merge(assignment, plan), doctest::Contains("9"), DataError);
}
