#include <gtest/gtest.h>

#include "spaf/graph.hpp"
#include "spaf/oracle.hpp"
#include "spaf/pareto.hpp"
#include "spaf/sssp_af.hpp"
#include "spaf/verify.hpp"

namespace spaf {
namespace {

using Pairs = std::vector<std::pair<Distance, FlowId>>;

const char* kG1 = "4 5\n1 2 1 5\n2 4 1 5\n1 3 1 10\n3 4 2 10\n1 4 5 20\n";
const char* kG2 = "5 5\n1 2 1 3\n2 4 1 3\n1 3 1 7\n3 5 1 7\n5 4 1 7\n";

constexpr QueueBackend kBackends[] = {QueueBackend::kOneLevel, QueueBackend::kCascading,
                                      QueueBackend::kHeap};

std::vector<Vertex> preds_of(const ParetoList& list) {
  std::vector<Vertex> out;
  for (const ParetoRecord& r : list.records()) out.push_back(r.pred);
  return out;
}

// ---------------------------------------------------------------------------
// ParetoList

TEST(ParetoList, AppendsGreaterFlow) {
  ParetoList s;
  s.emit(2, 1, 7);
  EXPECT_TRUE(s.emit(3, 2, 7));
  EXPECT_EQ(pairs_of(s), (Pairs{{2, 1}, {3, 2}}));
}

TEST(ParetoList, EqualDistanceGreaterFlowReplaces) {
  ParetoList s;
  s.emit(2, 1, 7);
  EXPECT_TRUE(s.emit(2, 2, 8));
  EXPECT_EQ(pairs_of(s), (Pairs{{2, 2}}));
  EXPECT_EQ(s.records().front().pred, 8);
}

TEST(ParetoList, DominatedPairDropped) {
  ParetoList s;
  s.emit(2, 3, 7);
  EXPECT_FALSE(s.emit(4, 2, 7));
  EXPECT_FALSE(s.emit(5, 3, 7));
  EXPECT_EQ(pairs_of(s), (Pairs{{2, 3}}));
}

TEST(ParetoList, BestForPicksSmallestSufficientRecord) {
  ParetoList s;
  s.emit(2, 1, 1);
  s.emit(3, 2, 1);
  s.emit(5, 3, 1);
  EXPECT_EQ(s.best_for(1)->d, 2);
  EXPECT_EQ(s.best_for(2)->d, 3);
  EXPECT_EQ(s.best_for(3)->d, 5);
  EXPECT_EQ(s.best_for(4), nullptr);
}

TEST(ParetoList, WellFormed) {
  EXPECT_TRUE(ParetoList::from_records({{1, 1, 0}, {2, 2, 0}}).well_formed());
  EXPECT_FALSE(ParetoList::from_records({{1, 2, 0}, {2, 2, 0}}).well_formed());
  EXPECT_FALSE(ParetoList::from_records({{2, 1, 0}, {2, 2, 0}}).well_formed());
}

// ---------------------------------------------------------------------------
// Integer-cost solver

TEST(SsspInt, FiveEdgeGraph) {
  Graph g = parse_graph(kG1);
  for (QueueBackend b : kBackends) {
    SingleSourceResult r = solve_sssp_af_int(g, 1, b);
    EXPECT_EQ(pairs_of(r.at(4)), (Pairs{{2, 1}, {3, 2}, {5, 3}})) << backend_name(b);
    EXPECT_EQ(preds_of(r.at(4)), (std::vector<Vertex>{2, 3, 1})) << backend_name(b);
    EXPECT_EQ(pairs_of(r.at(2)), (Pairs{{1, 1}}));
    EXPECT_EQ(pairs_of(r.at(3)), (Pairs{{1, 2}}));
    EXPECT_EQ(r.at(1).records(), (std::vector<ParetoRecord>{{0, 3, kNoVertex}}));
  }
}

TEST(SsspInt, OneRecordServesEveryFlow) {
  Graph g = parse_graph("2 1\n1 2 2 9\n");
  for (QueueBackend b : kBackends) {
    EXPECT_EQ(pairs_of(solve_sssp_af_int(g, 1, b).at(2)), (Pairs{{2, 1}}));
  }
}

TEST(SsspInt, ZeroCostEdges) {
  Graph g = parse_graph("4 5\n1 2 0 1\n2 3 0 2\n1 3 3 3\n3 4 0 3\n2 4 5 1\n");
  SingleSourceResult ref = straightforward_sssp_af(g, 1);
  for (QueueBackend b : kBackends) {
    SingleSourceResult r = solve_sssp_af_int(g, 1, b);
    EXPECT_EQ(compare_pairs(ref, r), "");
    EXPECT_EQ(check_witnesses(g, r), "");
  }
  EXPECT_EQ(pairs_of(ref.at(4)), (Pairs{{0, 1}, {3, 3}}));
}

TEST(SsspInt, NonSimpleLabelWithinKeyCapacity) {
  // The bottleneck-1 label for v is the walk s->v->x->v, longer than any simple path.
  Graph g = parse_graph("3 3\n1 2 1 10\n2 3 1 1\n3 2 1 10\n");
  for (QueueBackend b : kBackends) {
    SingleSourceResult r = solve_sssp_af_int(g, 1, b);
    EXPECT_EQ(pairs_of(r.at(2)), (Pairs{{1, 2}}));
    EXPECT_EQ(pairs_of(r.at(3)), (Pairs{{2, 1}}));
  }
  EXPECT_EQ(queue_sizing(g, 1).key_capacity, 2 * 3 * 1 + 1);
}

TEST(SsspInt, EdgelessGraph) {
  Graph g = parse_graph("3 0\n");
  SingleSourceResult r = solve_sssp_af_int(g, 2, QueueBackend::kCascading);
  EXPECT_EQ(r.at(2).records(), (std::vector<ParetoRecord>{{0, 0, kNoVertex}}));
  EXPECT_TRUE(r.at(1).empty());
  EXPECT_TRUE(r.at(3).empty());
}

TEST(SsspInt, SourceOutOfRange) {
  Graph g = parse_graph(kG1);
  EXPECT_THROW(solve_sssp_af_int(g, 0, QueueBackend::kHeap), std::out_of_range);
  EXPECT_THROW(solve_sssp_af_int(g, 5, QueueBackend::kHeap), std::out_of_range);
}

TEST(SsspInt, StatsCountWork) {
  Graph g = parse_graph(kG1);
  SolverStats stats;
  solve_sssp_af_int(g, 1, QueueBackend::kOneLevel, &stats);
  EXPECT_GT(stats.labels_settled, 0u);
  EXPECT_GT(stats.edge_inspections, 0u);
  EXPECT_GT(stats.queue.delete_mins, 0u);
  EXPECT_GT(stats.queue.slot_visits, 0u);
}

// ---------------------------------------------------------------------------
// Unit-cost solver

TEST(SsspUnit, FiveVertexUnitGraph) {
  Graph g = parse_graph(kG2);
  SingleSourceResult r = solve_sssp_af_unit(g, 1);
  // Flow indices: capacity 3 -> 1, capacity 7 -> 2.
  EXPECT_EQ(pairs_of(r.at(4)), (Pairs{{2, 1}, {3, 2}}));
  EXPECT_EQ(preds_of(r.at(4)), (std::vector<Vertex>{2, 5}));
  EXPECT_EQ(compare_pairs(straightforward_sssp_af(g, 1), r), "");
}

TEST(SsspUnit, SingleVertex) {
  Graph g = parse_graph("1 0\n");
  SingleSourceResult r = solve_sssp_af(g, 1, QueueBackend::kCascading);
  EXPECT_EQ(r.at(1).records(), (std::vector<ParetoRecord>{{0, 0, kNoVertex}}));
}

TEST(SsspUnit, UnreachableFromSource) {
  Graph g = parse_graph("2 1\n1 2 1 4\n");
  SingleSourceResult r = solve_sssp_af_unit(g, 2);
  EXPECT_TRUE(r.at(1).empty());
  EXPECT_EQ(pairs_of(r.at(2)), (Pairs{{0, 1}}));
}

TEST(SsspUnit, Star) {
  Graph g = parse_graph("5 4\n1 2 1 1\n1 3 1 2\n1 4 1 3\n1 5 1 4\n");
  SingleSourceResult r = solve_sssp_af_unit(g, 1);
  for (Vertex v = 2; v <= 5; ++v) {
    EXPECT_EQ(pairs_of(r.at(v)), (Pairs{{1, v - 1}}));
  }
}

TEST(SsspUnit, RejectsNonUnitCosts) {
  Graph g = parse_graph(kG1);
  EXPECT_THROW(solve_sssp_af_unit(g, 1), std::invalid_argument);
}

TEST(SsspUnit, AutoSelection) {
  Graph g = parse_graph(kG2);
  SolverStats unit_stats;
  solve_sssp_af(g, 1, QueueBackend::kCascading, false, &unit_stats);
  EXPECT_GT(unit_stats.spt_events, 0u);
  EXPECT_EQ(unit_stats.queue.operations(), 0u);

  SolverStats int_stats;
  solve_sssp_af(g, 1, QueueBackend::kCascading, true, &int_stats);
  EXPECT_EQ(int_stats.spt_events, 0u);
  EXPECT_GT(int_stats.queue.operations(), 0u);
}

TEST(SsspUnit, CountersWithinBounds) {
  RandomGraphParams params;
  params.min_cost = params.max_cost = 1;
  params.capacity_step = 0;
  for (Vertex n : {5, 20, 60}) {
    params.n = n;
    params.edge_count = 4 * n;
    Graph g = random_graph(params, 100 + static_cast<std::uint64_t>(n));
    SolverStats stats;
    solve_sssp_af_unit(g, 1, &stats);
    EXPECT_LE(stats.edge_inspections, static_cast<std::uint64_t>(g.m()) * (g.n() - 1));
    EXPECT_LE(stats.spt_events, static_cast<std::uint64_t>(g.n()) * (g.n() - 1));
  }
}

// ---------------------------------------------------------------------------
// Properties against the oracle

TEST(SsspProperties, RandomGraphsAgreeWithOracle) {
  RandomGraphParams params;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    params.n = 2 + static_cast<Vertex>(seed % 8);
    params.edge_probability = 0.2 + 0.1 * static_cast<double>(seed % 5);
    params.max_cost = seed % 3 == 0 ? 1 : 12;
    params.min_cost = seed % 3 == 0 ? 1 : 0;
    params.parallel_probability = seed % 4 == 0 ? 0.3 : 0.0;
    params.self_loops = seed % 5 == 0;
    Graph g = random_graph(params, seed);
    for (Vertex s = 1; s <= g.n(); ++s) {
      SingleSourceResult ref = straightforward_sssp_af(g, s);
      for (QueueBackend b : kBackends) {
        SingleSourceResult r = solve_sssp_af_int(g, s, b);
        ASSERT_EQ(compare_pairs(ref, r), "") << "seed " << seed << " " << backend_name(b);
        ASSERT_EQ(check_shape(r), "");
        ASSERT_EQ(check_witnesses(g, r), "") << "seed " << seed;
      }
      if (g.unit_costs() && g.m() > 0) {
        SingleSourceResult r = solve_sssp_af_unit(g, s);
        ASSERT_EQ(compare_pairs(ref, r), "") << "seed " << seed << " unit";
        ASSERT_EQ(check_witnesses(g, r), "");
      }
    }
  }
}

TEST(SsspProperties, LargerFlowsNeverShorten) {
  RandomGraphParams params;
  params.n = 8;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph g = random_graph(params, seed);
    SingleSourceResult r = solve_sssp_af_int(g, 1, QueueBackend::kCascading);
    for (Vertex v = 1; v <= g.n(); ++v) {
      Distance prev = 0;
      for (FlowId f = 1; f <= g.flow_count(); ++f) {
        const ParetoRecord* rec = r.at(v).best_for(f);
        Distance d = rec ? rec->d : kInfiniteDistance;
        EXPECT_GE(d, prev);
        prev = d;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Path reconstruction

TEST(ReconstructPath, FiveEdgeGraph) {
  Graph g = parse_graph(kG1);
  SingleSourceResult r = solve_sssp_af_int(g, 1, QueueBackend::kHeap);
  EXPECT_EQ(reconstruct_path(r, 4, 2), (std::vector<Vertex>{1, 3, 4}));
  EXPECT_EQ(reconstruct_path(r, 4, 1), (std::vector<Vertex>{1, 2, 4}));
  EXPECT_EQ(reconstruct_path(r, 4, 3), (std::vector<Vertex>{1, 4}));
  EXPECT_EQ(reconstruct_path(r, 1, 2), (std::vector<Vertex>{1}));
  EXPECT_EQ(reconstruct_path(r, 4, 4), std::nullopt);
}

TEST(ReconstructPath, InconsistentChainsThrow) {
  SingleSourceResult r = make_empty_result(3, 1);
  r.at(1).emit(0, 2, kNoVertex);
  r.at(2).emit(4, 2, 3);
  r.at(3).emit(3, 2, 2);
  EXPECT_THROW(reconstruct_path(r, 2, 1), PathError);

  SingleSourceResult missing = make_empty_result(3, 1);
  missing.at(1).emit(0, 1, kNoVertex);
  missing.at(3).emit(2, 1, 2);
  EXPECT_THROW(reconstruct_path(missing, 3, 1), PathError);

  SingleSourceResult rising = make_empty_result(3, 1);
  rising.at(1).emit(0, 1, kNoVertex);
  rising.at(2).emit(5, 1, 1);
  rising.at(3).emit(2, 1, 2);
  EXPECT_THROW(reconstruct_path(rising, 3, 1), PathError);
}

}  // namespace
}  // namespace spaf
