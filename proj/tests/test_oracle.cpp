#include <gtest/gtest.h>

#include <sstream>

#include "spaf/apsp_af.hpp"
#include "spaf/graph.hpp"
#include "spaf/oracle.hpp"
#include "spaf/sssp_af.hpp"
#include "spaf/verify.hpp"

namespace spaf {
namespace {

using Pairs = std::vector<std::pair<Distance, FlowId>>;

const char* kG1 = "4 5\n1 2 1 5\n2 4 1 5\n1 3 1 10\n3 4 2 10\n1 4 5 20\n";
const char* kG2 = "5 5\n1 2 1 3\n2 4 1 3\n1 3 1 7\n3 5 1 7\n5 4 1 7\n";

TEST(Straightforward, FiveEdgeGraph) {
  Graph g = parse_graph(kG1);
  SingleSourceResult r = straightforward_sssp_af(g, 1);
  EXPECT_EQ(pairs_of(r.at(4)), (Pairs{{2, 1}, {3, 2}, {5, 3}}));
  EXPECT_EQ(compare_pairs(r, enumerate_paths_af(g, 1)), "");
}

TEST(Straightforward, MatchesUnitSolver) {
  Graph g = parse_graph(kG2);
  EXPECT_EQ(compare_pairs(straightforward_sssp_af(g, 1), solve_sssp_af_unit(g, 1)), "");
}

TEST(Straightforward, DisconnectedVertex) {
  Graph g = parse_graph("3 1\n1 2 4 1\n");
  EXPECT_TRUE(straightforward_sssp_af(g, 1).at(3).empty());
}

TEST(Enumerate, Triangle) {
  // 1->2->3 costs 2 and carries 4; 1->3 costs 5 and carries 9.
  Graph g = parse_graph("3 3\n1 2 1 4\n2 3 1 6\n1 3 5 9\n");
  SingleSourceResult r = enumerate_paths_af(g, 1);
  EXPECT_EQ(r.at(3).records(), (std::vector<ParetoRecord>{{2, 1, 2}, {5, 3, 1}}));
}

TEST(Enumerate, SingleVertex) {
  Graph g = parse_graph("1 0\n");
  EXPECT_EQ(enumerate_paths_af(g, 1).at(1).records(),
            (std::vector<ParetoRecord>{{0, 0, kNoVertex}}));
}

TEST(Enumerate, RefusesLargeGraphs) {
  Graph g = parse_graph("11 0\n");
  EXPECT_THROW(enumerate_paths_af(g, 1), std::invalid_argument);
}

TEST(Oracles, AgreeOnRandomGraphs) {
  RandomGraphParams params;
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    params.n = 2 + static_cast<Vertex>(seed % 9);
    params.edge_probability = 0.3 + 0.05 * static_cast<double>(seed % 6);
    params.parallel_probability = seed % 3 == 0 ? 0.25 : 0.0;
    Graph g = random_graph(params, seed);
    for (Vertex s = 1; s <= g.n(); ++s) {
      ASSERT_EQ(compare_pairs(straightforward_sssp_af(g, s), enumerate_paths_af(g, s)), "")
          << "seed " << seed;
    }
  }
}

TEST(ShortestPathTree, BfsAndDijkstra) {
  Graph unit = parse_graph(kG2);
  ShortestPathTree t = shortest_path_tree(unit, 1);
  EXPECT_EQ(t.dist[4], 2);
  EXPECT_EQ(t.parent[4], 2);
  Graph weighted = parse_graph(kG1);
  t = shortest_path_tree(weighted, 1);
  EXPECT_EQ(t.dist[4], 2);
  EXPECT_EQ(t.dist[3], 1);
}

TEST(DecrementalCounterexample, NaiveProcedureDisagrees) {
  Graph g = decremental_counterexample();
  SingleSourceResult ref = straightforward_sssp_af(g, 1);
  SingleSourceResult naive = naive_decremental_sssp_af(g, 1);
  EXPECT_NE(compare_pairs(ref, naive), "");
  // Vertex 2 is reachable at flow 2 only through 3, which is itself repaired.
  EXPECT_EQ(pairs_of(ref.at(2)), (Pairs{{1, 1}, {5, 2}}));
  EXPECT_EQ(pairs_of(naive.at(2)), (Pairs{{1, 1}}));
}

TEST(DecrementalCounterexample, ShippedSolversAgree) {
  Graph g = decremental_counterexample();
  VerifyReport report;
  verify_graph(g, 0, false, report);
  EXPECT_TRUE(report.ok()) << report.failures.front().check << ": " << report.failures.front().detail;
  EXPECT_GT(report.checks, 0);
}

TEST(DecrementalCounterexample, MatchesShippedFixture) {
  std::ostringstream frozen;
  write_graph(frozen, decremental_counterexample());
  Graph from_file = load_graph(SPAF_FIXTURE_DIR "/decremental.graph");
  std::ostringstream loaded;
  write_graph(loaded, from_file);
  EXPECT_EQ(frozen.str(), loaded.str());
}

TEST(NaiveDecremental, AgreesOnEmptyGraph) {
  Graph g = parse_graph("3 0\n");
  EXPECT_EQ(compare_pairs(straightforward_sssp_af(g, 1), naive_decremental_sssp_af(g, 1)), "");
}

TEST(RandomGraph, DeterministicAndShapedByParams) {
  RandomGraphParams params;
  params.n = 6;
  params.edge_count = 15;
  std::ostringstream a;
  std::ostringstream b;
  write_graph(a, random_graph(params, 9));
  write_graph(b, random_graph(params, 9));
  EXPECT_EQ(a.str(), b.str());
  Graph g = random_graph(params, 9);
  EXPECT_EQ(g.m(), 15);
  for (const Edge& e : g.edges()) {
    EXPECT_NE(e.src, e.dst);
    EXPECT_GE(e.cost, params.min_cost);
    EXPECT_LE(e.cost, params.max_cost);
  }
}

TEST(RandomGraph, CostRangeKeepsTopology) {
  RandomGraphParams params;
  params.n = 7;
  Graph a = random_graph(params, 3);
  params.min_cost = params.max_cost = 1;
  Graph b = random_graph(params, 3);
  ASSERT_EQ(a.m(), b.m());
  for (EdgeId e = 0; e < a.m(); ++e) {
    EXPECT_EQ(a.edge(e).src, b.edge(e).src);
    EXPECT_EQ(a.edge(e).dst, b.edge(e).dst);
    EXPECT_EQ(a.edge(e).cap, b.edge(e).cap);
  }
  EXPECT_TRUE(b.unit_costs());
}

TEST(RandomGraph, RejectsBadParams) {
  RandomGraphParams params;
  params.n = 0;
  EXPECT_THROW(random_graph(params, 1), std::invalid_argument);
  params.n = 3;
  params.min_cost = 5;
  params.max_cost = 2;
  EXPECT_THROW(random_graph(params, 1), std::invalid_argument);
}

TEST(VerifySuite, SmallRunIsClean) {
  VerifyOptions options;
  options.trials = 25;
  options.seed = 3;
  VerifyReport report = run_verify(options);
  EXPECT_EQ(report.trials, 25);
  EXPECT_TRUE(report.ok()) << report.failures.front().check << ": " << report.failures.front().detail;
}

TEST(VerifySuite, NaiveModeFlagsTheFixture) {
  VerifyOptions options;
  options.graph = decremental_counterexample();
  options.naive_decremental = true;
  VerifyReport report = run_verify(options);
  ASSERT_FALSE(report.ok());
  for (const VerifyFailure& f : report.failures) EXPECT_EQ(f.check, "naive-decremental");
}

}  // namespace
}  // namespace spaf
