// Brute-force reference solvers and the random corpus used to check the
// real solvers. Nothing here touches the bucket queues.

#ifndef SPAF_ORACLE_HPP
#define SPAF_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "spaf/graph.hpp"
#include "spaf/pareto.hpp"

namespace spaf {

struct ShortestPathTree {
  std::vector<Distance> dist;  // kInfiniteDistance when unreachable; slot 0 unused
  std::vector<Vertex> parent;  // kNoVertex for the source and unreachable vertices
};

/// Plain single-source shortest paths: BFS when every cost is 1, otherwise
/// Dijkstra over std::priority_queue.
ShortestPathTree shortest_path_tree(const Graph& g, Vertex source);

/// One shortest-path run per maximal flow on the capacity-filtered subgraph,
/// folded into Pareto lists.
SingleSourceResult straightforward_sssp_af(const Graph& g, Vertex source);

inline constexpr Vertex kMaxEnumerationVertices = 10;

/// Every simple path from the source, Pareto-filtered per destination.
/// Refuses graphs with more than kMaxEnumerationVertices vertices.
SingleSourceResult enumerate_paths_af(const Graph& g, Vertex source);

/// A deliberately wrong incremental scheme kept as a regression: start from
/// the full-graph shortest path tree, then for each larger flow delete the
/// edges that can no longer carry it and repair only the vertices whose tree
/// path lost an edge, re-attaching each (in order of its old distance) to the
/// best surviving in-neighbour that is not itself broken. Deleted edges are
/// never consulted again and repairs never chain through other broken
/// vertices, which is where it goes wrong.
SingleSourceResult naive_decremental_sssp_af(const Graph& g, Vertex source);

/// Fixed graph on which naive_decremental_sssp_af disagrees with the
/// straightforward method from source 1.
Graph decremental_counterexample();

struct RandomGraphParams {
  Vertex n = 6;
  double edge_probability = 0.5;  // ignored when edge_count > 0
  std::int64_t edge_count = 0;    // exact edge count, endpoints drawn uniformly
  Cost min_cost = 0;
  Cost max_cost = 10;
  double min_capacity = 1.0;
  double max_capacity = 6.0;
  double capacity_step = 1.0;  // capacities snap to this grid; 0 keeps them continuous
  bool self_loops = false;
  double parallel_probability = 0.0;  // chance of duplicating a drawn edge
};

/// Erdos-Renyi style digraph. Topology and capacities come from one stream and
/// costs from another, so varying only the cost range keeps the same shape.
Graph random_graph(const RandomGraphParams& params, std::uint64_t seed);

}  // namespace spaf

#endif  // SPAF_ORACLE_HPP
