#include "spaf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <stdexcept>

namespace spaf {

namespace {

void check_source(const Graph& g, Vertex source) {
  if (!g.valid_vertex(source)) {
    throw std::out_of_range("source " + std::to_string(source) + " out of range");
  }
}

SingleSourceResult source_only(const Graph& g, Vertex source) {
  SingleSourceResult result = make_empty_result(g.n(), source);
  result.at(source).emit(0, g.flow_count(), kNoVertex);
  return result;
}

}  // namespace

ShortestPathTree shortest_path_tree(const Graph& g, Vertex source) {
  check_source(g, source);
  const auto sz = static_cast<std::size_t>(g.n()) + 1;
  ShortestPathTree tree{std::vector<Distance>(sz, kInfiniteDistance),
                        std::vector<Vertex>(sz, kNoVertex)};
  tree.dist[static_cast<std::size_t>(source)] = 0;

  if (g.unit_costs()) {
    std::deque<Vertex> frontier{source};
    while (!frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop_front();
      for (EdgeId eid : g.out_edges(v)) {
        const Edge& e = g.edge(eid);
        auto w = static_cast<std::size_t>(e.dst);
        if (tree.dist[w] != kInfiniteDistance) continue;
        tree.dist[w] = tree.dist[static_cast<std::size_t>(v)] + 1;
        tree.parent[w] = v;
        frontier.push_back(e.dst);
      }
    }
    return tree;
  }

  using Item = std::pair<Distance, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != tree.dist[static_cast<std::size_t>(v)]) continue;
    for (EdgeId eid : g.out_edges(v)) {
      const Edge& e = g.edge(eid);
      auto w = static_cast<std::size_t>(e.dst);
      if (d + e.cost < tree.dist[w]) {
        tree.dist[w] = d + e.cost;
        tree.parent[w] = v;
        heap.emplace(tree.dist[w], e.dst);
      }
    }
  }
  return tree;
}

SingleSourceResult straightforward_sssp_af(const Graph& g, Vertex source) {
  check_source(g, source);
  SingleSourceResult result = make_empty_result(g.n(), source);
  if (g.flow_count() == 0) return source_only(g, source);

  // Distances are nondecreasing in f, so emitting in increasing-f order keeps
  // the list's distance-order precondition.
  for (FlowId f = 1; f <= g.flow_count(); ++f) {
    const ShortestPathTree tree = shortest_path_tree(subgraph_at_flow(g, f), source);
    for (Vertex v = 1; v <= g.n(); ++v) {
      auto i = static_cast<std::size_t>(v);
      if (tree.dist[i] == kInfiniteDistance) continue;
      result.at(v).emit(tree.dist[i], f, tree.parent[i]);
    }
  }
  return result;
}

SingleSourceResult enumerate_paths_af(const Graph& g, Vertex source) {
  check_source(g, source);
  if (g.n() > kMaxEnumerationVertices) {
    throw std::invalid_argument("path enumeration limited to " +
                                std::to_string(kMaxEnumerationVertices) + " vertices");
  }
  if (g.flow_count() == 0) return source_only(g, source);

  const auto sz = static_cast<std::size_t>(g.n()) + 1;
  // Per destination: distance -> (largest bottleneck seen, its predecessor).
  std::vector<std::map<Distance, std::pair<FlowId, Vertex>>> seen(sz);
  std::vector<char> on_path(sz, 0);

  std::function<void(Vertex, Distance, FlowId)> walk = [&](Vertex v, Distance d, FlowId b) {
    on_path[static_cast<std::size_t>(v)] = 1;
    for (EdgeId eid : g.out_edges(v)) {
      const Edge& e = g.edge(eid);
      if (on_path[static_cast<std::size_t>(e.dst)]) continue;
      const Distance d2 = d + e.cost;
      const FlowId b2 = std::min(b, e.cap);
      auto [it, fresh] = seen[static_cast<std::size_t>(e.dst)].try_emplace(d2, b2, v);
      if (!fresh && it->second.first < b2) it->second = {b2, v};
      walk(e.dst, d2, b2);
    }
    on_path[static_cast<std::size_t>(v)] = 0;
  };
  walk(source, 0, g.flow_count());

  SingleSourceResult result = source_only(g, source);
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (v == source) continue;
    // Keep (d, f) only when no shorter-or-equal path carries at least f.
    FlowId best = 0;
    for (const auto& [d, info] : seen[static_cast<std::size_t>(v)]) {
      if (info.first > best) {
        result.at(v).emit(d, info.first, info.second);
        best = info.first;
      }
    }
  }
  return result;
}

SingleSourceResult naive_decremental_sssp_af(const Graph& g, Vertex source) {
  check_source(g, source);
  if (g.flow_count() == 0) return source_only(g, source);

  const Vertex n = g.n();
  const auto sz = static_cast<std::size_t>(n) + 1;
  SingleSourceResult result = make_empty_result(n, source);

  // Full-graph tree, remembering the edge used into each vertex.
  std::vector<Distance> dist(sz, kInfiniteDistance);
  std::vector<EdgeId> via(sz, -1);
  {
    using Item = std::pair<Distance, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(source)] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[static_cast<std::size_t>(v)]) continue;
      for (EdgeId eid : g.out_edges(v)) {
        const Edge& e = g.edge(eid);
        auto w = static_cast<std::size_t>(e.dst);
        if (d + e.cost < dist[w]) {
          dist[w] = d + e.cost;
          via[w] = eid;
          heap.emplace(dist[w], e.dst);
        }
      }
    }
  }

  auto emit_all = [&](FlowId f) {
    for (Vertex v = 1; v <= n; ++v) {
      auto i = static_cast<std::size_t>(v);
      if (dist[i] == kInfiniteDistance) continue;
      Vertex pred = via[i] < 0 ? kNoVertex : g.edge(via[i]).src;
      result.at(v).emit(dist[i], f, pred);
    }
  };
  emit_all(1);

  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (FlowId f = 2; f <= g.flow_count(); ++f) {
    // Vertices in old-distance order; a tree parent always precedes its child.
    for (Vertex v = 1; v <= n; ++v) order[static_cast<std::size_t>(v - 1)] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
    });

    std::vector<char> broken(sz, 0);
    for (Vertex v : order) {
      auto i = static_cast<std::size_t>(v);
      if (v == source || dist[i] == kInfiniteDistance) continue;
      const Edge& e = g.edge(via[i]);
      broken[i] = e.cap < f || broken[static_cast<std::size_t>(e.src)];
    }

    for (Vertex v : order) {
      auto i = static_cast<std::size_t>(v);
      if (!broken[i]) continue;
      Distance best = kInfiniteDistance;
      EdgeId best_edge = -1;
      for (EdgeId eid : g.in_edges(v)) {
        const Edge& e = g.edge(eid);
        auto u = static_cast<std::size_t>(e.src);
        if (e.cap < f || broken[u] || dist[u] == kInfiniteDistance) continue;
        if (dist[u] + e.cost < best) {
          best = dist[u] + e.cost;
          best_edge = eid;
        }
      }
      dist[i] = best;
      via[i] = best_edge;
      // Repaired vertices become usable by later ones; failed ones stay broken.
      broken[i] = best_edge < 0;
    }
    emit_all(f);
  }
  return result;
}

Graph decremental_counterexample() {
  const RawEdge edges[] = {
      {1, 2, 1, 1.0},
      {1, 3, 4, 2.0},
      {2, 3, 1, 3.0},
      {3, 2, 1, 2.0},
  };
  return Graph::from_raw(3, edges);
}

Graph random_graph(const RandomGraphParams& params, std::uint64_t seed) {
  if (params.n < 1) throw std::invalid_argument("random graph needs at least one vertex");
  if (params.min_cost < 0 || params.max_cost < params.min_cost) {
    throw std::invalid_argument("invalid cost range");
  }
  if (params.min_capacity < 0 || params.max_capacity < params.min_capacity) {
    throw std::invalid_argument("invalid capacity range");
  }
  std::mt19937_64 shape_rng(seed);
  std::mt19937_64 cost_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto draw_capacity = [&]() {
    double c = params.min_capacity + unit(shape_rng) * (params.max_capacity - params.min_capacity);
    if (params.capacity_step > 0) {
      c = params.min_capacity +
          std::round((c - params.min_capacity) / params.capacity_step) * params.capacity_step;
      c = std::min(c, params.max_capacity);
    }
    return c;
  };

  std::vector<RawEdge> edges;
  auto add = [&](Vertex u, Vertex v) {
    edges.push_back({u, v, 0, draw_capacity()});
    if (params.parallel_probability > 0 && unit(shape_rng) < params.parallel_probability) {
      edges.push_back({u, v, 0, draw_capacity()});
    }
  };

  const Vertex n = params.n;
  if (params.edge_count > 0) {
    std::uniform_int_distribution<Vertex> pick(1, n);
    for (std::int64_t i = 0; i < params.edge_count; ++i) {
      Vertex u = pick(shape_rng);
      Vertex v = pick(shape_rng);
      if (u == v && !params.self_loops) {
        if (n == 1) continue;
        v = v % n + 1;
      }
      add(u, v);
    }
  } else {
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = 1; v <= n; ++v) {
        if (u == v && !params.self_loops) continue;
        if (unit(shape_rng) < params.edge_probability) add(u, v);
      }
    }
  }

  const auto span = static_cast<double>(params.max_cost - params.min_cost + 1);
  for (RawEdge& e : edges) {
    auto offset = static_cast<Cost>(unit(cost_rng) * span);
    e.cost = std::min(params.min_cost + offset, params.max_cost);
  }
  return Graph::from_raw(n, edges);
}

}  // namespace spaf
