#include "spaf/sssp_af.hpp"

#include <stdexcept>
#include <vector>

#include "label_setting.hpp"

namespace spaf {

SolverStats& SolverStats::operator+=(const SolverStats& other) noexcept {
  edge_inspections += other.edge_inspections;
  spt_events += other.spt_events;
  labels_settled += other.labels_settled;
  records_emitted += other.records_emitted;
  queue += other.queue;
  return *this;
}

QueueSizing queue_sizing(const Graph& g, std::int64_t item_count) {
  const Key c = g.max_cost();
  return {2 * static_cast<Key>(g.n()) * c + 1, c + 1, std::max<std::int64_t>(item_count, 1)};
}

namespace detail {

CbsParams cascading_params(const QueueSizing& sizing) {
  return fit_cbs_window(choose_cbs_params(sizing.key_capacity, sizing.item_count), sizing.key_window);
}

}  // namespace detail

namespace {

void check_source(const Graph& g, Vertex source) {
  if (!g.valid_vertex(source)) {
    throw std::out_of_range("source " + std::to_string(source) + " out of range [1," +
                            std::to_string(g.n()) + "]");
  }
}

void check_label_space(std::size_t labels) {
  if (labels > static_cast<std::size_t>(INT32_MAX)) {
    throw std::length_error("label space of " + std::to_string(labels) + " exceeds 2^31 - 1");
  }
}

}  // namespace

SingleSourceResult solve_sssp_af_unit(const Graph& g, Vertex source, SolverStats* stats) {
  check_source(g, source);
  if (!g.unit_costs()) throw std::invalid_argument("unit-cost solver requires every edge cost to be 1");

  SolverStats local;
  SolverStats& st = stats ? *stats : local;
  const Vertex n = g.n();
  const FlowId top = g.flow_count();
  const auto sz = static_cast<std::size_t>(n) + 1;

  SingleSourceResult result = make_empty_result(n, source);
  result.at(source).emit(0, top, kNoVertex);
  ++st.records_emitted;
  if (top == 0) return result;

  std::vector<FlowId> bottleneck(sz, 0);
  std::vector<Vertex> parent(sz, kNoVertex);
  std::vector<char> in_tree(sz, 0);
  std::vector<char> dead(sz, 0);
  std::vector<Vertex> dist(sz, 0);
  // pending[i]: vertices waiting to be attached at distance i, 1 <= i <= n-1.
  std::vector<std::vector<Vertex>> pending(sz);

  bottleneck[static_cast<std::size_t>(source)] = top;
  in_tree[static_cast<std::size_t>(source)] = 1;

  // A simple path has at most n-1 edges; beyond that the vertex is
  // unreachable at this flow and, since flows only grow, at every later one.
  auto advance = [&](Vertex v) {
    auto i = static_cast<std::size_t>(v);
    if (++dist[i] > n - 1) {
      dead[i] = 1;
    } else {
      pending[static_cast<std::size_t>(dist[i])].push_back(v);
    }
  };

  for (FlowId f = 1; f <= top; ++f) {
    for (Vertex v = 1; v <= n; ++v) {
      auto i = static_cast<std::size_t>(v);
      if (v == source || dead[i] || bottleneck[i] >= f) continue;
      if (in_tree[i]) {
        in_tree[i] = 0;
        parent[i] = kNoVertex;
        ++st.spt_events;
      }
      advance(v);
    }

    for (Vertex level = 1; level <= n - 1; ++level) {
      auto& bucket = pending[static_cast<std::size_t>(level)];
      while (!bucket.empty()) {
        const Vertex v = bucket.back();
        bucket.pop_back();
        // The attaching parent must carry at least the current flow.
        FlowId best = f - 1;
        Vertex best_parent = kNoVertex;
        for (EdgeId eid : g.in_edges(v)) {
          ++st.edge_inspections;
          const Edge& e = g.edge(eid);
          auto u = static_cast<std::size_t>(e.src);
          if (!in_tree[u] || dist[u] != level - 1) continue;
          const FlowId b = std::min(e.cap, bottleneck[u]);
          if (b > best) {
            best = b;
            best_parent = e.src;
          }
        }
        if (best_parent == kNoVertex) {
          advance(v);
          continue;
        }
        auto i = static_cast<std::size_t>(v);
        bottleneck[i] = best;
        parent[i] = best_parent;
        in_tree[i] = 1;
        ++st.spt_events;
        if (result.at(v).emit(level, best, best_parent)) ++st.records_emitted;
      }
    }
  }
  return result;
}

SingleSourceResult solve_sssp_af_int(const Graph& g, Vertex source, QueueBackend backend,
                                     SolverStats* stats) {
  check_source(g, source);
  SolverStats local;
  SolverStats& st = stats ? *stats : local;

  if (g.flow_count() == 0) {
    SingleSourceResult result = make_empty_result(g.n(), source);
    result.at(source).emit(0, 0, kNoVertex);
    ++st.records_emitted;
    return result;
  }

  const std::size_t labels = static_cast<std::size_t>(g.n()) * static_cast<std::size_t>(g.flow_count());
  check_label_space(labels);
  const QueueSizing sizing = queue_sizing(g, static_cast<std::int64_t>(g.m()) * g.n());
  const Vertex sources[] = {source};
  return detail::with_queue(backend, labels, sizing, [&](auto& queue) {
    return std::move(detail::settle_labels(g, sources, queue, st).front());
  });
}

SingleSourceResult solve_sssp_af(const Graph& g, Vertex source, QueueBackend backend, bool force_int,
                                 SolverStats* stats) {
  if (!force_int && g.m() > 0 && g.unit_costs()) return solve_sssp_af_unit(g, source, stats);
  return solve_sssp_af_int(g, source, backend, stats);
}

}  // namespace spaf
