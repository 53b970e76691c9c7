// Single-source shortest paths for all flows.

#ifndef SPAF_SSSP_AF_HPP
#define SPAF_SSSP_AF_HPP

#include <cstdint>

#include "spaf/graph.hpp"
#include "spaf/pareto.hpp"
#include "spaf/pqueue.hpp"

namespace spaf {

struct SolverStats {
  std::uint64_t edge_inspections = 0;
  std::uint64_t spt_events = 0;  // shortest-path-tree cuts plus attachments
  std::uint64_t labels_settled = 0;
  std::uint64_t records_emitted = 0;
  QueueStats queue;

  SolverStats& operator+=(const SolverStats& other) noexcept;
};

struct QueueSizing {
  Key key_capacity;  // one-level buckets: every key lies in [0, key_capacity)
  Key key_window;    // cascading buckets: live keys lie within mu + [0, key_window)
  std::int64_t item_count;
};

/// Queue dimensions for a label-setting run. Labels are shortest walks with a
/// prescribed bottleneck, which may revisit vertices, so keys can reach
/// 2 * n * c rather than the simple-path bound (n - 1) * c.
QueueSizing queue_sizing(const Graph& g, std::int64_t item_count);

/// Unit edge costs only. Sweeps maximal flows upward while maintaining one
/// persistent shortest path tree: vertices whose bottleneck falls below the
/// current flow are cut and re-attached at the smallest feasible distance,
/// choosing the in-tree parent one level up that maximizes the bottleneck.
SingleSourceResult solve_sssp_af_unit(const Graph& g, Vertex source, SolverStats* stats = nullptr);

/// Non-negative integer edge costs. Label-setting over (vertex, flow) labels
/// sharing a single priority queue keyed by distance.
SingleSourceResult solve_sssp_af_int(const Graph& g, Vertex source, QueueBackend backend,
                                     SolverStats* stats = nullptr);

/// The unit-cost sweep when every cost is 1 and force_int is off, otherwise
/// the integer solver.
SingleSourceResult solve_sssp_af(const Graph& g, Vertex source, QueueBackend backend,
                                 bool force_int = false, SolverStats* stats = nullptr);

namespace detail {
/// choose_cbs_params on the full key span, then widened to cover the window.
CbsParams cascading_params(const QueueSizing& sizing);
}

}  // namespace spaf

#endif  // SPAF_SSSP_AF_HPP
