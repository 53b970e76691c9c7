#include "spaf/apsp_af.hpp"

#include <numeric>
#include <vector>

#include "label_setting.hpp"

namespace spaf {

MemoryBudgetError::MemoryBudgetError(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("all-pairs label table needs " + std::to_string(required) +
                         " bytes, over the memory budget of " + std::to_string(budget) +
                         " bytes; use the per-source mode instead"),
      required_(required),
      budget_(budget) {}

std::uint64_t apsp_memory_estimate(const Graph& g, QueueBackend backend) {
  const std::uint64_t n = static_cast<std::uint64_t>(g.n());
  const std::uint64_t labels = n * n * static_cast<std::uint64_t>(g.flow_count());
  // distance + predecessor, then the queue's per-item key and state
  std::uint64_t per_label = sizeof(Distance) + sizeof(Vertex) + sizeof(Key) + 1;
  std::uint64_t fixed = 0;
  const QueueSizing sizing = queue_sizing(g, static_cast<std::int64_t>(g.m()) * g.n() * g.n());
  switch (backend) {
    case QueueBackend::kOneLevel:
      per_label += 3 * sizeof(ItemId);  // next, prev, bucket
      fixed = 2 * sizeof(ItemId) * static_cast<std::uint64_t>(sizing.key_capacity);
      break;
    case QueueBackend::kCascading:
      per_label += 3 * sizeof(ItemId);
      break;
    case QueueBackend::kHeap:
      per_label += sizeof(ItemId) + sizeof(std::int64_t) + sizeof(std::uint64_t);
      break;
  }
  return labels * per_label + fixed;
}

AllPairsResult solve_apsp_af(const Graph& g, QueueBackend backend, std::uint64_t memory_budget,
                             SolverStats* stats) {
  SolverStats local;
  SolverStats& st = stats ? *stats : local;
  const Vertex n = g.n();

  AllPairsResult result;
  result.rows.resize(static_cast<std::size_t>(n) + 1);

  if (g.flow_count() == 0) {
    for (Vertex u = 1; u <= n; ++u) {
      result.rows[static_cast<std::size_t>(u)] = make_empty_result(n, u);
      result.rows[static_cast<std::size_t>(u)].at(u).emit(0, 0, kNoVertex);
      ++st.records_emitted;
    }
    return result;
  }

  const std::uint64_t required = apsp_memory_estimate(g, backend);
  if (required > memory_budget) throw MemoryBudgetError(required, memory_budget);
  const std::size_t labels = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) *
                             static_cast<std::size_t>(g.flow_count());
  if (labels > static_cast<std::size_t>(INT32_MAX)) throw MemoryBudgetError(required, memory_budget);

  std::vector<Vertex> sources(static_cast<std::size_t>(n));
  std::iota(sources.begin(), sources.end(), 1);
  const QueueSizing sizing = queue_sizing(g, static_cast<std::int64_t>(g.m()) * n * n);
  auto rows = detail::with_queue(backend, labels, sizing, [&](auto& queue) {
    return detail::settle_labels(g, sources, queue, st);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) result.rows[i + 1] = std::move(rows[i]);
  return result;
}

AllPairsResult solve_apsp_af_by_sources(const Graph& g, QueueBackend backend, SolverStats* stats) {
  AllPairsResult result;
  result.rows.resize(static_cast<std::size_t>(g.n()) + 1);
  for (Vertex u = 1; u <= g.n(); ++u) {
    result.rows[static_cast<std::size_t>(u)] = solve_sssp_af_int(g, u, backend, stats);
  }
  return result;
}

}  // namespace spaf
