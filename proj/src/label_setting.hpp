// Label-setting core shared by the single-source and all-pairs solvers.
//
// A label is (row, vertex, flow) where a row is one source. Every row's
// labels live in one queue keyed by distance, so the whole key range is
// scanned once no matter how many flows or sources are active.

#ifndef SPAF_SRC_LABEL_SETTING_HPP
#define SPAF_SRC_LABEL_SETTING_HPP

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "spaf/pareto.hpp"
#include "spaf/pqueue.hpp"
#include "spaf/sssp_af.hpp"

namespace spaf::detail {

class LabelLayout {
 public:
  LabelLayout(std::size_t rows, Vertex n, FlowId flows) : rows_(rows), n_(n), flows_(flows) {}

  std::size_t size() const noexcept {
    return rows_ * static_cast<std::size_t>(n_) * static_cast<std::size_t>(flows_);
  }
  ItemId id(std::size_t row, Vertex v, FlowId f) const noexcept {
    return static_cast<ItemId>((row * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v - 1)) *
                                   static_cast<std::size_t>(flows_) +
                               static_cast<std::size_t>(f - 1));
  }
  struct Parts {
    std::size_t row;
    Vertex v;
    FlowId f;
  };
  Parts split(ItemId id) const noexcept {
    auto x = static_cast<std::size_t>(id);
    auto fl = static_cast<std::size_t>(flows_);
    auto nn = static_cast<std::size_t>(n_);
    return {x / fl / nn, static_cast<Vertex>((x / fl) % nn) + 1, static_cast<FlowId>(x % fl) + 1};
  }

 private:
  std::size_t rows_;
  Vertex n_;
  FlowId flows_;
};

/// Runs the shared-queue label-setting loop. Requires g.flow_count() >= 1.
/// Each source is seeded with distance 0 at the top flow index, which plays
/// the role of unbounded flow since min(F, cap) = cap.
template <MinQueue Queue>
std::vector<SingleSourceResult> settle_labels(const Graph& g, std::span<const Vertex> sources,
                                              Queue& queue, SolverStats& stats) {
  const Vertex n = g.n();
  const FlowId top = g.flow_count();
  const LabelLayout layout(sources.size(), n, top);

  std::vector<Distance> dist(layout.size(), kUnreached);
  std::vector<Vertex> pred(layout.size(), kNoVertex);
  std::vector<SingleSourceResult> results;
  results.reserve(sources.size());

  for (std::size_t row = 0; row < sources.size(); ++row) {
    results.push_back(make_empty_result(n, sources[row]));
    ItemId seed = layout.id(row, sources[row], top);
    dist[static_cast<std::size_t>(seed)] = 0;
    queue.insert(seed, 0);
  }

  while (auto entry = queue.delete_min()) {
    const auto [row, v, f] = layout.split(entry->id);
    const Distance d = entry->key;
    const Vertex source = sources[row];
    ++stats.labels_settled;

    for (EdgeId eid : g.out_edges(v)) {
      const Edge& e = g.edge(eid);
      ++stats.edge_inspections;
      if (e.dst == source) continue;
      const FlowId f2 = std::min(f, e.cap);
      const Distance d2 = d + e.cost;
      const ItemId target = layout.id(row, e.dst, f2);
      Distance& current = dist[static_cast<std::size_t>(target)];
      if (d2 < current) {
        if (current == kUnreached) {
          queue.insert(target, d2);
        } else {
          queue.decrease_key(target, d2);
        }
        current = d2;
        pred[static_cast<std::size_t>(target)] = v;
      }
    }

    if (results[row].at(v).emit(d, f, pred[static_cast<std::size_t>(entry->id)])) {
      ++stats.records_emitted;
    }
  }
  stats.queue += queue.stats();
  return results;
}

/// Builds the queue for `backend` and hands it to `body`.
template <typename Body>
decltype(auto) with_queue(QueueBackend backend, std::size_t id_capacity, const QueueSizing& sizing,
                          Body&& body) {
  switch (backend) {
    case QueueBackend::kOneLevel: {
      OneLevelBuckets q(id_capacity, sizing.key_capacity);
      return std::forward<Body>(body)(q);
    }
    case QueueBackend::kCascading: {
      CbsParams params = cascading_params(sizing);
      CascadingBuckets q(id_capacity, params.levels, params.buckets_per_level);
      return std::forward<Body>(body)(q);
    }
    case QueueBackend::kHeap:
      break;
  }
  BinaryHeapQueue q(id_capacity);
  return std::forward<Body>(body)(q);
}

}  // namespace spaf::detail

#endif  // SPAF_SRC_LABEL_SETTING_HPP
