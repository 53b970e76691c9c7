#include "spaf/pareto.hpp"

#include <algorithm>

namespace spaf {

bool ParetoList::emit(Distance d, FlowId f, Vertex pred) {
  if (records_.empty()) {
    records_.push_back({d, f, pred});
    return true;
  }
  ParetoRecord& last = records_.back();
  if (last.f >= f) return false;
  if (last.d == d) {
    last = {d, f, pred};
  } else {
    records_.push_back({d, f, pred});
  }
  return true;
}

const ParetoRecord* ParetoList::best_for(FlowId f) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), f,
                             [](const ParetoRecord& r, FlowId flow) { return r.f < flow; });
  return it == records_.end() ? nullptr : &*it;
}

bool ParetoList::well_formed() const {
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (records_[i].d <= records_[i - 1].d || records_[i].f <= records_[i - 1].f) return false;
  }
  return true;
}

ParetoList ParetoList::from_records(std::vector<ParetoRecord> records) {
  ParetoList list;
  list.records_ = std::move(records);
  return list;
}

std::vector<std::pair<Distance, FlowId>> pairs_of(const ParetoList& list) {
  std::vector<std::pair<Distance, FlowId>> out;
  out.reserve(list.size());
  for (const ParetoRecord& r : list.records()) out.emplace_back(r.d, r.f);
  return out;
}

std::size_t SingleSourceResult::record_count() const {
  std::size_t total = 0;
  for (const ParetoList& l : lists) total += l.size();
  return total;
}

std::size_t AllPairsResult::record_count() const {
  std::size_t total = 0;
  for (const SingleSourceResult& r : rows) total += r.record_count();
  return total;
}

SingleSourceResult make_empty_result(Vertex n, Vertex source) {
  SingleSourceResult result;
  result.source = source;
  result.lists.resize(static_cast<std::size_t>(n) + 1);
  return result;
}

std::optional<std::vector<Vertex>> reconstruct_path(const SingleSourceResult& result, Vertex v,
                                                    FlowId f) {
  const Vertex n = result.n();
  if (v < 1 || v > n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  if (v == result.source) return std::vector<Vertex>{v};

  const ParetoRecord* rec = result.at(v).best_for(f);
  if (rec == nullptr) return std::nullopt;

  std::vector<Vertex> path{v};
  Vertex cur = v;
  while (cur != result.source) {
    if (static_cast<Vertex>(path.size()) > n) {
      throw PathError("predecessor chain from " + std::to_string(v) + " does not terminate");
    }
    Vertex u = rec->pred;
    if (u < 1 || u > n) {
      throw PathError("vertex " + std::to_string(cur) + " has no predecessor");
    }
    const ParetoRecord* up = result.at(u).best_for(f);
    // Zero-cost edges allow equal distances along the chain.
    if (up == nullptr || up->d > rec->d) {
      throw PathError("predecessor " + std::to_string(u) + " of " + std::to_string(cur) +
                      " has no shorter record carrying the flow");
    }
    path.push_back(u);
    cur = u;
    rec = up;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace spaf
