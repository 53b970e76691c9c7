// Pareto lists of (distance, flow, predecessor) records and path recovery.

#ifndef SPAF_PARETO_HPP
#define SPAF_PARETO_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spaf/graph.hpp"

namespace spaf {

using Distance = std::int64_t;

inline constexpr Distance kInfiniteDistance = std::numeric_limits<Distance>::max();

struct ParetoRecord {
  Distance d;
  FlowId f;
  Vertex pred;  // kNoVertex for the source's own record

  friend bool operator==(const ParetoRecord&, const ParetoRecord&) = default;
};

/// Records for one (source, destination) pair, strictly increasing in both
/// distance and flow: a longer path is kept only if it carries more flow.
class ParetoList {
 public:
  ParetoList() = default;

  /// Offers a pair. Emissions must arrive in nondecreasing distance order.
  /// The pair is appended iff its flow exceeds the last record's; a last
  /// record of equal distance is replaced. Returns whether the list changed.
  bool emit(Distance d, FlowId f, Vertex pred);

  /// Minimum-distance record able to carry flow index f, if any.
  const ParetoRecord* best_for(FlowId f) const;

  const std::vector<ParetoRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }

  /// True when both columns are strictly increasing.
  bool well_formed() const;

  /// Builds from stored records without filtering (deserialization).
  static ParetoList from_records(std::vector<ParetoRecord> records);

  friend bool operator==(const ParetoList&, const ParetoList&) = default;

 private:
  std::vector<ParetoRecord> records_;
};

/// The records as bare (d, f) pairs, for comparisons that ignore predecessors.
std::vector<std::pair<Distance, FlowId>> pairs_of(const ParetoList& list);

/// Solver output for one source: lists indexed by destination (slot 0 unused).
struct SingleSourceResult {
  Vertex source = kNoVertex;
  std::vector<ParetoList> lists;

  Vertex n() const noexcept { return lists.empty() ? 0 : static_cast<Vertex>(lists.size() - 1); }
  const ParetoList& at(Vertex v) const { return lists.at(static_cast<std::size_t>(v)); }
  ParetoList& at(Vertex v) { return lists.at(static_cast<std::size_t>(v)); }
  std::size_t record_count() const;
};

/// Rows indexed by source (slot 0 unused); row u is a SingleSourceResult.
struct AllPairsResult {
  std::vector<SingleSourceResult> rows;

  Vertex n() const noexcept { return rows.empty() ? 0 : static_cast<Vertex>(rows.size() - 1); }
  const SingleSourceResult& row(Vertex u) const { return rows.at(static_cast<std::size_t>(u)); }
  std::size_t record_count() const;
};

SingleSourceResult make_empty_result(Vertex n, Vertex source);

class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Walks predecessors from v back to the result's source for flow index f.
/// At every hop the minimum-distance record with flow >= f is used. Returns
/// nullopt when no record at v carries f. Throws PathError when the chain is
/// inconsistent (missing predecessor, rising distance, or a cycle).
std::optional<std::vector<Vertex>> reconstruct_path(const SingleSourceResult& result, Vertex v,
                                                    FlowId f);

}  // namespace spaf

#endif  // SPAF_PARETO_HPP
