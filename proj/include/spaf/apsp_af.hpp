// All-pairs shortest paths for all flows.

#ifndef SPAF_APSP_AF_HPP
#define SPAF_APSP_AF_HPP

#include <cstdint>
#include <stdexcept>

#include "spaf/graph.hpp"
#include "spaf/pareto.hpp"
#include "spaf/pqueue.hpp"
#include "spaf/sssp_af.hpp"

namespace spaf {

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{2} << 30;  // 2 GiB

class MemoryBudgetError : public std::runtime_error {
 public:
  MemoryBudgetError(std::uint64_t required, std::uint64_t budget);

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Estimated peak bytes for the shared-queue all-pairs run: F * n^2 labels,
/// each with a distance, a predecessor, and queue bookkeeping.
std::uint64_t apsp_memory_estimate(const Graph& g, QueueBackend backend);

/// One queue over every (source, destination, flow) label. Throws
/// MemoryBudgetError when the label table would not fit in `memory_budget`.
AllPairsResult solve_apsp_af(const Graph& g, QueueBackend backend,
                             std::uint64_t memory_budget = kDefaultMemoryBudget,
                             SolverStats* stats = nullptr);

/// n independent single-source runs; lower memory, same answers.
AllPairsResult solve_apsp_af_by_sources(const Graph& g, QueueBackend backend,
                                        SolverStats* stats = nullptr);

}  // namespace spaf

#endif  // SPAF_APSP_AF_HPP
