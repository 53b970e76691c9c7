// Differential checks shared by the tests, the acceptance runner and the
// `verify` subcommand. Every check returns an empty string on success and a
// human-readable description of the first problem otherwise.

#ifndef SPAF_VERIFY_HPP
#define SPAF_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spaf/apsp_af.hpp"
#include "spaf/graph.hpp"
#include "spaf/pareto.hpp"
#include "spaf/pqueue.hpp"

namespace spaf {

// ---------------------------------------------------------------------------
// Result checks

/// Same (d, f) pairs for every destination; predecessors are ignored.
std::string compare_pairs(const SingleSourceResult& expected, const SingleSourceResult& actual);

/// Every list strictly increasing in both columns.
std::string check_shape(const SingleSourceResult& result);

/// Cost of `path` at flow index f, taking the cheapest parallel edge with
/// capacity index >= f on every hop; nullopt when some hop has none.
std::optional<Distance> witness_cost(const Graph& g, const std::vector<Vertex>& path, FlowId f);

/// For every record, the reconstructed path starts at the source, ends at the
/// destination, carries the record's flow and costs exactly its distance.
/// `records_checked` is incremented per record.
std::string check_witnesses(const Graph& g, const SingleSourceResult& result,
                            std::int64_t* records_checked = nullptr);

/// best_d(u, w, f) <= best_d(u, v, f) + best_d(v, w, f) for all u, v, w, f,
/// where best_d is the smallest distance of a record with flow >= f.
std::string check_triangle(const AllPairsResult& result, FlowId flow_count);

// ---------------------------------------------------------------------------
// Monotone queue workloads

struct QueueOp {
  enum Kind : std::uint8_t { kInsert, kDecrease, kDeleteMin };
  Kind kind;
  ItemId id;
  Key key;
};

struct QueueWorkload {
  std::vector<QueueOp> ops;  // ends with enough delete_mins to drain the queue
  std::size_t id_count = 0;
  Key window = 0;   // every finite key lies in [mu, mu + window)
  Key max_key = 0;  // largest finite key used
};

/// Random monotone workload: inserts of fresh ids with keys in [mu, mu+window)
/// or unreached, decreases on items whose key exceeds mu, and delete_mins.
/// mu is the last extracted key. Items tied at the current minimum are never
/// touched, so the workload is valid for any tie-breaking order.
QueueWorkload make_queue_workload(std::uint64_t seed, std::size_t operations, Key window,
                                  double unreached_probability = 0.1);

/// Runs the workload and returns every extracted entry in order. With
/// `audit_every_op` the structure's audit() runs after each operation and the
/// first complaint is thrown as QueueError.
template <MinQueue Q>
std::vector<QueueEntry> replay(Q& queue, const QueueWorkload& workload, bool audit_every_op = false) {
  std::vector<QueueEntry> out;
  for (const QueueOp& op : workload.ops) {
    switch (op.kind) {
      case QueueOp::kInsert:
        queue.insert(op.id, op.key);
        break;
      case QueueOp::kDecrease:
        queue.decrease_key(op.id, op.key);
        break;
      case QueueOp::kDeleteMin:
        if (auto e = queue.delete_min()) out.push_back(*e);
        break;
    }
    if (audit_every_op) {
      if (std::string problem = queue.audit(); !problem.empty()) throw QueueError(problem);
    }
  }
  return out;
}

/// Nondecreasing keys, the same key sequence as the reference, and the same
/// set of ids extracted at every key.
std::string compare_extractions(const std::vector<QueueEntry>& reference,
                                const std::vector<QueueEntry>& actual);

/// Replays the workload on the heap, the one-level buckets and a cascading
/// structure with the given parameters, comparing each against the heap.
std::string queue_differential(const QueueWorkload& workload, CbsParams params,
                               bool audit_every_op = false);

// ---------------------------------------------------------------------------
// Randomized suite behind `spaf verify`

struct VerifyOptions {
  std::int64_t trials = 200;
  std::uint64_t seed = 1;
  /// Graph to check from every source instead of random trials.
  std::optional<Graph> graph;
  /// Also compare the naive decremental procedure, expected to disagree.
  bool naive_decremental = false;
};

struct VerifyFailure {
  std::string check;
  std::uint64_t seed = 0;
  Vertex source = kNoVertex;
  std::string detail;
  std::optional<Graph> graph;  // input that reproduces it, when graph-based
};

struct VerifyReport {
  std::int64_t trials = 0;
  std::int64_t checks = 0;
  std::vector<VerifyFailure> failures;
  /// Per check name: (passed, total).
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> tally;

  bool ok() const noexcept { return failures.empty(); }
};

/// Every shipped solver against the oracles on one graph, all sources.
void verify_graph(const Graph& g, std::uint64_t seed, bool naive_decremental, VerifyReport& report);

VerifyReport run_verify(const VerifyOptions& options, std::ostream* progress = nullptr);

}  // namespace spaf

#endif  // SPAF_VERIFY_HPP
