// Directed multigraph with integer costs and discretized capacities.
//
// Vertices are 1-based everywhere in the public interface. Real capacities
// are mapped to flow indices 1..F on construction (ascending, deduplicated);
// every solver works on indices only, which is sound because capacities are
// only ever compared.

#ifndef SPAF_GRAPH_HPP
#define SPAF_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spaf {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using FlowId = std::int32_t;
using Cost = std::int64_t;

/// Marks "no vertex", e.g. the predecessor of a source record.
inline constexpr Vertex kNoVertex = 0;

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line of the offending input, 0 when not tied to a text source.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Bijection between the distinct capacities ("maximal flows") and 1..F.
class FlowIndex {
 public:
  FlowIndex() = default;

  /// Sorts and deduplicates; throws GraphError on negative or non-finite input.
  static FlowIndex build(std::span<const double> capacities);

  FlowId count() const noexcept { return static_cast<FlowId>(values_.size()); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Index of a capacity that is present in the table; throws otherwise.
  FlowId index_of(double capacity) const;
  double value_of(FlowId index) const;

  /// Smallest flow index whose capacity is >= demand, or nullopt when the
  /// demand exceeds every capacity.
  std::optional<FlowId> ceil_index(double demand) const;

 private:
  std::vector<double> values_;
};

struct Edge {
  Vertex src;
  Vertex dst;
  Cost cost;
  FlowId cap;  // flow index, 1..F
};

/// Edge as read from input, before capacity discretization.
struct RawEdge {
  Vertex src;
  Vertex dst;
  Cost cost;
  double capacity;
};

class Graph {
 public:
  Graph() = default;

  /// Validates the edge list and discretizes its capacities.
  static Graph from_raw(Vertex n, std::span<const RawEdge> edges);

  /// Builds from already-indexed edges sharing an existing flow index.
  static Graph from_indexed(Vertex n, std::vector<Edge> edges, FlowIndex flows);

  Vertex n() const noexcept { return n_; }
  EdgeId m() const noexcept { return static_cast<EdgeId>(edges_.size()); }
  FlowId flow_count() const noexcept { return flows_.count(); }
  Cost max_cost() const noexcept { return max_cost_; }
  const FlowIndex& flows() const noexcept { return flows_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const EdgeId> out_edges(Vertex v) const {
    return out_[static_cast<std::size_t>(v)];
  }
  std::span<const EdgeId> in_edges(Vertex v) const {
    return in_[static_cast<std::size_t>(v)];
  }

  bool valid_vertex(Vertex v) const noexcept { return v >= 1 && v <= n_; }
  bool unit_costs() const noexcept;

 private:
  void build_adjacency();

  Vertex n_ = 0;
  Cost max_cost_ = 0;
  std::vector<Edge> edges_;
  FlowIndex flows_;
  // Indexed by vertex id; slot 0 stays empty.
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Reads the "n m" + m x "src dst cost cap" text format; '#' starts a comment line.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
Graph load_graph(const std::string& path);

/// Writes the text format, capacities in shortest round-trip decimal form.
void write_graph(std::ostream& out, const Graph& g);

/// Edges with flow index >= f; vertex set and flow index are unchanged.
Graph subgraph_at_flow(const Graph& g, FlowId f);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace spaf

#endif  // SPAF_GRAPH_HPP
