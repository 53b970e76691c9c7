#include "spaf/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace spaf {

FlowIndex FlowIndex::build(std::span<const double> capacities) {
  FlowIndex index;
  index.values_.assign(capacities.begin(), capacities.end());
  for (double c : index.values_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw GraphError("capacity must be finite and non-negative");
    }
  }
  std::sort(index.values_.begin(), index.values_.end());
  index.values_.erase(std::unique(index.values_.begin(), index.values_.end()),
                      index.values_.end());
  return index;
}

FlowId FlowIndex::index_of(double capacity) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), capacity);
  if (it == values_.end() || *it != capacity) {
    throw std::out_of_range("capacity " + format_real(capacity) + " is not a maximal flow");
  }
  return static_cast<FlowId>(it - values_.begin()) + 1;
}

double FlowIndex::value_of(FlowId index) const {
  if (index < 1 || index > count()) {
    throw std::out_of_range("flow index " + std::to_string(index) + " out of range");
  }
  return values_[static_cast<std::size_t>(index - 1)];
}

std::optional<FlowId> FlowIndex::ceil_index(double demand) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), demand);
  if (it == values_.end()) return std::nullopt;
  return static_cast<FlowId>(it - values_.begin()) + 1;
}

Graph Graph::from_raw(Vertex n, std::span<const RawEdge> edges) {
  if (n < 0) throw GraphError("vertex count must be non-negative");
  std::vector<double> caps;
  caps.reserve(edges.size());
  for (const RawEdge& e : edges) caps.push_back(e.capacity);
  FlowIndex flows = FlowIndex::build(caps);

  std::vector<Edge> indexed;
  indexed.reserve(edges.size());
  for (const RawEdge& e : edges) {
    indexed.push_back({e.src, e.dst, e.cost, flows.index_of(e.capacity)});
  }
  return from_indexed(n, std::move(indexed), std::move(flows));
}

Graph Graph::from_indexed(Vertex n, std::vector<Edge> edges, FlowIndex flows) {
  if (n < 0) throw GraphError("vertex count must be non-negative");
  Graph g;
  g.n_ = n;
  g.flows_ = std::move(flows);
  g.edges_ = std::move(edges);
  for (const Edge& e : g.edges_) {
    if (e.src < 1 || e.src > n || e.dst < 1 || e.dst > n) {
      throw GraphError("edge endpoint out of range [1," + std::to_string(n) + "]");
    }
    if (e.cost < 0) throw GraphError("negative edge cost");
    if (e.cap < 1 || e.cap > g.flows_.count()) throw GraphError("capacity index out of range");
    g.max_cost_ = std::max(g.max_cost_, e.cost);
  }
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  out_.assign(static_cast<std::size_t>(n_) + 1, {});
  in_.assign(static_cast<std::size_t>(n_) + 1, {});
  for (EdgeId id = 0; id < m(); ++id) {
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    out_[static_cast<std::size_t>(e.src)].push_back(id);
    in_[static_cast<std::size_t>(e.dst)].push_back(id);
  }
}

bool Graph::unit_costs() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.cost == 1; });
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_real(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_blank_or_comment(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<RawEdge> edges;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    auto fields = split_fields(line);

    if (!have_header) {
      if (fields.size() != 2 || !parse_int(fields[0], n) || !parse_int(fields[1], m)) {
        throw GraphError("malformed header, expected \"n m\"", lineno);
      }
      if (n < 0 || m < 0) throw GraphError("negative vertex or edge count", lineno);
      if (n > INT32_MAX || m > INT32_MAX) throw GraphError("graph too large", lineno);
      have_header = true;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }

    if (static_cast<std::int64_t>(edges.size()) == m) {
      throw GraphError("more edge lines than the declared " + std::to_string(m), lineno);
    }
    if (fields.size() != 4) {
      throw GraphError("malformed edge line, expected \"src dst cost cap\"", lineno);
    }
    std::int64_t src = 0;
    std::int64_t dst = 0;
    Cost cost = 0;
    double cap = 0.0;
    if (!parse_int(fields[0], src) || !parse_int(fields[1], dst)) {
      throw GraphError("malformed vertex id", lineno);
    }
    if (src < 1 || src > n || dst < 1 || dst > n) {
      throw GraphError("vertex id out of range [1," + std::to_string(n) + "]", lineno);
    }
    if (!parse_int(fields[2], cost)) throw GraphError("malformed edge cost", lineno);
    if (cost < 0) throw GraphError("negative cost", lineno);
    if (!parse_real(fields[3], cap)) throw GraphError("malformed capacity", lineno);
    if (!std::isfinite(cap)) throw GraphError("non-finite capacity", lineno);
    if (cap < 0.0) throw GraphError("negative capacity", lineno);
    edges.push_back({static_cast<Vertex>(src), static_cast<Vertex>(dst), cost, cap});
  }

  if (!have_header) throw GraphError("missing header line", lineno);
  if (static_cast<std::int64_t>(edges.size()) != m) {
    throw GraphError("expected " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()),
                     lineno);
  }
  return Graph::from_raw(static_cast<Vertex>(n), edges);
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return parse_graph(in);
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.src << ' ' << e.dst << ' ' << e.cost << ' ' << format_real(g.flows().value_of(e.cap))
        << '\n';
  }
}

Graph subgraph_at_flow(const Graph& g, FlowId f) {
  if (f < 1 || f > g.flow_count()) {
    throw std::out_of_range("flow index " + std::to_string(f) + " out of range");
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.cap >= f) kept.push_back(e);
  }
  return Graph::from_indexed(g.n(), std::move(kept), g.flows());
}

}  // namespace spaf
