// Result documents: JSON for people and tools, a compact binary dump for
// round-trip checks.
//
// JSON, single source:
//   {"source": s, "lists": {"1": [{"d": .., "f_index": .., "f_value": .., "pred": ..}, ..], ..}}
// JSON, all pairs: {"1": <single-source document for source 1>, "2": .., ..}
// "pred" is null for a source's own record; "f_value" is the original
// capacity (null only for the source record of an edgeless graph).
//
// Binary (all integers little-endian):
//   "SPAF"  u32 version=1  u8 all_pairs  u32 n  u32 F  f64[F] capacities
//   u32 rows, then per row: u32 source, and for v = 1..n:
//     u32 count, count x (i64 d, i32 f_index, i32 pred)

#ifndef SPAF_SERIALIZE_HPP
#define SPAF_SERIALIZE_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spaf/graph.hpp"
#include "spaf/pareto.hpp"

namespace spaf {

using Json = nlohmann::ordered_json;

/// Solver output together with what is needed to print real capacities.
struct ResultDocument {
  bool all_pairs = false;
  Vertex n = 0;
  /// Capacity per flow index (slot f - 1). Documents read from JSON only
  /// know the capacities that appear in some record; the rest are NaN.
  std::vector<double> flow_values;
  std::vector<SingleSourceResult> rows;  // ordered by source

  static ResultDocument single(const SingleSourceResult& result, const FlowIndex& flows);
  static ResultDocument all(const AllPairsResult& result, const FlowIndex& flows);

  /// Row for a source, or nullptr when the document does not contain it.
  const SingleSourceResult* row_for(Vertex source) const;
  double flow_value(FlowId f) const;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const ResultDocument& doc);
ResultDocument from_json(const Json& json);

void write_binary(std::ostream& out, const ResultDocument& doc);
ResultDocument read_binary(std::istream& in);

/// Reads either format, sniffing the binary magic.
ResultDocument load_result(const std::string& path);

/// True when the file starts like a result document rather than a graph.
bool looks_like_result(const std::string& path);

}  // namespace spaf

#endif  // SPAF_SERIALIZE_HPP
