#include "spaf/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace spaf {

namespace {

constexpr char kMagic[4] = {'S', 'P', 'A', 'F'};
constexpr std::uint32_t kVersion = 1;

std::vector<double> values_of(const FlowIndex& flows) { return flows.values(); }

}  // namespace

ResultDocument ResultDocument::single(const SingleSourceResult& result, const FlowIndex& flows) {
  ResultDocument doc;
  doc.n = result.n();
  doc.flow_values = values_of(flows);
  doc.rows.push_back(result);
  return doc;
}

ResultDocument ResultDocument::all(const AllPairsResult& result, const FlowIndex& flows) {
  ResultDocument doc;
  doc.all_pairs = true;
  doc.n = result.n();
  doc.flow_values = values_of(flows);
  for (Vertex u = 1; u <= result.n(); ++u) doc.rows.push_back(result.row(u));
  return doc;
}

const SingleSourceResult* ResultDocument::row_for(Vertex source) const {
  for (const SingleSourceResult& r : rows) {
    if (r.source == source) return &r;
  }
  return nullptr;
}

double ResultDocument::flow_value(FlowId f) const {
  if (f < 1 || static_cast<std::size_t>(f) > flow_values.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return flow_values[static_cast<std::size_t>(f - 1)];
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json row_to_json(const ResultDocument& doc, const SingleSourceResult& row) {
  Json lists = Json::object();
  for (Vertex v = 1; v <= row.n(); ++v) {
    Json records = Json::array();
    for (const ParetoRecord& r : row.at(v).records()) {
      double value = doc.flow_value(r.f);
      records.push_back({{"d", r.d},
                         {"f_index", r.f},
                         {"f_value", std::isnan(value) ? Json(nullptr) : Json(value)},
                         {"pred", r.pred == kNoVertex ? Json(nullptr) : Json(r.pred)}});
    }
    lists[std::to_string(v)] = std::move(records);
  }
  return Json{{"source", row.source}, {"lists", std::move(lists)}};
}

SingleSourceResult row_from_json(const Json& j, ResultDocument& doc) {
  if (!j.is_object() || !j.contains("source") || !j.contains("lists")) {
    throw FormatError("result row needs \"source\" and \"lists\"");
  }
  const Json& lists = j.at("lists");
  if (!lists.is_object()) throw FormatError("\"lists\" must be an object");
  const auto n = static_cast<Vertex>(lists.size());
  SingleSourceResult row = make_empty_result(n, j.at("source").get<Vertex>());
  if (row.source < 1 || row.source > n) throw FormatError("source out of range");

  for (const auto& [key, records] : lists.items()) {
    Vertex v = 0;
    try {
      v = static_cast<Vertex>(std::stoi(key));
    } catch (const std::exception&) {
      throw FormatError("list key \"" + key + "\" is not a vertex id");
    }
    if (v < 1 || v > n) throw FormatError("list key " + key + " out of range");
    std::vector<ParetoRecord> out;
    for (const Json& r : records) {
      ParetoRecord rec{r.at("d").get<Distance>(), r.at("f_index").get<FlowId>(),
                       r.at("pred").is_null() ? kNoVertex : r.at("pred").get<Vertex>()};
      out.push_back(rec);
      if (rec.f >= 1) {
        auto slot = static_cast<std::size_t>(rec.f);
        if (doc.flow_values.size() < slot) {
          doc.flow_values.resize(slot, std::numeric_limits<double>::quiet_NaN());
        }
        if (!r.at("f_value").is_null()) doc.flow_values[slot - 1] = r.at("f_value").get<double>();
      }
    }
    row.at(v) = ParetoList::from_records(std::move(out));
  }
  doc.n = n;
  return row;
}

}  // namespace

Json to_json(const ResultDocument& doc) {
  if (!doc.all_pairs) {
    if (doc.rows.size() != 1) throw FormatError("single-source document must have one row");
    return row_to_json(doc, doc.rows.front());
  }
  Json out = Json::object();
  for (const SingleSourceResult& row : doc.rows) {
    out[std::to_string(row.source)] = row_to_json(doc, row);
  }
  return out;
}

ResultDocument from_json(const Json& json) {
  ResultDocument doc;
  try {
    if (json.contains("source")) {
      doc.rows.push_back(row_from_json(json, doc));
    } else {
      doc.all_pairs = true;
      for (const auto& [key, row] : json.items()) doc.rows.push_back(row_from_json(row, doc));
      std::sort(doc.rows.begin(), doc.rows.end(),
                [](const auto& a, const auto& b) { return a.source < b.source; });
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed result JSON: ") + e.what());
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Binary

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto bits = static_cast<U>(value);
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  }
  out.write(bytes, sizeof(T));
}

void put_double(std::ostream& out, double value) { put(out, std::bit_cast<std::uint64_t>(value)); }

template <typename T>
T get(std::istream& in) {
  using U = std::make_unsigned_t<T>;
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw FormatError("truncated binary dump");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return static_cast<T>(bits);
}

double get_double(std::istream& in) { return std::bit_cast<double>(get<std::uint64_t>(in)); }

}  // namespace

void write_binary(std::ostream& out, const ResultDocument& doc) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint8_t>(out, doc.all_pairs ? 1 : 0);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(doc.n));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(doc.flow_values.size()));
  for (double v : doc.flow_values) put_double(out, v);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(doc.rows.size()));
  for (const SingleSourceResult& row : doc.rows) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(row.source));
    for (Vertex v = 1; v <= doc.n; ++v) {
      const auto& records = row.at(v).records();
      put<std::uint32_t>(out, static_cast<std::uint32_t>(records.size()));
      for (const ParetoRecord& r : records) {
        put<std::int64_t>(out, r.d);
        put<std::int32_t>(out, r.f);
        put<std::int32_t>(out, r.pred);
      }
    }
  }
}

ResultDocument read_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not a binary result dump");
  }
  if (get<std::uint32_t>(in) != kVersion) throw FormatError("unsupported binary dump version");
  ResultDocument doc;
  doc.all_pairs = get<std::uint8_t>(in) != 0;
  doc.n = static_cast<Vertex>(get<std::uint32_t>(in));
  const auto flows = get<std::uint32_t>(in);
  doc.flow_values.reserve(flows);
  for (std::uint32_t i = 0; i < flows; ++i) doc.flow_values.push_back(get_double(in));
  const auto rows = get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < rows; ++i) {
    SingleSourceResult row = make_empty_result(doc.n, static_cast<Vertex>(get<std::uint32_t>(in)));
    for (Vertex v = 1; v <= doc.n; ++v) {
      const auto count = get<std::uint32_t>(in);
      std::vector<ParetoRecord> records;
      records.reserve(count);
      for (std::uint32_t r = 0; r < count; ++r) {
        Distance d = get<std::int64_t>(in);
        FlowId f = get<std::int32_t>(in);
        Vertex pred = get<std::int32_t>(in);
        records.push_back({d, f, pred});
      }
      row.at(v) = ParetoList::from_records(std::move(records));
    }
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

bool looks_like_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char head[4] = {};
  in.read(head, sizeof(head));
  if (in.gcount() == 4 && std::memcmp(head, kMagic, 4) == 0) return true;
  for (std::streamsize i = 0; i < in.gcount(); ++i) {
    if (std::isspace(static_cast<unsigned char>(head[i]))) continue;
    return head[i] == '{';
  }
  return false;
}

ResultDocument load_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  char head[4] = {};
  in.read(head, sizeof(head));
  in.clear();
  in.seekg(0);
  if (std::memcmp(head, kMagic, sizeof(kMagic)) == 0) return read_binary(in);
  try {
    return from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("cannot parse result JSON: ") + e.what());
  }
}

}  // namespace spaf
