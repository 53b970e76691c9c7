// spaf: solve, query, verify and benchmark shortest paths for all flows.
//
// Exit codes: 0 success, 1 input/parse error, 2 invalid flags,
// 3 memory budget refusal, 4 no path, 5 verification disagreement.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spaf/apsp_af.hpp"
#include "spaf/graph.hpp"
#include "spaf/oracle.hpp"
#include "spaf/serialize.hpp"
#include "spaf/sssp_af.hpp"
#include "spaf/verify.hpp"

namespace {

using namespace spaf;

enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kBadFlags = 2,
  kMemoryBudget = 3,
  kNoPath = 4,
  kDisagreement = 5,
};

/// Thrown for flag combinations CLI11 cannot express.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, QueueBackend> kBackendNames = {
    {"one-level", QueueBackend::kOneLevel},
    {"cascading", QueueBackend::kCascading},
    {"heap", QueueBackend::kHeap},
    {"reference-heap", QueueBackend::kHeap},
};

/// Byte count with an optional K, M or G (binary) suffix.
std::uint64_t parse_bytes(const std::string& text) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw FlagError("invalid memory budget '" + text + "'");
  }
  std::string suffix = text.substr(used);
  std::uint64_t scale = 1;
  if (suffix == "K" || suffix == "k") {
    scale = std::uint64_t{1} << 10;
  } else if (suffix == "M" || suffix == "m") {
    scale = std::uint64_t{1} << 20;
  } else if (suffix == "G" || suffix == "g") {
    scale = std::uint64_t{1} << 30;
  } else if (!suffix.empty()) {
    throw FlagError("invalid memory budget '" + text + "'");
  }
  return value * scale;
}

std::string counters(const SolverStats& s) {
  std::ostringstream out;
  out << "edge_inspections=" << s.edge_inspections << " slot_visits=" << s.queue.slot_visits
      << " cascades=" << s.queue.cascades << " cascade_moves=" << s.queue.cascade_moves
      << " spt_events=" << s.spt_events << " labels_settled=" << s.labels_settled
      << " inserts=" << s.queue.inserts << " decrease_keys=" << s.queue.decrease_keys
      << " delete_mins=" << s.queue.delete_mins;
  return out.str();
}

void write_document(const ResultDocument& doc, const std::string& path, const std::string& format) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (path != "-") {
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path);
    out = &file;
  }
  if (format == "binary") {
    write_binary(*out, doc);
  } else {
    *out << to_json(doc).dump() << '\n';
  }
  if (!*out) throw std::runtime_error("failed writing " + path);
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string input;
  std::optional<Vertex> source;
  bool all_pairs = false;
  QueueBackend backend = QueueBackend::kCascading;
  std::string output = "-";
  std::string format = "json";
  bool force_int = false;
  bool by_sources = false;
  std::string mem_budget;
};

int run_solve(const SolveArgs& args) {
  if (args.source.has_value() == args.all_pairs) {
    throw FlagError("give exactly one of --source or --all-pairs");
  }
  const Graph g = load_graph(args.input);

  std::uint64_t budget = kDefaultMemoryBudget;
  if (const char* env = std::getenv("SPAF_MEM_BUDGET"); env && *env) budget = parse_bytes(env);
  if (!args.mem_budget.empty()) budget = parse_bytes(args.mem_budget);

  SolverStats stats;
  ResultDocument doc;
  std::string solver;
  const auto start = std::chrono::steady_clock::now();
  if (args.all_pairs) {
    if (args.by_sources) {
      doc = ResultDocument::all(solve_apsp_af_by_sources(g, args.backend, &stats), g.flows());
      solver = "apsp-by-sources";
    } else {
      doc = ResultDocument::all(solve_apsp_af(g, args.backend, budget, &stats), g.flows());
      solver = "apsp";
    }
  } else {
    if (!g.valid_vertex(*args.source)) {
      throw FlagError("source " + std::to_string(*args.source) + " out of range [1," +
                      std::to_string(g.n()) + "]");
    }
    const bool unit = g.m() > 0 && g.unit_costs() && !args.force_int;
    doc = ResultDocument::single(solve_sssp_af(g, *args.source, args.backend, args.force_int, &stats),
                                 g.flows());
    solver = unit ? "sssp-unit" : "sssp-int";
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  write_document(doc, args.output, args.format);

  std::size_t records = 0;
  for (const SingleSourceResult& row : doc.rows) records += row.record_count();
  std::cerr << "n=" << g.n() << " m=" << g.m() << " F=" << g.flow_count() << " c=" << g.max_cost()
            << " records=" << records << " solver=" << solver
            << " backend=" << backend_name(args.backend) << ' ' << counters(stats)
            << " time_ms=" << std::fixed << std::setprecision(3) << ms << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// query

struct QueryArgs {
  std::string input;
  Vertex source = 0;
  Vertex dest = 0;
  double flow = 0;
  QueueBackend backend = QueueBackend::kCascading;
};

int no_path(const QueryArgs& args, const std::string& why) {
  std::cout << "NO-PATH\n";
  std::cerr << "no path from " << args.source << " to " << args.dest << " carrying " << args.flow
            << ": " << why << '\n';
  return kNoPath;
}

int print_answer(const SingleSourceResult& row, Vertex dest, FlowId f, double flow_value) {
  const ParetoRecord* rec = row.at(dest).best_for(f);
  std::optional<std::vector<Vertex>> path = reconstruct_path(row, dest, f);
  if (!rec || !path) return kNoPath;
  std::cout << "distance " << rec->d << "\npath";
  for (Vertex v : *path) std::cout << ' ' << v;
  std::cout << '\n';
  if (!std::isnan(flow_value)) std::cout << "flow " << format_real(flow_value) << '\n';
  return kOk;
}

int run_query(const QueryArgs& args) {
  if (!std::isfinite(args.flow) || args.flow < 0) {
    throw FlagError("flow demand must be finite and non-negative");
  }

  if (looks_like_result(args.input)) {
    const ResultDocument doc = load_result(args.input);
    const SingleSourceResult* row = doc.row_for(args.source);
    if (!row) throw FlagError("result has no row for source " + std::to_string(args.source));
    if (args.dest < 1 || args.dest > row->n()) {
      throw FlagError("destination " + std::to_string(args.dest) + " out of range");
    }
    // Documents read from JSON may not know every capacity; indices between
    // the largest known capacity below the demand and the next record are
    // interchangeable for best_for, so the first index past it is used.
    FlowId f = 1;
    for (std::size_t i = 0; i < doc.flow_values.size(); ++i) {
      if (!std::isnan(doc.flow_values[i]) && doc.flow_values[i] < args.flow) {
        f = static_cast<FlowId>(i) + 2;
      }
    }
    const ParetoRecord* rec = row->at(args.dest).best_for(f);
    if (!rec) return no_path(args, "no recorded path carries the demand");
    const int code = print_answer(*row, args.dest, f, doc.flow_value(rec->f));
    return code == kOk ? code : no_path(args, "no recorded path carries the demand");
  }

  const Graph g = load_graph(args.input);
  if (!g.valid_vertex(args.source) || !g.valid_vertex(args.dest)) {
    throw FlagError("vertex out of range [1," + std::to_string(g.n()) + "]");
  }
  std::optional<FlowId> f = g.flows().ceil_index(args.flow);
  if (!f) return no_path(args, "demand exceeds every capacity");
  const SingleSourceResult row = solve_sssp_af(g, args.source, args.backend);
  const ParetoRecord* rec = row.at(args.dest).best_for(*f);
  if (!rec) return no_path(args, "destination unreachable at this flow");
  return print_answer(row, args.dest, *f, g.flows().value_of(rec->f));
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string input;
  std::int64_t trials = 200;
  std::uint64_t seed = 1;
  bool naive = false;
  std::string replay_dir = ".";
};

int run_verify_cmd(const VerifyArgs& args) {
  if (args.trials < 0) throw FlagError("--trials must be non-negative");
  VerifyOptions options;
  options.trials = args.trials;
  options.seed = args.seed;
  options.naive_decremental = args.naive;
  if (!args.input.empty()) options.graph = load_graph(args.input);

  const VerifyReport report = run_verify(options, &std::cerr);
  for (const auto& [check, counts] : report.tally) {
    std::cout << check << ": " << counts.first << '/' << counts.second << " agree\n";
  }
  std::cout << report.trials << " trials, " << report.checks << " checks, "
            << report.failures.size() << " disagreements\n";
  if (report.ok()) return kOk;

  std::size_t shown = 0;
  for (const VerifyFailure& f : report.failures) {
    if (shown++ == 10) {
      std::cout << "... " << report.failures.size() - 10 << " more\n";
      break;
    }
    std::cout << "DISAGREE " << f.check << " seed=" << f.seed;
    if (f.source != kNoVertex) std::cout << " source=" << f.source;
    std::cout << ": " << f.detail << '\n';
  }
  for (const VerifyFailure& f : report.failures) {
    if (!f.graph) continue;
    const std::filesystem::path path =
        std::filesystem::path(args.replay_dir) / ("verify-replay-" + std::to_string(f.seed) + ".graph");
    std::ofstream out(path);
    out << "# " << f.check << " seed=" << f.seed << " source=" << f.source << "\n# " << f.detail
        << '\n';
    write_graph(out, *f.graph);
    std::cout << "replay written to " << path.string() << '\n';
    break;
  }
  return kDisagreement;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string family = "int";
  std::vector<Vertex> sizes{50, 100, 200};
  double avg_degree = 4;
  std::vector<Cost> costs{10};
  QueueBackend backend = QueueBackend::kOneLevel;
  bool csv = false;
  bool counters = false;
  std::uint64_t seed = 1;
};

int run_bench(const BenchArgs& args) {
  if (args.avg_degree < 0) throw FlagError("--avg-degree must be non-negative");
  const bool unit = args.family == "unit";
  const std::vector<Cost> cost_range = unit ? std::vector<Cost>{1} : args.costs;

  if (args.csv) {
    std::cout << "family,n,m,F,c,backend,records,time_ms";
    if (args.counters) {
      std::cout << ",edge_inspections,slot_visits,cascades,cascade_moves,spt_events,"
                   "labels_settled,queue_ops,inspections_per_mn,slot_visits_per_nc";
    }
    std::cout << '\n';
  }
  for (Vertex n : args.sizes) {
    for (Cost c : cost_range) {
      if (n < 1 || c < 1) throw FlagError("sizes and costs must be positive");
      RandomGraphParams params;
      params.n = n;
      params.edge_count = static_cast<std::int64_t>(std::llround(args.avg_degree * n));
      if (params.edge_count == 0) params.edge_probability = 0;
      params.min_cost = 1;
      params.max_cost = c;
      params.min_capacity = 1;
      params.max_capacity = 1000;
      params.capacity_step = 0;
      const Graph g = random_graph(params, args.seed + static_cast<std::uint64_t>(n));

      SolverStats stats;
      const auto start = std::chrono::steady_clock::now();
      const SingleSourceResult r =
          unit && g.m() > 0 ? solve_sssp_af_unit(g, 1, &stats)
                            : solve_sssp_af_int(g, 1, args.backend, &stats);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

      const double mn = static_cast<double>(g.m()) * g.n();
      const double nc = static_cast<double>(g.n()) * static_cast<double>(g.max_cost());
      const double per_mn = mn > 0 ? static_cast<double>(stats.edge_inspections) / mn : 0.0;
      const double per_nc = nc > 0 ? static_cast<double>(stats.queue.slot_visits) / nc : 0.0;
      const std::string backend = unit ? "spt" : std::string(backend_name(args.backend));
      if (args.csv) {
        std::cout << args.family << ',' << g.n() << ',' << g.m() << ',' << g.flow_count() << ','
                  << g.max_cost() << ',' << backend << ',' << r.record_count() << ','
                  << std::fixed << std::setprecision(3) << ms;
        if (args.counters) {
          std::cout << ',' << stats.edge_inspections << ',' << stats.queue.slot_visits << ','
                    << stats.queue.cascades << ',' << stats.queue.cascade_moves << ','
                    << stats.spt_events << ',' << stats.labels_settled << ','
                    << stats.queue.operations() << ',' << std::setprecision(4) << per_mn << ','
                    << per_nc;
        }
        std::cout << std::defaultfloat << '\n';
      } else {
        std::cout << "family=" << args.family << " n=" << g.n() << " m=" << g.m()
                  << " F=" << g.flow_count() << " c=" << g.max_cost() << " backend=" << backend
                  << " records=" << r.record_count();
        if (args.counters) {
          std::cout << ' ' << counters(stats) << " inspections_per_mn=" << per_mn
                    << " slot_visits_per_nc=" << per_nc;
        }
        std::cout << " time_ms=" << std::fixed << std::setprecision(3) << ms << std::defaultfloat
                  << '\n';
      }
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// convert

int run_convert(const std::string& input, const std::string& output, const std::string& format) {
  write_document(load_result(input), output, format);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest paths for all flows"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve from one source or for all pairs");
  solve_cmd->add_option("input", solve.input, "Graph file")->required();
  auto* source_opt = solve_cmd->add_option("--source", solve.source, "Source vertex");
  auto* all_opt = solve_cmd->add_flag("--all-pairs", solve.all_pairs, "Solve for every source");
  source_opt->excludes(all_opt);
  solve_cmd->add_option("--backend", solve.backend, "one-level | cascading | heap")
      ->transform(CLI::CheckedTransformer(kBackendNames));
  solve_cmd->add_option("--output,-o", solve.output, "Output path, - for stdout");
  solve_cmd->add_option("--format", solve.format, "json | binary")
      ->check(CLI::IsMember({"json", "binary"}));
  solve_cmd->add_flag("--force-int", solve.force_int, "Use the integer solver on unit costs");
  solve_cmd->add_flag("--by-sources", solve.by_sources, "All pairs as independent single-source runs");
  solve_cmd->add_option("--mem-budget", solve.mem_budget,
                        "All-pairs memory budget in bytes (K/M/G suffix allowed)");

  QueryArgs query;
  CLI::App* query_cmd = app.add_subcommand("query", "Shortest path carrying a flow demand");
  query_cmd->add_option("input", query.input, "Graph file or solved result")->required();
  query_cmd->add_option("source", query.source, "Source vertex")->required();
  query_cmd->add_option("dest", query.dest, "Destination vertex")->required();
  query_cmd->add_option("--flow", query.flow, "Flow demand")->required();
  query_cmd->add_option("--backend", query.backend, "one-level | cascading | heap")
      ->transform(CLI::CheckedTransformer(kBackendNames));

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Differential checks against the oracles");
  verify_cmd->add_option("input", verify.input, "Check this graph from every source");
  verify_cmd->add_option("--trials", verify.trials, "Random trials");
  verify_cmd->add_option("--seed", verify.seed, "Corpus seed");
  verify_cmd->add_flag("--naive-decremental", verify.naive, "Also check the naive decremental method");
  verify_cmd->add_option("--replay-dir", verify.replay_dir, "Where to write a failing instance");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Operation counters on generated graphs");
  bench_cmd->add_option("--family", bench.family, "unit | int")->check(CLI::IsMember({"unit", "int"}));
  bench_cmd->add_option("--n", bench.sizes, "Vertex counts")->delimiter(',');
  bench_cmd->add_option("--avg-degree", bench.avg_degree, "Edges per vertex");
  bench_cmd->add_option("--c", bench.costs, "Maximum edge costs")->delimiter(',');
  bench_cmd->add_option("--backend", bench.backend, "one-level | cascading | heap")
      ->transform(CLI::CheckedTransformer(kBackendNames));
  bench_cmd->add_flag("--csv", bench.csv, "CSV output");
  bench_cmd->add_flag("--counters", bench.counters, "Include operation counters");
  bench_cmd->add_option("--seed", bench.seed, "Generator seed");

  std::string convert_input;
  std::string convert_output = "-";
  std::string convert_format = "json";
  CLI::App* convert_cmd = app.add_subcommand("convert", "Rewrite a solved result in another format");
  convert_cmd->add_option("input", convert_input, "Solved result (JSON or binary)")->required();
  convert_cmd->add_option("--output,-o", convert_output, "Output path, - for stdout");
  convert_cmd->add_option("--format", convert_format, "json | binary")
      ->check(CLI::IsMember({"json", "binary"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadFlags;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*query_cmd) return run_query(query);
    if (*verify_cmd) return run_verify_cmd(verify);
    if (*bench_cmd) return run_bench(bench);
    if (*convert_cmd) return run_convert(convert_input, convert_output, convert_format);
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadFlags;
  } catch (const MemoryBudgetError& e) {
    std::cerr << "error: " << e.what() << " (--by-sources) or raise --mem-budget\n";
    return kMemoryBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kBadFlags;
}
