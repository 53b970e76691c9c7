// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spaf/apsp_af.hpp"
#include "spaf/graph.hpp"
#include "spaf/oracle.hpp"
#include "spaf/pqueue.hpp"
#include "spaf/sssp_af.hpp"
#include "spaf/verify.hpp"

namespace {

using namespace spaf;
using Clock = std::chrono::steady_clock;

constexpr QueueBackend kBackends[] = {QueueBackend::kOneLevel, QueueBackend::kCascading,
                                      QueueBackend::kHeap};

/// Witness and shape tallies shared by every solver output checked below.
struct OutputAudit {
  std::int64_t records = 0;
  std::int64_t witness_failures = 0;
  std::int64_t lists = 0;
  std::int64_t shape_failures = 0;
  std::string first_problem;

  void check(const Graph& g, const SingleSourceResult& r) {
    lists += r.n();
    for (Vertex v = 1; v <= r.n(); ++v) {
      if (!r.at(v).well_formed()) {
        ++shape_failures;
        note("shape: source " + std::to_string(r.source) + " vertex " + std::to_string(v));
      }
    }
    const std::int64_t before = records;
    std::string problem = check_witnesses(g, r, &records);
    if (!problem.empty()) {
      // check_witnesses stops at the first bad record; count the rest as unchecked failures.
      witness_failures += static_cast<std::int64_t>(r.record_count()) - (records - before) + 1;
      records = before + static_cast<std::int64_t>(r.record_count());
      note("witness: " + problem);
    }
  }

  void note(const std::string& problem) {
    if (first_problem.empty()) first_problem = problem;
  }
};

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double seconds, const Outcome& outcome) {
  char timing[32];
  std::snprintf(timing, sizeof(timing), "%.1f s", seconds);
  std::cout << '[' << id << "] " << (outcome.pass ? "PASS" : "FAIL") << "  " << title << ": "
            << outcome.detail << " (" << timing << ")" << std::endl;
  if (!outcome.pass) ++failures;
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string mismatch_note(std::int64_t count, const std::string& first) {
  std::ostringstream out;
  out << count << " mismatches";
  if (!first.empty()) out << "; first: " << first;
  return out.str();
}

// ---------------------------------------------------------------------------

Outcome unit_cost_equivalence(OutputAudit& audit, double budget_s, Clock::time_point start) {
  constexpr int kGraphs = 500;
  std::mt19937_64 rng(20240601);
  std::int64_t comparisons = 0;
  std::int64_t mismatches = 0;
  std::string first;
  for (int i = 0; i < kGraphs; ++i) {
    RandomGraphParams params;
    params.n = std::uniform_int_distribution<Vertex>(2, 10)(rng);
    params.edge_probability = std::uniform_real_distribution<double>(0.3, 0.8)(rng);
    params.min_cost = params.max_cost = 1;
    params.min_capacity = 1;
    params.max_capacity = 6;
    params.capacity_step = 1;
    const std::uint64_t seed = rng();
    const Graph g = random_graph(params, seed);
    for (Vertex s = 1; s <= g.n(); ++s) {
      const SingleSourceResult ref = straightforward_sssp_af(g, s);
      const SingleSourceResult exhaustive = enumerate_paths_af(g, s);
      // Edgeless graphs have no unit-cost structure; the integer solver covers them.
      const SingleSourceResult got =
          g.m() > 0 ? solve_sssp_af_unit(g, s) : solve_sssp_af_int(g, s, QueueBackend::kHeap);
      audit.check(g, got);
      for (const auto* oracle : {&ref, &exhaustive}) {
        ++comparisons;
        if (std::string d = compare_pairs(*oracle, got); !d.empty()) {
          ++mismatches;
          if (first.empty()) first = "seed " + std::to_string(seed) + " " + d;
        }
      }
    }
  }
  const double t = elapsed(start);
  std::ostringstream detail;
  detail << kGraphs << " graphs, " << comparisons << " oracle comparisons, "
         << mismatch_note(mismatches, first) << ", budget " << budget_s << " s";
  return {mismatches == 0 && t < budget_s, detail.str()};
}

Outcome integer_cost_equivalence(OutputAudit& audit, double budget_s, Clock::time_point start) {
  constexpr int kGraphs = 500;
  std::mt19937_64 rng(20240602);
  std::int64_t comparisons = 0;
  std::int64_t mismatches = 0;
  std::string first;
  for (int i = 0; i < kGraphs; ++i) {
    RandomGraphParams params;
    params.n = std::uniform_int_distribution<Vertex>(2, 10)(rng);
    params.edge_probability = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
    params.min_cost = 0;
    params.max_cost = 12;
    // Real capacities on a coarse grid so that ties are common.
    params.min_capacity = 0.25;
    params.max_capacity = 3.0;
    params.capacity_step = 0.25;
    params.parallel_probability = i % 4 == 0 ? 0.2 : 0.0;
    const std::uint64_t seed = rng();
    const Graph g = random_graph(params, seed);
    for (Vertex s = 1; s <= g.n(); ++s) {
      const SingleSourceResult ref = straightforward_sssp_af(g, s);
      const SingleSourceResult exhaustive = enumerate_paths_af(g, s);
      for (QueueBackend b : kBackends) {
        const SingleSourceResult got = solve_sssp_af_int(g, s, b);
        audit.check(g, got);
        for (const auto* oracle : {&ref, &exhaustive}) {
          ++comparisons;
          if (std::string d = compare_pairs(*oracle, got); !d.empty()) {
            ++mismatches;
            if (first.empty()) {
              first = "seed " + std::to_string(seed) + " " + std::string(backend_name(b)) + " " + d;
            }
          }
        }
      }
    }
  }
  const double t = elapsed(start);
  std::ostringstream detail;
  detail << kGraphs << " graphs x 3 backends, " << comparisons << " oracle comparisons, "
         << mismatch_note(mismatches, first) << ", budget " << budget_s << " s";
  return {mismatches == 0 && t < budget_s, detail.str()};
}

Outcome all_pairs_consistency(OutputAudit& audit, double budget_s, Clock::time_point start) {
  constexpr int kGraphs = 200;
  std::mt19937_64 rng(20240603);
  std::int64_t mismatches = 0;
  std::int64_t triangles = 0;
  std::int64_t triangle_failures = 0;
  std::string first;
  for (int i = 0; i < kGraphs; ++i) {
    RandomGraphParams params;
    params.n = std::uniform_int_distribution<Vertex>(1, 8)(rng);
    params.edge_probability = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
    params.min_cost = 0;
    params.max_cost = 12;
    params.min_capacity = 0.5;
    params.max_capacity = 4.0;
    params.capacity_step = 0.5;
    const std::uint64_t seed = rng();
    const Graph g = random_graph(params, seed);
    const AllPairsResult by_sources = solve_apsp_af_by_sources(g, QueueBackend::kCascading);
    for (QueueBackend b : kBackends) {
      const AllPairsResult all = solve_apsp_af(g, b);
      for (Vertex u = 1; u <= g.n(); ++u) {
        audit.check(g, all.row(u));
        std::string d = compare_pairs(by_sources.row(u), all.row(u));
        if (d.empty()) d = compare_pairs(straightforward_sssp_af(g, u), all.row(u));
        if (!d.empty()) {
          ++mismatches;
          if (first.empty()) first = "seed " + std::to_string(seed) + " " + d;
        }
      }
      triangles += static_cast<std::int64_t>(g.n()) * g.n() * g.n() * std::max<FlowId>(1, g.flow_count());
      if (std::string d = check_triangle(all, g.flow_count()); !d.empty()) {
        ++triangle_failures;
        if (first.empty()) first = "seed " + std::to_string(seed) + " " + d;
      }
    }
    for (Vertex u = 1; u <= g.n(); ++u) audit.check(g, by_sources.row(u));
  }
  const double t = elapsed(start);
  std::ostringstream detail;
  detail << kGraphs << " graphs x 3 backends, " << triangles << " (u,v,w,f) triangle checks, "
         << triangle_failures << " triangle failures, " << mismatch_note(mismatches, first)
         << ", budget " << budget_s << " s";
  return {mismatches == 0 && triangle_failures == 0 && t < budget_s, detail.str()};
}

Outcome queue_differential_suite() {
  constexpr int kWorkloads = 100;
  constexpr std::size_t kOperations = 10000;
  std::mt19937_64 rng(20240606);
  std::int64_t runs = 0;
  std::int64_t mismatches = 0;
  std::string first;
  std::vector<std::string> shapes_seen;
  for (int i = 0; i < kWorkloads; ++i) {
    // Windows up to 991 keep p^k = 1000 valid for the fixed (3, 10) shape.
    const Key window = std::uniform_int_distribution<Key>(1, 991)(rng);
    const QueueWorkload w = make_queue_workload(rng(), kOperations, window);
    std::vector<CbsParams> shapes;
    for (int k = 1; k <= 3; ++k) {
      shapes.push_back(fit_cbs_window(
          choose_cbs_params(w.max_key + 1, static_cast<std::int64_t>(w.id_count), k), window));
    }
    shapes.push_back(fit_cbs_window({3, 10}, window));
    if (shapes.back() != CbsParams{3, 10}) {
      ++mismatches;
      if (first.empty()) first = "fixed (3,10) shape did not fit the window";
    }
    for (const CbsParams& shape : shapes) {
      ++runs;
      if (std::string d = queue_differential(w, shape); !d.empty()) {
        ++mismatches;
        if (first.empty()) first = "workload " + std::to_string(i) + " " + d;
      }
    }
    if (i == 0) {
      for (const CbsParams& shape : shapes) {
        shapes_seen.push_back("(" + std::to_string(shape.levels) + "," +
                              std::to_string(shape.buckets_per_level) + ")");
      }
    }
  }
  std::ostringstream detail;
  detail << kWorkloads << " workloads of " << kOperations << " ops, " << runs
         << " one-level + cascading runs vs heap, shapes e.g.";
  for (const std::string& s : shapes_seen) detail << ' ' << s;
  detail << ", " << mismatch_note(mismatches, first);
  return {mismatches == 0, detail.str()};
}

/// Least-squares slope of y on x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Outcome unit_inspection_growth() {
  constexpr int kSeeds = 3;
  std::vector<double> log_mn;
  std::vector<double> log_inspections;
  bool within_bound = true;
  std::ostringstream points;
  for (Vertex n : {50, 100, 200, 400}) {
    double total = 0;
    double mn = 0;
    for (int s = 0; s < kSeeds; ++s) {
      RandomGraphParams params;
      params.n = n;
      params.edge_count = 4 * static_cast<std::int64_t>(n);
      params.min_cost = params.max_cost = 1;
      params.min_capacity = 1;
      params.max_capacity = 1000;
      params.capacity_step = 0;
      const Graph g = random_graph(params, 7000 + static_cast<std::uint64_t>(n) * 10 + s);
      SolverStats stats;
      solve_sssp_af_unit(g, 1, &stats);
      const auto bound = static_cast<std::uint64_t>(g.m()) * static_cast<std::uint64_t>(g.n() - 1);
      if (stats.edge_inspections > bound) within_bound = false;
      total += static_cast<double>(stats.edge_inspections);
      mn += static_cast<double>(g.m()) * g.n();
    }
    log_mn.push_back(std::log(mn / kSeeds));
    log_inspections.push_back(std::log(total / kSeeds));
    points << " n=" << n << ":" << static_cast<std::int64_t>(total / kSeeds);
  }
  const double exponent = slope(log_mn, log_inspections);
  std::ostringstream detail;
  detail << "inspections <= m(n-1) on every instance: " << (within_bound ? "yes" : "no")
         << ", fitted exponent vs m*n " << exponent << " (target 1.0 +/- 0.15), mean inspections"
         << points.str();
  return {within_bound && std::abs(exponent - 1.0) <= 0.15, detail.str()};
}

Outcome one_level_scan_growth() {
  constexpr int kSeeds = 5;
  constexpr Vertex kN = 100;
  std::vector<double> x;
  std::vector<double> y;
  for (Cost c : {10, 100, 1000}) {
    double total = 0;
    for (int s = 0; s < kSeeds; ++s) {
      RandomGraphParams params;
      params.n = kN;
      params.edge_count = 400;
      params.min_cost = 1;
      params.max_cost = c;
      params.min_capacity = 1;
      params.max_capacity = 1000;
      params.capacity_step = 0;
      const Graph g = random_graph(params, 8000 + static_cast<std::uint64_t>(s));
      SolverStats stats;
      solve_sssp_af_int(g, 1, QueueBackend::kOneLevel, &stats);
      total += static_cast<double>(stats.queue.slot_visits);
    }
    x.push_back(static_cast<double>(kN) * static_cast<double>(c));
    y.push_back(total / kSeeds);
  }
  const double b = slope(x, y);
  const double a = std::accumulate(y.begin(), y.end(), 0.0) / 3.0 -
                   b * std::accumulate(x.begin(), x.end(), 0.0) / 3.0;
  double worst = 0;
  std::ostringstream points;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(y[i] - (a + b * x[i])) / y[i]);
    points << " nc=" << x[i] << ":" << static_cast<std::int64_t>(y[i]);
  }
  std::ostringstream detail;
  detail << "fit slot_visits = " << a << " + " << b << " * n*c, worst relative residual "
         << worst * 100 << "% (limit 15%), mean visits" << points.str();
  return {b > 0 && worst < 0.15, detail.str()};
}

Outcome decremental_regression() {
  const Graph g = decremental_counterexample();
  const SingleSourceResult ref = straightforward_sssp_af(g, 1);
  const std::string naive = compare_pairs(ref, naive_decremental_sssp_af(g, 1));
  VerifyReport shipped;
  verify_graph(g, 0, false, shipped);
  std::ostringstream detail;
  detail << "naive decremental " << (naive.empty() ? "agrees (unexpected)" : "disagrees: " + naive)
         << "; shipped solvers " << shipped.checks - static_cast<std::int64_t>(shipped.failures.size())
         << "/" << shipped.checks << " checks agree";
  return {!naive.empty() && shipped.ok(), detail.str()};
}

Outcome cascade_fixture() {
  CascadingBuckets q(8, 3, 10);
  auto dump = [&q] {
    std::ostringstream out;
    q.dump(out);
    return out.str();
  };
  auto has = [](const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
  };

  q.insert(0, 19);
  const std::string after_insert = dump();
  const bool placed = q.level_of(0) == 1 && q.bucket_of(0) == 1 &&
                      has(after_insert, "level 1 active=1 count=1 1:[19]");
  q.insert(1, 25);
  q.insert(2, 27);

  const auto first = q.delete_min();
  const std::string after_removal = dump();
  const bool removed = first && first->key == 19 && has(after_removal, "level 0 active=10 count=0");

  const auto second = q.delete_min();
  const std::string after_cascade = dump();
  const bool cascaded = second && second->key == 25 &&
                        has(after_cascade, "level 0 active=5 count=1 7:[27]") &&
                        has(after_cascade, "cascades_by_level 0 2 0") && q.audit().empty();

  std::ostringstream detail;
  detail << "19 at level 1 bucket 1: " << (placed ? "yes" : "no")
         << "; 19 removed leaving level 0 empty: " << (removed ? "yes" : "no")
         << "; next delete_min cascaded level 1 bucket 2 into level 0 (27 now at level 0 bucket 7): "
         << (cascaded ? "yes" : "no");
  if (!(placed && removed && cascaded)) {
    detail << "\n" << after_insert << after_removal << after_cascade;
  }
  return {placed && removed && cascaded, detail.str()};
}

}  // namespace

int main() {
  OutputAudit audit;

  auto t = Clock::now();
  report(1, "unit-cost solver matches both oracles", elapsed(t),
         unit_cost_equivalence(audit, 60, t));

  t = Clock::now();
  report(2, "integer-cost solver matches both oracles on every backend", elapsed(t),
         integer_cost_equivalence(audit, 120, t));

  t = Clock::now();
  report(3, "all-pairs shared queue matches per-source runs and oracle", elapsed(t),
         all_pairs_consistency(audit, 120, t));

  {
    std::ostringstream detail;
    detail << audit.records - audit.witness_failures << "/" << audit.records
           << " records have a path of cost d carrying f";
    if (audit.witness_failures) detail << "; first: " << audit.first_problem;
    report(4, "path witnesses", 0, {audit.witness_failures == 0 && audit.records > 0, detail.str()});
  }
  {
    std::ostringstream detail;
    detail << audit.lists - audit.shape_failures << "/" << audit.lists
           << " lists strictly increasing in d and f";
    report(5, "Pareto shape", 0, {audit.shape_failures == 0 && audit.lists > 0, detail.str()});
  }

  t = Clock::now();
  Outcome queues = queue_differential_suite();
  report(6, "queue differential against the reference heap", elapsed(t), queues);

  t = Clock::now();
  Outcome growth = unit_inspection_growth();
  report(7, "unit-cost solver edge inspections", elapsed(t), growth);

  t = Clock::now();
  Outcome scan = one_level_scan_growth();
  report(8, "one-level bucket slot visits affine in n*c", elapsed(t), scan);

  t = Clock::now();
  Outcome decremental = decremental_regression();
  report(9, "decremental counterexample", elapsed(t), decremental);

  t = Clock::now();
  Outcome cascade = cascade_fixture();
  report(10, "cascading buckets k=3 p=10 fixture", elapsed(t), cascade);

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
