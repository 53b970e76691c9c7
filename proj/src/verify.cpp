#include "spaf/verify.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "spaf/oracle.hpp"
#include "spaf/sssp_af.hpp"

namespace spaf {

namespace {

std::string format_pairs(const ParetoList& list) {
  std::ostringstream out;
  out << '[';
  bool first = true;
  for (const auto& [d, f] : pairs_of(list)) {
    out << (first ? "" : " ") << '(' << d << ',' << f << ')';
    first = false;
  }
  out << ']';
  return out.str();
}

}  // namespace

std::string compare_pairs(const SingleSourceResult& expected, const SingleSourceResult& actual) {
  if (expected.n() != actual.n()) {
    return "vertex count " + std::to_string(actual.n()) + ", expected " + std::to_string(expected.n());
  }
  for (Vertex v = 1; v <= expected.n(); ++v) {
    if (pairs_of(expected.at(v)) != pairs_of(actual.at(v))) {
      return "source " + std::to_string(expected.source) + " vertex " + std::to_string(v) + ": " +
             format_pairs(actual.at(v)) + ", expected " + format_pairs(expected.at(v));
    }
  }
  return {};
}

std::string check_shape(const SingleSourceResult& result) {
  for (Vertex v = 1; v <= result.n(); ++v) {
    if (!result.at(v).well_formed()) {
      return "source " + std::to_string(result.source) + " vertex " + std::to_string(v) +
             ": list not strictly increasing " + format_pairs(result.at(v));
    }
  }
  return {};
}

std::optional<Distance> witness_cost(const Graph& g, const std::vector<Vertex>& path, FlowId f) {
  Distance total = 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    std::optional<Cost> best;
    for (EdgeId eid : g.out_edges(path[i - 1])) {
      const Edge& e = g.edge(eid);
      if (e.dst != path[i] || e.cap < f) continue;
      if (!best || e.cost < *best) best = e.cost;
    }
    if (!best) return std::nullopt;
    total += *best;
  }
  return total;
}

std::string check_witnesses(const Graph& g, const SingleSourceResult& result,
                            std::int64_t* records_checked) {
  for (Vertex v = 1; v <= result.n(); ++v) {
    for (const ParetoRecord& r : result.at(v).records()) {
      if (records_checked) ++*records_checked;
      const std::string where = "source " + std::to_string(result.source) + " vertex " +
                                std::to_string(v) + " record (" + std::to_string(r.d) + "," +
                                std::to_string(r.f) + ")";
      std::optional<std::vector<Vertex>> path;
      try {
        path = reconstruct_path(result, v, r.f);
      } catch (const PathError& e) {
        return where + ": " + e.what();
      }
      if (!path) return where + ": no path reconstructed";
      if (path->front() != result.source || path->back() != v) return where + ": wrong endpoints";
      // The source's own record stands for the empty path, whatever its flow.
      if (path->size() == 1) {
        if (r.d != 0) return where + ": empty path with nonzero distance";
        continue;
      }
      std::optional<Distance> cost = witness_cost(g, *path, r.f);
      if (!cost) return where + ": path has a hop that cannot carry the flow";
      if (*cost != r.d) {
        return where + ": path costs " + std::to_string(*cost);
      }
    }
  }
  return {};
}

std::string check_triangle(const AllPairsResult& result, FlowId flow_count) {
  const Vertex n = result.n();
  auto best = [&](Vertex a, Vertex b, FlowId f) {
    const ParetoRecord* r = result.row(a).at(b).best_for(f);
    return r ? r->d : kInfiniteDistance;
  };
  for (FlowId f = 1; f <= std::max<FlowId>(flow_count, 1); ++f) {
    for (Vertex u = 1; u <= n; ++u) {
      for (Vertex v = 1; v <= n; ++v) {
        const Distance uv = best(u, v, f);
        if (uv == kInfiniteDistance) continue;
        for (Vertex w = 1; w <= n; ++w) {
          const Distance vw = best(v, w, f);
          if (vw == kInfiniteDistance) continue;
          if (best(u, w, f) > uv + vw) {
            return "triangle violated for u=" + std::to_string(u) + " v=" + std::to_string(v) +
                   " w=" + std::to_string(w) + " f=" + std::to_string(f);
          }
        }
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Queue workloads

QueueWorkload make_queue_workload(std::uint64_t seed, std::size_t operations, Key window,
                                  double unreached_probability) {
  if (window < 1) throw std::invalid_argument("workload window must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](Key lo, Key hi) { return std::uniform_int_distribution<Key>(lo, hi)(rng); };

  QueueWorkload w;
  w.window = window;
  std::vector<Key> key;      // per id; kUnreached while pooled
  std::vector<char> alive;   // inserted and not extracted
  std::set<std::pair<Key, ItemId>> finite;
  Key mu = 0;

  auto remember = [&](Key k) { w.max_key = std::max(w.max_key, k); };

  auto delete_min = [&]() {
    w.ops.push_back({QueueOp::kDeleteMin, 0, 0});
    if (finite.empty()) return;
    auto [k, id] = *finite.begin();
    finite.erase(finite.begin());
    alive[static_cast<std::size_t>(id)] = 0;
    mu = k;
  };

  for (std::size_t op = 0; op < operations; ++op) {
    const double r = unit(rng);
    if (r < 0.4 || key.empty()) {
      const auto id = static_cast<ItemId>(key.size());
      Key k = unit(rng) < unreached_probability ? kUnreached : uniform(mu, mu + window - 1);
      key.push_back(k);
      alive.push_back(1);
      if (k != kUnreached) {
        finite.emplace(k, id);
        remember(k);
      }
      w.ops.push_back({QueueOp::kInsert, id, k});
      continue;
    }
    if (r < 0.65) {
      bool done = false;
      for (int attempt = 0; attempt < 8 && !done; ++attempt) {
        const auto id = static_cast<ItemId>(uniform(0, static_cast<Key>(key.size()) - 1));
        auto i = static_cast<std::size_t>(id);
        if (!alive[i] || key[i] <= mu) continue;
        Key hi = key[i] == kUnreached ? mu + window - 1 : key[i] - 1;
        Key k = uniform(mu, hi);
        if (key[i] != kUnreached) finite.erase({key[i], id});
        key[i] = k;
        finite.emplace(k, id);
        remember(k);
        w.ops.push_back({QueueOp::kDecrease, id, k});
        done = true;
      }
      if (done) continue;
    }
    delete_min();
  }
  while (!finite.empty()) delete_min();
  delete_min();  // one extraction from an empty queue
  w.id_count = key.size();
  return w;
}

std::string compare_extractions(const std::vector<QueueEntry>& reference,
                                const std::vector<QueueEntry>& actual) {
  for (std::size_t i = 1; i < actual.size(); ++i) {
    if (actual[i].key < actual[i - 1].key) {
      return "extraction " + std::to_string(i) + " decreased from " +
             std::to_string(actual[i - 1].key) + " to " + std::to_string(actual[i].key);
    }
  }
  if (reference.size() != actual.size()) {
    return std::to_string(actual.size()) + " extractions, expected " +
           std::to_string(reference.size());
  }
  std::map<Key, std::vector<ItemId>> want;
  std::map<Key, std::vector<ItemId>> got;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i].key != actual[i].key) {
      return "extraction " + std::to_string(i) + " has key " + std::to_string(actual[i].key) +
             ", expected " + std::to_string(reference[i].key);
    }
    want[reference[i].key].push_back(reference[i].id);
    got[actual[i].key].push_back(actual[i].id);
  }
  for (auto& [k, ids] : want) {
    std::vector<ItemId>& other = got[k];
    std::sort(ids.begin(), ids.end());
    std::sort(other.begin(), other.end());
    if (ids != other) return "different items extracted at key " + std::to_string(k);
  }
  return {};
}

std::string queue_differential(const QueueWorkload& workload, CbsParams params,
                               bool audit_every_op) {
  try {
    BinaryHeapQueue heap(workload.id_count);
    const std::vector<QueueEntry> reference = replay(heap, workload, audit_every_op);

    OneLevelBuckets one(workload.id_count, workload.max_key + 1);
    if (std::string d = compare_extractions(reference, replay(one, workload, audit_every_op));
        !d.empty()) {
      return "one-level: " + d;
    }
    CascadingBuckets cbs(workload.id_count, params.levels, params.buckets_per_level);
    if (std::string d = compare_extractions(reference, replay(cbs, workload, audit_every_op));
        !d.empty()) {
      return "cascading k=" + std::to_string(params.levels) +
             " p=" + std::to_string(params.buckets_per_level) + ": " + d;
    }
  } catch (const QueueError& e) {
    return std::string("queue error: ") + e.what();
  }
  return {};
}

// ---------------------------------------------------------------------------
// Randomized suite

namespace {

constexpr QueueBackend kBackends[] = {QueueBackend::kOneLevel, QueueBackend::kCascading,
                                      QueueBackend::kHeap};

struct Checker {
  const Graph& g;
  std::uint64_t seed;
  VerifyReport& report;

  void expect(const std::string& check, Vertex source, const std::string& problem) {
    ++report.checks;
    auto& [passed, total] = report.tally[check];
    ++total;
    if (problem.empty()) {
      ++passed;
      return;
    }
    report.failures.push_back({check, seed, source, problem, g});
  }

  template <class Fn>
  void guarded(const std::string& check, Vertex source, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      expect(check, source, std::string("threw: ") + e.what());
    }
  }
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + trial + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void verify_graph(const Graph& g, std::uint64_t seed, bool naive_decremental, VerifyReport& report) {
  Checker check{g, seed, report};
  std::vector<SingleSourceResult> reference(static_cast<std::size_t>(g.n()) + 1);

  for (Vertex s = 1; s <= g.n(); ++s) {
    check.guarded("oracle", s, [&] {
      SingleSourceResult& ref = reference[static_cast<std::size_t>(s)];
      ref = straightforward_sssp_af(g, s);
      check.expect("oracle-shape", s, check_shape(ref));
      if (g.n() <= kMaxEnumerationVertices) {
        check.expect("oracle-enumeration", s, compare_pairs(ref, enumerate_paths_af(g, s)));
      }
    });
    const SingleSourceResult& ref = reference[static_cast<std::size_t>(s)];

    auto check_solver = [&](const std::string& name, const SingleSourceResult& got) {
      check.expect(name, s, compare_pairs(ref, got));
      check.expect(name + "-shape", s, check_shape(got));
      check.expect(name + "-witness", s, check_witnesses(g, got));
    };
    for (QueueBackend b : kBackends) {
      const std::string name = "sssp-int-" + std::string(backend_name(b));
      check.guarded(name, s, [&] { check_solver(name, solve_sssp_af_int(g, s, b)); });
    }
    if (g.m() > 0 && g.unit_costs()) {
      check.guarded("sssp-unit", s, [&] { check_solver("sssp-unit", solve_sssp_af_unit(g, s)); });
    }
    if (naive_decremental) {
      check.guarded("naive-decremental", s, [&] {
        check.expect("naive-decremental", s, compare_pairs(ref, naive_decremental_sssp_af(g, s)));
      });
    }
  }

  for (QueueBackend b : kBackends) {
    const std::string name = "apsp-" + std::string(backend_name(b));
    check.guarded(name, kNoVertex, [&] {
      const AllPairsResult all = solve_apsp_af(g, b);
      for (Vertex s = 1; s <= g.n(); ++s) {
        check.expect(name, s, compare_pairs(reference[static_cast<std::size_t>(s)], all.row(s)));
        check.expect(name + "-witness", s, check_witnesses(g, all.row(s)));
      }
      check.expect(name + "-triangle", kNoVertex, check_triangle(all, g.flow_count()));
    });
  }
  check.guarded("apsp-by-sources", kNoVertex, [&] {
    const AllPairsResult all = solve_apsp_af_by_sources(g, QueueBackend::kCascading);
    for (Vertex s = 1; s <= g.n(); ++s) {
      check.expect("apsp-by-sources", s,
                   compare_pairs(reference[static_cast<std::size_t>(s)], all.row(s)));
    }
  });
}

VerifyReport run_verify(const VerifyOptions& options, std::ostream* progress) {
  VerifyReport report;
  if (options.graph) {
    verify_graph(*options.graph, options.seed, options.naive_decremental, report);
    report.trials = 1;
    return report;
  }

  for (std::int64_t t = 0; t < options.trials; ++t) {
    const std::uint64_t trial_seed = mix(options.seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(trial_seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto chance = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };

    RandomGraphParams params;
    params.n = uniform(2, 9);
    params.edge_probability = 0.15 + 0.05 * uniform(0, 10);
    if (chance(0.3)) {
      params.min_cost = params.max_cost = 1;
    } else {
      params.min_cost = 0;
      params.max_cost = uniform(1, 12);
    }
    if (chance(0.5)) {
      params.min_capacity = 1;
      params.max_capacity = 6;
      params.capacity_step = 1;
    } else {
      params.min_capacity = 0.5;
      params.max_capacity = 4;
      params.capacity_step = 0.25;
    }
    params.self_loops = chance(0.2);
    params.parallel_probability = chance(0.3) ? 0.2 : 0.0;
    verify_graph(random_graph(params, trial_seed), trial_seed, options.naive_decremental, report);

    // A monotone queue workload with parameters drawn like a solver would.
    const Key window = uniform(1, 200);
    const QueueWorkload workload = make_queue_workload(trial_seed, 1500, window);
    const Key span = workload.max_key + 1;
    const CbsParams cbs = fit_cbs_window(
        choose_cbs_params(span, static_cast<std::int64_t>(workload.id_count)), window);
    ++report.checks;
    auto& [passed, total] = report.tally["queue-differential"];
    ++total;
    if (std::string problem = queue_differential(workload, cbs, true); problem.empty()) {
      ++passed;
    } else {
      report.failures.push_back({"queue-differential", trial_seed, kNoVertex, problem, std::nullopt});
    }

    ++report.trials;
    if (progress && (t + 1) % 50 == 0) {
      *progress << "trial " << (t + 1) << '/' << options.trials << ", " << report.failures.size()
                << " failures\n";
    }
  }
  return report;
}

}  // namespace spaf
