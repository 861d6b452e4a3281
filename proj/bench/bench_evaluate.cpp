#include <benchmark/benchmark.h>

#include <memory>

#include "lexsparql/checks.hpp"
#include "lexsparql/dataset.hpp"
#include "lexsparql/executor.hpp"
#include "lexsparql/metrics.hpp"
#include "lexsparql/population.hpp"
#include "lexsparql/snapshot.hpp"
#include "lexsparql/templates.hpp"

using namespace lexsparql;

namespace {

// Test split of the packaged catalog, three responses per record: the gold
// query, a near miss and an unparsable one.
struct Workload {
  std::shared_ptr<const Snapshot> snapshot;
  std::vector<DatasetRecord> golds;
  std::vector<std::vector<std::string>> responses;
};

const Workload& workload() {
  static const Workload w = [] {
    Workload w;
    const std::string dir = LEXSPARQL_BENCH_DATA_DIR;
    w.snapshot = std::make_shared<const Snapshot>(Snapshot::load_file(dir + "/desk_snapshot.nt"));
    LocalExecutor ex(w.snapshot);
    Catalog cat = Catalog::load_dir(dir + "/catalog");
    auto run = populate_catalog(cat, ex, EndpointLimits{}, 0);
    auto records = build_dataset(cat, run.rows, 1);
    SplitConfig sc;
    sc.seed = 1;
    w.golds = split(records, sc).test;
    for (const auto& g : w.golds) {
      std::string miss = g.query;
      if (auto p = miss.find("wdt:P"); p != std::string::npos) miss.replace(p, 5, "wdt:P9");
      w.responses.push_back({g.query, miss, "SELECT ?x WHERE {"});
    }
    return w;
  }();
  return w;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto& w = workload();
  LocalExecutor ex(w.snapshot);
  auto profile = CheckProfile::appendix_c();
  for (auto _ : state) {
    auto r = evaluate_records_serial(w.golds, w.responses, ex, profile);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.golds.size()));
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto& w = workload();
  LocalExecutor ex(w.snapshot);
  auto profile = CheckProfile::appendix_c();
  for (auto _ : state) {
    auto r = evaluate_records_parallel(w.golds, w.responses, ex, profile);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.golds.size()));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
