#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "dvcm/harness.hpp"
#include "dvcm/inverted_index.hpp"
#include "dvcm/query_engine.hpp"

namespace dvcm {
namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

EngineStats summarize(const std::vector<double>& per_query) {
  EngineStats s;
  s.query_count = per_query.size();
  s.median_us = median(per_query);
  s.mean_us = std::accumulate(per_query.begin(), per_query.end(), 0.0) / static_cast<double>(per_query.size());
  return s;
}

template <typename Run>
double time_median(Run&& run, std::size_t reps, volatile std::size_t& sink) {
  std::vector<double> samples;
  samples.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    sink = sink + run().ids.size();
    auto t1 = Clock::now();
    samples.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  return median(std::move(samples));
}

}  // namespace

BenchReport run_benchmark(const BenchOptions& opt) {
  if (opt.n_queries == 0) throw std::invalid_argument("benchmark needs at least one query");
  if (opt.sizes.empty()) throw std::invalid_argument("benchmark needs at least one corpus size");
  if (opt.repetitions == 0) throw std::invalid_argument("benchmark needs at least one repetition");
  auto sizes = opt.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  const SynonymTable& synonyms = default_synonyms();
  BenchReport report;
  volatile std::size_t sink = 0;
  for (std::size_t size : sizes) {
    GenParams gp;
    gp.n_shots = size;
    gp.n_dancers = 6;
    gp.n_step_defs = 40;
    gp.seed = opt.seed;
    Corpus c = generate_corpus(gp);

    BenchRow row;
    row.n_shots = size;
    auto t0 = Clock::now();
    IndexSet ix = build_indexes(c, synonyms);
    row.build_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

    auto workload = random_queries(c, opt.n_queries, opt.seed);
    std::vector<double> seq_times, idx_times;
    for (const auto& wq : workload) {
      const auto& expr = std::get<QueryExpr>(wq.query.body);
      Granularity vg = wq.query.vg;
      auto seq = [&] { return exec_containment_seq(c, expr, vg, synonyms); };
      auto idx = [&] { return exec_containment_indexed(c, ix, expr, vg); };
      if (seq() != idx()) {
        throw BenchmarkMismatch("engines disagree on " + std::to_string(size) + "-shot corpus: " + wq.text);
      }
      seq_times.push_back(time_median(seq, opt.repetitions, sink));
      idx_times.push_back(time_median(idx, opt.repetitions, sink));
    }
    row.sequential = summarize(seq_times);
    row.indexed = summarize(idx_times);
    report.rows.push_back(row);
  }
  return report;
}

std::string format_bench_table(const BenchReport& r) {
  char line[200];
  std::string out;
  std::snprintf(line, sizeof line, "%8s  %-10s  %12s  %12s  %7s  %10s\n", "shots", "engine", "median_us",
                "mean_us", "queries", "build_ms");
  out += line;
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%8zu  %-10s  %12.2f  %12.2f  %7zu  %10s\n", row.n_shots, "sequential",
                  row.sequential.median_us, row.sequential.mean_us, row.sequential.query_count, "");
    out += line;
    std::snprintf(line, sizeof line, "%8zu  %-10s  %12.2f  %12.2f  %7zu  %10.2f\n", row.n_shots, "indexed",
                  row.indexed.median_us, row.indexed.mean_us, row.indexed.query_count, row.build_ms);
    out += line;
  }
  return out;
}

std::string bench_to_json(const BenchReport& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  auto stats = [](const EngineStats& s) {
    return nlohmann::ordered_json{{"median_us", s.median_us}, {"mean_us", s.mean_us}, {"query_count", s.query_count}};
  };
  for (const auto& row : r.rows) {
    rows.push_back({{"n_shots", row.n_shots},
                    {"build_ms", row.build_ms},
                    {"sequential", stats(row.sequential)},
                    {"indexed", stats(row.indexed)}});
  }
  return nlohmann::ordered_json{{"rows", rows}}.dump(2) + "\n";
}

}  // namespace dvcm
