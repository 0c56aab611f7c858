#pragma once

// Synthetic corpora, random query workloads, precision/recall evaluation on
// the shipped fixture, and the index-vs-scan latency benchmark.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dvcm/model.hpp"
#include "dvcm/normalize.hpp"
#include "dvcm/query.hpp"

namespace dvcm {

class InfeasibleParams : public Error {
 public:
  using Error::Error;
};

/// Counter-based generator: the i-th draw is splitmix64(seed + i * golden),
/// so output depends only on the seed and the draw index.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

struct GenParams {
  std::size_t n_shots = 10;
  std::size_t n_dancers = 4;
  std::size_t n_step_defs = 24;
  std::array<double, 6> song_type_weights{1, 1, 1, 1, 1, 1};
  std::pair<int, int> shots_per_scene_range{2, 8};
  std::uint64_t seed = 0;
};

/// Throws InfeasibleParams when the parameters admit no corpus.
void check_params(const GenParams& p);

/// Deterministic in the parameters. Every shot count is met exactly; the last
/// song may shrink below the scene range to do so.
CorpusData generate_corpus_data(const GenParams& p);
Corpus generate_corpus(const GenParams& p);

struct WorkloadQuery {
  ParsedQuery query;
  std::string text;
};

/// Random containment queries over the corpus vocabulary: Type1, Type2 and
/// Type3 atoms (the latter both explicit and as dancer AND attribute), AND/OR
/// trees of depth <= max_depth, every granularity. A small share of keys is
/// absent from the corpus.
std::vector<WorkloadQuery> random_queries(const Corpus& c, std::size_t n, std::uint64_t seed,
                                          std::size_t max_depth = 3);

struct PrecisionRecall {
  double precision = 0;
  double recall = 0;
  /// Set when nothing was retrieved; precision is then reported as 0.
  bool empty_retrieval = false;
};

/// Percentages. Throws std::invalid_argument when `relevant` is empty.
PrecisionRecall precision_recall(const std::vector<Id>& retrieved, const std::vector<Id>& relevant);

struct EvalRow {
  std::string name;
  std::string query;
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
  PrecisionRecall score;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  double mean_precision = 0;
  double mean_recall = 0;
};

struct EvalCase {
  std::string name;
  std::string query;
  std::vector<Id> relevant;
};

/// Throws ParseError on a malformed case list.
std::vector<EvalCase> parse_eval_cases(std::string_view json_text);

/// Runs every case through the indexed engine.
EvalReport run_eval(const Corpus& c, const std::vector<EvalCase>& cases,
                    const SynonymTable& synonyms = SynonymTable::defaults());

/// The shipped fixture F1 and its five evaluation cases.
const std::string& fixture_corpus_json(const std::string& name);
const std::string& fixture_cases_json(const std::string& name);
EvalReport run_fixture_eval(const std::string& name = "f1",
                            const SynonymTable& synonyms = SynonymTable::defaults());

/// Percent truncated (not rounded) to two decimals.
std::string format_percent(double value);
std::string format_eval_report(const EvalReport& r);

struct EngineStats {
  double median_us = 0;
  double mean_us = 0;
  std::size_t query_count = 0;
};

struct BenchRow {
  std::size_t n_shots = 0;
  double build_ms = 0;
  EngineStats sequential;
  EngineStats indexed;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

class BenchmarkMismatch : public Error {
 public:
  using Error::Error;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{10, 100, 1000, 10000};
  std::size_t n_queries = 50;
  std::uint64_t seed = 0;
  std::size_t repetitions = 30;
};

/// Per size: generate, index, then time every query through both engines
/// (one warm-up round, `repetitions` timed runs, per-query median). Reported
/// median and mean are over the per-query medians. Throws BenchmarkMismatch
/// naming the query when the engines disagree.
BenchReport run_benchmark(const BenchOptions& opt);

std::string format_bench_table(const BenchReport& r);
std::string bench_to_json(const BenchReport& r);

}  // namespace dvcm
