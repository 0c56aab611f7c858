// dvcm: command-line front end for corpus validation, indexing, querying,
// generation, benchmarking and fixture evaluation.

#include <algorithm>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dvcm/corpus_io.hpp"
#include "dvcm/harness.hpp"
#include "dvcm/inverted_index.hpp"
#include "dvcm/query_engine.hpp"
#include "dvcm/query_language.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kMismatch = 3 };

void print_violations(const std::vector<dvcm::Violation>& violations) {
  for (const auto& v : violations) {
    std::cerr << v.rule << "\t" << v.entity_id << "\t" << v.detail << "\n";
  }
}

int cmd_validate(const std::string& path) {
  auto parsed = dvcm::parse_corpus_json(dvcm::read_text_file(path));
  auto violations = dvcm::validate_corpus(parsed.data);
  violations.insert(violations.end(), parsed.duplicates.begin(), parsed.duplicates.end());
  std::sort(violations.begin(), violations.end());
  if (!violations.empty()) {
    print_violations(violations);
    std::cerr << violations.size() << " violation(s)\n";
    return kData;
  }
  std::cout << "ok: " << parsed.data.videos.size() << " videos, " << parsed.data.compound_scenes.size()
            << " compound scenes, " << parsed.data.scenes.size() << " scenes, " << parsed.data.shots.size()
            << " shots\n";
  return kOk;
}

int cmd_index(const std::string& corpus_path, const std::string& out) {
  auto c = dvcm::load_corpus(corpus_path);
  dvcm::save_index(dvcm::build_indexes(c, dvcm::SynonymTable::from_environment()), out);
  return kOk;
}

int cmd_query(const std::string& corpus_path, const std::string& index_path, const std::string& text,
              const std::string& format) {
  auto q = dvcm::parse_query(text);
  auto c = dvcm::load_corpus(corpus_path);
  auto synonyms = dvcm::SynonymTable::from_environment();
  dvcm::ResultSet result;
  if (index_path.empty()) {
    result = dvcm::execute(c, q, nullptr, synonyms);
  } else {
    auto ix = dvcm::load_index(index_path, c, synonyms);
    result = dvcm::execute(c, q, &ix, synonyms);
  }
  if (format == "json") {
    nlohmann::ordered_json out{{"granularity", dvcm::to_string(result.granularity)}, {"ids", result.ids}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& id : result.ids) std::cout << id << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dance video annotation store and retrieval engine"};
  app.require_subcommand(1);

  std::string corpus_path, index_path, out_path, query_text, format, fixture = "f1";

  auto* validate = app.add_subcommand("validate", "Check a corpus file against every integrity rule");
  validate->add_option("corpus", corpus_path, "Corpus file")->required();

  auto* index = app.add_subcommand("index", "Build the inverted files for a corpus");
  index->add_option("corpus", corpus_path, "Corpus file")->required();
  index->add_option("-o,--output", out_path, "Index file to write")->required();

  auto* query = app.add_subcommand("query", "Run a query against a corpus");
  query->add_option("corpus", corpus_path, "Corpus file")->required();
  query->add_option("text", query_text, "Query text")->required();
  query->add_option("--index", index_path, "Use a prebuilt index file");
  format = "lines";
  query->add_option("--format", format, "Output format")->check(CLI::IsMember({"lines", "json"}));

  dvcm::GenParams gp;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic corpus");
  gen->add_option("--shots", gp.n_shots, "Number of shots")->required();
  gen->add_option("--dancers", gp.n_dancers, "Number of dancers")->required();
  gen->add_option("--seed", gp.seed, "Random seed")->required();
  gen->add_option("--step-defs", gp.n_step_defs, "Number of step definitions");
  gen->add_option("--min-scene-shots", gp.shots_per_scene_range.first, "Fewest shots per scene");
  gen->add_option("--max-scene-shots", gp.shots_per_scene_range.second, "Most shots per scene");
  std::vector<double> weights;
  gen->add_option("--type-weights", weights, "Six song type weights")->expected(6)->delimiter(',');
  gen->add_option("-o,--output", out_path, "Corpus file to write")->required();

  dvcm::BenchOptions bo;
  std::string bench_format = "table";
  auto* bench = app.add_subcommand("bench", "Time sequential against indexed containment queries");
  bench->add_option("--sizes", bo.sizes, "Corpus sizes in shots")->delimiter(',');
  bench->add_option("--queries", bo.n_queries, "Queries per corpus");
  bench->add_option("--seed", bo.seed, "Random seed");
  bench->add_option("--reps", bo.repetitions, "Timed repetitions per query");
  bench->add_option("--format", bench_format, "Output format")->check(CLI::IsMember({"table", "json"}));

  auto* eval = app.add_subcommand("eval", "Precision and recall on a shipped fixture");
  eval->add_option("--fixture", fixture, "Fixture name")->check(CLI::IsMember({"f1"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(corpus_path);
    if (*index) return cmd_index(corpus_path, out_path);
    if (*query) return cmd_query(corpus_path, index_path, query_text, format);
    if (*gen) {
      if (!weights.empty()) std::copy(weights.begin(), weights.end(), gp.song_type_weights.begin());
      dvcm::save_corpus(dvcm::generate_corpus_data(gp), out_path);
      return kOk;
    }
    if (*bench) {
      auto report = dvcm::run_benchmark(bo);
      std::cout << (bench_format == "json" ? dvcm::bench_to_json(report) : dvcm::format_bench_table(report));
      return kOk;
    }
    if (*eval) {
      std::cout << dvcm::format_eval_report(dvcm::run_fixture_eval(fixture, dvcm::SynonymTable::from_environment()));
      return kOk;
    }
  } catch (const dvcm::IntegrityError& e) {
    print_violations(e.violations());
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const dvcm::BenchmarkMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const dvcm::QuerySyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dvcm::InfeasibleParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
