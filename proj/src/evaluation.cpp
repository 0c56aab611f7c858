#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "dvcm/corpus_io.hpp"
#include "dvcm/harness.hpp"
#include "dvcm/inverted_index.hpp"
#include "dvcm/query_engine.hpp"
#include "dvcm/query_language.hpp"
#include "dvcm_fixtures.hpp"

namespace dvcm {
namespace {

struct Fixture {
  std::string corpus;
  std::string cases;
};

const Fixture& fixture(const std::string& name) {
  static const std::map<std::string, Fixture> fixtures = {
      {"f1", {std::string(kFixtureF1Corpus), std::string(kFixtureF1Queries)}},
  };
  auto it = fixtures.find(name);
  if (it == fixtures.end()) throw Error("unknown fixture '" + name + "'");
  return it->second;
}

}  // namespace

PrecisionRecall precision_recall(const std::vector<Id>& retrieved, const std::vector<Id>& relevant) {
  if (relevant.empty()) throw std::invalid_argument("recall is undefined for an empty relevant set");
  std::set<Id> got(retrieved.begin(), retrieved.end());
  std::set<Id> want(relevant.begin(), relevant.end());
  std::vector<Id> hits;
  std::set_intersection(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(hits));
  PrecisionRecall pr;
  pr.recall = 100.0 * static_cast<double>(hits.size()) / static_cast<double>(want.size());
  if (got.empty()) {
    pr.empty_retrieval = true;
  } else {
    pr.precision = 100.0 * static_cast<double>(hits.size()) / static_cast<double>(got.size());
  }
  return pr;
}

std::vector<EvalCase> parse_eval_cases(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("cases", e.what());
  }
  if (!doc.is_array()) throw ParseError("cases", "expected an array of cases");
  std::vector<EvalCase> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    std::string where = "cases[" + std::to_string(i) + "]";
    try {
      EvalCase ec;
      ec.name = item.at("name").get<std::string>();
      ec.query = item.at("query").get<std::string>();
      ec.relevant = item.at("relevant").get<std::vector<Id>>();
      out.push_back(std::move(ec));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return out;
}

EvalReport run_eval(const Corpus& c, const std::vector<EvalCase>& cases, const SynonymTable& synonyms) {
  if (cases.empty()) throw std::invalid_argument("no evaluation cases");
  IndexSet ix = build_indexes(c, synonyms);
  EvalReport report;
  for (const auto& ec : cases) {
    auto result = execute(c, parse_query(ec.query), &ix, synonyms);
    EvalRow row;
    row.name = ec.name;
    row.query = ec.query;
    row.retrieved = result.ids.size();
    row.relevant = ec.relevant.size();
    row.score = precision_recall(result.ids, ec.relevant);
    report.mean_precision += row.score.precision;
    report.mean_recall += row.score.recall;
    report.rows.push_back(std::move(row));
  }
  report.mean_precision /= static_cast<double>(report.rows.size());
  report.mean_recall /= static_cast<double>(report.rows.size());
  return report;
}

const std::string& fixture_corpus_json(const std::string& name) { return fixture(name).corpus; }
const std::string& fixture_cases_json(const std::string& name) { return fixture(name).cases; }

EvalReport run_fixture_eval(const std::string& name, const SynonymTable& synonyms) {
  const auto& f = fixture(name);
  return run_eval(corpus_from_json(f.corpus), parse_eval_cases(f.cases), synonyms);
}

std::string format_percent(double value) {
  auto hundredths = static_cast<long long>(std::floor(value * 100.0 + 1e-6));
  std::string out = std::to_string(hundredths / 100);
  if (auto frac = hundredths % 100; frac != 0) {
    char buf[4];
    std::snprintf(buf, sizeof buf, "%02lld", frac);
    std::string digits = buf;
    if (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

std::string format_eval_report(const EvalReport& r) {
  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "%-6s %9s %8s %7s %9s\n", "query", "retrieved", "relevant", "recall",
                "precision");
  out += line;
  for (const auto& row : r.rows) {
    std::string precision = format_percent(row.score.precision);
    if (row.score.empty_retrieval) precision += "*";
    std::snprintf(line, sizeof line, "%-6s %9zu %8zu %7s %9s\n", row.name.c_str(), row.retrieved,
                  row.relevant, format_percent(row.score.recall).c_str(), precision.c_str());
    out += line;
  }
  std::snprintf(line, sizeof line, "%-6s %9s %8s %7s %9s\n", "mean", "", "", format_percent(r.mean_recall).c_str(),
                format_percent(r.mean_precision).c_str());
  out += line;
  out += "\nmean recall and mean precision are arithmetic means over the queries above.\n";
  bool any_empty = std::any_of(r.rows.begin(), r.rows.end(), [](const EvalRow& row) { return row.score.empty_retrieval; });
  if (any_empty) out += "* nothing retrieved; precision reported as 0.\n";
  return out;
}

}  // namespace dvcm
