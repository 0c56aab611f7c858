#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dvcm/corpus_io.hpp"
#include "dvcm/harness.hpp"
#include "dvcm/inverted_index.hpp"
#include "dvcm/query_engine.hpp"
#include "dvcm/query_language.hpp"
#include "dvcm/song_grammar.hpp"
#include "dvcm/temporal.hpp"

namespace py = pybind11;

namespace {

std::vector<std::string> ids_of(const dvcm::Corpus& c) {
  std::vector<std::string> out;
  for (const auto& [id, _] : c.data().shots) out.push_back(id);
  return out;
}

std::vector<std::string> run_query(const dvcm::Corpus& c, const std::string& text, const dvcm::IndexSet* ix) {
  return dvcm::execute(c, dvcm::parse_query(text), ix, ix ? ix->synonyms() : dvcm::default_synonyms()).ids;
}

}  // namespace

PYBIND11_MODULE(_dvcm, m) {
  m.doc() = "Dance video annotation store and retrieval engine";

  auto error = py::register_exception<dvcm::Error>(m, "Error");
  py::register_exception<dvcm::ParseError>(m, "ParseError", error);
  py::register_exception<dvcm::IntegrityError>(m, "IntegrityError", error);
  auto query_error = py::register_exception<dvcm::QueryError>(m, "QueryError", error);
  py::register_exception<dvcm::QuerySyntaxError>(m, "QuerySyntaxError", query_error);
  py::register_exception<dvcm::InfeasibleParams>(m, "InfeasibleParams", error);

  py::class_<dvcm::Corpus>(m, "Corpus")
      .def_property_readonly("fingerprint", &dvcm::Corpus::fingerprint)
      .def_property_readonly("shot_ids", &ids_of)
      .def_property_readonly("occurrence_count", &dvcm::Corpus::occurrence_count)
      .def("to_json", [](const dvcm::Corpus& c) { return dvcm::corpus_to_json(c.data()); })
      .def("__eq__", [](const dvcm::Corpus& a, const dvcm::Corpus& b) { return a.data() == b.data(); })
      .def("__len__", [](const dvcm::Corpus& c) { return c.data().shots.size(); });

  py::class_<dvcm::IndexSet>(m, "Index")
      .def("to_json", &dvcm::index_to_json)
      .def("lookup", [](const dvcm::IndexSet& ix, const std::string& kind, const std::string& key) {
        auto k = dvcm::parse_index_kind(kind);
        if (!k) throw py::value_error("unknown inverted file '" + kind + "'");
        return dvcm::lookup(ix, *k, key);
      });

  m.def("load_corpus", [](const std::string& path) { return dvcm::load_corpus(path); }, py::arg("path"));
  m.def("corpus_from_json", &dvcm::corpus_from_json, py::arg("text"));
  m.def(
      "validate",
      [](const std::string& text) {
        auto parsed = dvcm::parse_corpus_json(text);
        auto violations = dvcm::validate_corpus(parsed.data);
        violations.insert(violations.end(), parsed.duplicates.begin(), parsed.duplicates.end());
        std::sort(violations.begin(), violations.end());
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& v : violations) out.emplace_back(v.rule, v.entity_id, v.detail);
        return out;
      },
      py::arg("text"));

  m.def("build_index", [](const dvcm::Corpus& c) { return dvcm::build_indexes(c); }, py::arg("corpus"));
  m.def(
      "query",
      [](const dvcm::Corpus& c, const std::string& text, const dvcm::IndexSet* index) {
        return run_query(c, text, index);
      },
      py::arg("corpus"), py::arg("text"), py::arg("index") = nullptr);
  m.def(
      "canonical_query", [](const std::string& text) { return dvcm::print_query(dvcm::parse_query(text)); },
      py::arg("text"));

  m.def(
      "classify_song",
      [](const std::vector<std::string>& components) -> std::optional<int> {
        auto t = dvcm::classify_song_type(components);
        if (!t) return std::nullopt;
        return t->code;
      },
      py::arg("components"));
  m.def(
      "allen_relation",
      [](dvcm::Tick a_start, dvcm::Tick a_end, dvcm::Tick b_start, dvcm::Tick b_end) {
        return std::string(dvcm::to_string(dvcm::allen_relation({a_start, a_end}, {b_start, b_end})));
      },
      py::arg("a_start"), py::arg("a_end"), py::arg("b_start"), py::arg("b_end"));

  m.def(
      "generate",
      [](std::size_t n_shots, std::size_t n_dancers, std::uint64_t seed, std::size_t n_step_defs) {
        dvcm::GenParams p;
        p.n_shots = n_shots;
        p.n_dancers = n_dancers;
        p.n_step_defs = n_step_defs;
        p.seed = seed;
        return dvcm::generate_corpus(p);
      },
      py::arg("n_shots"), py::arg("n_dancers") = 4, py::arg("seed") = 0, py::arg("n_step_defs") = 24);

  m.def(
      "precision_recall",
      [](const std::vector<std::string>& retrieved, const std::vector<std::string>& relevant) {
        auto pr = dvcm::precision_recall(retrieved, relevant);
        return std::make_pair(pr.precision, pr.recall);
      },
      py::arg("retrieved"), py::arg("relevant"));
  m.def("fixture_eval", [] {
    auto report = dvcm::run_fixture_eval();
    py::list rows;
    for (const auto& r : report.rows) {
      py::dict row;
      row["name"] = r.name;
      row["retrieved"] = r.retrieved;
      row["relevant"] = r.relevant;
      row["recall"] = r.score.recall;
      row["precision"] = r.score.precision;
      rows.append(row);
    }
    py::dict out;
    out["rows"] = rows;
    out["mean_precision"] = report.mean_precision;
    out["mean_recall"] = report.mean_recall;
    return out;
  });
}
