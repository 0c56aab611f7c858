#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "dvcm/corpus_io.hpp"
#include "dvcm/harness.hpp"
#include "support.hpp"

using namespace dvcm;
using dvcm::testing::f1;
using json = nlohmann::json;

namespace {

const char* kEmpty = R"({"videos": [], "songs": [], "musicians": [], "dancers": [], "backgrounds": [],
 "costumes": [], "instruments": [], "step_defs": [], "compound_scenes": [], "scenes": [], "shots": []})";

std::string parse_location(const std::string& text) {
  try {
    parse_corpus_json(text);
  } catch (const ParseError& e) {
    return e.location();
  }
  return "";
}

json f1_json() { return json::parse(fixture_corpus_json("f1")); }

}  // namespace

TEST_CASE("empty catalogs load as an empty valid corpus") {
  auto c = corpus_from_json(kEmpty);
  CHECK(c.data() == CorpusData{});
  CHECK(corpus_to_json(c.data()) == corpus_to_json(CorpusData{}));
}

TEST_CASE("syntax errors carry a line and column") {
  CHECK(parse_location("{\n  \"videos\": [,]\n}") == "line 2, col 14");
  CHECK(parse_location("") .rfind("line 1", 0) == 0);
}

TEST_CASE("field errors carry a JSON path") {
  auto j = f1_json();
  j["shots"][3]["life_span"]["start"] = "zero";
  CHECK(parse_location(j.dump()) == "shots[3].life_span.start");

  j = f1_json();
  j["dancers"][0]["nickname"] = "A";
  CHECK(parse_location(j.dump()) == "dancers[0].nickname");

  j = f1_json();
  j["scenes"][0].erase("component");
  CHECK(parse_location(j.dump()) == "scenes[0].component");

  j = f1_json();
  j["scenes"][0]["component"] = "XX";
  CHECK(parse_location(j.dump()) == "scenes[0].component");

  j = f1_json();
  j.erase("shots");
  CHECK(parse_location(j.dump()) == "shots");

  j = f1_json();
  j["extra"] = json::array();
  CHECK(parse_location(j.dump()) == "$.extra");

  j = f1_json();
  j["videos"][0]["recording_date"] = "2006-02-30";
  CHECK(parse_location(j.dump()) == "videos[0].recording_date");
}

TEST_CASE("duplicate catalog IDs are integrity violations") {
  auto j = f1_json();
  j["dancers"].push_back(j["dancers"][0]);
  auto parsed = parse_corpus_json(j.dump());
  REQUIRE(parsed.duplicates.size() == 1);
  CHECK(parsed.duplicates[0].rule == "duplicate-id");
  CHECK_THROWS_AS(corpus_from_json(j.dump()), IntegrityError);
}

TEST_CASE("fixture round-trips") {
  auto c = f1();
  auto text = corpus_to_json(c.data());
  auto again = corpus_from_json(text);
  CHECK(again.data() == c.data());
  CHECK(corpus_to_json(again.data()) == text);
  CHECK(again.fingerprint() == c.fingerprint());
}

TEST_CASE("generated corpus round-trips") {
  auto data = generate_corpus_data({.n_shots = 1000, .n_dancers = 5, .seed = 11});
  auto text = corpus_to_json(data);
  auto c = corpus_from_json(text);
  CHECK(c.data() == data);
  CHECK(corpus_to_json(c.data()) == text);
}

TEST_CASE("fingerprint tracks content") {
  auto d = f1().data();
  auto fp = content_fingerprint(d);
  CHECK(fp.size() == 16);
  CHECK(fp.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(content_fingerprint(d) == fp);
  d.shots["sh01"].description += "!";
  CHECK(content_fingerprint(d) != fp);
}

TEST_CASE("save and load through a file") {
  auto dir = std::filesystem::temp_directory_path() / "dvcm_test_corpus_io";
  std::filesystem::create_directories(dir);
  auto path = dir / "f1.json";
  auto c = f1();
  save_corpus(c.data(), path);
  CHECK(load_corpus(path).data() == c.data());
  CHECK(read_text_file(path) == corpus_to_json(c.data()));
  CHECK_THROWS_AS(load_corpus(dir / "missing.json"), ParseError);
  std::filesystem::remove_all(dir);
}
