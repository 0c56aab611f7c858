#include <doctest.h>

#include <algorithm>

#include "dvcm/corpus_io.hpp"
#include "dvcm/harness.hpp"
#include "dvcm/model.hpp"
#include "support.hpp"

using namespace dvcm;
using dvcm::testing::f1;
using dvcm::testing::f1_data;
using dvcm::testing::MiniCorpus;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& rule, const Id& entity) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.rule == rule && v.entity_id == entity; });
}

}  // namespace

TEST_CASE("enum names round-trip case-insensitively") {
  for (auto c : kAllStepClasses) CHECK(parse_step_class(to_string(c)) == c);
  for (auto c : kAllSongComponents) CHECK(parse_song_component(to_string(c)) == c);
  for (auto r : kAllSpatialRelations) CHECK(parse_spatial_relation(to_string(r)) == r);
  CHECK(parse_step_class("asha") == StepClass::ASHA);
  CHECK(parse_spatial_relation("Left_Of") == SpatialRelation::left_of);
  CHECK(parse_granularity("compound_scene") == Granularity::compound_scene);
  CHECK_FALSE(parse_step_class("XY"));
  CHECK_FALSE(parse_song_component(""));
}

TEST_CASE("dates") {
  CHECK(parse_date("2006-03-18") == Date{2006, 3, 18});
  CHECK(parse_date("2024-02-29"));
  CHECK_FALSE(parse_date("2023-02-29"));
  CHECK_FALSE(parse_date("2023-13-01"));
  CHECK_FALSE(parse_date("2023-1-01"));
  CHECK_FALSE(parse_date("20230101xx"));
  CHECK(format_date({2006, 3, 8}) == "2006-03-08");
}

TEST_CASE("the fixture is a valid corpus") {
  auto c = f1();
  CHECK(c.data().dancers.size() == 2);
  CHECK(c.data().songs.size() == 1);
  CHECK(c.data().shots.size() >= 9);
  CHECK(validate_corpus(c.data()).empty());
}

TEST_CASE("empty corpus is valid") {
  Corpus c;
  CHECK(c.data().shots.empty());
  CHECK(c.occurrence_count() == 0);
  CHECK(lift_granularity(c, {}, Granularity::scene).empty());
}

TEST_CASE("validation flags each broken invariant") {
  SUBCASE("shot with unknown scene") {
    auto d = f1_data();
    d.shots["sh01"].scene_id = "sc99";
    auto vs = validate_corpus(d);
    CHECK(has_rule(vs, "dangling-reference", "sh01"));
    CHECK_THROWS_AS(Corpus{d}, IntegrityError);
  }
  SUBCASE("two occurrences for one dancer") {
    auto d = f1_data();
    auto& shot = d.shots["sh02"];
    auto extra = shot.occurrences.front();
    extra.occ_id = "oc_extra";
    shot.occurrences.push_back(extra);
    CHECK(has_rule(validate_corpus(d), "occurrence-uniqueness", "sh02"));
  }
  SUBCASE("overlapping shots in a scene") {
    auto d = f1_data();
    d.shots["sh02"].life_span.start -= 1;
    CHECK(has_rule(validate_corpus(d), "shot-ordering", "sc01"));
  }
  SUBCASE("shot outside its scene") {
    auto d = f1_data();
    d.shots["sh10"].life_span.end = d.scenes["sc03"].life_span.end + 1;
    CHECK(has_rule(validate_corpus(d), "shot-containment", "sh10"));
  }
  SUBCASE("inverted interval") {
    auto d = f1_data();
    std::swap(d.shots["sh05"].life_span.start, d.shots["sh05"].life_span.end);
    CHECK(has_rule(validate_corpus(d), "interval-order", "sh05"));
  }
  SUBCASE("performer missing from dancer_ids") {
    auto d = f1_data();
    auto& shot = d.shots["sh02"];
    shot.dancer_ids.erase(shot.occurrences.front().dancer_id);
    CHECK(has_rule(validate_corpus(d), "occurrence-presence", "sh02"));
  }
  SUBCASE("occurrence naming another shot") {
    auto d = f1_data();
    d.shots["sh02"].occurrences.front().shot_id = "sh03";
    CHECK(has_rule(validate_corpus(d), "occurrence-shot", "sh02"));
  }
  SUBCASE("song type") {
    auto d = f1_data();
    d.scenes["sc01"].component = SongComponent::CH;
    CHECK(has_rule(validate_corpus(d), "song-type", "cs01"));
  }
  SUBCASE("empty song") {
    auto d = MiniCorpus().d;
    d.compound_scenes["cs1"].scene_ids.clear();
    d.scenes.clear();
    CHECK(has_rule(validate_corpus(d), "song-type", "cs1"));
  }
  SUBCASE("step body parts") {
    auto d = f1_data();
    d.step_defs["st_samathristy"].body_parts = {"left hand"};
    CHECK(has_rule(validate_corpus(d), "step-body-parts", "st_samathristy"));
    d = f1_data();
    d.step_defs["st_alapadma"].body_parts.insert("left hand fingers");
    CHECK(has_rule(validate_corpus(d), "step-body-parts", "st_alapadma"));
  }
  SUBCASE("costume map names an absent dancer") {
    auto d = MiniCorpus().shot("a", {0, 10}, {{"d1", "s1"}}).d;
    d.costumes["co1"] = {"co1", "Saree", ""};
    d.scenes["sc1"].costume_map["d2"] = {"co1"};
    CHECK(has_rule(validate_corpus(d), "costume-map", "sc1"));
  }
  SUBCASE("spatial triplet relating a dancer to itself") {
    auto d = MiniCorpus()
                 .shot("a", {0, 10}, {{"d1", "s1"}, {"d2", "s1"}})
                 .triplet("a", "d1", SpatialRelation::near, "d1")
                 .d;
    CHECK(has_rule(validate_corpus(d), "spatial-triplet", "a"));
  }
  SUBCASE("shot listed by no scene") {
    auto d = MiniCorpus().shot("a", {0, 10}, {{"d1", "s1"}}).d;
    d.scenes["sc1"].shot_ids.clear();
    CHECK(has_rule(validate_corpus(d), "membership", "a"));
  }
}

TEST_CASE("integrity error lists every violation") {
  auto d = f1_data();
  d.shots["sh01"].scene_id = "sc99";
  std::swap(d.shots["sh05"].life_span.start, d.shots["sh05"].life_span.end);
  d.scenes["sc01"].component = SongComponent::CH;
  auto expected = validate_corpus(d);
  REQUIRE(expected.size() >= 3);
  CHECK(std::is_sorted(expected.begin(), expected.end()));
  try {
    Corpus c(d);
    FAIL("expected IntegrityError");
  } catch (const IntegrityError& e) {
    CHECK(e.violations() == expected);
    for (const auto& v : expected) CHECK(std::string(e.what()).find(v.entity_id) != std::string::npos);
  }
}

TEST_CASE("lifting granularity") {
  auto c = f1();
  std::vector<Id> two{"sh02", "sh01"};
  CHECK(lift_granularity(c, two, Granularity::scene) == std::vector<Id>{"sc01"});
  CHECK(lift_granularity(c, two, Granularity::shot) == std::vector<Id>{"sh01", "sh02"});
  std::vector<Id> mixed{"sh01", "sh05"};
  CHECK(lift_granularity(c, mixed, Granularity::compound_scene) == std::vector<Id>{"cs01"});
  CHECK(lift_granularity(c, {}, Granularity::compound_scene).empty());
  std::vector<Id> bogus{"nope"};
  CHECK_THROWS_AS(lift_granularity(c, bogus, Granularity::scene), UnknownIdError);
}

TEST_CASE("lifting is monotone and idempotent on generated corpora") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = generate_corpus({.n_shots = 60, .n_dancers = 3, .seed = seed});
    SplitMix64 rng(seed);
    const auto& all = c.ordinals().shots;
    std::vector<Id> small, big;
    for (const auto& id : all) {
      bool in_small = rng.chance(0.2);
      if (in_small) small.push_back(id);
      if (in_small || rng.chance(0.3)) big.push_back(id);
    }
    for (auto vg : {Granularity::shot, Granularity::scene, Granularity::compound_scene}) {
      auto ls = lift_granularity(c, small, vg);
      auto lb = lift_granularity(c, big, vg);
      CHECK(std::includes(lb.begin(), lb.end(), ls.begin(), ls.end()));
      CHECK(std::adjacent_find(lb.begin(), lb.end(), std::greater_equal<>()) == lb.end());
      CHECK(lift_granularity(c, lift_granularity(c, big, Granularity::shot), vg) == lb);
    }
  }
}

TEST_CASE("ordinals agree with the catalogs") {
  auto c = generate_corpus({.n_shots = 200, .n_dancers = 4, .seed = 3});
  const auto& o = c.ordinals();
  const auto& d = c.data();
  REQUIRE(o.shots.size() == d.shots.size());
  REQUIRE(o.scenes.size() == d.scenes.size());
  REQUIRE(o.compound_scenes.size() == d.compound_scenes.size());
  CHECK(o.occurrences.size() == c.occurrence_count());
  CHECK(std::is_sorted(o.shots.begin(), o.shots.end()));
  CHECK(std::is_sorted(o.occurrences.begin(), o.occurrences.end()));
  for (Ordinal i = 0; i < o.shots.size(); ++i) {
    const Shot& s = c.shot(o.shots[i]);
    CHECK(o.scenes[o.shot_scene[i]] == s.scene_id);
    CHECK(o.shot_index.at(s.id) == i);
  }
  for (Ordinal i = 0; i < o.scenes.size(); ++i) {
    CHECK(o.compound_scenes[o.scene_compound[i]] == c.scene(o.scenes[i]).compound_scene_id);
  }
  for (Ordinal i = 0; i < o.occurrences.size(); ++i) {
    CHECK(o.shots[o.occurrence_shot[i]] == c.occurrence_shot(o.occurrences[i]));
  }
  for (const auto& [step, ords] : o.step_occurrences) {
    auto ids = c.occurrences_of_step(step);
    REQUIRE(ids.size() == ords.size());
    for (std::size_t k = 0; k < ords.size(); ++k) CHECK(o.occurrences[ords[k]] == ids[k]);
  }
}

TEST_CASE("occurrence lookups") {
  auto c = f1();
  const auto& shot = c.shot("sh02");
  REQUIRE_FALSE(shot.occurrences.empty());
  const auto& occ = shot.occurrences.front();
  CHECK(c.occurrence_shot(occ.occ_id) == "sh02");
  CHECK(c.occurrence(occ.occ_id) == occ);
  CHECK(shot.occurrence_of(occ.dancer_id) == &shot.occurrences.front());
  CHECK(shot.occurrence_of("nobody") == nullptr);
  CHECK_THROWS_AS(c.occurrence("nope"), UnknownIdError);
  CHECK_THROWS_AS(c.shot("nope"), UnknownIdError);
  CHECK_THROWS_AS(c.dancer("nope"), UnknownIdError);
}
