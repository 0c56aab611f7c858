#include <doctest.h>

#include <functional>

#include "dvcm/harness.hpp"
#include "dvcm/query_engine.hpp"
#include "dvcm/query_language.hpp"

using namespace dvcm;

namespace {

QuerySyntaxError syntax_error(std::string_view text) {
  try {
    parse_query(text);
  } catch (const QuerySyntaxError& e) {
    return e;
  }
  FAIL("no syntax error for: " << text);
  return QuerySyntaxError(0, 0, {}, "");
}

}  // namespace

TEST_CASE("containment query") {
  auto q = parse_query(R"(find shots where dancer="Anitha" and step="Samathristy")");
  CHECK(q.vg == Granularity::shot);
  const auto& e = std::get<QueryExpr>(q.body);
  REQUIRE(e.op() == QueryExpr::Op::all_of);
  CHECK(std::get<FacetAtom>(e.left().atom()) == FacetAtom{Facet::dancer, "anitha"});
  CHECK(std::get<StepAtom>(e.right().atom()).target == StepAtom{std::string("samathristy")}.target);
  REQUIRE(q.spans.size() == 2);
  CHECK(q.spans[0].column == 18);
  CHECK(q.spans[1].column == 38);
}

TEST_CASE("precedence and grouping") {
  auto q = parse_query(R"(FIND cscenes WHERE posture="a" or posture="b" and posture="c")");
  CHECK(q.vg == Granularity::compound_scene);
  const auto& e = std::get<QueryExpr>(q.body);
  REQUIRE(e.op() == QueryExpr::Op::any_of);
  CHECK(e.right().op() == QueryExpr::Op::all_of);
  auto g = parse_query(R"(find scenes where (posture="a" or posture="b") and posture="c")");
  CHECK(std::get<QueryExpr>(g.body).op() == QueryExpr::Op::all_of);
  auto lefty = std::get<QueryExpr>(parse_query(R"(find shots where posture="a" and posture="b" and posture="c")").body);
  CHECK(lefty.left().op() == QueryExpr::Op::all_of);
}

TEST_CASE("keys are normalized") {
  auto q = parse_query(R"(find shots where body_part="  Left   EYE " and step_class="asha")");
  const auto& e = std::get<QueryExpr>(q.body);
  CHECK(std::get<FacetAtom>(e.left().atom()).key == "eye");
  CHECK(std::get<StepAtom>(e.right().atom()).target == StepAtom{StepClass::ASHA}.target);
}

TEST_CASE("relation calls") {
  auto t = parse_query(R"(find shots where repeats(dancer="A", dancer="B", step="S"))");
  CHECK(std::get<TemporalQuery>(t.body) == TemporalQuery{SemanticRelation::repeats, "a", "b", "s"});
  auto a = parse_query(R"(find scenes where Overlapped_By(dancer="A", dancer="B"))");
  CHECK(std::get<TemporalQuery>(a.body).kind == TemporalKind{AllenRelation::overlapped_by});
  auto s = parse_query(R"(find shots where spatial(dancer="A", relation="near", dancer="B", performing="true"))");
  CHECK(std::get<SpatialQuery>(s.body) == SpatialQuery{"a", SpatialRelation::near, "b", true});
  auto st = parse_query(
      R"(find shots where spatial(dancer="A", relation="left_of", dancer="B") and follows(dancer="A", dancer="B"))");
  const auto& both = std::get<SpatiotemporalQuery>(st.body);
  CHECK(both.temporal.kind == TemporalKind{SemanticRelation::follows});
  CHECK(both.spatial.relation == SpatialRelation::left_of);
  CHECK(st.spans.size() == 2);
}

TEST_CASE("canonical printing") {
  auto q = parse_query(R"(find   shots where dancer = "Anitha"   and step="Samathristy")");
  CHECK(print_query(q) == R"(find shots where dancer="anitha" and step="samathristy")");
  auto o = parse_query(R"(find scenes where posture="a" or (posture="b" and (posture="c" and posture="d")))");
  CHECK(parse_query(print_query(o)) == o);
  QueryExpr pair(DancerPairAtom{"anitha", PairedAttribute::step_class, "ASHA"});
  CHECK(print_query({Granularity::shot, pair, {}}) ==
        R"(find shots where (dancer="anitha" and step_class="ASHA"))");
  for (const char* text : {
           R"(find shots where observes(dancer="a", dancer="b"))",
           R"(find cscenes where follows_steps(dancer="a", dancer="b", step="x y"))",
           R"(find shots where spatial(dancer="a", relation="behind", dancer="b", performing="true"))",
           R"(find shots where meets(dancer="a", dancer="b") and spatial(dancer="a", relation="near", dancer="b"))",
           R"(find shots where song="say \"hi\" \\ there")",
       }) {
    auto p = parse_query(text);
    CHECK(parse_query(print_query(p)) == p);
    CHECK(print_query(parse_query(print_query(p))) == print_query(p));
  }
}

TEST_CASE("printing round-trips random workloads") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto c = generate_corpus({.n_shots = 80, .n_dancers = 3, .seed = seed});
    for (const auto& w : random_queries(c, 200, seed + 100)) {
      auto back = parse_query(w.text);
      CHECK_MESSAGE(parse_query(print_query(back)) == back, w.text);
      CHECK(execute(c, back) == execute(c, w.query));
    }
  }
}

TEST_CASE("diagnostics name the position and the expected tokens") {
  auto gap = syntax_error(R"(find scenes where dancer=)");
  CHECK(gap.line() == 1);
  CHECK(gap.column() == 26);
  CHECK(gap.expected() == std::vector<std::string>{"STRING"});
  CHECK(gap.found() == "end of input");

  auto first = syntax_error("  locate shots");
  CHECK(first.column() == 3);
  CHECK(std::string(first.what()).rfind("line 1, col 3: expected \"find\", found ", 0) == 0);

  auto gran = syntax_error("find rows where x=\"y\"");
  CHECK(gran.column() == 6);
  CHECK(gran.expected() == std::vector<std::string>{"\"shots\"", "\"scenes\"", "\"cscenes\""});

  auto multi = syntax_error("find shots\nwhere dancer=\"a\"\n  and ) ");
  CHECK(multi.line() == 3);
  CHECK(multi.column() == 7);

  auto facet = syntax_error(R"(find shots where colour="red")");
  CHECK(facet.column() == 18);

  auto cls = syntax_error(R"(find shots where step_class="XY")");
  CHECK(cls.column() == 29);

  auto open = syntax_error(R"(find shots where song="abc)");
  CHECK(open.found() == "end of input");

  auto missing = syntax_error(R"(find shots where follows(dancer="a"))");
  CHECK(missing.column() == 36);

  auto mixed = syntax_error(
      R"(find shots where follows(dancer="a", dancer="b") and repeats(dancer="a", dancer="b"))");
  CHECK(mixed.column() == 54);

  auto trailing = syntax_error(R"(find shots where dancer="a" dancer="b")");
  CHECK(trailing.column() == 29);

  CHECK(syntax_error("find shots where  = ").column() == 19);
  CHECK(syntax_error("find shots where dancer=\"é\" and €").column() == 33);
}

TEST_CASE("arbitrary input never crashes the parser") {
  SplitMix64 rng(77);
  const std::string alphabet = "findshotswhere=()\",\\ \n\tandor_xyzANDOR\x01\xc3\xa9";
  const std::vector<std::string> seeds = {
      R"(find shots where dancer="Anitha" and step="Samathristy")",
      R"(find scenes where (posture="a" or reflexion="b") and background="c")",
      R"(find shots where repeats(dancer="A", dancer="B", step="S"))",
      R"(find shots where spatial(dancer="a", relation="near", dancer="b") and meets(dancer="a", dancer="b"))",
  };
  std::size_t accepted = 0, rejected = 0;
  for (int i = 0; i < 20000; ++i) {
    std::string text;
    if (i % 2 == 0) {
      text = rng.pick(seeds);
      int edits = 1 + static_cast<int>(rng.below(4));
      for (int k = 0; k < edits && !text.empty(); ++k) {
        auto pos = rng.below(text.size());
        switch (rng.below(3)) {
          case 0: text.erase(pos, 1 + rng.below(3)); break;
          case 1: text.insert(pos, 1, alphabet[rng.below(alphabet.size())]); break;
          default: text[pos] = alphabet[rng.below(alphabet.size())]; break;
        }
      }
    } else {
      auto len = rng.below(40);
      for (std::uint64_t k = 0; k < len; ++k) text += static_cast<char>(rng.below(256));
    }
    try {
      auto q = parse_query(text);
      CHECK(parse_query(print_query(q)) == q);
      ++accepted;
    } catch (const QuerySyntaxError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
      CHECK_FALSE(e.expected().empty());
      ++rejected;
    }
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}
