#include <set>

#include "dvcm/harness.hpp"
#include "dvcm/query_language.hpp"

namespace dvcm {
namespace {

struct Vocabulary {
  std::vector<std::string> dancers, body_parts, postures, reflexions, instruments, backgrounds,
      costumes, songs, steps;

  const std::vector<std::string>& of(Facet f) const {
    switch (f) {
      case Facet::dancer: return dancers;
      case Facet::body_part: return body_parts;
      case Facet::posture: return postures;
      case Facet::reflexion: return reflexions;
      case Facet::instrument: return instruments;
      case Facet::background: return backgrounds;
      case Facet::costume: return costumes;
      case Facet::song: return songs;
    }
    return dancers;
  }
};

template <typename T>
void add_named(std::set<std::string>& out, const Catalog<T>& catalog) {
  for (const auto& [id, item] : catalog) {
    out.insert(id);
    out.insert(item.name);
  }
}

Vocabulary collect(const Corpus& c) {
  const auto& d = c.data();
  std::set<std::string> dancers, parts, postures, reflexions, instruments, backgrounds, costumes,
      songs, steps;
  add_named(dancers, d.dancers);
  add_named(instruments, d.instruments);
  add_named(backgrounds, d.backgrounds);
  add_named(costumes, d.costumes);
  add_named(songs, d.songs);
  add_named(steps, d.step_defs);
  for (const auto& [id, s] : d.step_defs) parts.insert(s.body_parts.begin(), s.body_parts.end());
  for (const auto& [id, shot] : d.shots) {
    for (const auto& o : shot.occurrences) {
      postures.insert(o.posture);
      reflexions.insert(o.reflexion);
    }
  }
  auto vec = [](std::set<std::string>& s) {
    s.insert("unlisted");
    return std::vector<std::string>(s.begin(), s.end());
  };
  return {vec(dancers),     vec(parts),       vec(postures), vec(reflexions), vec(instruments),
          vec(backgrounds), vec(costumes),    vec(songs),    vec(steps)};
}

class QueryMaker {
 public:
  QueryMaker(const Corpus& c, std::uint64_t seed) : v_(collect(c)), rng_(seed) {}

  QueryExpr expr(std::size_t depth) {
    if (depth == 0 || rng_.chance(0.3)) return atom();
    if (rng_.chance(0.5)) {
      if (rng_.chance(0.3)) return QueryExpr::all_of(dancer_atom(), paired_attribute());
      return QueryExpr::all_of(expr(depth - 1), expr(depth - 1));
    }
    return QueryExpr::any_of(expr(depth - 1), expr(depth - 1));
  }

  Granularity granularity() {
    static constexpr Granularity kAll[] = {Granularity::shot, Granularity::scene,
                                           Granularity::compound_scene};
    return kAll[rng_.below(3)];
  }

 private:
  std::string key(const std::vector<std::string>& pool) { return rng_.pick(pool); }

  QueryExpr dancer_atom() { return QueryAtom{FacetAtom{Facet::dancer, key(v_.dancers)}}; }

  QueryExpr paired_attribute() {
    switch (rng_.below(4)) {
      case 0: return QueryAtom{StepAtom{key(v_.steps)}};
      case 1: return QueryAtom{StepAtom{kAllStepClasses[rng_.below(5)]}};
      case 2: return QueryAtom{FacetAtom{Facet::posture, key(v_.postures)}};
      default: return QueryAtom{FacetAtom{Facet::reflexion, key(v_.reflexions)}};
    }
  }

  QueryExpr atom() {
    auto r = rng_.below(10);
    if (r < 5) {
      Facet f = kAllFacets[rng_.below(std::size(kAllFacets))];
      return QueryAtom{FacetAtom{f, key(v_.of(f))}};
    }
    if (r < 7) return paired_attribute();
    DancerPairAtom pair;
    pair.dancer = key(v_.dancers);
    pair.paired = static_cast<PairedAttribute>(rng_.below(4));
    switch (pair.paired) {
      case PairedAttribute::step_def: pair.key = key(v_.steps); break;
      case PairedAttribute::step_class: pair.key = std::string(to_string(kAllStepClasses[rng_.below(5)])); break;
      case PairedAttribute::posture: pair.key = key(v_.postures); break;
      case PairedAttribute::reflexion: pair.key = key(v_.reflexions); break;
    }
    return QueryAtom{pair};
  }

  Vocabulary v_;
  SplitMix64 rng_;
};

}  // namespace

std::vector<WorkloadQuery> random_queries(const Corpus& c, std::size_t n, std::uint64_t seed,
                                          std::size_t max_depth) {
  QueryMaker maker(c, seed);
  std::vector<WorkloadQuery> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Granularity vg = maker.granularity();
    ParsedQuery q{vg, maker.expr(max_depth), {}};
    auto text = print_query(q);
    out.push_back({std::move(q), std::move(text)});
  }
  return out;
}

}  // namespace dvcm
