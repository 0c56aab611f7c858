#include "dvcm/query_engine.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace dvcm {
namespace {

using IdList = std::vector<Id>;
using IdSet = std::set<Id>;

IdList intersect(const IdList& a, const IdList& b) {
  IdList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void sort_unique(IdList& ids) {
  if (!std::is_sorted(ids.begin(), ids.end())) std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

std::string require_key(std::string_view raw, bool body_part = false) {
  auto key = body_part ? normalize_body_part(raw) : normalize_term(raw);
  if (key.empty()) throw QueryError("query atom has an empty key");
  return key;
}

// Entities whose id or name normalizes to the key.
template <typename T>
IdSet resolve_named(const Catalog<T>& catalog, const std::string& key) {
  IdSet out;
  for (const auto& [id, entity] : catalog) {
    if (normalize_term(id) == key || normalize_term(entity.name) == key) out.insert(id);
  }
  return out;
}

IdSet resolve_step_key(const Corpus& c, const std::string& key) {
  return resolve_named(c.data().step_defs, key);
}

IdSet resolve_step_class(const Corpus& c, StepClass cls) {
  IdSet out;
  for (const auto& [id, def] : c.data().step_defs) {
    if (def.step_class == cls) out.insert(id);
  }
  return out;
}

StepClass require_step_class(const std::string& key) {
  auto cls = parse_step_class(key);
  if (!cls) throw QueryError("unknown step class '" + key + "'");
  return *cls;
}

IdSet resolve_step_target(const Corpus& c, const StepAtom& atom) {
  if (const auto* cls = std::get_if<StepClass>(&atom.target)) return resolve_step_class(c, *cls);
  return resolve_step_key(c, require_key(std::get<std::string>(atom.target)));
}

IdSet resolve_paired_steps(const Corpus& c, const DancerPairAtom& atom) {
  if (atom.paired == PairedAttribute::step_class) {
    return resolve_step_class(c, require_step_class(require_key(atom.key)));
  }
  return resolve_step_key(c, require_key(atom.key));
}

IdSet resolve_songs_scenes(const Corpus& c, const std::string& key) {
  IdSet songs = resolve_named(c.data().songs, key);
  IdSet scenes;
  for (const auto& [_, cs] : c.data().compound_scenes) {
    if (songs.contains(cs.song_id)) scenes.insert(cs.scene_ids.begin(), cs.scene_ids.end());
  }
  return scenes;
}

std::set<std::string> expand_set(const SynonymTable& syn, const std::string& key) {
  auto terms = syn.expand(key);
  return {terms.begin(), terms.end()};
}

using Ords = std::vector<Ordinal>;

Ords intersect(const Ords& a, const Ords& b) {
  Ords out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Ords unite(const Ords& a, const Ords& b) {
  Ords out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void sort_unique(Ords& ords) {
  if (!std::is_sorted(ords.begin(), ords.end())) std::sort(ords.begin(), ords.end());
  ords.erase(std::unique(ords.begin(), ords.end()), ords.end());
}

// Both engines evaluate to ascending shot ordinals.
template <typename Engine>
Ords evaluate(const Engine& engine, const QueryExpr& e) {
  switch (e.op()) {
    case QueryExpr::Op::atom: return std::visit([&](const auto& a) { return engine.atom(a); }, e.atom());
    case QueryExpr::Op::all_of: return intersect(evaluate(engine, e.left()), evaluate(engine, e.right()));
    case QueryExpr::Op::any_of: return unite(evaluate(engine, e.left()), evaluate(engine, e.right()));
  }
  return {};
}

// ---------------------------------------------------------------------------
// Sequential scan: walk every shot record and test the atom against it.

class ScanEngine {
 public:
  ScanEngine(const Corpus& c, const SynonymTable& syn) : c_(c), syn_(syn) {}

  Ords atom(const FacetAtom& a) const {
    const auto& d = c_.data();
    switch (a.facet) {
      case Facet::dancer: {
        auto dancers = resolve_named(d.dancers, require_key(a.key));
        return shots_with_occurrence(
            [&](const StepOccurrence& o) { return dancers.contains(o.dancer_id); });
      }
      case Facet::body_part: {
        auto key = require_key(a.key, true);
        IdSet steps;
        for (const auto& [id, def] : d.step_defs) {
          for (const auto& part : def.body_parts) {
            if (normalize_body_part(part) == key) steps.insert(id);
          }
        }
        return shots_with_occurrence(
            [&](const StepOccurrence& o) { return steps.contains(o.step_def_id); });
      }
      case Facet::posture: {
        auto key = require_key(a.key);
        return shots_with_occurrence(
            [&](const StepOccurrence& o) { return normalize_term(o.posture) == key; });
      }
      case Facet::reflexion: {
        auto terms = expand_set(syn_, require_key(a.key));
        return shots_with_occurrence(
            [&](const StepOccurrence& o) { return terms.contains(normalize_term(o.reflexion)); });
      }
      case Facet::instrument: {
        auto instruments = resolve_named(d.instruments, require_key(a.key));
        return shots_with_occurrence([&](const StepOccurrence& o) {
          return o.instrument_id && instruments.contains(*o.instrument_id);
        });
      }
      case Facet::background: {
        auto backgrounds = resolve_named(d.backgrounds, require_key(a.key));
        return shots_where([&](const Shot& s) {
          return backgrounds.contains(c_.scene(s.scene_id).background_id);
        });
      }
      case Facet::costume: {
        auto costumes = resolve_named(d.costumes, require_key(a.key));
        return shots_where([&](const Shot& s) {
          for (const auto& [_, worn] : c_.scene(s.scene_id).costume_map) {
            for (const auto& co : worn) {
              if (costumes.contains(co)) return true;
            }
          }
          return false;
        });
      }
      case Facet::song: {
        auto songs = resolve_named(d.songs, require_key(a.key));
        return shots_where([&](const Shot& s) {
          const auto& cs = c_.compound_scene(c_.scene(s.scene_id).compound_scene_id);
          return songs.contains(cs.song_id);
        });
      }
    }
    return {};
  }

  Ords atom(const StepAtom& a) const {
    auto steps = resolve_step_target(c_, a);
    return shots_with_occurrence(
        [&](const StepOccurrence& o) { return steps.contains(o.step_def_id); });
  }

  Ords atom(const DancerPairAtom& a) const {
    auto dancers = resolve_named(c_.data().dancers, require_key(a.dancer));
    switch (a.paired) {
      case PairedAttribute::step_def:
      case PairedAttribute::step_class: {
        auto steps = resolve_paired_steps(c_, a);
        return shots_with_occurrence([&](const StepOccurrence& o) {
          return dancers.contains(o.dancer_id) && steps.contains(o.step_def_id);
        });
      }
      case PairedAttribute::posture: {
        auto key = require_key(a.key);
        return shots_with_occurrence([&](const StepOccurrence& o) {
          return dancers.contains(o.dancer_id) && normalize_term(o.posture) == key;
        });
      }
      case PairedAttribute::reflexion: {
        auto terms = expand_set(syn_, require_key(a.key));
        return shots_with_occurrence([&](const StepOccurrence& o) {
          return dancers.contains(o.dancer_id) && terms.contains(normalize_term(o.reflexion));
        });
      }
    }
    return {};
  }

 private:
  // Shot records are stored in ID order, so the running position is the ordinal.
  template <typename Pred>
  Ords shots_where(Pred pred) const {
    Ords out;
    Ordinal position = 0;
    for (const auto& [id, shot] : c_.data().shots) {
      if (pred(shot)) out.push_back(position);
      ++position;
    }
    return out;
  }

  template <typename Pred>
  Ords shots_with_occurrence(Pred pred) const {
    return shots_where([&](const Shot& shot) {
      return std::any_of(shot.occurrences.begin(), shot.occurrences.end(), pred);
    });
  }

  const Corpus& c_;
  const SynonymTable& syn_;
};

// ---------------------------------------------------------------------------
// Indexed: facet file -> occurrence IDs -> ST_IF -> shot IDs, all on ordinals.

class IndexEngine {
 public:
  IndexEngine(const Corpus& c, const IndexSet& ix) : c_(c), o_(c.ordinals()), ix_(ix) {}

  Ords atom(const FacetAtom& a) const {
    switch (a.facet) {
      case Facet::dancer: return occurrence_shots(file_lookup(IndexKind::DA_IF, a.key));
      case Facet::body_part: return occurrence_shots(file_lookup(IndexKind::AG_IF, a.key));
      case Facet::posture: return occurrence_shots(file_lookup(IndexKind::PO_IF, a.key));
      case Facet::reflexion: return occurrence_shots(file_lookup(IndexKind::RX_IF, a.key));
      case Facet::instrument: return occurrence_shots(file_lookup(IndexKind::IN_IF, a.key));
      case Facet::background: return scene_shots(file_lookup(IndexKind::BG_IF, a.key));
      case Facet::costume: return scene_shots(file_lookup(IndexKind::CO_IF, a.key));
      case Facet::song: {
        Ords scenes;
        for (const auto& id : resolve_songs_scenes(c_, require_key(a.key))) {
          scenes.push_back(o_.scene_index.at(id));
        }
        return scene_shots(scenes);
      }
    }
    return {};
  }

  Ords atom(const StepAtom& a) const {
    return occurrence_shots(step_occurrences(resolve_step_target(c_, a)));
  }

  Ords atom(const DancerPairAtom& a) const {
    Ords dancer_occs = file_lookup(IndexKind::DA_IF, a.dancer);
    Ords paired;
    switch (a.paired) {
      case PairedAttribute::step_def:
      case PairedAttribute::step_class:
        paired = step_occurrences(resolve_paired_steps(c_, a));
        break;
      case PairedAttribute::posture:
        paired = file_lookup(IndexKind::PO_IF, a.key);
        break;
      case PairedAttribute::reflexion:
        paired = file_lookup(IndexKind::RX_IF, a.key);
        break;
    }
    // Occurrence-level intersection binds dancer and attribute to one performance.
    return occurrence_shots(intersect(dancer_occs, paired));
  }

 private:
  Ords occurrence_shots(const Ords& occs) const {
    auto st = ix_.occurrence_shots();
    Ords shots;
    shots.reserve(occs.size());
    for (Ordinal occ : occs) shots.push_back(st[occ]);
    sort_unique(shots);
    return shots;
  }

  Ords scene_shots(const Ords& scenes) const {
    Ords shots;
    for (Ordinal scene : scenes) {
      const auto& ords = o_.scene_shots[scene];
      shots.insert(shots.end(), ords.begin(), ords.end());
    }
    sort_unique(shots);
    return shots;
  }

  Ords step_occurrences(const IdSet& steps) const {
    Ords occs;
    for (const auto& step : steps) {
      if (auto it = o_.step_occurrences.find(step); it != o_.step_occurrences.end()) {
        occs.insert(occs.end(), it->second.begin(), it->second.end());
      }
    }
    sort_unique(occs);
    return occs;
  }

  Ords file_lookup(IndexKind kind, const std::string& raw_key) const {
    auto key = require_key(raw_key, kind == IndexKind::AG_IF);
    if (kind != IndexKind::RX_IF) {
      auto hit = ix_.postings(kind, key);
      return {hit.begin(), hit.end()};
    }
    Ords out;
    for (const auto& term : ix_.synonyms().expand(key)) {
      auto hit = ix_.postings(kind, term);
      out.insert(out.end(), hit.begin(), hit.end());
    }
    sort_unique(out);
    return out;
  }

  const Corpus& c_;
  const CorpusOrdinals& o_;
  const IndexSet& ix_;
};

std::optional<QueryAtom> pair_atoms(const QueryAtom& a, const QueryAtom& b) {
  const auto* dancer = std::get_if<FacetAtom>(&a);
  if (dancer == nullptr || dancer->facet != Facet::dancer) return std::nullopt;
  if (const auto* step = std::get_if<StepAtom>(&b)) {
    if (const auto* cls = std::get_if<StepClass>(&step->target)) {
      return DancerPairAtom{dancer->key, PairedAttribute::step_class, std::string(to_string(*cls))};
    }
    return DancerPairAtom{dancer->key, PairedAttribute::step_def, std::get<std::string>(step->target)};
  }
  if (const auto* facet = std::get_if<FacetAtom>(&b)) {
    if (facet->facet == Facet::posture) {
      return DancerPairAtom{dancer->key, PairedAttribute::posture, facet->key};
    }
    if (facet->facet == Facet::reflexion) {
      return DancerPairAtom{dancer->key, PairedAttribute::reflexion, facet->key};
    }
  }
  return std::nullopt;
}

Id resolve_single_dancer(const Corpus& c, const std::string& raw) {
  auto matches = resolve_named(c.data().dancers, require_key(raw));
  if (matches.empty()) throw UnknownIdError("dancer", raw);
  if (matches.size() > 1) throw QueryError("dancer key '" + raw + "' is ambiguous");
  return *matches.begin();
}

IdList temporal_shots(const Corpus& c, const TemporalQuery& q) {
  Id a = resolve_single_dancer(c, q.dancer_a);
  Id b = resolve_single_dancer(c, q.dancer_b);
  if (a == b) throw QueryError("temporal relation needs two distinct dancers");
  std::optional<IdSet> steps;
  if (q.step) {
    steps = resolve_step_key(c, require_key(*q.step));
    if (steps->empty()) throw UnknownIdError("step", *q.step);
  }
  IdList shots;
  for (const auto& [scene_id, _] : c.data().scenes) {
    for (const auto& w : relation_witnesses(c, scene_id, q.kind, a, b)) {
      if (steps && !steps->contains(w.step_def_id)) continue;
      shots.push_back(w.shot_i);
      shots.push_back(w.shot_j);
    }
  }
  sort_unique(shots);
  return shots;
}

IdList spatial_shots(const Corpus& c, const SpatialQuery& q) {
  Id a = resolve_single_dancer(c, q.dancer_a);
  Id b = resolve_single_dancer(c, q.dancer_b);
  IdList shots;
  for (const auto& [id, shot] : c.data().shots) {
    bool stored = std::any_of(shot.spatial_triplets.begin(), shot.spatial_triplets.end(),
                              [&](const SpatialTriplet& t) {
                                return t.dancer1 == a && t.dancer2 == b && t.relation == q.relation;
                              });
    if (!stored) continue;
    if (q.require_performing && (shot.occurrence_of(a) == nullptr || shot.occurrence_of(b) == nullptr)) {
      continue;
    }
    shots.push_back(id);
  }
  return shots;
}

ResultSet lifted(const Corpus& c, const IdList& shots, Granularity vg) {
  return ResultSet{vg, lift_granularity(c, shots, vg)};
}

ResultSet lifted(const Corpus& c, Ords shots, Granularity vg) {
  const auto& o = c.ordinals();
  const std::vector<Id>* names = &o.shots;
  if (vg != Granularity::shot) {
    for (auto& ord : shots) {
      ord = o.shot_scene[ord];
      if (vg == Granularity::compound_scene) ord = o.scene_compound[ord];
    }
    sort_unique(shots);
    names = vg == Granularity::scene ? &o.scenes : &o.compound_scenes;
  }
  ResultSet out{vg, {}};
  out.ids.reserve(shots.size());
  for (Ordinal ord : shots) out.ids.push_back((*names)[ord]);
  return out;
}

}  // namespace

const SynonymTable& default_synonyms() {
  static const SynonymTable table = SynonymTable::defaults();
  return table;
}

QueryExpr bind_dancer_pairs(const QueryExpr& expr) {
  switch (expr.op()) {
    case QueryExpr::Op::atom:
      return expr;
    case QueryExpr::Op::any_of:
      return QueryExpr::any_of(bind_dancer_pairs(expr.left()), bind_dancer_pairs(expr.right()));
    case QueryExpr::Op::all_of:
      if (expr.left().op() == QueryExpr::Op::atom && expr.right().op() == QueryExpr::Op::atom) {
        const auto& l = expr.left().atom();
        const auto& r = expr.right().atom();
        if (auto bound = pair_atoms(l, r)) return *bound;
        if (auto bound = pair_atoms(r, l)) return *bound;
        return expr;
      }
      return QueryExpr::all_of(bind_dancer_pairs(expr.left()), bind_dancer_pairs(expr.right()));
  }
  return expr;
}

ResultSet exec_containment_seq(const Corpus& c, const QueryExpr& q, Granularity vg,
                               const SynonymTable& synonyms) {
  return lifted(c, evaluate(ScanEngine(c, synonyms), bind_dancer_pairs(q)), vg);
}

ResultSet exec_containment_indexed(const Corpus& c, const IndexSet& ix, const QueryExpr& q,
                                   Granularity vg) {
  ix.check_matches(c);
  return lifted(c, evaluate(IndexEngine(c, ix), bind_dancer_pairs(q)), vg);
}

ResultSet exec_temporal(const Corpus& c, const TemporalQuery& q, Granularity vg) {
  return lifted(c, temporal_shots(c, q), vg);
}

ResultSet exec_spatial(const Corpus& c, const SpatialQuery& q, Granularity vg) {
  return lifted(c, spatial_shots(c, q), vg);
}

ResultSet exec_spatiotemporal(const Corpus& c, const SpatiotemporalQuery& q, Granularity vg) {
  return lifted(c, intersect(temporal_shots(c, q.temporal), spatial_shots(c, q.spatial)), vg);
}

ResultSet execute(const Corpus& c, const ParsedQuery& q, const IndexSet* ix,
                  const SynonymTable& synonyms) {
  return std::visit(
      [&](const auto& body) -> ResultSet {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, QueryExpr>) {
          return ix != nullptr ? exec_containment_indexed(c, *ix, body, q.vg)
                               : exec_containment_seq(c, body, q.vg, synonyms);
        } else if constexpr (std::is_same_v<T, TemporalQuery>) {
          return exec_temporal(c, body, q.vg);
        } else if constexpr (std::is_same_v<T, SpatialQuery>) {
          return exec_spatial(c, body, q.vg);
        } else {
          return exec_spatiotemporal(c, body, q.vg);
        }
      },
      q.body);
}

}  // namespace dvcm
