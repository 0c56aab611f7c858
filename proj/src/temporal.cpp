#include "dvcm/temporal.hpp"

#include <stdexcept>

namespace dvcm {
namespace {

struct Performance {
  const Shot* shot;
  const StepOccurrence* occ;
};

void check_pair(const Corpus& c, const Id& d_i, const Id& d_j) {
  c.dancer(d_i);
  c.dancer(d_j);
  if (d_i == d_j) throw std::invalid_argument("relation needs two distinct dancers, got '" + d_i + "' twice");
}

// Shots of the scene where the dancer performs, in scene order, restricted to
// shots lying inside the scene interval.
std::vector<Performance> performances(const Corpus& c, const Scene& scene, const Id& dancer) {
  std::vector<Performance> out;
  for (const auto& shot_id : scene.shot_ids) {
    const Shot& shot = c.shot(shot_id);
    if (!is_subinterval(shot.life_span, scene.life_span)) continue;
    if (const auto* occ = shot.occurrence_of(dancer)) out.push_back({&shot, occ});
  }
  return out;
}

bool succession_holds(const Performance& a, const Performance& b, Succession mode) {
  if (a.shot == b.shot || a.occ->step_def_id != b.occ->step_def_id) return false;
  return mode == Succession::follows ? a.shot->life_span.end == b.shot->life_span.start
                                     : a.shot->life_span.end < b.shot->life_span.start;
}

std::string_view succession_name(Succession mode, bool sequence) {
  if (mode == Succession::follows) return sequence ? "follows_steps" : "follows";
  return sequence ? "repeats_steps" : "repeats";
}

bool nondegenerate(const TimeInterval& i) { return i.start < i.end; }

}  // namespace

std::string_view to_string(AllenRelation r) {
  switch (r) {
    case AllenRelation::before: return "before";
    case AllenRelation::meets: return "meets";
    case AllenRelation::overlaps: return "overlaps";
    case AllenRelation::starts: return "starts";
    case AllenRelation::during: return "during";
    case AllenRelation::finishes: return "finishes";
    case AllenRelation::equals: return "equals";
    case AllenRelation::after: return "after";
    case AllenRelation::met_by: return "met_by";
    case AllenRelation::overlapped_by: return "overlapped_by";
    case AllenRelation::started_by: return "started_by";
    case AllenRelation::contains: return "contains";
    case AllenRelation::finished_by: return "finished_by";
  }
  return "?";
}

std::optional<AllenRelation> parse_allen_relation(std::string_view text) {
  for (auto r : kAllAllenRelations) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

AllenRelation inverse(AllenRelation r) {
  switch (r) {
    case AllenRelation::before: return AllenRelation::after;
    case AllenRelation::meets: return AllenRelation::met_by;
    case AllenRelation::overlaps: return AllenRelation::overlapped_by;
    case AllenRelation::starts: return AllenRelation::started_by;
    case AllenRelation::during: return AllenRelation::contains;
    case AllenRelation::finishes: return AllenRelation::finished_by;
    case AllenRelation::equals: return AllenRelation::equals;
    case AllenRelation::after: return AllenRelation::before;
    case AllenRelation::met_by: return AllenRelation::meets;
    case AllenRelation::overlapped_by: return AllenRelation::overlaps;
    case AllenRelation::started_by: return AllenRelation::starts;
    case AllenRelation::contains: return AllenRelation::during;
    case AllenRelation::finished_by: return AllenRelation::finishes;
  }
  return r;
}

bool is_subinterval(const TimeInterval& inner, const TimeInterval& outer) {
  return outer.start <= inner.start && outer.end >= inner.end;
}

AllenRelation allen_relation(const TimeInterval& a, const TimeInterval& b) {
  if (!nondegenerate(a) || !nondegenerate(b)) {
    throw std::invalid_argument("interval relations need start < end");
  }
  if (a.end < b.start) return AllenRelation::before;
  if (a.end == b.start) return AllenRelation::meets;
  if (b.end < a.start) return AllenRelation::after;
  if (b.end == a.start) return AllenRelation::met_by;
  if (a.start == b.start) {
    if (a.end == b.end) return AllenRelation::equals;
    return a.end < b.end ? AllenRelation::starts : AllenRelation::started_by;
  }
  if (a.end == b.end) return a.start > b.start ? AllenRelation::finishes : AllenRelation::finished_by;
  if (a.start > b.start && a.end < b.end) return AllenRelation::during;
  if (a.start < b.start && a.end > b.end) return AllenRelation::contains;
  return a.start < b.start ? AllenRelation::overlaps : AllenRelation::overlapped_by;
}

std::string_view to_string(SemanticRelation r) {
  switch (r) {
    case SemanticRelation::follows: return "follows";
    case SemanticRelation::repeats: return "repeats";
    case SemanticRelation::follows_steps: return "follows_steps";
    case SemanticRelation::repeats_steps: return "repeats_steps";
    case SemanticRelation::performs_same: return "performs_same";
    case SemanticRelation::performs_different: return "performs_different";
    case SemanticRelation::performs_same_steps: return "performs_same_steps";
    case SemanticRelation::performs_different_steps: return "performs_different_steps";
    case SemanticRelation::observes: return "observes";
  }
  return "?";
}

std::optional<SemanticRelation> parse_semantic_relation(std::string_view text) {
  for (auto r : kAllSemanticRelations) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

std::string_view to_string(const TemporalKind& kind) {
  return std::visit([](auto r) { return to_string(r); }, kind);
}

std::optional<TemporalKind> parse_temporal_kind(std::string_view text) {
  if (auto s = parse_semantic_relation(text)) return TemporalKind{*s};
  if (auto a = parse_allen_relation(text)) return TemporalKind{*a};
  return std::nullopt;
}

std::string_view to_string(Togetherness t) {
  switch (t) {
    case Togetherness::same: return "same";
    case Togetherness::different: return "different";
    case Togetherness::none: return "none";
  }
  return "?";
}

std::vector<PairWitness> follows_or_repeats_step(const Corpus& c, const Id& scene_id,
                                                 const Id& d_i, const Id& d_j, Succession mode) {
  const Scene& scene = c.scene(scene_id);
  check_pair(c, d_i, d_j);
  auto first = performances(c, scene, d_i);
  auto second = performances(c, scene, d_j);
  std::vector<PairWitness> out;
  for (const auto& a : first) {
    for (const auto& b : second) {
      if (succession_holds(a, b, mode)) {
        out.push_back({a.shot->id, b.shot->id, a.occ->step_def_id,
                       std::string(succession_name(mode, false))});
      }
    }
  }
  return out;
}

SequenceMatch follows_or_repeats_sequence(const Corpus& c, const Id& scene_id, const Id& d_i,
                                          const Id& d_j, Succession mode) {
  const Scene& scene = c.scene(scene_id);
  check_pair(c, d_i, d_j);
  auto first = performances(c, scene, d_i);
  auto second = performances(c, scene, d_j);
  SequenceMatch match;
  if (first.empty() || first.size() != second.size()) return match;
  for (std::size_t k = 0; k < first.size(); ++k) {
    if (!succession_holds(first[k], second[k], mode)) {
      match.witnesses.clear();
      return match;
    }
    match.witnesses.push_back({first[k].shot->id, second[k].shot->id,
                               first[k].occ->step_def_id,
                               std::string(succession_name(mode, true))});
  }
  match.holds = true;
  return match;
}

Togetherness performs_together(const Corpus& c, const Id& shot_id, const Id& d_i, const Id& d_j) {
  const Shot& shot = c.shot(shot_id);
  check_pair(c, d_i, d_j);
  const auto* a = shot.occurrence_of(d_i);
  const auto* b = shot.occurrence_of(d_j);
  if (a == nullptr || b == nullptr) return Togetherness::none;
  return a->step_def_id == b->step_def_id ? Togetherness::same : Togetherness::different;
}

Togetherness performs_together_sequence(const Corpus& c, const Id& scene_id, const Id& d_i,
                                        const Id& d_j) {
  const Scene& scene = c.scene(scene_id);
  check_pair(c, d_i, d_j);
  std::optional<Togetherness> verdict;
  for (const auto& shot_id : scene.shot_ids) {
    if (!is_subinterval(c.shot(shot_id).life_span, scene.life_span)) continue;
    auto t = performs_together(c, shot_id, d_i, d_j);
    if (t == Togetherness::none) continue;
    if (verdict && *verdict != t) return Togetherness::none;
    verdict = t;
  }
  return verdict.value_or(Togetherness::none);
}

std::vector<Id> observes(const Corpus& c, const Id& scene_id, const Id& observer,
                         const Id& performer) {
  const Scene& scene = c.scene(scene_id);
  check_pair(c, observer, performer);
  std::vector<Id> out;
  for (const auto& shot_id : scene.shot_ids) {
    const Shot& shot = c.shot(shot_id);
    if (!is_subinterval(shot.life_span, scene.life_span)) continue;
    if (shot.dancer_ids.contains(observer) && shot.occurrence_of(observer) == nullptr &&
        shot.occurrence_of(performer) != nullptr) {
      out.push_back(shot_id);
    }
  }
  return out;
}

std::vector<PairWitness> relation_witnesses(const Corpus& c, const Id& scene_id,
                                            const TemporalKind& kind, const Id& d_i,
                                            const Id& d_j) {
  const Scene& scene = c.scene(scene_id);
  check_pair(c, d_i, d_j);
  std::vector<PairWitness> out;

  if (const auto* allen = std::get_if<AllenRelation>(&kind)) {
    auto first = performances(c, scene, d_i);
    auto second = performances(c, scene, d_j);
    for (const auto& a : first) {
      if (!nondegenerate(a.shot->life_span)) continue;
      for (const auto& b : second) {
        if (!nondegenerate(b.shot->life_span)) continue;
        if (allen_relation(a.shot->life_span, b.shot->life_span) == *allen) {
          out.push_back({a.shot->id, b.shot->id, a.occ->step_def_id, std::string(to_string(*allen))});
        }
      }
    }
    return out;
  }

  const auto rel = std::get<SemanticRelation>(kind);
  const std::string name(to_string(rel));
  switch (rel) {
    case SemanticRelation::follows:
      return follows_or_repeats_step(c, scene_id, d_i, d_j, Succession::follows);
    case SemanticRelation::repeats:
      return follows_or_repeats_step(c, scene_id, d_i, d_j, Succession::repeats);
    case SemanticRelation::follows_steps:
      return follows_or_repeats_sequence(c, scene_id, d_i, d_j, Succession::follows).witnesses;
    case SemanticRelation::repeats_steps:
      return follows_or_repeats_sequence(c, scene_id, d_i, d_j, Succession::repeats).witnesses;
    case SemanticRelation::performs_same:
    case SemanticRelation::performs_different: {
      auto wanted = rel == SemanticRelation::performs_same ? Togetherness::same : Togetherness::different;
      for (const auto& shot_id : scene.shot_ids) {
        const Shot& shot = c.shot(shot_id);
        if (!is_subinterval(shot.life_span, scene.life_span)) continue;
        if (performs_together(c, shot_id, d_i, d_j) == wanted) {
          out.push_back({shot_id, shot_id, shot.occurrence_of(d_i)->step_def_id, name});
        }
      }
      return out;
    }
    case SemanticRelation::performs_same_steps:
    case SemanticRelation::performs_different_steps: {
      auto wanted = rel == SemanticRelation::performs_same_steps ? Togetherness::same
                                                                 : Togetherness::different;
      if (performs_together_sequence(c, scene_id, d_i, d_j) != wanted) return out;
      for (const auto& shot_id : scene.shot_ids) {
        const Shot& shot = c.shot(shot_id);
        if (!is_subinterval(shot.life_span, scene.life_span)) continue;
        if (performs_together(c, shot_id, d_i, d_j) != Togetherness::none) {
          out.push_back({shot_id, shot_id, shot.occurrence_of(d_i)->step_def_id, name});
        }
      }
      return out;
    }
    case SemanticRelation::observes:
      for (const auto& shot_id : observes(c, scene_id, d_i, d_j)) {
        out.push_back({shot_id, shot_id, c.shot(shot_id).occurrence_of(d_j)->step_def_id, name});
      }
      return out;
  }
  return out;
}

}  // namespace dvcm
