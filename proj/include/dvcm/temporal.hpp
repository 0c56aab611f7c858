#pragma once

// Interval algebra and the dancer-level temporal semantic relations.
//
// All dancer relations are scoped to one scene. Argument order is
// (d_i, d_j) where d_i is the dancer who acts first: follows(d_i, d_j) holds
// when d_j follows a step of d_i. For observes the order is
// (observer, performer).

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dvcm/model.hpp"

namespace dvcm {

enum class AllenRelation {
  before,
  meets,
  overlaps,
  starts,
  during,
  finishes,
  equals,
  after,
  met_by,
  overlapped_by,
  started_by,
  contains,
  finished_by,
};

inline constexpr AllenRelation kAllAllenRelations[] = {
    AllenRelation::before,        AllenRelation::meets,      AllenRelation::overlaps,
    AllenRelation::starts,        AllenRelation::during,     AllenRelation::finishes,
    AllenRelation::equals,        AllenRelation::after,      AllenRelation::met_by,
    AllenRelation::overlapped_by, AllenRelation::started_by, AllenRelation::contains,
    AllenRelation::finished_by,
};

std::string_view to_string(AllenRelation r);
std::optional<AllenRelation> parse_allen_relation(std::string_view text);
AllenRelation inverse(AllenRelation r);

/// inner.start >= outer.start and inner.end <= outer.end. Reflexive.
bool is_subinterval(const TimeInterval& inner, const TimeInterval& outer);

/// Throws std::invalid_argument unless both intervals have start < end.
AllenRelation allen_relation(const TimeInterval& a, const TimeInterval& b);

enum class SemanticRelation {
  follows,
  repeats,
  follows_steps,
  repeats_steps,
  performs_same,
  performs_different,
  performs_same_steps,
  performs_different_steps,
  observes,
};

inline constexpr SemanticRelation kAllSemanticRelations[] = {
    SemanticRelation::follows,
    SemanticRelation::repeats,
    SemanticRelation::follows_steps,
    SemanticRelation::repeats_steps,
    SemanticRelation::performs_same,
    SemanticRelation::performs_different,
    SemanticRelation::performs_same_steps,
    SemanticRelation::performs_different_steps,
    SemanticRelation::observes,
};

std::string_view to_string(SemanticRelation r);
std::optional<SemanticRelation> parse_semantic_relation(std::string_view text);

using TemporalKind = std::variant<SemanticRelation, AllenRelation>;

std::string_view to_string(const TemporalKind& kind);
std::optional<TemporalKind> parse_temporal_kind(std::string_view text);

/// Evidence for a relation between two dancers. For single-shot relations
/// shot_i == shot_j. step_def_id is the step d_i performs in shot_i, except
/// for observes where it is the performer's step.
struct PairWitness {
  Id shot_i;
  Id shot_j;
  Id step_def_id;
  std::string relation_kind;

  bool operator==(const PairWitness&) const = default;
  auto operator<=>(const PairWitness&) const = default;
};

enum class Succession { follows, repeats };

/// d_j performs the same step definition as d_i in a later shot of the scene,
/// starting exactly when d_i's shot ends (follows) or strictly after (repeats).
std::vector<PairWitness> follows_or_repeats_step(const Corpus& c, const Id& scene_id,
                                                 const Id& d_i, const Id& d_j, Succession mode);

struct SequenceMatch {
  bool holds = false;
  std::vector<PairWitness> witnesses;
};

/// Pairs the k-th performance shot of d_i with the k-th of d_j (scene order);
/// holds when both dancers perform equally often (at least once) and every
/// pair satisfies the single-step condition for `mode`.
SequenceMatch follows_or_repeats_sequence(const Corpus& c, const Id& scene_id, const Id& d_i,
                                          const Id& d_j, Succession mode);

enum class Togetherness { same, different, none };

std::string_view to_string(Togetherness t);

Togetherness performs_together(const Corpus& c, const Id& shot_id, const Id& d_i, const Id& d_j);

/// Over the scene's shots where both dancers perform: same (or different) if
/// that holds in every such shot; none if there are none or the shots disagree.
Togetherness performs_together_sequence(const Corpus& c, const Id& scene_id, const Id& d_i,
                                        const Id& d_j);

/// Shots of the scene where the observer is present without an occurrence
/// while the performer has one. In scene order.
std::vector<Id> observes(const Corpus& c, const Id& scene_id, const Id& observer,
                         const Id& performer);

/// Witnesses of any relation within one scene. Allen kinds compare the shot
/// intervals in which each dancer performs; degenerate shots are skipped.
std::vector<PairWitness> relation_witnesses(const Corpus& c, const Id& scene_id,
                                            const TemporalKind& kind, const Id& d_i,
                                            const Id& d_j);

}  // namespace dvcm
