#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dvcm/corpus_io.hpp"
#include "dvcm/harness.hpp"
#include "dvcm/model.hpp"
#include "dvcm/temporal.hpp"

namespace dvcm::testing {

inline Corpus f1() { return corpus_from_json(fixture_corpus_json("f1")); }

inline CorpusData f1_data() { return parse_corpus_json(fixture_corpus_json("f1")).data; }

/// Small generated corpus whose shot intervals are shrunk at random, so that
/// some consecutive shots leave gaps and a few collapse to a point.
inline Corpus temporal_corpus(std::uint64_t seed) {
  GenParams p;
  p.seed = seed;
  p.n_shots = 4 + seed % 17;
  p.n_dancers = 2 + seed % 3;
  p.n_step_defs = 3;
  p.shots_per_scene_range = {2, 6};
  CorpusData d = generate_corpus_data(p);
  SplitMix64 rng(seed ^ 0xabcdef);
  for (auto& [_, shot] : d.shots) {
    auto len = shot.life_span.end - shot.life_span.start;
    switch (rng.below(4)) {
      case 0: shot.life_span.end -= rng.between(1, len); break;
      case 1: shot.life_span.start += rng.between(0, len / 2); break;
      default: break;
    }
  }
  return Corpus(std::move(d));
}

/// One video, one song, one SA scene; dancers d1..d4 and CS steps s1..s9.
struct MiniCorpus {
  CorpusData d;

  explicit MiniCorpus(TimeInterval scene_span = {0, 1000}) {
    d.musicians["m1"] = {"m1", "Ilaiyaraaja", "", "", ""};
    d.songs["sg1"] = {"sg1", "Song", "", "m1"};
    d.backgrounds["bg1"] = {"bg1", "Temple", "", std::nullopt, ""};
    for (int i = 1; i <= 4; ++i) {
      Id id = "d" + std::to_string(i);
      d.dancers[id] = {id, "Dancer" + std::to_string(i), 20, "F"};
    }
    for (int i = 1; i <= 9; ++i) {
      Id id = "s" + std::to_string(i);
      d.step_defs[id] = {id, StepClass::CS, "Step" + std::to_string(i), "", {}};
    }
    d.videos["v1"] = {"v1", scene_span, Date{2020, 1, 1}, "", {"cs1"}};
    d.compound_scenes["cs1"] = {"cs1", "v1", "sg1", {"sc1"}, ""};
    d.scenes["sc1"] = {"sc1", "cs1", scene_span, SongComponent::SA, "bg1", {}, {}};
  }

  /// performers: (dancer, step) pairs; observers are present without a step.
  MiniCorpus& shot(const Id& id, TimeInterval span, std::vector<std::pair<Id, Id>> performers,
                   std::vector<Id> observers = {}) {
    Shot s{id, "sc1", span, {}, {}, {}, ""};
    for (const auto& [dancer, step] : performers) {
      s.dancer_ids.insert(dancer);
      s.occurrences.push_back({id + "_" + dancer, id, dancer, step, "front", "happy", std::nullopt});
    }
    for (const auto& o : observers) s.dancer_ids.insert(o);
    d.shots[id] = s;
    d.scenes["sc1"].shot_ids.push_back(id);
    return *this;
  }

  MiniCorpus& triplet(const Id& shot, const Id& a, SpatialRelation r, const Id& b) {
    d.shots[shot].spatial_triplets.push_back({a, b, r});
    return *this;
  }

  Corpus build() const { return Corpus(d); }
};

/// Allen relation from the definitional endpoint conditions, checked one by one.
inline std::vector<AllenRelation> allen_oracle(const TimeInterval& a, const TimeInterval& b) {
  auto [as, ae] = a;
  auto [bs, be] = b;
  std::vector<AllenRelation> out;
  auto add = [&](bool cond, AllenRelation r) {
    if (cond) out.push_back(r);
  };
  using enum AllenRelation;
  add(ae < bs, before);
  add(ae == bs, meets);
  add(as < bs && bs < ae && ae < be, overlaps);
  add(as == bs && ae < be, starts);
  add(bs < as && ae < be, during);
  add(bs < as && ae == be, finishes);
  add(as == bs && ae == be, equals);
  add(be < as, after);
  add(be == as, met_by);
  add(bs < as && as < be && be < ae, overlapped_by);
  add(as == bs && be < ae, started_by);
  add(as < bs && be < ae, contains);
  add(as < bs && ae == be, finished_by);
  return out;
}

struct Perf {
  Id shot;
  Id step;
  TimeInterval span;
};

/// Shots of the scene in listed order where the dancer has an occurrence.
inline std::vector<Perf> performing(const Corpus& c, const Scene& sc, const Id& d) {
  std::vector<Perf> out;
  for (const auto& id : sc.shot_ids) {
    const Shot& s = c.shot(id);
    bool inside = sc.life_span.start <= s.life_span.start && s.life_span.end <= sc.life_span.end;
    for (const auto& o : s.occurrences) {
      if (o.dancer_id == d && inside) out.push_back({id, o.step_def_id, s.life_span});
    }
  }
  return out;
}

inline std::optional<Id> step_in(const Shot& s, const Id& d) {
  for (const auto& o : s.occurrences) {
    if (o.dancer_id == d) return o.step_def_id;
  }
  return std::nullopt;
}

/// Witness set of a relation, recomputed from the raw definition conditions.
inline std::vector<PairWitness> temporal_oracle(const Corpus& c, const Id& scene_id,
                                                const TemporalKind& kind, const Id& di, const Id& dj) {
  const Scene& sc = c.scene(scene_id);
  std::vector<PairWitness> out;
  std::string name(to_string(kind));
  auto A = performing(c, sc, di);
  auto B = performing(c, sc, dj);

  if (const auto* r = std::get_if<AllenRelation>(&kind)) {
    for (const auto& a : A) {
      for (const auto& b : B) {
        if (a.span.start >= a.span.end || b.span.start >= b.span.end) continue;
        auto holds = allen_oracle(a.span, b.span);
        if (holds.size() == 1 && holds[0] == *r) out.push_back({a.shot, b.shot, a.step, name});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  auto pair_ok = [](const Perf& a, const Perf& b, bool follows) {
    if (a.shot == b.shot || a.step != b.step) return false;
    return follows ? a.span.end == b.span.start : a.span.end < b.span.start;
  };
  using enum SemanticRelation;
  switch (std::get<SemanticRelation>(kind)) {
    case follows:
    case repeats: {
      bool f = std::get<SemanticRelation>(kind) == follows;
      for (const auto& a : A) {
        for (const auto& b : B) {
          if (pair_ok(a, b, f)) out.push_back({a.shot, b.shot, a.step, name});
        }
      }
      break;
    }
    case follows_steps:
    case repeats_steps: {
      bool f = std::get<SemanticRelation>(kind) == follows_steps;
      if (A.empty() || A.size() != B.size()) break;
      for (std::size_t k = 0; k < A.size(); ++k) {
        if (!pair_ok(A[k], B[k], f)) return {};
        out.push_back({A[k].shot, B[k].shot, A[k].step, name});
      }
      break;
    }
    case performs_same:
    case performs_different: {
      bool same = std::get<SemanticRelation>(kind) == performs_same;
      for (const auto& a : A) {
        for (const auto& b : B) {
          if (a.shot == b.shot && (a.step == b.step) == same) out.push_back({a.shot, a.shot, a.step, name});
        }
      }
      break;
    }
    case performs_same_steps:
    case performs_different_steps: {
      bool same = std::get<SemanticRelation>(kind) == performs_same_steps;
      std::vector<PairWitness> shared;
      bool all = true;
      for (const auto& a : A) {
        for (const auto& b : B) {
          if (a.shot != b.shot) continue;
          all = all && (a.step == b.step) == same;
          shared.push_back({a.shot, a.shot, a.step, name});
        }
      }
      if (all) out = shared;
      break;
    }
    case observes: {
      for (const auto& id : sc.shot_ids) {
        const Shot& s = c.shot(id);
        bool inside = sc.life_span.start <= s.life_span.start && s.life_span.end <= sc.life_span.end;
        auto performed = step_in(s, dj);
        if (inside && s.dancer_ids.contains(di) && !step_in(s, di) && performed) {
          out.push_back({id, id, *performed, name});
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Checks one witness against the definition of its relation, pair by pair.
inline bool witness_valid(const Corpus& c, const Id& scene_id, const TemporalKind& kind, const Id& di,
                          const Id& dj, const PairWitness& w) {
  const Scene& sc = c.scene(scene_id);
  auto listed = [&](const Id& id) {
    return std::find(sc.shot_ids.begin(), sc.shot_ids.end(), id) != sc.shot_ids.end();
  };
  if (w.relation_kind != to_string(kind) || !listed(w.shot_i) || !listed(w.shot_j)) return false;
  const Shot& a = c.shot(w.shot_i);
  const Shot& b = c.shot(w.shot_j);
  auto sa = step_in(a, di);
  auto sb = step_in(b, dj);
  if (const auto* r = std::get_if<AllenRelation>(&kind)) {
    auto holds = allen_oracle(a.life_span, b.life_span);
    return sa && sb && *sa == w.step_def_id && a.life_span.start < a.life_span.end &&
           b.life_span.start < b.life_span.end && holds.size() == 1 && holds[0] == *r;
  }
  using enum SemanticRelation;
  switch (std::get<SemanticRelation>(kind)) {
    case follows:
    case follows_steps:
      return sa && sb && *sa == *sb && *sa == w.step_def_id && w.shot_i != w.shot_j &&
             a.life_span.end == b.life_span.start;
    case repeats:
    case repeats_steps:
      return sa && sb && *sa == *sb && *sa == w.step_def_id && w.shot_i != w.shot_j &&
             a.life_span.end < b.life_span.start;
    case performs_same:
    case performs_same_steps:
      return w.shot_i == w.shot_j && sa && sb && *sa == *sb && *sa == w.step_def_id;
    case performs_different:
    case performs_different_steps:
      return w.shot_i == w.shot_j && sa && sb && *sa != *sb && *sa == w.step_def_id;
    case observes:
      return w.shot_i == w.shot_j && a.dancer_ids.contains(di) && !sa && sb && *sb == w.step_def_id;
  }
  return false;
}

inline std::vector<TemporalKind> all_temporal_kinds() {
  std::vector<TemporalKind> out;
  for (auto r : kAllSemanticRelations) out.emplace_back(r);
  for (auto r : kAllAllenRelations) out.emplace_back(r);
  return out;
}

/// Runs every relation operation for every scene and ordered dancer pair of
/// `c` against the oracle. Returns one line per disagreement or invalid
/// witness; `checked` counts comparisons made.
inline std::vector<std::string> temporal_disagreements(const Corpus& c, std::size_t& checked) {
  std::vector<std::string> bad;
  auto sorted = [](std::vector<PairWitness> w) {
    std::sort(w.begin(), w.end());
    return w;
  };
  auto expect = [&](bool ok, const Id& scene, std::string_view what, const Id& di, const Id& dj) {
    ++checked;
    if (!ok) bad.push_back(scene + " " + std::string(what) + " " + di + " " + dj);
  };
  const auto kinds = all_temporal_kinds();
  for (const auto& [scene, _] : c.data().scenes) {
    for (const auto& [di, _a] : c.data().dancers) {
      for (const auto& [dj, _b] : c.data().dancers) {
        if (di == dj) continue;
        for (const auto& kind : kinds) {
          auto got = sorted(relation_witnesses(c, scene, kind, di, dj));
          expect(got == temporal_oracle(c, scene, kind, di, dj), scene, to_string(kind), di, dj);
          for (const auto& w : got) {
            expect(witness_valid(c, scene, kind, di, dj, w), scene, "witness " + w.shot_i + "/" + w.shot_j, di, dj);
          }
        }
        for (auto mode : {Succession::follows, Succession::repeats}) {
          bool f = mode == Succession::follows;
          auto single = sorted(follows_or_repeats_step(c, scene, di, dj, mode));
          auto want = temporal_oracle(c, scene, f ? SemanticRelation::follows : SemanticRelation::repeats, di, dj);
          expect(single == want, scene, f ? "follows_or_repeats_step/follows" : "follows_or_repeats_step/repeats", di,
                 dj);
          auto seq = follows_or_repeats_sequence(c, scene, di, dj, mode);
          auto want_seq =
              temporal_oracle(c, scene, f ? SemanticRelation::follows_steps : SemanticRelation::repeats_steps, di, dj);
          expect(seq.holds == !want_seq.empty() && sorted(seq.witnesses) == want_seq, scene,
                 "follows_or_repeats_sequence", di, dj);
        }
        auto same = temporal_oracle(c, scene, SemanticRelation::performs_same_steps, di, dj);
        auto diff = temporal_oracle(c, scene, SemanticRelation::performs_different_steps, di, dj);
        auto verdict = !same.empty() ? Togetherness::same : !diff.empty() ? Togetherness::different : Togetherness::none;
        expect(performs_together_sequence(c, scene, di, dj) == verdict, scene, "performs_together_sequence", di, dj);
        for (const auto& shot_id : c.scene(scene).shot_ids) {
          const Shot& s = c.shot(shot_id);
          auto a = step_in(s, di);
          auto b = step_in(s, dj);
          auto v = !a || !b ? Togetherness::none : *a == *b ? Togetherness::same : Togetherness::different;
          expect(performs_together(c, shot_id, di, dj) == v, shot_id, "performs_together", di, dj);
        }
        std::vector<Id> watched;
        for (const auto& w : temporal_oracle(c, scene, SemanticRelation::observes, di, dj)) watched.push_back(w.shot_i);
        auto got_watched = observes(c, scene, di, dj);
        std::sort(got_watched.begin(), got_watched.end());
        expect(got_watched == watched, scene, "observes", di, dj);
      }
    }
  }
  return bad;
}

}  // namespace dvcm::testing
