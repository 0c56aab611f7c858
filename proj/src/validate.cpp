#include <algorithm>
#include <map>
#include <set>

#include "dvcm/model.hpp"
#include "dvcm/normalize.hpp"
#include "dvcm/song_grammar.hpp"

namespace dvcm {
namespace {

const std::set<std::string> kPeythamParts = {"head", "eye",  "eyebrow", "nose",
                                             "lips", "neck", "chest",   "sides"};

std::string describe(const TimeInterval& i) {
  return "[" + std::to_string(i.start) + ", " + std::to_string(i.end) + "]";
}

bool within(const TimeInterval& inner, const TimeInterval& outer) {
  return outer.start <= inner.start && outer.end >= inner.end;
}

class Checker {
 public:
  explicit Checker(const CorpusData& data) : d_(data) {}

  std::vector<Violation> run() {
    check_intervals();
    check_catalog_refs();
    check_hierarchy();
    check_shots();
    check_scenes();
    check_compound_scenes();
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  void add(std::string rule, const Id& id, std::string detail) {
    out_.push_back({std::move(rule), id, std::move(detail)});
  }

  template <typename T>
  void ref(const Catalog<T>& catalog, const Id& target, const Id& owner, const char* field) {
    if (!catalog.contains(target)) {
      add("dangling-reference", owner, std::string(field) + " '" + target + "' does not resolve");
    }
  }

  void interval(const TimeInterval& i, const Id& owner, const char* field) {
    if (i.start < 0 || i.start > i.end) {
      add("interval-order", owner, std::string(field) + " " + describe(i) + " is not a valid interval");
    }
  }

  void check_intervals() {
    for (const auto& [id, v] : d_.videos) interval(v.life_span, id, "life_span");
    for (const auto& [id, s] : d_.scenes) interval(s.life_span, id, "life_span");
    for (const auto& [id, s] : d_.shots) interval(s.life_span, id, "life_span");
    for (const auto& [id, b] : d_.backgrounds) {
      if (b.location_existence) interval(*b.location_existence, id, "location_existence");
    }
  }

  void check_catalog_refs() {
    for (const auto& [id, song] : d_.songs) ref(d_.musicians, song.musician_id, id, "musician_id");
    for (const auto& [id, step] : d_.step_defs) {
      std::set<std::string> parts;
      for (const auto& p : step.body_parts) parts.insert(normalize_body_part(p));
      switch (step.step_class) {
        case StepClass::PY:
          for (const auto& p : parts) {
            if (!kPeythamParts.contains(p)) {
              add("step-body-parts", id, "PY step uses body part '" + p + "'");
            }
          }
          break;
        case StepClass::AD:
        case StepClass::SHA:
          if (step.body_parts.size() != 2) {
            add("step-body-parts", id,
                std::string(to_string(step.step_class)) + " step needs exactly two body parts");
          }
          break;
        case StepClass::ASHA:
          if (step.body_parts.size() != 1) {
            add("step-body-parts", id, "ASHA step needs exactly one body part");
          }
          break;
        case StepClass::CS:
          break;
      }
    }
  }

  // Each level must point up to a parent that lists it, and each child must be
  // listed by exactly one parent.
  template <typename Parent, typename Child, typename ChildIds, typename ParentOf>
  void check_level(const Catalog<Parent>& parents, const Catalog<Child>& children,
                   ChildIds child_ids, ParentOf parent_of, const char* parent_field,
                   const char* child_field) {
    std::map<Id, int> listed;
    for (const auto& [pid, parent] : parents) {
      std::set<Id> seen;
      for (const Id& cid : child_ids(parent)) {
        if (!seen.insert(cid).second) {
          add("membership", pid, std::string(child_field) + " lists '" + cid + "' twice");
          continue;
        }
        ++listed[cid];
        auto it = children.find(cid);
        if (it == children.end()) {
          add("dangling-reference", pid,
              std::string(child_field) + " '" + cid + "' does not resolve");
        } else if (parent_of(it->second) != pid) {
          add("membership", cid,
              "listed by '" + pid + "' but " + parent_field + " is '" + parent_of(it->second) + "'");
        }
      }
    }
    for (const auto& [cid, child] : children) {
      const Id& pid = parent_of(child);
      if (!parents.contains(pid)) {
        add("dangling-reference", cid, std::string(parent_field) + " '" + pid + "' does not resolve");
      } else if (listed[cid] != 1) {
        add("membership", cid, "must be listed by exactly one parent, found " +
                                   std::to_string(listed[cid]));
      }
    }
  }

  void check_hierarchy() {
    check_level(
        d_.videos, d_.compound_scenes, [](const Video& v) -> const auto& { return v.compound_scene_ids; },
        [](const CompoundScene& c) -> const Id& { return c.video_id; }, "video_id",
        "compound_scene_ids");
    check_level(
        d_.compound_scenes, d_.scenes, [](const CompoundScene& c) -> const auto& { return c.scene_ids; },
        [](const Scene& s) -> const Id& { return s.compound_scene_id; }, "compound_scene_id",
        "scene_ids");
    check_level(
        d_.scenes, d_.shots, [](const Scene& s) -> const auto& { return s.shot_ids; },
        [](const Shot& s) -> const Id& { return s.scene_id; }, "scene_id", "shot_ids");
  }

  void check_shots() {
    std::map<Id, Id> occurrence_owner;
    for (const auto& [id, shot] : d_.shots) {
      for (const auto& dancer : shot.dancer_ids) ref(d_.dancers, dancer, id, "dancer_ids");

      std::set<Id> performing;
      for (const auto& occ : shot.occurrences) {
        if (auto [it, fresh] = occurrence_owner.emplace(occ.occ_id, id); !fresh) {
          add("duplicate-id", occ.occ_id, "occurrence ID used in shots '" + it->second + "' and '" + id + "'");
        }
        if (occ.shot_id != id) {
          add("occurrence-shot", id, "occurrence '" + occ.occ_id + "' names shot '" + occ.shot_id + "'");
        }
        if (!performing.insert(occ.dancer_id).second) {
          add("occurrence-uniqueness", id, "dancer '" + occ.dancer_id + "' has more than one occurrence");
        }
        if (!shot.dancer_ids.contains(occ.dancer_id)) {
          add("occurrence-presence", id, "dancer '" + occ.dancer_id + "' performs but is not in dancer_ids");
        }
        ref(d_.dancers, occ.dancer_id, id, "occurrence dancer_id");
        ref(d_.step_defs, occ.step_def_id, id, "occurrence step_def_id");
        if (occ.instrument_id) ref(d_.instruments, *occ.instrument_id, id, "occurrence instrument_id");
        if (normalize_term(occ.posture).empty() || normalize_term(occ.reflexion).empty()) {
          add("occurrence-terms", id, "occurrence '" + occ.occ_id + "' has an empty posture or reflexion");
        }
      }

      for (const auto& t : shot.spatial_triplets) {
        if (t.dancer1 == t.dancer2) {
          add("spatial-triplet", id, "triplet relates '" + t.dancer1 + "' to itself");
        }
        if (!shot.dancer_ids.contains(t.dancer1) || !shot.dancer_ids.contains(t.dancer2)) {
          add("spatial-triplet", id,
              "triplet (" + t.dancer1 + ", " + t.dancer2 + ") names a dancer absent from the shot");
        }
      }

      if (auto it = d_.scenes.find(shot.scene_id); it != d_.scenes.end()) {
        if (!within(shot.life_span, it->second.life_span)) {
          add("shot-containment", id,
              "life_span " + describe(shot.life_span) + " is outside scene " +
                  describe(it->second.life_span));
        }
      }
    }
  }

  void check_scenes() {
    for (const auto& [id, scene] : d_.scenes) {
      ref(d_.backgrounds, scene.background_id, id, "background_id");

      std::set<Id> present;
      const Shot* prev = nullptr;
      for (const auto& shot_id : scene.shot_ids) {
        auto it = d_.shots.find(shot_id);
        if (it == d_.shots.end()) continue;
        const Shot& shot = it->second;
        present.insert(shot.dancer_ids.begin(), shot.dancer_ids.end());
        if (prev != nullptr && prev->life_span.end > shot.life_span.start) {
          add("shot-ordering", id, "shot '" + shot.id + "' " + describe(shot.life_span) +
                                       " overlaps or precedes '" + prev->id + "' " +
                                       describe(prev->life_span));
        }
        prev = &shot;
      }

      for (const auto& [dancer, costumes] : scene.costume_map) {
        if (!present.contains(dancer)) {
          add("costume-map", id, "dancer '" + dancer + "' does not appear in any shot of the scene");
        }
        for (const auto& co : costumes) ref(d_.costumes, co, id, "costume_map costume");
      }
    }
  }

  void check_compound_scenes() {
    for (const auto& [id, cs] : d_.compound_scenes) {
      ref(d_.songs, cs.song_id, id, "song_id");
      std::vector<SongComponent> components;
      for (const auto& sid : cs.scene_ids) {
        if (auto it = d_.scenes.find(sid); it != d_.scenes.end()) {
          components.push_back(it->second.component);
        }
      }
      if (components.size() == cs.scene_ids.size() && !classify_song_type(components)) {
        std::string seq;
        for (auto c : components) {
          if (!seq.empty()) seq += ' ';
          seq += to_string(c);
        }
        add("song-type", id, "component sequence '" + seq + "' matches no song type");
      }
    }
  }

  const CorpusData& d_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_corpus(const CorpusData& data) { return Checker(data).run(); }

}  // namespace dvcm
