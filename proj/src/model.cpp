#include "dvcm/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "dvcm/corpus_io.hpp"

namespace dvcm {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view text, const Enum (&all)[N]) {
  for (Enum e : all) {
    if (iequals(text, to_string(e))) return e;
  }
  return std::nullopt;
}

template <typename T>
const T& find_or_throw(const Catalog<T>& catalog, const Id& id, const char* kind) {
  auto it = catalog.find(id);
  if (it == catalog.end()) throw UnknownIdError(kind, id);
  return it->second;
}

}  // namespace

std::string_view to_string(StepClass c) {
  switch (c) {
    case StepClass::PY: return "PY";
    case StepClass::AD: return "AD";
    case StepClass::ASHA: return "ASHA";
    case StepClass::SHA: return "SHA";
    case StepClass::CS: return "CS";
  }
  return "?";
}

std::string_view to_string(SongComponent c) {
  switch (c) {
    case SongComponent::PA: return "PA";
    case SongComponent::AP: return "AP";
    case SongComponent::SA: return "SA";
    case SongComponent::CH: return "CH";
  }
  return "?";
}

std::string_view to_string(SpatialRelation r) {
  switch (r) {
    case SpatialRelation::left_of: return "left_of";
    case SpatialRelation::right_of: return "right_of";
    case SpatialRelation::in_front_of: return "in_front_of";
    case SpatialRelation::behind: return "behind";
    case SpatialRelation::near: return "near";
    case SpatialRelation::meets: return "meets";
  }
  return "?";
}

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::shot: return "shot";
    case Granularity::scene: return "scene";
    case Granularity::compound_scene: return "compound_scene";
  }
  return "?";
}

std::optional<StepClass> parse_step_class(std::string_view text) {
  return parse_enum(text, kAllStepClasses);
}

std::optional<SongComponent> parse_song_component(std::string_view text) {
  return parse_enum(text, kAllSongComponents);
}

std::optional<SpatialRelation> parse_spatial_relation(std::string_view text) {
  return parse_enum(text, kAllSpatialRelations);
}

std::optional<Granularity> parse_granularity(std::string_view text) {
  constexpr Granularity all[] = {Granularity::shot, Granularity::scene,
                                 Granularity::compound_scene};
  return parse_enum(text, all);
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto digits = [&](std::size_t pos, std::size_t len, auto& out) {
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
  };
  if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d)) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                  std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return Date{y, m, d};
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

const StepOccurrence* Shot::occurrence_of(const Id& dancer_id) const {
  for (const auto& occ : occurrences) {
    if (occ.dancer_id == dancer_id) return &occ;
  }
  return nullptr;
}

Corpus::Corpus(CorpusData data) : data_(std::move(data)) {
  if (auto violations = validate_corpus(data_); !violations.empty()) {
    throw IntegrityError(std::move(violations));
  }
  for (const auto& [shot_id, shot] : data_.shots) {
    for (std::size_t i = 0; i < shot.occurrences.size(); ++i) {
      const auto& occ = shot.occurrences[i];
      occurrence_locations_.emplace(occ.occ_id, std::make_pair(shot_id, i));
      step_occurrences_[occ.step_def_id].push_back(occ.occ_id);
    }
  }
  for (auto& [_, occs] : step_occurrences_) std::sort(occs.begin(), occs.end());
  fingerprint_ = content_fingerprint(data_);
  build_ordinals();
}

void Corpus::build_ordinals() {
  auto& o = ordinals_;
  for (const auto& [id, _] : data_.compound_scenes) o.compound_scenes.push_back(id);
  for (const auto& [id, scene] : data_.scenes) {
    o.scene_index.emplace(id, static_cast<Ordinal>(o.scenes.size()));
    o.scenes.push_back(id);
  }
  for (const auto& [id, shot] : data_.shots) {
    o.shot_index.emplace(id, static_cast<Ordinal>(o.shots.size()));
    o.shots.push_back(id);
    for (const auto& occ : shot.occurrences) o.occurrences.push_back(occ.occ_id);
  }
  std::sort(o.occurrences.begin(), o.occurrences.end());

  auto position = [](const std::vector<Id>& sorted, const Id& id) {
    return static_cast<Ordinal>(std::lower_bound(sorted.begin(), sorted.end(), id) - sorted.begin());
  };
  o.scene_shots.resize(o.scenes.size());
  for (const auto& [id, scene] : data_.scenes) {
    o.scene_compound.push_back(position(o.compound_scenes, scene.compound_scene_id));
  }
  for (const auto& [id, shot] : data_.shots) {
    Ordinal scene = o.scene_index.at(shot.scene_id);
    o.shot_scene.push_back(scene);
    o.scene_shots[scene].push_back(o.shot_index.at(id));
  }
  o.occurrence_shot.resize(o.occurrences.size());
  for (Ordinal i = 0; i < o.occurrences.size(); ++i) {
    const Id& occ = o.occurrences[i];
    o.occurrence_index.emplace(occ, i);
    o.occurrence_shot[i] = o.shot_index.at(occurrence_locations_.at(occ).first);
  }
  for (const auto& [step, occs] : step_occurrences_) {
    auto& ords = o.step_occurrences[step];
    for (const auto& occ : occs) ords.push_back(o.occurrence_index.at(occ));
  }
}

const Shot& Corpus::shot(const Id& id) const { return find_or_throw(data_.shots, id, "shot"); }

const Scene& Corpus::scene(const Id& id) const {
  return find_or_throw(data_.scenes, id, "scene");
}

const CompoundScene& Corpus::compound_scene(const Id& id) const {
  return find_or_throw(data_.compound_scenes, id, "compound scene");
}

const StepDefinition& Corpus::step_def(const Id& id) const {
  return find_or_throw(data_.step_defs, id, "step definition");
}

const Dancer& Corpus::dancer(const Id& id) const {
  return find_or_throw(data_.dancers, id, "dancer");
}

const Id& Corpus::occurrence_shot(const Id& occ_id) const {
  auto it = occurrence_locations_.find(occ_id);
  if (it == occurrence_locations_.end()) throw UnknownIdError("step occurrence", occ_id);
  return it->second.first;
}

const StepOccurrence& Corpus::occurrence(const Id& occ_id) const {
  auto it = occurrence_locations_.find(occ_id);
  if (it == occurrence_locations_.end()) throw UnknownIdError("step occurrence", occ_id);
  return data_.shots.at(it->second.first).occurrences[it->second.second];
}

std::span<const Id> Corpus::occurrences_of_step(const Id& step_def_id) const {
  auto it = step_occurrences_.find(step_def_id);
  if (it == step_occurrences_.end()) return {};
  return it->second;
}

std::vector<Id> lift_granularity(const Corpus& corpus, std::span<const Id> shot_ids,
                                 Granularity vg) {
  std::vector<Id> out;
  out.reserve(shot_ids.size());
  for (const auto& id : shot_ids) {
    const Shot& shot = corpus.shot(id);
    switch (vg) {
      case Granularity::shot:
        out.push_back(id);
        break;
      case Granularity::scene:
        out.push_back(shot.scene_id);
        break;
      case Granularity::compound_scene:
        out.push_back(corpus.scene(shot.scene_id).compound_scene_id);
        break;
    }
  }
  if (!std::is_sorted(out.begin(), out.end())) std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntegrityError::IntegrityError(std::vector<Violation> violations)
    : Error([&] {
        std::string msg = "corpus integrity check failed with " +
                          std::to_string(violations.size()) + " violation(s)";
        for (const auto& v : violations) {
          msg += "\n  [" + v.rule + "] " + v.entity_id;
          if (!v.detail.empty()) msg += ": " + v.detail;
        }
        return msg;
      }()),
      violations_(std::move(violations)) {}

}  // namespace dvcm
