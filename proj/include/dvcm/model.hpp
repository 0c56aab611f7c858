#pragma once

// Dance video content model: the video/compound scene/scene/shot hierarchy,
// the entity catalogs hanging off it, and the immutable Corpus view used by
// every query path.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dvcm/errors.hpp"

namespace dvcm {

using Id = std::string;
/// Milliseconds from the start of the video.
using Tick = std::int64_t;

struct TimeInterval {
  Tick start = 0;
  Tick end = 0;

  bool operator==(const TimeInterval&) const = default;
};

enum class StepClass { PY, AD, ASHA, SHA, CS };
enum class SongComponent { PA, AP, SA, CH };
enum class SpatialRelation { left_of, right_of, in_front_of, behind, near, meets };
enum class Granularity { shot, scene, compound_scene };

inline constexpr StepClass kAllStepClasses[] = {StepClass::PY, StepClass::AD, StepClass::ASHA,
                                                StepClass::SHA, StepClass::CS};
inline constexpr SongComponent kAllSongComponents[] = {SongComponent::PA, SongComponent::AP,
                                                       SongComponent::SA, SongComponent::CH};
inline constexpr SpatialRelation kAllSpatialRelations[] = {
    SpatialRelation::left_of, SpatialRelation::right_of, SpatialRelation::in_front_of,
    SpatialRelation::behind,  SpatialRelation::near,     SpatialRelation::meets};

std::string_view to_string(StepClass c);
std::string_view to_string(SongComponent c);
std::string_view to_string(SpatialRelation r);
std::string_view to_string(Granularity g);

// Parsers are case-insensitive; nullopt for unknown names.
std::optional<StepClass> parse_step_class(std::string_view text);
std::optional<SongComponent> parse_song_component(std::string_view text);
std::optional<SpatialRelation> parse_spatial_relation(std::string_view text);
std::optional<Granularity> parse_granularity(std::string_view text);

struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  bool operator==(const Date&) const = default;
};

/// Accepts YYYY-MM-DD and rejects impossible calendar dates.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);

struct Dancer {
  Id id;
  std::string name;
  int age = 0;
  std::string sex;

  bool operator==(const Dancer&) const = default;
};

struct StepDefinition {
  Id id;
  StepClass step_class = StepClass::CS;
  std::string name;
  std::string movement;
  std::set<std::string> body_parts;

  bool operator==(const StepDefinition&) const = default;
};

/// One dancer performing one step in one shot; the unit that is indexed.
struct StepOccurrence {
  Id occ_id;
  Id shot_id;
  Id dancer_id;
  Id step_def_id;
  std::string posture;
  std::string reflexion;
  std::optional<Id> instrument_id;

  bool operator==(const StepOccurrence&) const = default;
};

struct SpatialTriplet {
  Id dancer1;
  Id dancer2;
  SpatialRelation relation = SpatialRelation::near;

  bool operator==(const SpatialTriplet&) const = default;
};

/// A dancer listed in dancer_ids without an occurrence is an observer.
struct Shot {
  Id id;
  Id scene_id;
  TimeInterval life_span;
  std::set<Id> dancer_ids;
  std::vector<StepOccurrence> occurrences;
  std::vector<SpatialTriplet> spatial_triplets;
  std::string description;

  const StepOccurrence* occurrence_of(const Id& dancer_id) const;
  bool operator==(const Shot&) const = default;
};

struct Scene {
  Id id;
  Id compound_scene_id;
  TimeInterval life_span;
  SongComponent component = SongComponent::SA;
  Id background_id;
  std::map<Id, std::set<Id>> costume_map;
  std::vector<Id> shot_ids;

  bool operator==(const Scene&) const = default;
};

struct CompoundScene {
  Id id;
  Id video_id;
  Id song_id;
  std::vector<Id> scene_ids;
  std::string description;

  bool operator==(const CompoundScene&) const = default;
};

struct Video {
  Id id;
  TimeInterval life_span;
  Date recording_date;
  std::string description;
  std::vector<Id> compound_scene_ids;

  bool operator==(const Video&) const = default;
};

struct Song {
  Id id;
  std::string name;
  std::string lyrics;
  Id musician_id;

  bool operator==(const Song&) const = default;
};

struct Musician {
  Id id;
  std::string name;
  std::string address;
  std::string sex;
  std::string phone;

  bool operator==(const Musician&) const = default;
};

struct Background {
  Id id;
  std::string name;
  std::string location;
  std::optional<TimeInterval> location_existence;
  std::string description;

  bool operator==(const Background&) const = default;
};

struct Costume {
  Id id;
  std::string name;
  std::string description;

  bool operator==(const Costume&) const = default;
};

struct Instrument {
  Id id;
  std::string name;
  std::string description;

  bool operator==(const Instrument&) const = default;
};

template <typename T>
using Catalog = std::map<Id, T>;

using Ordinal = std::uint32_t;

/// Raw annotation data exactly as stored in a corpus file. May be invalid;
/// see validate_corpus().
struct CorpusData {
  Catalog<Video> videos;
  Catalog<Song> songs;
  Catalog<Musician> musicians;
  Catalog<Dancer> dancers;
  Catalog<Background> backgrounds;
  Catalog<Costume> costumes;
  Catalog<Instrument> instruments;
  Catalog<StepDefinition> step_defs;
  Catalog<CompoundScene> compound_scenes;
  Catalog<Scene> scenes;
  Catalog<Shot> shots;

  bool operator==(const CorpusData&) const = default;
};

/// Checks every structural invariant of the model. The result is empty iff
/// the data is valid; otherwise it is sorted by (rule, entity, detail).
std::vector<Violation> validate_corpus(const CorpusData& data);

/// Dense positions in ascending ID order. The query engines do their set
/// algebra on these and translate back to IDs at the end.
struct CorpusOrdinals {
  std::vector<Id> shots, scenes, compound_scenes, occurrences;
  std::vector<Ordinal> shot_scene;
  std::vector<Ordinal> scene_compound;
  std::vector<Ordinal> occurrence_shot;
  std::vector<std::vector<Ordinal>> scene_shots;
  std::unordered_map<Id, Ordinal> shot_index, scene_index, occurrence_index;
  /// Step definition -> ascending occurrence ordinals.
  std::unordered_map<Id, std::vector<Ordinal>> step_occurrences;
};

/// A validated, immutable corpus plus the derived lookups the engines need.
/// Safe for any number of concurrent readers.
class Corpus {
 public:
  Corpus() : Corpus(CorpusData{}) {}
  /// Throws IntegrityError listing every violation.
  explicit Corpus(CorpusData data);

  const CorpusData& data() const { return data_; }

  const Shot& shot(const Id& id) const;
  const Scene& scene(const Id& id) const;
  const CompoundScene& compound_scene(const Id& id) const;
  const StepDefinition& step_def(const Id& id) const;
  const Dancer& dancer(const Id& id) const;

  /// Owning shot of a step occurrence.
  const Id& occurrence_shot(const Id& occ_id) const;
  const StepOccurrence& occurrence(const Id& occ_id) const;
  /// Sorted occurrence IDs performing the given step definition.
  std::span<const Id> occurrences_of_step(const Id& step_def_id) const;

  std::size_t occurrence_count() const { return occurrence_locations_.size(); }

  /// Hex content hash of the canonical serialization.
  const std::string& fingerprint() const { return fingerprint_; }

  const CorpusOrdinals& ordinals() const { return ordinals_; }

 private:
  CorpusData data_;
  void build_ordinals();

  std::unordered_map<Id, std::pair<Id, std::size_t>> occurrence_locations_;
  std::unordered_map<Id, std::vector<Id>> step_occurrences_;
  std::string fingerprint_;
  CorpusOrdinals ordinals_;
};

/// Maps shot IDs to the requested granularity. Output is sorted ascending
/// and duplicate-free. Throws UnknownIdError for a shot not in the corpus.
std::vector<Id> lift_granularity(const Corpus& corpus, std::span<const Id> shot_ids,
                                 Granularity vg);

}  // namespace dvcm
