#include "dvcm/corpus_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace dvcm {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", col " + std::to_string(col);
}

// Typed, path-tracking view over one JSON object.
class Fields {
 public:
  Fields(const json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) fail(path_, "expected an object");
    for (const auto& [key, _] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(path_ + "." + key, "unknown field");
      }
    }
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
    throw ParseError(path, msg);
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& at(const char* key) const {
    if (!j_.contains(key)) fail(path_ + "." + key, "missing required field");
    return j_.at(key);
  }

  std::string path(const char* key) const { return path_ + "." + key; }

  std::string str(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }

  std::int64_t integer(const char* key) const { return integer_at(at(key), path(key)); }

  static std::int64_t integer_at(const json& v, const std::string& p) {
    if (!v.is_number_integer()) fail(p, "expected an integer");
    return v.get<std::int64_t>();
  }

  TimeInterval interval(const char* key) const { return interval_at(at(key), path(key)); }

  static TimeInterval interval_at(const json& v, const std::string& p) {
    Fields f(v, p, {"start", "end"});
    return TimeInterval{f.integer("start"), f.integer("end")};
  }

  std::vector<std::string> strings(const char* key) const { return strings_at(at(key), path(key)); }

  static std::vector<std::string> strings_at(const json& v, const std::string& p) {
    if (!v.is_array()) fail(p, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) fail(p + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  std::set<std::string> string_set(const char* key) const { return string_set_at(at(key), path(key)); }

  static std::set<std::string> string_set_at(const json& v, const std::string& p) {
    auto list = strings_at(v, p);
    std::set<std::string> out(list.begin(), list.end());
    if (out.size() != list.size()) fail(p, "duplicate element in set");
    return out;
  }

  template <typename Enum>
  Enum enumeration(const char* key, std::optional<Enum> (*parse)(std::string_view)) const {
    auto text = str(key);
    auto e = parse(text);
    if (!e) fail(path(key), "unknown value '" + text + "'");
    return *e;
  }

 private:
  const json& j_;
  std::string path_;
};

template <typename T, typename ReadFn>
void read_catalog(const json& root, const char* name, Catalog<T>& out,
                  std::vector<Violation>& duplicates, ReadFn read) {
  if (!root.contains(name)) Fields::fail(name, "missing required top-level array");
  const json& arr = root.at(name);
  if (!arr.is_array()) Fields::fail(name, "expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    T item = read(arr[i], std::string(name) + "[" + std::to_string(i) + "]");
    Id id = item.id;
    if (!out.emplace(id, std::move(item)).second) {
      duplicates.push_back({"duplicate-id", id, std::string("repeated in ") + name});
    }
  }
}

Video read_video(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "life_span", "recording_date", "description", "compound_scene_ids"});
  Video v;
  v.id = f.str("id");
  v.life_span = f.interval("life_span");
  auto text = f.str("recording_date");
  auto date = parse_date(text);
  if (!date) Fields::fail(f.path("recording_date"), "expected a YYYY-MM-DD date, got '" + text + "'");
  v.recording_date = *date;
  v.description = f.str("description");
  v.compound_scene_ids = f.strings("compound_scene_ids");
  return v;
}

Song read_song(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "name", "lyrics", "musician_id"});
  return Song{f.str("id"), f.str("name"), f.str("lyrics"), f.str("musician_id")};
}

Musician read_musician(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "name", "address", "sex", "phone"});
  return Musician{f.str("id"), f.str("name"), f.str("address"), f.str("sex"), f.str("phone")};
}

Dancer read_dancer(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "name", "age", "sex"});
  auto age = f.integer("age");
  if (age < 0 || age > 1000) Fields::fail(f.path("age"), "expected a non-negative age in years");
  return Dancer{f.str("id"), f.str("name"), static_cast<int>(age), f.str("sex")};
}

Background read_background(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "name", "location", "location_existence", "description"});
  Background b;
  b.id = f.str("id");
  b.name = f.str("name");
  b.location = f.str("location");
  if (f.has("location_existence")) b.location_existence = f.interval("location_existence");
  b.description = f.str("description");
  return b;
}

Costume read_costume(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "name", "description"});
  return Costume{f.str("id"), f.str("name"), f.str("description")};
}

Instrument read_instrument(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "name", "description"});
  return Instrument{f.str("id"), f.str("name"), f.str("description")};
}

StepDefinition read_step_def(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "step_class", "name", "movement", "body_parts"});
  StepDefinition s;
  s.id = f.str("id");
  s.step_class = f.enumeration<StepClass>("step_class", parse_step_class);
  s.name = f.str("name");
  s.movement = f.str("movement");
  s.body_parts = f.string_set("body_parts");
  return s;
}

CompoundScene read_compound_scene(const json& j, const std::string& p) {
  Fields f(j, p, {"id", "video_id", "song_id", "scene_ids", "description"});
  return CompoundScene{f.str("id"), f.str("video_id"), f.str("song_id"), f.strings("scene_ids"),
                       f.str("description")};
}

Scene read_scene(const json& j, const std::string& p) {
  Fields f(j, p,
           {"id", "compound_scene_id", "life_span", "component", "background_id", "costume_map",
            "shot_ids"});
  Scene s;
  s.id = f.str("id");
  s.compound_scene_id = f.str("compound_scene_id");
  s.life_span = f.interval("life_span");
  s.component = f.enumeration<SongComponent>("component", parse_song_component);
  s.background_id = f.str("background_id");
  const json& cm = f.at("costume_map");
  if (!cm.is_array()) Fields::fail(f.path("costume_map"), "expected an array");
  for (std::size_t i = 0; i < cm.size(); ++i) {
    auto ep = f.path("costume_map") + "[" + std::to_string(i) + "]";
    Fields e(cm[i], ep, {"dancer_id", "values"});
    if (!s.costume_map.emplace(e.str("dancer_id"), e.string_set("values")).second) {
      Fields::fail(ep, "dancer '" + e.str("dancer_id") + "' appears twice in costume_map");
    }
  }
  s.shot_ids = f.strings("shot_ids");
  return s;
}

Shot read_shot(const json& j, const std::string& p) {
  Fields f(j, p,
           {"id", "scene_id", "life_span", "dancer_ids", "occurrences", "spatial_triplets",
            "description"});
  Shot s;
  s.id = f.str("id");
  s.scene_id = f.str("scene_id");
  s.life_span = f.interval("life_span");
  s.dancer_ids = f.string_set("dancer_ids");

  const json& occs = f.at("occurrences");
  if (!occs.is_array()) Fields::fail(f.path("occurrences"), "expected an array");
  for (std::size_t i = 0; i < occs.size(); ++i) {
    Fields o(occs[i], f.path("occurrences") + "[" + std::to_string(i) + "]",
             {"occ_id", "shot_id", "dancer_id", "step_def_id", "posture", "reflexion",
              "instrument_id"});
    StepOccurrence occ{o.str("occ_id"), o.str("shot_id"), o.str("dancer_id"),
                       o.str("step_def_id"), o.str("posture"), o.str("reflexion"), std::nullopt};
    if (o.has("instrument_id")) occ.instrument_id = o.str("instrument_id");
    s.occurrences.push_back(std::move(occ));
  }

  const json& trips = f.at("spatial_triplets");
  if (!trips.is_array()) Fields::fail(f.path("spatial_triplets"), "expected an array");
  for (std::size_t i = 0; i < trips.size(); ++i) {
    Fields t(trips[i], f.path("spatial_triplets") + "[" + std::to_string(i) + "]",
             {"dancer1", "dancer2", "relation"});
    s.spatial_triplets.push_back(SpatialTriplet{
        t.str("dancer1"), t.str("dancer2"),
        t.enumeration<SpatialRelation>("relation", parse_spatial_relation)});
  }
  s.description = f.str("description");
  return s;
}

ordered_json write_interval(const TimeInterval& i) {
  return ordered_json{{"start", i.start}, {"end", i.end}};
}

ordered_json to_json(const CorpusData& d) {
  ordered_json root = ordered_json::object();

  auto& videos = root["videos"] = ordered_json::array();
  for (const auto& [_, v] : d.videos) {
    videos.push_back({{"id", v.id},
                      {"life_span", write_interval(v.life_span)},
                      {"recording_date", format_date(v.recording_date)},
                      {"description", v.description},
                      {"compound_scene_ids", v.compound_scene_ids}});
  }
  auto& songs = root["songs"] = ordered_json::array();
  for (const auto& [_, s] : d.songs) {
    songs.push_back(
        {{"id", s.id}, {"name", s.name}, {"lyrics", s.lyrics}, {"musician_id", s.musician_id}});
  }
  auto& musicians = root["musicians"] = ordered_json::array();
  for (const auto& [_, m] : d.musicians) {
    musicians.push_back({{"id", m.id},
                         {"name", m.name},
                         {"address", m.address},
                         {"sex", m.sex},
                         {"phone", m.phone}});
  }
  auto& dancers = root["dancers"] = ordered_json::array();
  for (const auto& [_, x] : d.dancers) {
    dancers.push_back({{"id", x.id}, {"name", x.name}, {"age", x.age}, {"sex", x.sex}});
  }
  auto& backgrounds = root["backgrounds"] = ordered_json::array();
  for (const auto& [_, b] : d.backgrounds) {
    ordered_json o{{"id", b.id}, {"name", b.name}, {"location", b.location}};
    if (b.location_existence) o["location_existence"] = write_interval(*b.location_existence);
    o["description"] = b.description;
    backgrounds.push_back(std::move(o));
  }
  auto& costumes = root["costumes"] = ordered_json::array();
  for (const auto& [_, c] : d.costumes) {
    costumes.push_back({{"id", c.id}, {"name", c.name}, {"description", c.description}});
  }
  auto& instruments = root["instruments"] = ordered_json::array();
  for (const auto& [_, i] : d.instruments) {
    instruments.push_back({{"id", i.id}, {"name", i.name}, {"description", i.description}});
  }
  auto& steps = root["step_defs"] = ordered_json::array();
  for (const auto& [_, s] : d.step_defs) {
    steps.push_back({{"id", s.id},
                     {"step_class", to_string(s.step_class)},
                     {"name", s.name},
                     {"movement", s.movement},
                     {"body_parts", s.body_parts}});
  }
  auto& compounds = root["compound_scenes"] = ordered_json::array();
  for (const auto& [_, c] : d.compound_scenes) {
    compounds.push_back({{"id", c.id},
                         {"video_id", c.video_id},
                         {"song_id", c.song_id},
                         {"scene_ids", c.scene_ids},
                         {"description", c.description}});
  }
  auto& scenes = root["scenes"] = ordered_json::array();
  for (const auto& [_, s] : d.scenes) {
    ordered_json cm = ordered_json::array();
    for (const auto& [dancer, values] : s.costume_map) {
      cm.push_back({{"dancer_id", dancer}, {"values", values}});
    }
    scenes.push_back({{"id", s.id},
                      {"compound_scene_id", s.compound_scene_id},
                      {"life_span", write_interval(s.life_span)},
                      {"component", to_string(s.component)},
                      {"background_id", s.background_id},
                      {"costume_map", std::move(cm)},
                      {"shot_ids", s.shot_ids}});
  }
  auto& shots = root["shots"] = ordered_json::array();
  for (const auto& [_, s] : d.shots) {
    ordered_json occs = ordered_json::array();
    for (const auto& o : s.occurrences) {
      ordered_json occ{{"occ_id", o.occ_id},       {"shot_id", o.shot_id},
                       {"dancer_id", o.dancer_id}, {"step_def_id", o.step_def_id},
                       {"posture", o.posture},     {"reflexion", o.reflexion}};
      if (o.instrument_id) occ["instrument_id"] = *o.instrument_id;
      occs.push_back(std::move(occ));
    }
    ordered_json trips = ordered_json::array();
    for (const auto& t : s.spatial_triplets) {
      trips.push_back(
          {{"dancer1", t.dancer1}, {"dancer2", t.dancer2}, {"relation", to_string(t.relation)}});
    }
    shots.push_back({{"id", s.id},
                     {"scene_id", s.scene_id},
                     {"life_span", write_interval(s.life_span)},
                     {"dancer_ids", s.dancer_ids},
                     {"occurrences", std::move(occs)},
                     {"spatial_triplets", std::move(trips)},
                     {"description", s.description}});
  }
  return root;
}

}  // namespace

ParsedCorpus parse_corpus_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_col(text, e.byte), e.what());
  }
  Fields(root, "$",
         {"videos", "songs", "musicians", "dancers", "backgrounds", "costumes", "instruments",
          "step_defs", "compound_scenes", "scenes", "shots"});

  ParsedCorpus out;
  auto& d = out.data;
  auto& dup = out.duplicates;
  read_catalog(root, "videos", d.videos, dup, read_video);
  read_catalog(root, "songs", d.songs, dup, read_song);
  read_catalog(root, "musicians", d.musicians, dup, read_musician);
  read_catalog(root, "dancers", d.dancers, dup, read_dancer);
  read_catalog(root, "backgrounds", d.backgrounds, dup, read_background);
  read_catalog(root, "costumes", d.costumes, dup, read_costume);
  read_catalog(root, "instruments", d.instruments, dup, read_instrument);
  read_catalog(root, "step_defs", d.step_defs, dup, read_step_def);
  read_catalog(root, "compound_scenes", d.compound_scenes, dup, read_compound_scene);
  read_catalog(root, "scenes", d.scenes, dup, read_scene);
  read_catalog(root, "shots", d.shots, dup, read_shot);
  return out;
}

Corpus corpus_from_json(std::string_view text) {
  auto parsed = parse_corpus_json(text);
  if (!parsed.duplicates.empty()) {
    auto violations = validate_corpus(parsed.data);
    violations.insert(violations.end(), parsed.duplicates.begin(), parsed.duplicates.end());
    std::sort(violations.begin(), violations.end());
    throw IntegrityError(std::move(violations));
  }
  return Corpus(std::move(parsed.data));
}

Corpus load_corpus(const std::filesystem::path& path) {
  return corpus_from_json(read_text_file(path));
}

std::string corpus_to_json(const CorpusData& data) { return to_json(data).dump(2) + "\n"; }

void save_corpus(const CorpusData& data, const std::filesystem::path& path) {
  write_text_file(path, corpus_to_json(data));
}

std::string content_fingerprint(const CorpusData& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : to_json(data).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace dvcm
