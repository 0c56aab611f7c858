#include "dvcm/inverted_index.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "dvcm/corpus_io.hpp"

namespace dvcm {
namespace {

using Builder = std::map<std::string, std::set<Id>>;

void add_entity_keys(Builder& b, const Id& id, const std::string& name, const Id& value) {
  b[normalize_term(id)].insert(value);
  if (auto n = normalize_term(name); !n.empty()) b[n].insert(value);
}

InvertedFile finish(IndexKind kind, Builder&& b) {
  InvertedFile f;
  f.kind = kind;
  for (auto& [key, ids] : b) {
    if (key.empty()) continue;
    f.entries.emplace(key, std::vector<Id>(ids.begin(), ids.end()));
  }
  return f;
}

}  // namespace

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::DA_IF: return "DA_IF";
    case IndexKind::AG_IF: return "AG_IF";
    case IndexKind::PO_IF: return "PO_IF";
    case IndexKind::RX_IF: return "RX_IF";
    case IndexKind::IN_IF: return "IN_IF";
    case IndexKind::BG_IF: return "BG_IF";
    case IndexKind::CO_IF: return "CO_IF";
    case IndexKind::ST_IF: return "ST_IF";
  }
  return "?";
}

std::optional<IndexKind> parse_index_kind(std::string_view text) {
  for (auto k : kAllIndexKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string normalize_key(IndexKind kind, std::string_view key) {
  switch (kind) {
    case IndexKind::AG_IF: return normalize_body_part(key);
    case IndexKind::ST_IF: return std::string(key);
    default: return normalize_term(key);
  }
}

std::span<const Id> InvertedFile::find(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) return {};
  return it->second;
}

void IndexSet::check_matches(const Corpus& c) const {
  if (fingerprint_ != c.fingerprint()) {
    throw FingerprintMismatch("index fingerprint " + fingerprint_ +
                              " does not match corpus fingerprint " + c.fingerprint());
  }
}

std::span<const Ordinal> IndexSet::postings(IndexKind kind, const std::string& key) const {
  if (kind == IndexKind::ST_IF) throw std::invalid_argument("ST_IF has no facet postings");
  const auto& table = postings_[static_cast<int>(kind)];
  auto it = table.find(key);
  if (it == table.end()) return {};
  return it->second;
}

void IndexSet::compile(const Corpus& c) {
  const auto& o = c.ordinals();
  for (auto kind : kAllIndexKinds) {
    if (kind == IndexKind::ST_IF) continue;
    bool scenes = kind == IndexKind::BG_IF || kind == IndexKind::CO_IF;
    const auto& ids = scenes ? o.scene_index : o.occurrence_index;
    auto& table = postings_[static_cast<int>(kind)];
    table.clear();
    for (const auto& [key, list] : file(kind).entries) {
      auto& ords = table[key];
      ords.reserve(list.size());
      for (const auto& id : list) {
        auto it = ids.find(id);
        if (it == ids.end()) {
          throw ParseError("files." + std::string(to_string(kind)) + "." + key, "unknown ID '" + id + "'");
        }
        ords.push_back(it->second);
      }
    }
  }
  const auto& st = file(IndexKind::ST_IF);
  occurrence_shot_.assign(o.occurrences.size(), 0);
  for (Ordinal i = 0; i < o.occurrences.size(); ++i) {
    auto shots = st.find(o.occurrences[i]);
    auto it = shots.size() == 1 ? o.shot_index.find(shots.front()) : o.shot_index.end();
    if (it == o.shot_index.end()) {
      throw ParseError("files.ST_IF." + o.occurrences[i], "expected the single owning shot");
    }
    occurrence_shot_[i] = it->second;
  }
}

IndexSet build_indexes(const Corpus& c, SynonymTable synonyms) {
  const auto& d = c.data();
  Builder dancer, body, posture, reflexion, instrument, background, costume, step;

  for (const auto& [shot_id, shot] : d.shots) {
    for (const auto& occ : shot.occurrences) {
      add_entity_keys(dancer, occ.dancer_id, c.dancer(occ.dancer_id).name, occ.occ_id);
      for (const auto& part : c.step_def(occ.step_def_id).body_parts) {
        body[normalize_body_part(part)].insert(occ.occ_id);
      }
      posture[normalize_term(occ.posture)].insert(occ.occ_id);
      reflexion[normalize_term(occ.reflexion)].insert(occ.occ_id);
      if (occ.instrument_id) {
        add_entity_keys(instrument, *occ.instrument_id, d.instruments.at(*occ.instrument_id).name,
                        occ.occ_id);
      }
      step[occ.occ_id].insert(shot_id);
    }
  }
  for (const auto& [scene_id, scene] : d.scenes) {
    add_entity_keys(background, scene.background_id, d.backgrounds.at(scene.background_id).name,
                    scene_id);
    for (const auto& [_, worn] : scene.costume_map) {
      for (const auto& co : worn) add_entity_keys(costume, co, d.costumes.at(co).name, scene_id);
    }
  }

  IndexSet ix;
  ix.files_ = {finish(IndexKind::DA_IF, std::move(dancer)),
               finish(IndexKind::AG_IF, std::move(body)),
               finish(IndexKind::PO_IF, std::move(posture)),
               finish(IndexKind::RX_IF, std::move(reflexion)),
               finish(IndexKind::IN_IF, std::move(instrument)),
               finish(IndexKind::BG_IF, std::move(background)),
               finish(IndexKind::CO_IF, std::move(costume)),
               finish(IndexKind::ST_IF, std::move(step))};
  ix.fingerprint_ = c.fingerprint();
  ix.synonyms_ = std::move(synonyms);
  ix.compile(c);
  return ix;
}

std::vector<Id> lookup(const IndexSet& ix, IndexKind kind, std::string_view key) {
  const auto& file = ix.file(kind);
  if (kind != IndexKind::RX_IF) {
    auto hit = file.find(normalize_key(kind, key));
    return {hit.begin(), hit.end()};
  }
  std::vector<Id> out;
  for (const auto& term : ix.synonyms().expand(key)) {
    auto hit = file.find(term);
    out.insert(out.end(), hit.begin(), hit.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string index_to_json(const IndexSet& ix) {
  nlohmann::json files = nlohmann::json::object();
  for (auto kind : kAllIndexKinds) {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [key, ids] : ix.file(kind).entries) entries[key] = ids;
    files[std::string(to_string(kind))] = std::move(entries);
  }
  nlohmann::json root{{"fingerprint", ix.fingerprint()}, {"files", std::move(files)}};
  return root.dump(1) + "\n";
}

IndexSet index_from_json(std::string_view text, const Corpus& c, SynonymTable synonyms) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("index", e.what());
  }
  if (!root.is_object() || !root.contains("fingerprint") || !root["fingerprint"].is_string() ||
      !root.contains("files") || !root["files"].is_object() || root.size() != 2) {
    throw ParseError("index", "expected {\"fingerprint\": string, \"files\": object}");
  }

  IndexSet ix;
  ix.fingerprint_ = root["fingerprint"].get<std::string>();
  ix.check_matches(c);

  const auto& files = root["files"];
  for (const auto& [name, entries] : files.items()) {
    auto kind = parse_index_kind(name);
    if (!kind) throw ParseError("files." + name, "unknown inverted file");
    if (!entries.is_object()) throw ParseError("files." + name, "expected an object");
    auto& file = ix.files_[static_cast<int>(*kind)];
    file.kind = *kind;
    for (const auto& [key, ids] : entries.items()) {
      const std::string path = "files." + name + "." + key;
      if (!ids.is_array()) throw ParseError(path, "expected an array of IDs");
      std::vector<Id> list;
      for (const auto& id : ids) {
        if (!id.is_string()) throw ParseError(path, "expected string IDs");
        list.push_back(id.get<std::string>());
      }
      if (std::adjacent_find(list.begin(), list.end(), std::greater_equal<>()) != list.end()) {
        throw ParseError(path, "ID list is not strictly ascending");
      }
      file.entries.emplace(key, std::move(list));
    }
  }
  for (auto kind : kAllIndexKinds) {
    if (!files.contains(std::string(to_string(kind)))) {
      throw ParseError("files", "missing inverted file " + std::string(to_string(kind)));
    }
  }
  ix.synonyms_ = std::move(synonyms);
  ix.compile(c);
  return ix;
}

void save_index(const IndexSet& ix, const std::filesystem::path& path) {
  write_text_file(path, index_to_json(ix));
}

IndexSet load_index(const std::filesystem::path& path, const Corpus& c, SynonymTable synonyms) {
  return index_from_json(read_text_file(path), c, std::move(synonyms));
}

}  // namespace dvcm
