#pragma once

// The eight inverted files over a corpus.
//
//   DA_IF  dancer (id or name)      -> step occurrence IDs
//   AG_IF  body part (no laterality) -> step occurrence IDs
//   PO_IF  posture                   -> step occurrence IDs
//   RX_IF  reflexion                 -> step occurrence IDs
//   IN_IF  instrument (id or name)   -> step occurrence IDs
//   BG_IF  background (id or name)   -> scene IDs
//   CO_IF  costume (id or name)      -> scene IDs (worn by any dancer)
//   ST_IF  step occurrence ID        -> [shot ID]
//
// Entries are hashed for lookup; serialization orders keys.
//
// Keys are normalized (see normalize.hpp) except ST_IF, which is keyed by
// raw occurrence ID. Value lists are strictly ascending.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dvcm/model.hpp"
#include "dvcm/normalize.hpp"

namespace dvcm {

enum class IndexKind { DA_IF, AG_IF, PO_IF, RX_IF, IN_IF, BG_IF, CO_IF, ST_IF };

inline constexpr IndexKind kAllIndexKinds[] = {IndexKind::DA_IF, IndexKind::AG_IF, IndexKind::PO_IF,
                                               IndexKind::RX_IF, IndexKind::IN_IF, IndexKind::BG_IF,
                                               IndexKind::CO_IF, IndexKind::ST_IF};

std::string_view to_string(IndexKind kind);
std::optional<IndexKind> parse_index_kind(std::string_view text);

/// Normalizes a query key the way `kind` stores its keys.
std::string normalize_key(IndexKind kind, std::string_view key);

struct InvertedFile {
  using Entries = std::unordered_map<std::string, std::vector<Id>>;

  IndexKind kind = IndexKind::DA_IF;
  Entries entries;

  /// Exact (already normalized) key; empty span when absent.
  std::span<const Id> find(const std::string& key) const;

  bool operator==(const InvertedFile&) const = default;
};

class IndexSet {
 public:
  IndexSet() = default;

  const InvertedFile& file(IndexKind kind) const { return files_[static_cast<int>(kind)]; }
  const std::string& fingerprint() const { return fingerprint_; }
  const SynonymTable& synonyms() const { return synonyms_; }

  /// Throws FingerprintMismatch if this index was not built from `c`.
  void check_matches(const Corpus& c) const;

  /// Ordinal form of a facet file entry: occurrence ordinals, or scene
  /// ordinals for BG_IF and CO_IF. `key` must already be normalized.
  std::span<const Ordinal> postings(IndexKind kind, const std::string& key) const;
  /// ST_IF as an array from occurrence ordinal to shot ordinal.
  std::span<const Ordinal> occurrence_shots() const { return occurrence_shot_; }

  /// Compares the files, fingerprint and synonyms.
  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.files_ == b.files_ && a.fingerprint_ == b.fingerprint_ && a.synonyms_ == b.synonyms_;
  }

 private:
  friend IndexSet build_indexes(const Corpus&, SynonymTable);
  friend IndexSet index_from_json(std::string_view, const Corpus&, SynonymTable);

  void compile(const Corpus& c);

  std::array<InvertedFile, 8> files_{};
  std::string fingerprint_;
  SynonymTable synonyms_;
  std::array<std::unordered_map<std::string, std::vector<Ordinal>>, 7> postings_{};
  std::vector<Ordinal> occurrence_shot_;
};

IndexSet build_indexes(const Corpus& c, SynonymTable synonyms = SynonymTable::defaults());

/// Sorted IDs under the normalized key. RX_IF lookups union every synonym of
/// the key. Unknown keys yield an empty list.
std::vector<Id> lookup(const IndexSet& ix, IndexKind kind, std::string_view key);

/// {"fingerprint": hex, "files": {kind: {key: [ids...]}}}, keys sorted.
std::string index_to_json(const IndexSet& ix);
/// Parses and verifies the fingerprint against `c`.
IndexSet index_from_json(std::string_view text, const Corpus& c,
                         SynonymTable synonyms = SynonymTable::defaults());

void save_index(const IndexSet& ix, const std::filesystem::path& path);
IndexSet load_index(const std::filesystem::path& path, const Corpus& c,
                    SynonymTable synonyms = SynonymTable::defaults());

}  // namespace dvcm
