#pragma once

// Corpus file format: one JSON document with top-level arrays "videos",
// "songs", "musicians", "dancers", "backgrounds", "costumes", "instruments",
// "step_defs", "compound_scenes", "scenes", "shots". Field names follow the
// model types; intervals are {"start", "end"}; the costume map is an array of
// {"dancer_id", "values"}. Unknown fields are rejected.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dvcm/model.hpp"

namespace dvcm {

struct ParsedCorpus {
  CorpusData data;
  /// Duplicate catalog IDs seen while reading; the later entry is dropped.
  std::vector<Violation> duplicates;
};

/// Structural parse only. Throws ParseError with a line/column or field path.
ParsedCorpus parse_corpus_json(std::string_view text);

/// Parse plus full validation. Throws ParseError or IntegrityError (the
/// latter listing every violation, duplicates included).
Corpus corpus_from_json(std::string_view text);
Corpus load_corpus(const std::filesystem::path& path);

/// Canonical serialization: catalogs in ID order, two-space indent.
std::string corpus_to_json(const CorpusData& data);
void save_corpus(const CorpusData& data, const std::filesystem::path& path);

/// 64-bit FNV-1a over the compact canonical serialization, as 16 hex digits.
std::string content_fingerprint(const CorpusData& data);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace dvcm
