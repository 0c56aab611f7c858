#pragma once

// Song structure recognizer. A song is a sequence of components over the
// alphabet {PA, AP, SA, CH}; a valid song belongs to exactly one of six
// regular languages:
//
//   1  PA AP SA+
//   2  PA SA+
//   3  SA+
//   4  PA AP SA (CH SA)+
//   5  PA SA (CH SA)+
//   6  SA (CH SA)+

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dvcm/model.hpp"

namespace dvcm {

struct SongType {
  int code = 0;
  std::string_view pattern;

  bool operator==(const SongType& other) const { return code == other.code; }
};

inline constexpr int kSongTypeCount = 6;

/// Pattern text for a type code in 1..6. Throws std::out_of_range otherwise.
SongType song_type(int code);

/// Single pass over a deterministic automaton. nullopt means no type accepts
/// (including the empty sequence).
std::optional<SongType> classify_song_type(std::span<const SongComponent> components);

/// Symbolic form; throws std::invalid_argument on an unknown symbol.
std::optional<SongType> classify_song_type(std::span<const std::string> components);

/// Membership in one type's language. Throws std::out_of_range if the code
/// is not in 1..6.
bool accepts(std::span<const SongComponent> components, int type_code);

}  // namespace dvcm
