#pragma once

// Brute-force song type oracle: std::regex over space-joined component names.

#include <array>
#include <regex>
#include <string>
#include <vector>

#include "dvcm/model.hpp"

namespace dvcm::testing {

inline const std::array<std::regex, 6>& song_patterns() {
  static const std::array<std::regex, 6> patterns{
      std::regex("PA AP SA( SA)*"),       std::regex("PA SA( SA)*"),
      std::regex("SA( SA)*"),             std::regex("PA AP SA( CH SA)+"),
      std::regex("PA SA( CH SA)+"),       std::regex("SA( CH SA)+"),
  };
  return patterns;
}

/// Type codes whose pattern matches the whole sequence.
inline std::vector<int> oracle_types(const std::vector<SongComponent>& s) {
  std::string text;
  for (auto c : s) {
    if (!text.empty()) text += ' ';
    text += to_string(c);
  }
  std::vector<int> out;
  for (int t = 0; t < 6; ++t) {
    if (std::regex_match(text, song_patterns()[t])) out.push_back(t + 1);
  }
  return out;
}

/// Every non-empty sequence up to max_len, shortest first.
template <typename Fn>
void for_each_sequence(std::size_t max_len, Fn&& fn) {
  std::vector<SongComponent> s;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<int> digits(len, 0);
    while (true) {
      s.clear();
      for (int d : digits) s.push_back(kAllSongComponents[d]);
      fn(s);
      std::size_t i = 0;
      while (i < len && ++digits[i] == 4) digits[i++] = 0;
      if (i == len) break;
    }
  }
}

}  // namespace dvcm::testing
