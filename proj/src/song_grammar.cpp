#include "dvcm/song_grammar.hpp"

#include <array>
#include <stdexcept>

namespace dvcm {
namespace {

constexpr std::array<std::string_view, kSongTypeCount> kPatterns = {
    "PA AP SA+", "PA SA+", "SA+", "PA AP SA (CH SA)+", "PA SA (CH SA)+", "SA (CH SA)+",
};

// States of the union automaton. The three prefixes (PA AP | PA | none)
// each lead into the same four-state body shape:
//   one      SA seen once                 (accepts SA+ type)
//   many     SA seen more than once       (accepts SA+ type, CH now illegal)
//   chorus   ... CH, waiting for SA
//   refrain  ... CH SA                    (accepts (CH SA)+ type)
enum State : int {
  kStart,
  kPa,
  kPaAp,
  kPaApOne,
  kPaApMany,
  kPaApChorus,
  kPaApRefrain,
  kPaOne,
  kPaMany,
  kPaChorus,
  kPaRefrain,
  kOne,
  kMany,
  kChorus,
  kRefrain,
  kDead,
  kStateCount
};

// Column order follows SongComponent: PA, AP, SA, CH.
constexpr std::array<std::array<State, 4>, kStateCount> kTransitions = {{
    /* kStart       */ {kPa, kDead, kOne, kDead},
    /* kPa          */ {kDead, kPaAp, kPaOne, kDead},
    /* kPaAp        */ {kDead, kDead, kPaApOne, kDead},
    /* kPaApOne     */ {kDead, kDead, kPaApMany, kPaApChorus},
    /* kPaApMany    */ {kDead, kDead, kPaApMany, kDead},
    /* kPaApChorus  */ {kDead, kDead, kPaApRefrain, kDead},
    /* kPaApRefrain */ {kDead, kDead, kDead, kPaApChorus},
    /* kPaOne       */ {kDead, kDead, kPaMany, kPaChorus},
    /* kPaMany      */ {kDead, kDead, kPaMany, kDead},
    /* kPaChorus    */ {kDead, kDead, kPaRefrain, kDead},
    /* kPaRefrain   */ {kDead, kDead, kDead, kPaChorus},
    /* kOne         */ {kDead, kDead, kMany, kChorus},
    /* kMany        */ {kDead, kDead, kMany, kDead},
    /* kChorus      */ {kDead, kDead, kRefrain, kDead},
    /* kRefrain     */ {kDead, kDead, kDead, kChorus},
    /* kDead        */ {kDead, kDead, kDead, kDead},
}};

// Song type accepted in each state; 0 = rejecting.
constexpr std::array<int, kStateCount> kAcceptLabel = {
    0, 0, 0, 1, 1, 0, 4, 2, 2, 0, 5, 3, 3, 0, 6, 0,
};

int run(std::span<const SongComponent> components) {
  State s = kStart;
  for (SongComponent c : components) {
    s = kTransitions[s][static_cast<int>(c)];
    if (s == kDead) return 0;
  }
  return kAcceptLabel[s];
}

}  // namespace

SongType song_type(int code) {
  if (code < 1 || code > kSongTypeCount) {
    throw std::out_of_range("song type code must be in 1..6, got " + std::to_string(code));
  }
  return SongType{code, kPatterns[code - 1]};
}

std::optional<SongType> classify_song_type(std::span<const SongComponent> components) {
  int label = run(components);
  if (label == 0) return std::nullopt;
  return song_type(label);
}

std::optional<SongType> classify_song_type(std::span<const std::string> components) {
  std::vector<SongComponent> symbols;
  symbols.reserve(components.size());
  for (const auto& text : components) {
    auto c = parse_song_component(text);
    if (!c) throw std::invalid_argument("unknown song component '" + text + "'");
    symbols.push_back(*c);
  }
  return classify_song_type(symbols);
}

bool accepts(std::span<const SongComponent> components, int type_code) {
  song_type(type_code);  // range check
  return run(components) == type_code;
}

}  // namespace dvcm
