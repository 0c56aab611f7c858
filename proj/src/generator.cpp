#include <algorithm>
#include <cmath>
#include <numeric>

#include "dvcm/harness.hpp"
#include "dvcm/song_grammar.hpp"

namespace dvcm {
namespace {

const std::vector<std::string> kPostures = {"front", "left", "right", "back"};
const std::vector<std::string> kReflexions = {"sad",      "happy",    "delighted",
                                              "excited",  "romantic", "joy"};
const std::vector<std::string> kPeythamParts = {"head", "eye",  "eyebrow", "nose",
                                                "lips", "neck", "chest",   "sides"};
const std::vector<std::string> kCasualParts = {"hands", "legs", "head", "hips", "shoulders"};
const std::vector<std::string> kDancerNames = {"Anitha", "Lisa",    "Meera",   "Priya",  "Kavya",
                                               "Divya",  "Lakshmi", "Revathi", "Shanthi", "Uma"};
const std::vector<std::string> kInstrumentNames = {"Veena", "Mridangam", "Flute", "Violin"};
const std::vector<std::string> kCostumeNames = {"Silk saree", "Pyjama costume", "Skirt costume",
                                                "Temple jewellery", "Bells", "Half saree"};
const std::vector<std::string> kBackgroundNames = {"Temple", "Stage", "Garden", "River bank",
                                                   "Palace hall", "Village"};

const std::vector<std::string>& step_names(StepClass cls) {
  static const std::vector<std::string> py = {"Samathristy", "Sachi",    "Pralokita", "Nimilita",
                                              "Ullokita",    "Anuvritta", "Avalokita", "Udvahita"};
  static const std::vector<std::string> asha = {"Pataka",   "Tripataka", "Ardhapataka", "Mayura",
                                                "Alapadma", "Padmakosha", "Sarpasirsha", "Hamsasya"};
  static const std::vector<std::string> sha = {"Anjali", "Kapota",    "Karkata", "Swastika",
                                               "Dola",   "Pushpaputa", "Utsanga", "Shivalinga"};
  static const std::vector<std::string> ad = {"Tatta Adavu", "Natta Adavu", "Visharu Adavu",
                                              "Teermanam Adavu", "Mandi Adavu", "Kuditta Mettu Adavu"};
  static const std::vector<std::string> cs = {"Casual sway", "Casual turn", "Casual walk", "Casual clap"};
  switch (cls) {
    case StepClass::PY: return py;
    case StepClass::ASHA: return asha;
    case StepClass::SHA: return sha;
    case StepClass::AD: return ad;
    case StepClass::CS: return cs;
  }
  return cs;
}

std::string make_id(std::string_view prefix, std::size_t index, std::size_t total) {
  std::string digits = std::to_string(index);
  std::size_t width = std::max<std::size_t>(4, std::to_string(total).size());
  return std::string(prefix) + std::string(width - std::min(width, digits.size()), '0') + digits;
}

// Repetition count k >= 1 gives these sequences.
std::vector<SongComponent> make_sequence(int type, int k) {
  using enum SongComponent;
  std::vector<SongComponent> out;
  if (type == 1 || type == 4) out = {PA, AP};
  if (type == 2 || type == 5) out = {PA};
  if (type <= 3) {
    out.insert(out.end(), k, SA);
  } else {
    out.push_back(SA);
    for (int i = 0; i < k; ++i) {
      out.push_back(CH);
      out.push_back(SA);
    }
  }
  return out;
}

std::size_t sequence_length(int type, int k) { return make_sequence(type, k).size(); }

struct SongPlan {
  int type = 3;
  std::vector<SongComponent> components;
  std::vector<int> shot_counts;
};

int draw_type(SplitMix64& rng, const std::array<double, 6>& weights, const std::vector<int>& allowed) {
  double total = 0;
  for (int t : allowed) total += weights[t - 1];
  double x = rng.unit() * total;
  for (int t : allowed) {
    x -= weights[t - 1];
    if (x < 0 && weights[t - 1] > 0) return t;
  }
  for (auto it = allowed.rbegin(); it != allowed.rend(); ++it) {
    if (weights[*it - 1] > 0) return *it;
  }
  return allowed.back();
}

// Makes the counts sum to `target`, keeping each >= 1 and preferring <= max.
void fit_counts(std::vector<int>& counts, std::size_t target, int max_per_scene) {
  auto sum = [&] { return static_cast<std::size_t>(std::accumulate(counts.begin(), counts.end(), 0)); };
  while (sum() > target) {
    auto it = std::max_element(counts.rbegin(), counts.rend());
    --*it;
  }
  std::size_t i = 0;
  while (sum() < target) {
    bool grown = false;
    for (std::size_t n = 0; n < counts.size() && !grown; ++n, ++i) {
      auto& c = counts[i % counts.size()];
      if (c < max_per_scene) {
        ++c;
        grown = true;
      }
    }
    if (!grown) ++counts.back();
  }
}

std::vector<SongPlan> plan_songs(const GenParams& p, SplitMix64& rng) {
  std::vector<int> all_types = {1, 2, 3, 4, 5, 6};
  auto [lo, hi] = p.shots_per_scene_range;
  std::vector<SongPlan> plans;
  std::size_t remaining = p.n_shots;
  while (remaining > 0) {
    SongPlan plan;
    plan.type = draw_type(rng, p.song_type_weights, all_types);
    int reps = static_cast<int>(rng.between(1, 3));
    plan.components = make_sequence(plan.type, reps);
    for (std::size_t i = 0; i < plan.components.size(); ++i) {
      plan.shot_counts.push_back(static_cast<int>(rng.between(lo, hi)));
    }
    auto total = static_cast<std::size_t>(std::accumulate(plan.shot_counts.begin(), plan.shot_counts.end(), 0));
    if (total <= remaining) {
      remaining -= total;
      plans.push_back(std::move(plan));
      continue;
    }

    if (sequence_length(plan.type, 1) > remaining) {
      std::vector<int> feasible;
      for (int t : all_types) {
        if (p.song_type_weights[t - 1] > 0 && sequence_length(t, 1) <= remaining) feasible.push_back(t);
      }
      if (feasible.empty()) {
        if (plans.empty()) {
          throw InfeasibleParams("no song type with positive weight fits " + std::to_string(remaining) +
                                 " shots");
        }
        plans.back().shot_counts.back() += static_cast<int>(remaining);
        break;
      }
      plan.type = draw_type(rng, p.song_type_weights, feasible);
      reps = 1;
    }
    while (reps > 1 && sequence_length(plan.type, reps) > remaining) --reps;
    plan.components = make_sequence(plan.type, reps);
    plan.shot_counts.resize(plan.components.size(), lo);
    fit_counts(plan.shot_counts, remaining, hi);
    plans.push_back(std::move(plan));
    break;
  }
  return plans;
}

class Builder {
 public:
  Builder(const GenParams& p) : p_(p), rng_(p.seed) {}

  CorpusData run() {
    catalogs();
    auto plans = plan_songs(p_, rng_);
    std::size_t total_shots = p_.n_shots;
    std::size_t total_scenes = 0;
    for (const auto& s : plans) total_scenes += s.components.size();
    shot_total_ = total_shots;
    scene_total_ = total_scenes;
    occ_total_ = total_shots * std::min<std::size_t>(p_.n_dancers, 4);
    song_total_ = plans.size();

    std::size_t song_index = 0;
    while (song_index < plans.size()) {
      auto per_video = static_cast<std::size_t>(rng_.between(1, 4));
      Video v;
      v.id = make_id("v", d_.videos.size() + 1, plans.size());
      v.recording_date = Date{static_cast<int>(rng_.between(1995, 2020)),
                              static_cast<unsigned>(rng_.between(1, 12)),
                              static_cast<unsigned>(rng_.between(1, 28))};
      v.description = "Recital " + std::to_string(d_.videos.size() + 1);
      Tick t = 0;
      for (std::size_t n = 0; n < per_video && song_index < plans.size(); ++n, ++song_index) {
        v.compound_scene_ids.push_back(song(plans[song_index], v.id, t));
      }
      v.life_span = {0, t};
      d_.videos.emplace(v.id, std::move(v));
    }
    return std::move(d_);
  }

 private:
  void catalogs() {
    for (std::size_t i = 1; i <= 3; ++i) {
      Musician m{make_id("m", i, 3), "Musician " + std::to_string(i), "Chennai", i % 2 ? "male" : "female",
                 "044-" + std::to_string(2400000 + i)};
      d_.musicians.emplace(m.id, m);
    }
    for (std::size_t i = 1; i <= p_.n_dancers; ++i) {
      Dancer dn;
      dn.id = make_id("d", i, p_.n_dancers);
      dn.name = kDancerNames[(i - 1) % kDancerNames.size()];
      if (i > kDancerNames.size()) dn.name += " " + std::to_string(i);
      dn.age = static_cast<int>(rng_.between(16, 45));
      dn.sex = rng_.chance(0.8) ? "female" : "male";
      dancer_ids_.push_back(dn.id);
      d_.dancers.emplace(dn.id, std::move(dn));
    }
    for (std::size_t i = 0; i < kBackgroundNames.size(); ++i) {
      Background b;
      b.id = make_id("bg", i + 1, kBackgroundNames.size());
      b.name = kBackgroundNames[i];
      b.location = "Location " + std::to_string(i + 1);
      if (rng_.chance(0.5)) b.location_existence = TimeInterval{0, rng_.between(1'000'000, 10'000'000)};
      background_ids_.push_back(b.id);
      d_.backgrounds.emplace(b.id, std::move(b));
    }
    for (std::size_t i = 0; i < kCostumeNames.size(); ++i) {
      Costume co{make_id("co", i + 1, kCostumeNames.size()), kCostumeNames[i], ""};
      costume_ids_.push_back(co.id);
      d_.costumes.emplace(co.id, std::move(co));
    }
    for (std::size_t i = 0; i < kInstrumentNames.size(); ++i) {
      Instrument in{make_id("in", i + 1, kInstrumentNames.size()), kInstrumentNames[i], ""};
      instrument_ids_.push_back(in.id);
      d_.instruments.emplace(in.id, std::move(in));
    }
    std::map<std::string, int> used;
    for (std::size_t i = 1; i <= p_.n_step_defs; ++i) {
      StepDefinition s;
      s.id = make_id("st", i, p_.n_step_defs);
      s.step_class = kAllStepClasses[rng_.below(5)];
      s.name = rng_.pick(step_names(s.step_class));
      if (int n = ++used[s.name]; n > 1) s.name += " " + std::to_string(n);
      s.movement = std::string(to_string(s.step_class)) + " movement";
      std::string side = rng_.chance(0.5) ? "left " : "right ";
      switch (s.step_class) {
        case StepClass::PY: {
          auto part = rng_.pick(kPeythamParts);
          if ((part == "eye" || part == "eyebrow") && rng_.chance(0.5)) part = side + part;
          s.body_parts = {part};
          break;
        }
        case StepClass::ASHA: s.body_parts = {side + "hand fingers"}; break;
        case StepClass::SHA: s.body_parts = {"left hand fingers", "right hand fingers"}; break;
        case StepClass::AD: s.body_parts = {"legs", "hands"}; break;
        case StepClass::CS:
          s.body_parts = {rng_.pick(kCasualParts)};
          if (rng_.chance(0.5)) s.body_parts.insert(rng_.pick(kCasualParts));
          break;
      }
      step_ids_.push_back(s.id);
      d_.step_defs.emplace(s.id, std::move(s));
    }
  }

  // Returns the compound scene ID; advances `t`.
  Id song(const SongPlan& plan, const Id& video_id, Tick& t) {
    Song sg;
    sg.id = make_id("sg", d_.songs.size() + 1, song_total_);
    sg.name = "Song " + std::to_string(d_.songs.size() + 1);
    sg.musician_id = make_id("m", rng_.between(1, 3), 3);
    CompoundScene cs;
    cs.id = make_id("cs", d_.compound_scenes.size() + 1, song_total_);
    cs.video_id = video_id;
    cs.song_id = sg.id;
    cs.description = "Type " + std::to_string(plan.type) + " song";
    d_.songs.emplace(sg.id, std::move(sg));

    std::vector<Id> cast = dancer_ids_;
    std::size_t cast_size = static_cast<std::size_t>(rng_.between(1, static_cast<std::int64_t>(std::min<std::size_t>(cast.size(), 4))));
    for (std::size_t i = 0; i < cast_size; ++i) {
      std::swap(cast[i], cast[i + rng_.below(cast.size() - i)]);
    }
    cast.resize(cast_size);
    std::sort(cast.begin(), cast.end());

    for (std::size_t i = 0; i < plan.components.size(); ++i) {
      cs.scene_ids.push_back(scene(plan.components[i], plan.shot_counts[i], cs.id, cast, t));
    }
    Id id = cs.id;
    d_.compound_scenes.emplace(id, std::move(cs));
    return id;
  }

  Id scene(SongComponent component, int n_shots, const Id& cs_id, const std::vector<Id>& cast, Tick& t) {
    Scene sc;
    sc.id = make_id("sc", d_.scenes.size() + 1, scene_total_);
    sc.compound_scene_id = cs_id;
    sc.component = component;
    sc.background_id = rng_.pick(background_ids_);
    sc.life_span.start = t;

    std::set<Id> present_in_scene;
    std::vector<Id> previous_steps;
    for (int k = 0; k < n_shots; ++k) {
      Shot sh;
      sh.id = make_id("sh", d_.shots.size() + 1, shot_total_);
      sh.scene_id = sc.id;
      Tick duration = rng_.between(15, 60) * 100;
      sh.life_span = {t, t + duration};
      t += duration;
      for (const auto& dn : cast) {
        if (rng_.chance(0.8)) sh.dancer_ids.insert(dn);
      }
      if (sh.dancer_ids.empty()) sh.dancer_ids.insert(rng_.pick(cast));

      std::vector<Id> steps_here;
      for (const auto& dn : sh.dancer_ids) {
        if (!rng_.chance(0.8)) continue;
        StepOccurrence occ;
        occ.occ_id = make_id("oc", ++occ_count_, occ_total_);
        occ.shot_id = sh.id;
        occ.dancer_id = dn;
        occ.step_def_id = !previous_steps.empty() && rng_.chance(0.35) ? rng_.pick(previous_steps)
                                                                       : rng_.pick(step_ids_);
        occ.posture = rng_.pick(kPostures);
        occ.reflexion = rng_.pick(kReflexions);
        if (rng_.chance(0.25)) occ.instrument_id = rng_.pick(instrument_ids_);
        steps_here.push_back(occ.step_def_id);
        sh.occurrences.push_back(std::move(occ));
      }
      if (!steps_here.empty()) previous_steps = std::move(steps_here);

      std::vector<Id> here(sh.dancer_ids.begin(), sh.dancer_ids.end());
      for (std::size_t a = 0; a < here.size(); ++a) {
        for (std::size_t b = a + 1; b < here.size(); ++b) {
          if (!rng_.chance(0.25)) continue;
          SpatialTriplet tr{here[a], here[b], kAllSpatialRelations[rng_.below(6)]};
          if (rng_.chance(0.5)) std::swap(tr.dancer1, tr.dancer2);
          sh.spatial_triplets.push_back(tr);
        }
      }
      present_in_scene.insert(sh.dancer_ids.begin(), sh.dancer_ids.end());
      sc.shot_ids.push_back(sh.id);
      d_.shots.emplace(sh.id, std::move(sh));
    }
    sc.life_span.end = t;
    for (const auto& dn : present_in_scene) {
      auto& worn = sc.costume_map[dn];
      worn.insert(rng_.pick(costume_ids_));
      if (rng_.chance(0.3)) worn.insert(rng_.pick(costume_ids_));
    }
    Id id = sc.id;
    d_.scenes.emplace(id, std::move(sc));
    return id;
  }

  const GenParams& p_;
  SplitMix64 rng_;
  CorpusData d_;
  std::vector<Id> dancer_ids_, background_ids_, costume_ids_, instrument_ids_, step_ids_;
  std::size_t shot_total_ = 0, scene_total_ = 0, occ_total_ = 0, song_total_ = 0;
  std::size_t occ_count_ = 0;
};

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SplitMix64::below(0)");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double SplitMix64::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

void check_params(const GenParams& p) {
  if (p.n_shots == 0) throw InfeasibleParams("n_shots must be positive");
  if (p.n_dancers == 0) throw InfeasibleParams("shots need at least one dancer");
  if (p.n_step_defs == 0) throw InfeasibleParams("n_step_defs must be positive");
  auto [lo, hi] = p.shots_per_scene_range;
  if (lo < 1 || lo > hi) {
    throw InfeasibleParams("shots_per_scene_range must satisfy 1 <= min <= max");
  }
  double total = 0;
  for (double w : p.song_type_weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw InfeasibleParams("song type weights must be finite and non-negative");
    total += w;
  }
  if (total <= 0) throw InfeasibleParams("song type weights are all zero");
}

CorpusData generate_corpus_data(const GenParams& p) {
  check_params(p);
  return Builder(p).run();
}

Corpus generate_corpus(const GenParams& p) { return Corpus(generate_corpus_data(p)); }

}  // namespace dvcm
