#include "dvcm/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dvcm/errors.hpp"

namespace dvcm {
namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

std::string normalize_term(std::string_view text) {
  auto words = split_words(text);
  for (auto& w : words) {
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  return join(words);
}

std::string normalize_body_part(std::string_view text) {
  auto words = split_words(normalize_term(text));
  std::vector<std::string> kept;
  std::copy_if(words.begin(), words.end(), std::back_inserter(kept),
               [](const std::string& w) { return w != "left" && w != "right"; });
  return kept.empty() ? join(words) : join(kept);
}

SynonymTable SynonymTable::defaults() {
  SynonymTable table;
  table.add_group({"romantic", "joy", "happy", "delighted"});
  return table;
}

SynonymTable SynonymTable::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("synonyms", e.what());
  }
  if (!doc.is_object()) throw ParseError("synonyms", "expected an object of term -> [terms]");
  SynonymTable table;
  for (const auto& [term, values] : doc.items()) {
    if (!values.is_array()) throw ParseError("synonyms." + term, "expected an array of terms");
    std::vector<std::string> group{term};
    for (const auto& v : values) {
      if (!v.is_string()) throw ParseError("synonyms." + term, "expected string terms");
      group.push_back(v.get<std::string>());
    }
    table.add_group(group);
  }
  return table;
}

SynonymTable SynonymTable::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open synonym file");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

SynonymTable SynonymTable::from_environment() {
  const char* path = std::getenv("DVCM_SYNONYMS");
  if (path == nullptr || *path == '\0') return defaults();
  return from_file(path);
}

void SynonymTable::add_group(const std::vector<std::string>& terms) {
  std::set<std::string> group;
  for (const auto& t : terms) {
    auto n = normalize_term(t);
    if (!n.empty()) group.insert(std::move(n));
  }
  if (!group.empty()) groups_.push_back(std::move(group));
}

std::vector<std::string> SynonymTable::expand(std::string_view term) const {
  auto key = normalize_term(term);
  std::set<std::string> out{key};
  for (const auto& g : groups_) {
    if (g.contains(key)) out.insert(g.begin(), g.end());
  }
  return {out.begin(), out.end()};
}

}  // namespace dvcm
