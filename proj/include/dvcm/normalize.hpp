#pragma once

// Facet key normalization shared by the inverted files, both query engines
// and the query parser. Keys only ever compare in normalized form.

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dvcm {

/// ASCII case-fold, trim, and collapse internal whitespace runs to one space.
std::string normalize_term(std::string_view text);

/// normalize_term plus removal of the laterality words "left" and "right",
/// so "Left  Eye" and "right eye" both become "eye". A key consisting only of
/// laterality words is kept as-is.
std::string normalize_body_part(std::string_view text);

/// Reflexion synonym groups. Expanding a term yields the union of every group
/// that contains it, plus the term itself.
class SynonymTable {
 public:
  SynonymTable() = default;

  /// {romantic, joy, happy, delighted}
  static SynonymTable defaults();
  /// JSON object mapping term -> [terms]; each entry is one group.
  static SynonymTable from_json(std::string_view text);
  static SynonymTable from_file(const std::filesystem::path& path);
  /// File named by DVCM_SYNONYMS if set, otherwise defaults().
  static SynonymTable from_environment();

  void add_group(const std::vector<std::string>& terms);

  /// Normalized, sorted, duplicate-free.
  std::vector<std::string> expand(std::string_view term) const;

  bool operator==(const SynonymTable&) const = default;

 private:
  std::vector<std::set<std::string>> groups_;
};

}  // namespace dvcm
