#pragma once

// Textual query language.
//
//   query    := "find" GRAN "where" body
//   GRAN     := "shots" | "scenes" | "cscenes"
//   body     := orExpr | relCall ["and" relCall]
//   orExpr   := andExpr {"or" andExpr}
//   andExpr  := atom {"and" atom}
//   atom     := FACET "=" STRING | "(" orExpr ")"
//   relCall  := RELNAME "(" namedArg {"," namedArg} ")"
//   namedArg := NAME "=" STRING
//
//   FACET    := dancer | body_part | posture | reflexion | instrument
//             | background | costume | step | step_class | song
//   RELNAME  := follows | repeats | follows_steps | repeats_steps
//             | performs_same | performs_different | performs_same_steps
//             | performs_different_steps | observes | <interval relation>
//             | spatial
//
// Temporal calls take dancer= twice and an optional step=. spatial takes
// dancer=, relation=, dancer= and an optional performing="true"|"false".
// Two calls joined by "and" form a spatiotemporal query and must be one
// temporal call and one spatial call. Keywords and names are
// case-insensitive; keys are normalized on parse.

#include <string>
#include <string_view>
#include <vector>

#include "dvcm/query.hpp"

namespace dvcm {

/// "line L, col C: expected <set>, found <token>"
class QuerySyntaxError : public QueryError {
 public:
  QuerySyntaxError(int line, int column, std::vector<std::string> expected, std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Throws QuerySyntaxError; never crashes on arbitrary input.
ParsedQuery parse_query(std::string_view text);

/// Canonical text. parse_query(print_query(q)) == q for every query the
/// parser can produce. DancerPairAtom prints as a parenthesized "and".
std::string print_query(const ParsedQuery& q);

}  // namespace dvcm
