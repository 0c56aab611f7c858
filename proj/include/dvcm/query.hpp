#pragma once

// Query AST shared by the parser, the printer and both execution engines.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dvcm/model.hpp"
#include "dvcm/temporal.hpp"

namespace dvcm {

class QueryError : public Error {
 public:
  using Error::Error;
};

/// Type1 facets. `song` selects every shot of the songs matching the key.
enum class Facet { dancer, body_part, posture, reflexion, instrument, background, costume, song };

inline constexpr Facet kAllFacets[] = {Facet::dancer,     Facet::body_part,  Facet::posture,
                                       Facet::reflexion,  Facet::instrument, Facet::background,
                                       Facet::costume,    Facet::song};

std::string_view to_string(Facet f);

/// Type1: a shot matches when its object record (or its owning scene / song)
/// carries the key.
struct FacetAtom {
  Facet facet = Facet::dancer;
  std::string key;

  bool operator==(const FacetAtom&) const = default;
};

/// Type2: a shot matches when it contains an occurrence of the step
/// definition (by id or name) or of any definition of the class.
struct StepAtom {
  std::variant<std::string, StepClass> target;

  bool operator==(const StepAtom&) const = default;
};

enum class PairedAttribute { step_def, step_class, posture, reflexion };

std::string_view to_string(PairedAttribute p);

/// Type3: one occurrence must bind both the dancer and the attribute.
struct DancerPairAtom {
  std::string dancer;
  PairedAttribute paired = PairedAttribute::step_def;
  std::string key;

  bool operator==(const DancerPairAtom&) const = default;
};

using QueryAtom = std::variant<FacetAtom, StepAtom, DancerPairAtom>;

/// Immutable boolean tree over atoms. Subtrees are shared, so copies are cheap.
class QueryExpr {
 public:
  enum class Op { atom, all_of, any_of };

  QueryExpr(QueryAtom atom);  // NOLINT(google-explicit-constructor)

  static QueryExpr all_of(QueryExpr left, QueryExpr right);
  static QueryExpr any_of(QueryExpr left, QueryExpr right);

  Op op() const { return op_; }
  const QueryAtom& atom() const;
  const QueryExpr& left() const;
  const QueryExpr& right() const;

  std::size_t atom_count() const;
  std::size_t depth() const;

  friend bool operator==(const QueryExpr& a, const QueryExpr& b);

 private:
  struct Branches;

  QueryExpr(Op op, QueryExpr left, QueryExpr right);

  Op op_;
  std::optional<QueryAtom> atom_;
  std::shared_ptr<const Branches> branches_;
};

struct QueryExpr::Branches {
  QueryExpr left;
  QueryExpr right;
};

struct TemporalQuery {
  TemporalKind kind = SemanticRelation::follows;
  std::string dancer_a;
  std::string dancer_b;
  std::optional<std::string> step;

  bool operator==(const TemporalQuery&) const = default;
};

struct SpatialQuery {
  std::string dancer_a;
  SpatialRelation relation = SpatialRelation::left_of;
  std::string dancer_b;
  bool require_performing = false;

  bool operator==(const SpatialQuery&) const = default;
};

struct SpatiotemporalQuery {
  TemporalQuery temporal;
  SpatialQuery spatial;

  bool operator==(const SpatiotemporalQuery&) const = default;
};

using QueryBody = std::variant<QueryExpr, TemporalQuery, SpatialQuery, SpatiotemporalQuery>;

struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;
};

struct ParsedQuery {
  Granularity vg = Granularity::shot;
  QueryBody body;
  /// Source position of every atom / relation call, left to right.
  std::vector<SourceSpan> spans;

  /// Structural equality; spans are ignored.
  friend bool operator==(const ParsedQuery& a, const ParsedQuery& b) {
    return a.vg == b.vg && a.body == b.body;
  }
};

struct ResultSet {
  Granularity granularity = Granularity::shot;
  std::vector<Id> ids;

  bool operator==(const ResultSet&) const = default;
};

}  // namespace dvcm
