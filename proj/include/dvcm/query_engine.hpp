#pragma once

// Query execution by sequential scan of the shot records or through the
// inverted files. Both containment engines return identical results for
// every corpus and expression; that equivalence is what the tests pin down.
//
// Boolean operators combine at shot level; the result is lifted to the
// requested granularity last.

#include "dvcm/inverted_index.hpp"
#include "dvcm/model.hpp"
#include "dvcm/normalize.hpp"
#include "dvcm/query.hpp"

namespace dvcm {

const SynonymTable& default_synonyms();

/// Rewrites every AND whose operands are a dancer atom and a step, step_class,
/// posture or reflexion atom into a DancerPairAtom, so both must hold on the
/// same occurrence. Applied by both engines before execution.
QueryExpr bind_dancer_pairs(const QueryExpr& expr);

/// Throws QueryError for an atom whose key normalizes to empty.
ResultSet exec_containment_seq(const Corpus& c, const QueryExpr& q, Granularity vg,
                               const SynonymTable& synonyms = default_synonyms());

/// Throws FingerprintMismatch if `ix` was built from a different corpus.
ResultSet exec_containment_indexed(const Corpus& c, const IndexSet& ix, const QueryExpr& q,
                                   Granularity vg);

/// Dancer keys must resolve to exactly one dancer each, and to two different
/// dancers. Throws UnknownIdError for an unknown dancer or step, QueryError
/// for ambiguous or identical dancers.
ResultSet exec_temporal(const Corpus& c, const TemporalQuery& q, Granularity vg);

/// Triplets are matched as stored; converses are not inferred.
ResultSet exec_spatial(const Corpus& c, const SpatialQuery& q, Granularity vg);

ResultSet exec_spatiotemporal(const Corpus& c, const SpatiotemporalQuery& q, Granularity vg);

/// Dispatches on the query form. Containment queries go through `ix` when
/// given, otherwise through the sequential engine.
ResultSet execute(const Corpus& c, const ParsedQuery& q, const IndexSet* ix = nullptr,
                  const SynonymTable& synonyms = default_synonyms());

}  // namespace dvcm
