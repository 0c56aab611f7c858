#include "dvcm/query.hpp"

#include <algorithm>

namespace dvcm {

std::string_view to_string(Facet f) {
  switch (f) {
    case Facet::dancer: return "dancer";
    case Facet::body_part: return "body_part";
    case Facet::posture: return "posture";
    case Facet::reflexion: return "reflexion";
    case Facet::instrument: return "instrument";
    case Facet::background: return "background";
    case Facet::costume: return "costume";
    case Facet::song: return "song";
  }
  return "?";
}

std::string_view to_string(PairedAttribute p) {
  switch (p) {
    case PairedAttribute::step_def: return "step";
    case PairedAttribute::step_class: return "step_class";
    case PairedAttribute::posture: return "posture";
    case PairedAttribute::reflexion: return "reflexion";
  }
  return "?";
}

QueryExpr::QueryExpr(QueryAtom atom) : op_(Op::atom), atom_(std::move(atom)) {}

QueryExpr::QueryExpr(Op op, QueryExpr left, QueryExpr right)
    : op_(op), branches_(std::make_shared<const Branches>(Branches{std::move(left), std::move(right)})) {}

QueryExpr QueryExpr::all_of(QueryExpr left, QueryExpr right) {
  return QueryExpr(Op::all_of, std::move(left), std::move(right));
}

QueryExpr QueryExpr::any_of(QueryExpr left, QueryExpr right) {
  return QueryExpr(Op::any_of, std::move(left), std::move(right));
}

const QueryAtom& QueryExpr::atom() const {
  if (op_ != Op::atom) throw std::logic_error("QueryExpr is not an atom");
  return *atom_;
}

const QueryExpr& QueryExpr::left() const {
  if (op_ == Op::atom) throw std::logic_error("QueryExpr atom has no operands");
  return branches_->left;
}

const QueryExpr& QueryExpr::right() const {
  if (op_ == Op::atom) throw std::logic_error("QueryExpr atom has no operands");
  return branches_->right;
}

std::size_t QueryExpr::atom_count() const {
  if (op_ == Op::atom) return 1;
  return left().atom_count() + right().atom_count();
}

std::size_t QueryExpr::depth() const {
  if (op_ == Op::atom) return 0;
  return 1 + std::max(left().depth(), right().depth());
}

bool operator==(const QueryExpr& a, const QueryExpr& b) {
  if (a.op_ != b.op_) return false;
  if (a.op_ == QueryExpr::Op::atom) return *a.atom_ == *b.atom_;
  return a.left() == b.left() && a.right() == b.right();
}

}  // namespace dvcm
