#include "dvcm/query_language.hpp"

namespace dvcm {
namespace {

std::string literal(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string arg(std::string_view name, std::string_view value) {
  return std::string(name) + "=" + literal(value);
}

struct AtomPrinter {
  std::string operator()(const FacetAtom& a) const { return arg(to_string(a.facet), a.key); }

  std::string operator()(const StepAtom& a) const {
    if (const auto* cls = std::get_if<StepClass>(&a.target)) return arg("step_class", to_string(*cls));
    return arg("step", std::get<std::string>(a.target));
  }

  std::string operator()(const DancerPairAtom& a) const {
    return "(" + arg("dancer", a.dancer) + " and " + arg(to_string(a.paired), a.key) + ")";
  }
};

std::string print_expr(const QueryExpr& e) {
  switch (e.op()) {
    case QueryExpr::Op::atom: return std::visit(AtomPrinter{}, e.atom());
    case QueryExpr::Op::any_of:
      return "(" + print_expr(e.left()) + " or " + print_expr(e.right()) + ")";
    case QueryExpr::Op::all_of: {
      auto right = print_expr(e.right());
      if (e.right().op() == QueryExpr::Op::all_of) right = "(" + right + ")";
      return print_expr(e.left()) + " and " + right;
    }
  }
  return {};
}

std::string print_temporal(const TemporalQuery& q) {
  std::string out = std::string(to_string(q.kind)) + "(" + arg("dancer", q.dancer_a) + ", " +
                    arg("dancer", q.dancer_b);
  if (q.step) out += ", " + arg("step", *q.step);
  return out + ")";
}

std::string print_spatial(const SpatialQuery& q) {
  std::string out = "spatial(" + arg("dancer", q.dancer_a) + ", " + arg("relation", to_string(q.relation)) +
                    ", " + arg("dancer", q.dancer_b);
  if (q.require_performing) out += ", " + arg("performing", "true");
  return out + ")";
}

struct BodyPrinter {
  std::string operator()(const QueryExpr& e) const { return print_expr(e); }
  std::string operator()(const TemporalQuery& q) const { return print_temporal(q); }
  std::string operator()(const SpatialQuery& q) const { return print_spatial(q); }
  std::string operator()(const SpatiotemporalQuery& q) const {
    return print_temporal(q.temporal) + " and " + print_spatial(q.spatial);
  }
};

std::string_view granularity_word(Granularity g) {
  switch (g) {
    case Granularity::shot: return "shots";
    case Granularity::scene: return "scenes";
    case Granularity::compound_scene: return "cscenes";
  }
  return "shots";
}

}  // namespace

std::string print_query(const ParsedQuery& q) {
  return "find " + std::string(granularity_word(q.vg)) + " where " + std::visit(BodyPrinter{}, q.body);
}

}  // namespace dvcm
