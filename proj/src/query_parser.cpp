#include <algorithm>
#include <array>
#include <cctype>

#include "dvcm/normalize.hpp"
#include "dvcm/query_language.hpp"

namespace dvcm {
namespace {

enum class Tok { ident, string, eq, lparen, rparen, comma, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;  // identifier text or unescaped string value
  int line = 1;
  int col = 1;
  int length = 0;
};

const std::string kString = "STRING";
const std::string kEnd = "end of input";
const std::string kFacetName = "facet name";
const std::string kRelationName = "relation name";
const std::string kTemporalName = "temporal relation name";

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::ident: return t.text;
    case Tok::string: {
      std::string out = "\"";
      for (char ch : t.text) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
      }
      return out + "\"";
    }
    case Tok::eq: return quoted("=");
    case Tok::lparen: return quoted("(");
    case Tok::rparen: return quoted(")");
    case Tok::comma: return quoted(",");
    case Tok::end: return kEnd;
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char ch = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          bump();
        }
        t.kind = Tok::ident;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (ch == '"') {
        t.kind = Tok::string;
        t.text = read_string(t);
      } else if (ch == '=' || ch == '(' || ch == ')' || ch == ',') {
        t.kind = ch == '=' ? Tok::eq : ch == '(' ? Tok::lparen : ch == ')' ? Tok::rparen : Tok::comma;
        bump();
      } else {
        std::size_t len = 1;
        while (pos_ + len < text_.size() && (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80) {
          ++len;
        }
        throw QuerySyntaxError(line_, col_,
                               {kFacetName, kRelationName, kString, quoted("="), quoted("("),
                                quoted(")"), quoted(",")},
                               quoted(text_.substr(pos_, len)));
      }
      t.length = col_ - t.col;
      out.push_back(std::move(t));
    }
  }

 private:
  void bump() {
    char ch = text_[pos_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
  }

  std::string read_string(const Token& t) {
    bump();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) {
        throw QuerySyntaxError(line_, col_, {quoted("\"")}, kEnd);
      }
      char ch = text_[pos_];
      if (ch == '"') {
        bump();
        return value;
      }
      if (ch == '\\') {
        int line = line_, col = col_;
        bump();
        if (pos_ >= text_.size()) throw QuerySyntaxError(line_, col_, {quoted("\""), quoted("\\")}, kEnd);
        char esc = text_[pos_];
        if (esc != '"' && esc != '\\') {
          throw QuerySyntaxError(line, col, {"\\\"", "\\\\"}, "\\" + std::string(1, esc));
        }
        value += esc;
        bump();
        continue;
      }
      value += ch;
      bump();
    }
    (void)t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct ArgSpec {
  std::string_view name;
  int max_count;
  int required;
};

constexpr std::array<ArgSpec, 2> kTemporalArgs = {{{"dancer", 2, 2}, {"step", 1, 0}}};
constexpr std::array<ArgSpec, 3> kSpatialArgs = {
    {{"dancer", 2, 2}, {"relation", 1, 1}, {"performing", 1, 0}}};

struct CallArg {
  std::string name;
  Token value;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParsedQuery run() {
    expect_word("find");
    Granularity vg = granularity();
    expect_word("where");
    QueryBody body = this->body();
    if (peek().kind != Tok::end) {
      if (std::holds_alternative<QueryExpr>(body)) fail({quoted("and"), quoted("or"), kEnd});
      fail({kEnd});
    }
    return ParsedQuery{vg, std::move(body), std::move(spans_)};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  Token advance() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const { fail_at(peek(), std::move(expected)); }

  [[noreturn]] static void fail_at(const Token& t, std::vector<std::string> expected) {
    throw QuerySyntaxError(t.line, t.col, std::move(expected), describe(t));
  }

  bool at_word(std::string_view w) const {
    return peek().kind == Tok::ident && lower(peek().text) == w;
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail({quoted(w)});
    advance();
  }

  void expect(Tok kind, std::string_view shown) {
    if (peek().kind != kind) fail({quoted(shown)});
    advance();
  }

  Token expect_string() {
    if (peek().kind != Tok::string) fail({kString});
    return advance();
  }

  Granularity granularity() {
    if (at_word("shots")) return advance(), Granularity::shot;
    if (at_word("scenes")) return advance(), Granularity::scene;
    if (at_word("cscenes")) return advance(), Granularity::compound_scene;
    fail({quoted("shots"), quoted("scenes"), quoted("cscenes")});
  }

  static bool is_facet(std::string_view w) {
    if (w == "step" || w == "step_class") return true;
    return std::any_of(std::begin(kAllFacets), std::end(kAllFacets),
                       [&](Facet f) { return to_string(f) == w; });
  }

  static bool is_relation(std::string_view w) { return w == "spatial" || parse_temporal_kind(w).has_value(); }

  QueryBody body() {
    if (peek().kind == Tok::ident) {
      auto w = lower(peek().text);
      if (is_relation(w)) return relation_body();
      if (is_facet(w)) return or_expr();
    } else if (peek().kind == Tok::lparen) {
      return or_expr();
    }
    fail({kFacetName, kRelationName, quoted("(")});
  }

  QueryExpr or_expr() {
    QueryExpr left = and_expr();
    while (at_word("or")) {
      advance();
      left = QueryExpr::any_of(std::move(left), and_expr());
    }
    return left;
  }

  QueryExpr and_expr() {
    QueryExpr left = atom();
    while (at_word("and")) {
      advance();
      left = QueryExpr::all_of(std::move(left), atom());
    }
    return left;
  }

  QueryExpr atom() {
    if (peek().kind == Tok::lparen) {
      advance();
      QueryExpr inner = or_expr();
      if (peek().kind != Tok::rparen) fail({quoted("and"), quoted("or"), quoted(")")});
      advance();
      return inner;
    }
    if (peek().kind != Tok::ident || !is_facet(lower(peek().text))) fail({kFacetName, quoted("(")});
    Token name = advance();
    expect(Tok::eq, "=");
    Token value = expect_string();
    spans_.push_back({name.line, name.col, span_length(name, value)});

    auto facet = lower(name.text);
    if (facet == "step_class") {
      auto cls = parse_step_class(normalize_term(value.text));
      if (!cls) {
        std::vector<std::string> names;
        for (auto c : kAllStepClasses) names.push_back(quoted(to_string(c)));
        fail_at(value, std::move(names));
      }
      return QueryAtom{StepAtom{*cls}};
    }
    bool body_part = facet == "body_part";
    auto key = body_part ? normalize_body_part(value.text) : normalize_term(value.text);
    if (key.empty()) fail_at(value, {"non-empty " + kString});
    if (facet == "step") return QueryAtom{StepAtom{key}};
    for (auto f : kAllFacets) {
      if (to_string(f) == facet) return QueryAtom{FacetAtom{f, key}};
    }
    fail_at(name, {kFacetName});
  }

  static int span_length(const Token& first, const Token& last) {
    if (first.line != last.line) return first.length;
    return last.col + last.length - first.col;
  }

  // Returns the call name token and its arguments.
  template <std::size_t N>
  std::vector<CallArg> call_args(const std::array<ArgSpec, N>& specs) {
    Token open = peek();
    expect(Tok::lparen, "(");
    std::array<int, N> counts{};
    std::vector<CallArg> args;
    auto remaining = [&] {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < N; ++i) {
        if (counts[i] < specs[i].max_count) names.emplace_back(specs[i].name);
      }
      return names;
    };
    while (true) {
      if (peek().kind != Tok::ident) fail(remaining());
      auto name = lower(peek().text);
      std::size_t idx = N;
      for (std::size_t i = 0; i < N; ++i) {
        if (specs[i].name == name && counts[i] < specs[i].max_count) idx = i;
      }
      if (idx == N) fail(remaining());
      advance();
      ++counts[idx];
      expect(Tok::eq, "=");
      args.push_back({name, expect_string()});
      if (peek().kind == Tok::comma) {
        if (remaining().empty()) fail({quoted(")")});
        advance();
        continue;
      }
      if (peek().kind != Tok::rparen) fail({quoted(","), quoted(")")});
      std::vector<std::string> missing;
      for (std::size_t i = 0; i < N; ++i) {
        if (counts[i] < specs[i].required) missing.emplace_back(specs[i].name);
      }
      if (!missing.empty()) fail(std::move(missing));
      advance();
      (void)open;
      return args;
    }
  }

  std::string key_arg(const Token& value) {
    auto key = normalize_term(value.text);
    if (key.empty()) fail_at(value, {"non-empty " + kString});
    return key;
  }

  TemporalQuery temporal_call(const TemporalKind& kind) {
    TemporalQuery q;
    q.kind = kind;
    int dancers = 0;
    for (const auto& arg : call_args(kTemporalArgs)) {
      if (arg.name == "dancer") {
        (dancers++ == 0 ? q.dancer_a : q.dancer_b) = key_arg(arg.value);
      } else {
        q.step = key_arg(arg.value);
      }
    }
    return q;
  }

  SpatialQuery spatial_call() {
    SpatialQuery q;
    int dancers = 0;
    for (const auto& arg : call_args(kSpatialArgs)) {
      if (arg.name == "dancer") {
        (dancers++ == 0 ? q.dancer_a : q.dancer_b) = key_arg(arg.value);
      } else if (arg.name == "relation") {
        auto rel = parse_spatial_relation(normalize_term(arg.value.text));
        if (!rel) {
          std::vector<std::string> names;
          for (auto r : kAllSpatialRelations) names.push_back(quoted(to_string(r)));
          fail_at(arg.value, std::move(names));
        }
        q.relation = *rel;
      } else {
        auto flag = normalize_term(arg.value.text);
        if (flag != "true" && flag != "false") fail_at(arg.value, {quoted("true"), quoted("false")});
        q.require_performing = flag == "true";
      }
    }
    return q;
  }

  std::variant<TemporalQuery, SpatialQuery> relation_call() {
    Token name = advance();
    auto w = lower(name.text);
    std::variant<TemporalQuery, SpatialQuery> out;
    if (w == "spatial") {
      out = spatial_call();
    } else {
      out = temporal_call(*parse_temporal_kind(w));
    }
    const Token& last = toks_[pos_ > 0 ? pos_ - 1 : 0];
    spans_.push_back({name.line, name.col, span_length(name, last)});
    return out;
  }

  QueryBody relation_body() {
    auto first = relation_call();
    if (!at_word("and")) {
      return std::visit([](auto&& q) -> QueryBody { return std::move(q); }, std::move(first));
    }
    advance();
    bool first_spatial = std::holds_alternative<SpatialQuery>(first);
    if (peek().kind != Tok::ident) fail({first_spatial ? kTemporalName : quoted("spatial")});
    auto w = lower(peek().text);
    bool second_spatial = w == "spatial";
    if (!is_relation(w) || second_spatial == first_spatial) {
      fail({first_spatial ? kTemporalName : quoted("spatial")});
    }
    auto second = relation_call();
    if (first_spatial) {
      return SpatiotemporalQuery{std::get<TemporalQuery>(second), std::get<SpatialQuery>(first)};
    }
    return SpatiotemporalQuery{std::get<TemporalQuery>(first), std::get<SpatialQuery>(second)};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<SourceSpan> spans_;
};

std::string render_expected(const std::vector<std::string>& expected) {
  if (expected.size() == 1) return expected.front();
  std::string out = "{";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += ", ";
    out += expected[i];
  }
  return out + "}";
}

}  // namespace

QuerySyntaxError::QuerySyntaxError(int line, int column, std::vector<std::string> expected,
                                   std::string found)
    : QueryError("line " + std::to_string(line) + ", col " + std::to_string(column) +
                 ": expected " + render_expected(expected) + ", found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ParsedQuery parse_query(std::string_view text) { return Parser(Lexer(text).run()).run(); }

}  // namespace dvcm
