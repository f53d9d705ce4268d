#include <algorithm>
#include <cctype>
#include <map>

#include "tdx/error.hpp"
#include "tdx/mapping.hpp"

namespace tdx {

namespace {

struct Token {
  enum class Kind { Ident, Existential, Temporal, Quoted, LParen, RParen, Comma, Dot, Arrow, Turnstile, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case Token::Kind::Ident: return "'" + tok.text + "'";
    case Token::Kind::Existential: return "'?" + tok.text + "'";
    case Token::Kind::Temporal: return "'@" + tok.text + "'";
    case Token::Kind::Quoted: return "constant '" + tok.text + "'";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::Comma: return "','";
    case Token::Kind::Dot: return "'.'";
    case Token::Kind::Arrow: return "'->'";
    case Token::Kind::Turnstile: return "':-'";
    case Token::Kind::End: return "end of input";
  }
  return "token";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      const auto line = line_, column = column_;
      if (at_end()) {
        out.push_back({Token::Kind::End, "", line, column});
        return out;
      }
      const char c = peek();
      auto single = [&](Token::Kind k) {
        advance();
        out.push_back({k, std::string(1, c), line, column});
      };
      if (c == '(') {
        single(Token::Kind::LParen);
      } else if (c == ')') {
        single(Token::Kind::RParen);
      } else if (c == ',') {
        single(Token::Kind::Comma);
      } else if (c == '.') {
        single(Token::Kind::Dot);
      } else if (c == '-' && peek(1) == '>') {
        advance(2);
        out.push_back({Token::Kind::Arrow, "->", line, column});
      } else if (c == ':' && peek(1) == '-') {
        advance(2);
        out.push_back({Token::Kind::Turnstile, ":-", line, column});
      } else if (c == '?' || c == '@') {
        advance();
        if (at_end() || !ident_start(peek()))
          throw ParseError(line, column, std::string("expected a name after '") + c + "'");
        out.push_back({c == '?' ? Token::Kind::Existential : Token::Kind::Temporal, ident(), line, column});
      } else if (c == '\'') {
        out.push_back({Token::Kind::Quoted, quoted(line, column), line, column});
      } else if (ident_start(c)) {
        out.push_back({Token::Kind::Ident, ident(), line, column});
      } else {
        throw ParseError(line, column, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  void advance(std::size_t n = 1) {
    for (; n > 0 && !at_end(); --n) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_blank() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string ident() {
    std::string s;
    while (!at_end() && ident_char(peek())) {
      s += peek();
      advance();
    }
    return s;
  }

  // 'text' with \' and \\ escapes.
  std::string quoted(std::size_t line, std::size_t column) {
    advance();
    std::string s;
    for (;;) {
      if (at_end() || peek() == '\n') throw ParseError(line, column, "unterminated constant");
      char c = peek();
      advance();
      if (c == '\'') return s;
      if (c == '\\') {
        if (at_end()) throw ParseError(line, column, "unterminated constant");
        c = peek();
        advance();
      }
      s += c;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct Loc {
  std::size_t line;
  std::size_t column;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Mapping run() {
    while (cur().kind != Token::Kind::End) statement();
    check();
    return std::move(m_);
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const { throw ParseError(at.line, at.column, msg); }

  const Token& expect(Token::Kind kind, const char* what) {
    if (cur().kind != kind) fail(cur(), std::string("expected ") + what + ", found " + describe(cur()));
    return take();
  }

  void statement() {
    const Token& kw = expect(Token::Kind::Ident, "a statement keyword");
    const Loc loc{kw.line, kw.column};
    if (kw.text == "source" || kw.text == "target") {
      schema_decl(kw.text == "source", loc);
    } else if (kw.text == "rule") {
      rule(loc);
    } else if (kw.text == "key") {
      key(loc);
    } else if (kw.text == "query") {
      query(loc);
    } else {
      fail(kw, "unknown statement '" + kw.text + "' (expected source, target, rule, key or query)");
    }
    expect(Token::Kind::Dot, "'.' at end of statement");
  }

  void schema_decl(bool is_source, Loc loc) {
    RelationSchema rel;
    rel.name = expect(Token::Kind::Ident, "a relation name").text;
    expect(Token::Kind::LParen, "'('");
    for (;;) {
      const Token& a = take();
      if (a.kind == Token::Kind::Temporal) {
        rel.temporal_attribute = a.text;
        if (cur().kind != Token::Kind::RParen) fail(cur(), "the temporal attribute @" + a.text + " must be last");
      } else if (a.kind == Token::Kind::Ident) {
        rel.attributes.push_back(a.text);
      } else {
        fail(a, "expected an attribute name, found " + describe(a));
      }
      if (cur().kind == Token::Kind::RParen) break;
      expect(Token::Kind::Comma, "',' or ')'");
    }
    const Token& close = expect(Token::Kind::RParen, "')'");
    if (rel.temporal_attribute.empty()) fail(close, "relation " + rel.name + " has no temporal attribute (mark it with @)");
    (is_source ? m_.source : m_.target).push_back(std::move(rel));
    (is_source ? source_locs_ : target_locs_).push_back(loc);
  }

  // Parses R(args..., t); records existential markers into `existentials`.
  Atom atom(std::vector<std::string>* existentials) {
    Atom a;
    a.relation = expect(Token::Kind::Ident, "a relation name").text;
    expect(Token::Kind::LParen, "'('");
    std::vector<Token> args;
    for (;;) {
      const Token& t = take();
      if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Existential && t.kind != Token::Kind::Quoted)
        fail(t, "expected a variable or constant, found " + describe(t));
      args.push_back(t);
      if (cur().kind == Token::Kind::RParen) break;
      expect(Token::Kind::Comma, "',' or ')'");
    }
    take();
    const Token& last = args.back();
    if (last.kind != Token::Kind::Ident)
      fail(last, "the temporal argument of " + a.relation + " must be a universally quantified variable");
    a.time_var = last.text;
    args.pop_back();
    for (const auto& t : args) {
      if (t.kind == Token::Kind::Quoted) {
        a.args.push_back(Term::constant(t.text));
      } else {
        if (t.kind == Token::Kind::Existential) {
          if (!existentials) fail(t, "existential marker '?' is only allowed on the right-hand side of a rule");
          if (std::find(existentials->begin(), existentials->end(), t.text) == existentials->end())
            existentials->push_back(t.text);
        }
        a.args.push_back(Term::variable(t.text));
      }
    }
    return a;
  }

  std::vector<Atom> conjunction(std::vector<std::string>* existentials) {
    std::vector<Atom> atoms;
    atoms.push_back(atom(existentials));
    while (cur().kind == Token::Kind::Comma) {
      take();
      atoms.push_back(atom(existentials));
    }
    return atoms;
  }

  void rule(Loc loc) {
    SttTgd r;
    r.lhs = conjunction(nullptr);
    expect(Token::Kind::Arrow, "'->'");
    r.rhs = conjunction(&r.existentials);
    m_.sttgds.push_back(std::move(r));
    rule_locs_.push_back(loc);
  }

  void key(Loc loc) {
    Tkc k;
    k.relation = expect(Token::Kind::Ident, "a relation name").text;
    expect(Token::Kind::LParen, "'('");
    bool has_temporal = false;
    for (;;) {
      const Token& a = take();
      if (a.kind == Token::Kind::Temporal) {
        has_temporal = true;
      } else if (a.kind != Token::Kind::Ident) {
        fail(a, "expected a key attribute, found " + describe(a));
      }
      k.key.push_back(a.kind == Token::Kind::Temporal ? "@" + a.text : a.text);
      if (cur().kind == Token::Kind::RParen) break;
      expect(Token::Kind::Comma, "',' or ')'");
    }
    const Token& close = take();
    if (!has_temporal) fail(close, "the key of " + k.relation + " must include its temporal attribute (marked with @)");
    m_.tkcs.push_back(std::move(k));
    key_locs_.push_back(loc);
  }

  void query(Loc loc) {
    const Token& name = expect(Token::Kind::Ident, "a query name");
    ConjunctiveQuery cq;
    expect(Token::Kind::LParen, "'('");
    for (;;) {
      const Token& v = take();
      if (v.kind != Token::Kind::Ident) fail(v, "query head arguments must be variables, found " + describe(v));
      cq.head.push_back(v.text);
      if (cur().kind == Token::Kind::RParen) break;
      expect(Token::Kind::Comma, "',' or ')'");
    }
    take();
    expect(Token::Kind::Turnstile, "':-'");
    cq.body = conjunction(nullptr);

    auto it = query_index_.find(name.text);
    if (it == query_index_.end()) {
      query_index_.emplace(name.text, m_.queries.size());
      m_.queries.push_back(Ucq{name.text, {std::move(cq)}});
      query_locs_.push_back(loc);
    } else {
      auto& ucq = m_.queries[it->second];
      if (ucq.disjuncts.front().head.size() != cq.head.size())
        fail(name, "query " + name.text + " is already defined with a different head arity");
      ucq.disjuncts.push_back(std::move(cq));
    }
  }

  void check() const {
    const auto violations = validate_mapping(m_);
    if (violations.empty()) return;
    const auto& v = violations.front();
    Loc loc{1, 1};
    switch (v.item) {
      case MappingViolation::Item::Schema:
        loc = v.index < source_locs_.size() ? source_locs_[v.index] : target_locs_[v.index - source_locs_.size()];
        break;
      case MappingViolation::Item::Rule: loc = rule_locs_[v.index]; break;
      case MappingViolation::Item::Key: loc = key_locs_[v.index]; break;
      case MappingViolation::Item::Query: loc = query_locs_[v.index]; break;
    }
    throw ParseError(loc.line, loc.column, v.code + ": " + v.message);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Mapping m_;
  std::map<std::string, std::size_t> query_index_;
  std::vector<Loc> source_locs_, target_locs_, rule_locs_, key_locs_, query_locs_;
};

}  // namespace

Mapping parse_mapping(std::string_view text) { return Parser(Lexer(text).run()).run(); }

}  // namespace tdx
