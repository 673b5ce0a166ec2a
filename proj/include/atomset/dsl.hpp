// Copyright 2026 The Atomset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The surface language: set expressions (basis literals, tuple and subset
// comprehensions, relation literals, union/intersection/complement), map rule
// files, and the canonical printer. See docs/formats.md for the grammar.

#ifndef ATOMSET_DSL_HPP_
#define ATOMSET_DSL_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "atomset/atoms.hpp"
#include "atomset/definable_map.hpp"
#include "atomset/notions.hpp"
#include "atomset/relations.hpp"
#include "atomset/subset_sets.hpp"
#include "atomset/tuple_set.hpp"

namespace atomset::dsl {

struct Position {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(Position pos, const std::string& message)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
              ": " + message),
        pos_(pos) {}

  Position position() const { return pos_; }

 private:
  Position pos_;
};

// ---------------------------------------------------------------------------
// Lexer

enum class TokenKind {
  kIdent,
  kNumber,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kPipe,
  kAmp,
  kBang,
  kTilde,
  kEq,
  kNeq,
  kComma,
  kSemi,
  kColon,
  kPlus,
  kMinus,
  kArrow,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  std::uint32_t number = 0;
  Position pos;
};

inline std::vector<Token> lex(const std::string& input) {
  std::vector<Token> out;
  Position pos;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
    ++i;
  };
  while (i < input.size()) {
    char c = input[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(c);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < input.size() && input[i] != '\n') advance(input[i]);
      continue;
    }
    Token token;
    token.pos = pos;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      token.kind = TokenKind::kIdent;
      while (i < input.size()) {
        char d = input[i];
        bool ident = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') ||
                     (d >= '0' && d <= '9') || d == '_';
        if (!ident) break;
        token.text.push_back(d);
        advance(d);
      }
      out.push_back(std::move(token));
      continue;
    }
    if (c >= '0' && c <= '9') {
      token.kind = TokenKind::kNumber;
      std::uint64_t value = 0;
      while (i < input.size() && input[i] >= '0' && input[i] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(input[i] - '0');
        if (value > 1000000) throw ParseError(token.pos, "number too large");
        token.text.push_back(input[i]);
        advance(input[i]);
      }
      token.number = static_cast<std::uint32_t>(value);
      out.push_back(std::move(token));
      continue;
    }
    auto single = [&](TokenKind kind) {
      token.kind = kind;
      token.text = std::string(1, c);
      advance(c);
      out.push_back(std::move(token));
    };
    switch (c) {
      case '{': single(TokenKind::kLBrace); break;
      case '}': single(TokenKind::kRBrace); break;
      case '(': single(TokenKind::kLParen); break;
      case ')': single(TokenKind::kRParen); break;
      case '|': single(TokenKind::kPipe); break;
      case '&': single(TokenKind::kAmp); break;
      case '~': single(TokenKind::kTilde); break;
      case ',': single(TokenKind::kComma); break;
      case ';': single(TokenKind::kSemi); break;
      case ':': single(TokenKind::kColon); break;
      case '+': single(TokenKind::kPlus); break;
      case '=': single(TokenKind::kEq); break;
      case '!':
        if (i + 1 < input.size() && input[i + 1] == '=') {
          token.kind = TokenKind::kNeq;
          token.text = "!=";
          advance('!');
          advance('=');
          out.push_back(std::move(token));
        } else {
          single(TokenKind::kBang);
        }
        break;
      case '-':
        if (i + 1 < input.size() && input[i + 1] == '>') {
          token.kind = TokenKind::kArrow;
          token.text = "->";
          advance('-');
          advance('>');
          out.push_back(std::move(token));
        } else {
          single(TokenKind::kMinus);
        }
        break;
      default:
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
  }
  Token end;
  end.kind = TokenKind::kEnd;
  end.pos = pos;
  out.push_back(std::move(end));
  return out;
}

// ---------------------------------------------------------------------------
// AST

struct Ident {
  std::string text;
  Position pos;
};

struct Formula {
  enum class Kind { kTrue, kFalse, kLit, kNot, kAnd, kOr };
  Kind kind = Kind::kTrue;
  // kLit: lhs <op> rhs where op is = when `equal`, != otherwise.
  Ident lhs, rhs;
  bool equal = true;
  std::vector<Formula> children;
  Position pos;
};

struct MembFormula {
  enum class Kind { kTrue, kFalse, kLit, kAnd, kOr };
  Kind kind = Kind::kTrue;
  Ident atom;           // kLit: <atom> in s / <atom> notin s
  bool positive = true;
  std::vector<MembFormula> children;
  Position pos;
};

struct OrbitLit {
  std::vector<Ident> left_trace;
  std::vector<Ident> right_trace;
  std::uint32_t overlap = 0;
  Position pos;
};

struct MapRuleLit {
  std::vector<Ident> trace;
  std::uint32_t size = 0;
  std::vector<Ident> out;
  bool include_fresh = false;
  Position pos;
};

struct Expr {
  enum class Kind {
    kBasis,
    kEmptyFamily,
    kTupleComp,
    kSubsetComp,
    kRelation,
    kMap,
    kUnion,
    kIntersect,
    kComplement,
  };
  Kind kind = Kind::kBasis;
  Position pos;

  // kBasis / kEmptyFamily / kSubsetComp: arity.
  std::uint32_t k = 0;
  std::vector<Ident> plus, minus;  // kBasis

  std::vector<Ident> vars;  // kTupleComp
  Formula formula;          // kTupleComp
  MembFormula memb;         // kSubsetComp

  std::uint32_t n1 = 0, n2 = 0;                  // kRelation
  std::optional<std::vector<Ident>> support;     // kRelation, explicit S
  std::vector<OrbitLit> orbits;                  // kRelation

  std::vector<Ident> map_params;     // kMap
  std::uint32_t map_rank = 0;        // kMap
  std::vector<MapRuleLit> map_rules; // kMap

  std::vector<Expr> children;  // kUnion / kIntersect / kComplement
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Expr parse_expression_file() {
    Expr e = parse_expr();
    expect(TokenKind::kEnd, "end of input");
    return e;
  }

  Expr parse_map_file() {
    Expr e = parse_map();
    expect(TokenKind::kEnd, "end of input");
    return e;
  }

  // Dispatches on the leading token: `map` starts a rule file.
  Expr parse_any() {
    if (peek().kind == TokenKind::kIdent && peek().text == "map") {
      return parse_map_file();
    }
    return parse_expression_file();
  }

  std::vector<Ident> parse_atom_list_file() {
    std::vector<Ident> out = parse_atom_list();
    expect(TokenKind::kEnd, "end of input");
    return out;
  }

  std::vector<std::pair<std::vector<Ident>, std::uint32_t>> parse_table_file() {
    std::vector<std::pair<std::vector<Ident>, std::uint32_t>> out;
    while (peek().kind != TokenKind::kEnd) {
      expect(TokenKind::kLParen, "'('");
      std::vector<Ident> atoms = parse_atom_list();
      expect(TokenKind::kComma, "','");
      std::uint32_t value = expect_number();
      expect(TokenKind::kRParen, "')'");
      out.emplace_back(std::move(atoms), value);
    }
    return out;
  }

 private:
  // Nesting is bounded so no input can exhaust the stack.
  struct DepthGuard {
    explicit DepthGuard(Parser* parser) : parser_(parser) {
      if (++parser_->depth_ > 512) {
        throw ParseError(parser_->peek().pos, "expression nested too deeply");
      }
    }
    ~DepthGuard() { --parser_->depth_; }
    Parser* parser_;
  };

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t at = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[at];
  }

  Token take() { return tokens_[std::min(index_++, tokens_.size() - 1)]; }

  Token expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) {
      throw ParseError(peek().pos, "expected " + what + describe_actual());
    }
    return take();
  }

  std::string describe_actual() const {
    const Token& t = peek();
    if (t.kind == TokenKind::kEnd) return ", found end of input";
    return ", found '" + t.text + "'";
  }

  Token expect_keyword(const std::string& word) {
    if (peek().kind != TokenKind::kIdent || peek().text != word) {
      throw ParseError(peek().pos, "expected '" + word + "'" + describe_actual());
    }
    return take();
  }

  bool at_keyword(const std::string& word) const {
    return peek().kind == TokenKind::kIdent && peek().text == word;
  }

  std::uint32_t expect_number() {
    return expect(TokenKind::kNumber, "a number").number;
  }

  Ident expect_ident(const std::string& what) {
    Token t = expect(TokenKind::kIdent, what);
    return {t.text, t.pos};
  }

  // '{' [ ident (',' ident)* ] '}'
  std::vector<Ident> parse_atom_list() {
    expect(TokenKind::kLBrace, "'{'");
    std::vector<Ident> out;
    if (peek().kind != TokenKind::kRBrace) {
      out.push_back(expect_ident("an atom name"));
      while (peek().kind == TokenKind::kComma) {
        take();
        out.push_back(expect_ident("an atom name"));
      }
    }
    expect(TokenKind::kRBrace, "'}'");
    return out;
  }

  Expr parse_expr() {
    Expr left = parse_term();
    while (peek().kind == TokenKind::kPipe) {
      Position pos = take().pos;
      Expr right = parse_term();
      Expr node;
      node.kind = Expr::Kind::kUnion;
      node.pos = pos;
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      left = std::move(node);
    }
    return left;
  }

  Expr parse_term() {
    Expr left = parse_factor();
    while (peek().kind == TokenKind::kAmp) {
      Position pos = take().pos;
      Expr right = parse_factor();
      Expr node;
      node.kind = Expr::Kind::kIntersect;
      node.pos = pos;
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      left = std::move(node);
    }
    return left;
  }

  Expr parse_factor() {
    DepthGuard guard(this);
    if (peek().kind == TokenKind::kTilde) {
      Position pos = take().pos;
      Expr node;
      node.kind = Expr::Kind::kComplement;
      node.pos = pos;
      node.children.push_back(parse_factor());
      return node;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::kLParen) {
      take();
      Expr inner = parse_expr();
      expect(TokenKind::kRParen, "')'");
      return inner;
    }
    if (t.kind == TokenKind::kLBrace) return parse_comprehension();
    if (t.kind == TokenKind::kIdent) {
      if (t.text == "basis") return parse_basis();
      if (t.text == "empty") return parse_empty();
      if (t.text == "rel") return parse_relation();
    }
    throw ParseError(t.pos, "expected a set expression" + describe_actual());
  }

  Expr parse_basis() {
    Expr node;
    node.kind = Expr::Kind::kBasis;
    node.pos = expect_keyword("basis").pos;
    expect(TokenKind::kLParen, "'('");
    expect(TokenKind::kPlus, "'+'");
    node.plus = parse_atom_list();
    expect(TokenKind::kMinus, "'-'");
    node.minus = parse_atom_list();
    expect(TokenKind::kComma, "','");
    node.k = expect_number();
    expect(TokenKind::kRParen, "')'");
    return node;
  }

  Expr parse_empty() {
    Expr node;
    node.kind = Expr::Kind::kEmptyFamily;
    node.pos = expect_keyword("empty").pos;
    expect(TokenKind::kLParen, "'('");
    node.k = expect_number();
    expect(TokenKind::kRParen, "')'");
    return node;
  }

  Expr parse_comprehension() {
    Position open = expect(TokenKind::kLBrace, "'{'").pos;
    if (peek().kind == TokenKind::kLParen) {
      Expr node;
      node.kind = Expr::Kind::kTupleComp;
      node.pos = open;
      take();
      if (peek().kind != TokenKind::kRParen) {
        node.vars.push_back(expect_ident("a variable"));
        while (peek().kind == TokenKind::kComma) {
          take();
          node.vars.push_back(expect_ident("a variable"));
        }
      }
      expect(TokenKind::kRParen, "')'");
      expect(TokenKind::kPipe, "'|'");
      node.formula = parse_formula();
      expect(TokenKind::kRBrace, "'}'");
      return node;
    }
    if (at_keyword("s")) {
      Expr node;
      node.kind = Expr::Kind::kSubsetComp;
      node.pos = open;
      take();
      expect(TokenKind::kColon, "':'");
      node.k = expect_number();
      expect(TokenKind::kPipe, "'|'");
      node.memb = parse_memb_formula();
      expect(TokenKind::kRBrace, "'}'");
      return node;
    }
    throw ParseError(peek().pos,
                     "expected '(' (tuple comprehension) or 's' (subset comprehension)" +
                         describe_actual());
  }

  Formula parse_formula() {
    Formula left = parse_formula_and();
    while (peek().kind == TokenKind::kPipe) {
      Position pos = take().pos;
      Formula node;
      node.kind = Formula::Kind::kOr;
      node.pos = pos;
      node.children.push_back(std::move(left));
      node.children.push_back(parse_formula_and());
      left = std::move(node);
    }
    return left;
  }

  Formula parse_formula_and() {
    Formula left = parse_formula_not();
    while (peek().kind == TokenKind::kAmp) {
      Position pos = take().pos;
      Formula node;
      node.kind = Formula::Kind::kAnd;
      node.pos = pos;
      node.children.push_back(std::move(left));
      node.children.push_back(parse_formula_not());
      left = std::move(node);
    }
    return left;
  }

  Formula parse_formula_not() {
    DepthGuard guard(this);
    if (peek().kind == TokenKind::kBang) {
      Position pos = take().pos;
      Formula node;
      node.kind = Formula::Kind::kNot;
      node.pos = pos;
      node.children.push_back(parse_formula_not());
      return node;
    }
    return parse_formula_atom();
  }

  Formula parse_formula_atom() {
    Formula node;
    node.pos = peek().pos;
    if (peek().kind == TokenKind::kLParen) {
      take();
      node = parse_formula();
      expect(TokenKind::kRParen, "')'");
      return node;
    }
    if (at_keyword("true")) {
      take();
      node.kind = Formula::Kind::kTrue;
      return node;
    }
    if (at_keyword("false")) {
      take();
      node.kind = Formula::Kind::kFalse;
      return node;
    }
    node.kind = Formula::Kind::kLit;
    node.lhs = expect_ident("an identifier");
    if (peek().kind == TokenKind::kEq) {
      take();
      node.equal = true;
    } else if (peek().kind == TokenKind::kNeq) {
      take();
      node.equal = false;
    } else {
      throw ParseError(peek().pos, "expected '=' or '!='" + describe_actual());
    }
    node.rhs = expect_ident("an identifier");
    return node;
  }

  MembFormula parse_memb_formula() {
    MembFormula left = parse_memb_and();
    while (peek().kind == TokenKind::kPipe) {
      Position pos = take().pos;
      MembFormula node;
      node.kind = MembFormula::Kind::kOr;
      node.pos = pos;
      node.children.push_back(std::move(left));
      node.children.push_back(parse_memb_and());
      left = std::move(node);
    }
    return left;
  }

  MembFormula parse_memb_and() {
    MembFormula left = parse_memb_atom();
    while (peek().kind == TokenKind::kAmp) {
      Position pos = take().pos;
      MembFormula node;
      node.kind = MembFormula::Kind::kAnd;
      node.pos = pos;
      node.children.push_back(std::move(left));
      node.children.push_back(parse_memb_atom());
      left = std::move(node);
    }
    return left;
  }

  MembFormula parse_memb_atom() {
    DepthGuard guard(this);
    MembFormula node;
    node.pos = peek().pos;
    if (peek().kind == TokenKind::kLParen) {
      take();
      node = parse_memb_formula();
      expect(TokenKind::kRParen, "')'");
      return node;
    }
    if (at_keyword("true")) {
      take();
      node.kind = MembFormula::Kind::kTrue;
      return node;
    }
    if (at_keyword("false")) {
      take();
      node.kind = MembFormula::Kind::kFalse;
      return node;
    }
    node.kind = MembFormula::Kind::kLit;
    node.atom = expect_ident("an atom name");
    if (node.atom.text == "s") {
      throw ParseError(node.atom.pos,
                       "'s' denotes the bound set inside a subset comprehension");
    }
    if (at_keyword("in")) {
      take();
      node.positive = true;
    } else if (at_keyword("notin")) {
      take();
      node.positive = false;
    } else {
      throw ParseError(peek().pos, "expected 'in' or 'notin'" + describe_actual());
    }
    expect_keyword("s");
    return node;
  }

  Expr parse_relation() {
    Expr node;
    node.kind = Expr::Kind::kRelation;
    node.pos = expect_keyword("rel").pos;
    expect(TokenKind::kLParen, "'('");
    node.n1 = expect_number();
    expect(TokenKind::kComma, "','");
    node.n2 = expect_number();
    expect(TokenKind::kRParen, "')'");
    if (at_keyword("S")) {
      take();
      expect(TokenKind::kEq, "'='");
      node.support = parse_atom_list();
    }
    expect(TokenKind::kLBrace, "'{'");
    if (peek().kind != TokenKind::kRBrace) {
      node.orbits.push_back(parse_orbit());
      while (peek().kind == TokenKind::kSemi) {
        take();
        node.orbits.push_back(parse_orbit());
      }
    }
    expect(TokenKind::kRBrace, "'}'");
    return node;
  }

  OrbitLit parse_orbit() {
    OrbitLit orbit;
    orbit.pos = peek().pos;
    expect_keyword("ps");
    expect(TokenKind::kEq, "'='");
    orbit.left_trace = parse_atom_list();
    expect_keyword("pt");
    expect(TokenKind::kEq, "'='");
    orbit.right_trace = parse_atom_list();
    expect_keyword("m");
    expect(TokenKind::kEq, "'='");
    orbit.overlap = expect_number();
    return orbit;
  }

  Expr parse_map() {
    Expr node;
    node.kind = Expr::Kind::kMap;
    node.pos = expect_keyword("map").pos;
    expect_keyword("P");
    expect(TokenKind::kEq, "'='");
    node.map_params = parse_atom_list();
    expect_keyword("rank");
    expect(TokenKind::kEq, "'='");
    node.map_rank = expect_number();
    while (at_keyword("rule")) {
      MapRuleLit rule;
      rule.pos = take().pos;
      expect_keyword("p");
      expect(TokenKind::kEq, "'='");
      rule.trace = parse_atom_list();
      expect_keyword("k");
      expect(TokenKind::kEq, "'='");
      rule.size = expect_number();
      expect(TokenKind::kArrow, "'->'");
      expect_keyword("out");
      expect(TokenKind::kEq, "'='");
      rule.out = parse_atom_list();
      expect_keyword("fresh");
      expect(TokenKind::kEq, "'='");
      if (at_keyword("yes")) {
        take();
        rule.include_fresh = true;
      } else if (at_keyword("no")) {
        take();
        rule.include_fresh = false;
      } else {
        throw ParseError(peek().pos, "expected 'yes' or 'no'" + describe_actual());
      }
      node.map_rules.push_back(std::move(rule));
    }
    return node;
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  int depth_ = 0;
};

inline Expr parse(const std::string& text) {
  return Parser(lex(text)).parse_any();
}

// ---------------------------------------------------------------------------
// Name binding. Aliases are bound in sorted order after reserving every
// explicitly indexed atom, so a session's binding depends only on the set of
// names it mentions.

namespace detail {

inline void collect_formula_names(const Formula& f, const std::set<std::string>& vars,
                                  std::set<std::string>& names) {
  switch (f.kind) {
    case Formula::Kind::kLit:
      if (vars.count(f.lhs.text) == 0) names.insert(f.lhs.text);
      if (vars.count(f.rhs.text) == 0) names.insert(f.rhs.text);
      break;
    case Formula::Kind::kNot:
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      for (const Formula& child : f.children) {
        collect_formula_names(child, vars, names);
      }
      break;
    default:
      break;
  }
}

inline void collect_memb_names(const MembFormula& f, std::set<std::string>& names) {
  switch (f.kind) {
    case MembFormula::Kind::kLit:
      names.insert(f.atom.text);
      break;
    case MembFormula::Kind::kAnd:
    case MembFormula::Kind::kOr:
      for (const MembFormula& child : f.children) collect_memb_names(child, names);
      break;
    default:
      break;
  }
}

inline void collect_names(const Expr& e, std::set<std::string>& names) {
  auto add_all = [&](const std::vector<Ident>& idents) {
    for (const Ident& ident : idents) names.insert(ident.text);
  };
  switch (e.kind) {
    case Expr::Kind::kBasis:
      add_all(e.plus);
      add_all(e.minus);
      break;
    case Expr::Kind::kTupleComp: {
      std::set<std::string> vars;
      for (const Ident& v : e.vars) vars.insert(v.text);
      collect_formula_names(e.formula, vars, names);
      break;
    }
    case Expr::Kind::kSubsetComp:
      collect_memb_names(e.memb, names);
      break;
    case Expr::Kind::kRelation:
      if (e.support) add_all(*e.support);
      for (const OrbitLit& orbit : e.orbits) {
        add_all(orbit.left_trace);
        add_all(orbit.right_trace);
      }
      break;
    case Expr::Kind::kMap:
      add_all(e.map_params);
      for (const MapRuleLit& rule : e.map_rules) {
        add_all(rule.trace);
        add_all(rule.out);
      }
      break;
    case Expr::Kind::kUnion:
    case Expr::Kind::kIntersect:
    case Expr::Kind::kComplement:
      for (const Expr& child : e.children) collect_names(child, names);
      break;
    default:
      break;
  }
}

}  // namespace detail

// Binds every atom name mentioned by the expressions: explicit indices are
// reserved first, then aliases in sorted order.
inline void bind_names(const std::vector<const Expr*>& exprs, NameTable& table) {
  std::set<std::string> names;
  for (const Expr* e : exprs) detail::collect_names(*e, names);
  for (const std::string& name : names) {
    if (name == "star") throw Error("'star' is reserved and cannot name an atom");
    if (!NameTable::valid_atom_name(name)) {
      throw Error("invalid atom name: '" + name + "'");
    }
    if (NameTable::explicit_index(name)) table.bind(name);
  }
  for (const std::string& name : names) {
    if (!NameTable::explicit_index(name)) table.bind(name);
  }
}

// ---------------------------------------------------------------------------
// Compilation

using CompiledObject = std::variant<TupleSet, PQBasis, KSubsetSet, Relation, DefinableMap>;

namespace detail {

inline Atom resolve_atom(const Ident& ident, NameTable& table) {
  if (ident.text == "star") {
    throw ParseError(ident.pos, "'star' is reserved and cannot name an atom");
  }
  if (!NameTable::valid_atom_name(ident.text)) {
    throw ParseError(ident.pos, "invalid atom name: '" + ident.text + "'");
  }
  try {
    return table.bind(ident.text);
  } catch (const Error& e) {
    throw ParseError(ident.pos, e.what());
  }
}

inline AtomSet resolve_atom_set(const std::vector<Ident>& idents, NameTable& table) {
  std::vector<Atom> atoms;
  atoms.reserve(idents.size());
  for (const Ident& ident : idents) atoms.push_back(resolve_atom(ident, table));
  return AtomSet(std::move(atoms));
}

inline bool eval_formula(const Formula& f,
                         const std::map<std::string, CellCode>& vars,
                         NameTable& table, const Cell& cell) {
  switch (f.kind) {
    case Formula::Kind::kTrue:
      return true;
    case Formula::Kind::kFalse:
      return false;
    case Formula::Kind::kNot:
      return !eval_formula(f.children[0], vars, table, cell);
    case Formula::Kind::kAnd:
      return eval_formula(f.children[0], vars, table, cell) &&
             eval_formula(f.children[1], vars, table, cell);
    case Formula::Kind::kOr:
      return eval_formula(f.children[0], vars, table, cell) ||
             eval_formula(f.children[1], vars, table, cell);
    case Formula::Kind::kLit: {
      auto code_of = [&](const Ident& ident) {
        auto it = vars.find(ident.text);
        if (it != vars.end()) return it->second;
        return CellCode::param(resolve_atom(ident, table));
      };
      bool same = code_of(f.lhs) == code_of(f.rhs);
      return f.equal == same;
    }
  }
  return false;
}

inline bool eval_memb(const MembFormula& f, const AtomSet& trace, NameTable& table) {
  switch (f.kind) {
    case MembFormula::Kind::kTrue:
      return true;
    case MembFormula::Kind::kFalse:
      return false;
    case MembFormula::Kind::kAnd:
      return eval_memb(f.children[0], trace, table) &&
             eval_memb(f.children[1], trace, table);
    case MembFormula::Kind::kOr:
      return eval_memb(f.children[0], trace, table) ||
             eval_memb(f.children[1], trace, table);
    case MembFormula::Kind::kLit:
      return trace.contains(resolve_atom(f.atom, table)) == f.positive;
  }
  return false;
}

inline KSubsetSet to_family(CompiledObject obj, Position pos) {
  if (auto* basis = std::get_if<PQBasis>(&obj)) return pq_to_kss(*basis);
  if (auto* family = std::get_if<KSubsetSet>(&obj)) return std::move(*family);
  throw ParseError(pos, "operand is not a family of finite sets");
}

}  // namespace detail

inline CompiledObject compile(const Expr& e, NameTable& table) {
  switch (e.kind) {
    case Expr::Kind::kBasis: {
      AtomSet p = detail::resolve_atom_set(e.plus, table);
      AtomSet q = detail::resolve_atom_set(e.minus, table);
      return PQBasis(std::move(p), std::move(q), e.k);
    }
    case Expr::Kind::kEmptyFamily:
      return KSubsetSet::empty(e.k);
    case Expr::Kind::kTupleComp: {
      std::map<std::string, CellCode> var_codes;
      std::set<std::string> var_names;
      for (const Ident& v : e.vars) {
        if (!var_names.insert(v.text).second) {
          throw ParseError(v.pos, "duplicate variable '" + v.text + "'");
        }
      }
      std::set<std::string> param_names;
      detail::collect_formula_names(e.formula, var_names, param_names);
      std::vector<Atom> params;
      for (const std::string& name : param_names) {
        params.push_back(detail::resolve_atom({name, e.pos}, table));
      }
      AtomSet context(std::move(params));
      std::uint32_t k = static_cast<std::uint32_t>(e.vars.size());
      std::vector<Cell> cells;
      for (const Cell& cell : all_cells(k, context)) {
        for (std::uint32_t i = 0; i < k; ++i) {
          var_codes.insert_or_assign(e.vars[i].text, cell.codes()[i]);
        }
        if (detail::eval_formula(e.formula, var_codes, table, cell)) {
          cells.push_back(cell);
        }
      }
      return ts_tighten(TupleSet(k, std::move(context), std::move(cells)));
    }
    case Expr::Kind::kSubsetComp: {
      std::set<std::string> param_names;
      detail::collect_memb_names(e.memb, param_names);
      std::vector<Atom> params;
      for (const std::string& name : param_names) {
        params.push_back(detail::resolve_atom({name, e.pos}, table));
      }
      AtomSet support(std::move(params));
      std::vector<AtomSet> traces;
      for (const AtomSet& p : KSubsetSet::all_subsets(support)) {
        if (detail::eval_memb(e.memb, p, table)) traces.push_back(p);
      }
      return kss_tighten(KSubsetSet(e.k, std::move(support), std::move(traces)));
    }
    case Expr::Kind::kRelation: {
      AtomSet support;
      if (e.support) {
        support = detail::resolve_atom_set(*e.support, table);
      }
      std::vector<PairOrbit> orbits;
      for (const OrbitLit& lit : e.orbits) {
        PairOrbit orbit{detail::resolve_atom_set(lit.left_trace, table),
                        detail::resolve_atom_set(lit.right_trace, table),
                        lit.overlap};
        if (!e.support) {
          support = support.union_with(orbit.left_trace).union_with(orbit.right_trace);
        }
        orbits.push_back(std::move(orbit));
      }
      try {
        return Relation(e.n1, e.n2, std::move(support), std::move(orbits));
      } catch (const PreconditionError& err) {
        throw ParseError(e.pos, err.what());
      }
    }
    case Expr::Kind::kMap: {
      AtomSet params = detail::resolve_atom_set(e.map_params, table);
      std::map<OrbitDescriptor, MapRule> rules;
      for (const MapRuleLit& lit : e.map_rules) {
        OrbitDescriptor d{detail::resolve_atom_set(lit.trace, table), lit.size};
        MapRule rule{detail::resolve_atom_set(lit.out, table), lit.include_fresh};
        if (!rules.emplace(d, rule).second) {
          throw ParseError(lit.pos, "duplicate rule for the same input orbit");
        }
      }
      try {
        return DefinableMap(std::move(params), e.map_rank, std::move(rules));
      } catch (const PreconditionError& err) {
        throw ParseError(e.pos, err.what());
      }
    }
    case Expr::Kind::kComplement: {
      CompiledObject inner = compile(e.children[0], table);
      if (auto* tuples = std::get_if<TupleSet>(&inner)) return ts_complement(*tuples);
      if (std::holds_alternative<Relation>(inner) ||
          std::holds_alternative<DefinableMap>(inner)) {
        throw ParseError(e.pos, "complement applies to set expressions only");
      }
      return kss_complement(detail::to_family(std::move(inner), e.pos));
    }
    case Expr::Kind::kUnion:
    case Expr::Kind::kIntersect: {
      CompiledObject left = compile(e.children[0], table);
      CompiledObject right = compile(e.children[1], table);
      bool unioning = e.kind == Expr::Kind::kUnion;
      if (std::holds_alternative<Relation>(left) ||
          std::holds_alternative<Relation>(right) ||
          std::holds_alternative<DefinableMap>(left) ||
          std::holds_alternative<DefinableMap>(right)) {
        throw ParseError(e.pos, "union and intersection apply to set expressions only");
      }
      if (std::holds_alternative<TupleSet>(left) !=
          std::holds_alternative<TupleSet>(right)) {
        throw ParseError(e.pos, "cannot combine tuple sets with families of finite sets");
      }
      try {
        if (auto* lt = std::get_if<TupleSet>(&left)) {
          const TupleSet& rt = std::get<TupleSet>(right);
          return unioning ? ts_union(*lt, rt) : ts_intersect(*lt, rt);
        }
        KSubsetSet lf = detail::to_family(std::move(left), e.pos);
        KSubsetSet rf = detail::to_family(std::move(right), e.pos);
        return unioning ? kss_union(lf, rf) : kss_intersect(lf, rf);
      } catch (const PreconditionError& err) {
        throw ParseError(e.pos, err.what());
      }
    }
  }
  throw Error("unhandled expression kind");
}

inline CompiledObject parse_and_compile(const std::string& text, NameTable& table) {
  Expr e = parse(text);
  bind_names({&e}, table);
  return compile(e, table);
}

// Parses an explicit atom set literal like `{a, b}`.
inline AtomSet parse_atom_set(const std::string& text, NameTable& table) {
  std::vector<Ident> idents = Parser(lex(text)).parse_atom_list_file();
  return detail::resolve_atom_set(idents, table);
}

// ---------------------------------------------------------------------------
// Canonical printing. parse + compile of the output reproduces the object.

namespace detail {

inline std::string atom_list_text(const AtomSet& atoms, const NameTable& table) {
  std::string out = "{";
  bool first = true;
  for (Atom a : atoms) {
    if (!first) out += ", ";
    out += table.name_of(a);
    first = false;
  }
  out += "}";
  return out;
}

inline std::vector<std::string> choose_var_names(std::uint32_t k, const AtomSet& context,
                                                 const NameTable& table) {
  std::set<std::string> taken;
  for (Atom a : context) taken.insert(table.name_of(a));
  std::vector<std::string> out;
  for (std::uint32_t i = 1; out.size() < k; ++i) {
    std::string candidate = "v" + std::to_string(i);
    if (taken.count(candidate) == 0) out.push_back(candidate);
  }
  return out;
}

}  // namespace detail

inline std::string print(const AtomSet& atoms, const NameTable& table) {
  return detail::atom_list_text(atoms, table);
}

inline std::string print(const StarSet& s, const NameTable& table) {
  std::string out = "{";
  bool first = true;
  for (Atom a : s.atoms) {
    if (!first) out += ", ";
    out += table.name_of(a);
    first = false;
  }
  if (s.has_star) {
    if (!first) out += ", ";
    out += "star";
  }
  return out + "}";
}

inline std::string print(const PQBasis& b, const NameTable& table) {
  return "basis(+" + detail::atom_list_text(b.p(), table) + " -" +
         detail::atom_list_text(b.q(), table) + ", " + std::to_string(b.k()) + ")";
}

inline std::string print(const TupleSet& x_in, const NameTable& table) {
  TupleSet x = ts_tighten(x_in);
  std::uint32_t k = x.arity();
  std::vector<std::string> vars = detail::choose_var_names(k, x.context(), table);
  std::string head = "{ (";
  for (std::uint32_t i = 0; i < k; ++i) {
    if (i > 0) head += ", ";
    head += vars[i];
  }
  head += ") | ";
  if (x.cells().empty()) return head + "false }";
  std::vector<std::string> cell_texts;
  for (const Cell& cell : x.cells()) {
    std::vector<std::string> lits;
    // Block representatives in order of first occurrence.
    std::map<CellCode, std::uint32_t> rep;
    std::vector<std::uint32_t> rep_order;
    for (std::uint32_t i = 0; i < k; ++i) {
      CellCode code = cell.codes()[i];
      if (rep.emplace(code, i).second) {
        rep_order.push_back(i);
      } else {
        lits.push_back(vars[rep[code]] + " = " + vars[i]);
      }
    }
    std::vector<std::uint32_t> fresh_reps;
    for (std::uint32_t i : rep_order) {
      CellCode code = cell.codes()[i];
      if (code.is_param()) {
        lits.push_back(vars[i] + " = " + table.name_of(code.atom()));
      } else {
        fresh_reps.push_back(i);
        for (Atom a : x.context()) {
          lits.push_back(vars[i] + " != " + table.name_of(a));
        }
      }
    }
    for (std::size_t i = 0; i < fresh_reps.size(); ++i) {
      for (std::size_t j = i + 1; j < fresh_reps.size(); ++j) {
        lits.push_back(vars[fresh_reps[i]] + " != " + vars[fresh_reps[j]]);
      }
    }
    if (lits.empty()) {
      cell_texts.push_back("true");
      continue;
    }
    std::string text = lits[0];
    for (std::size_t i = 1; i < lits.size(); ++i) text += " & " + lits[i];
    cell_texts.push_back(std::move(text));
  }
  std::string body = cell_texts[0];
  for (std::size_t i = 1; i < cell_texts.size(); ++i) body += " | " + cell_texts[i];
  return head + body + " }";
}

inline std::string print(const KSubsetSet& c_in, const NameTable& table) {
  KSubsetSet c = kss_tighten(c_in);
  if (c.traces().empty()) return "empty(" + std::to_string(c.k()) + ")";
  std::vector<std::string> components;
  for (const auto& [p, q] : c.pairs()) {
    std::vector<std::string> lits;
    for (Atom a : c.support()) {
      lits.push_back(table.name_of(a) + (p.contains(a) ? " in s" : " notin s"));
    }
    if (lits.empty()) {
      components.push_back("true");
      continue;
    }
    std::string text = lits[0];
    for (std::size_t i = 1; i < lits.size(); ++i) text += " & " + lits[i];
    components.push_back(std::move(text));
  }
  std::string body = components[0];
  for (std::size_t i = 1; i < components.size(); ++i) body += " | " + components[i];
  return "{ s : " + std::to_string(c.k()) + " | " + body + " }";
}

inline std::string print(const Relation& r, const NameTable& table) {
  std::string out = "rel(" + std::to_string(r.n1()) + ", " + std::to_string(r.n2()) +
                    ") S=" + detail::atom_list_text(r.support(), table) + " { ";
  bool first = true;
  for (const PairOrbit& orbit : r.orbits()) {
    if (!first) out += "; ";
    out += "ps=" + detail::atom_list_text(orbit.left_trace, table) +
           " pt=" + detail::atom_list_text(orbit.right_trace, table) +
           " m=" + std::to_string(orbit.overlap);
    first = false;
  }
  if (first) return out + "}";
  return out + " }";
}

inline std::string print(const DefinableMap& f, const NameTable& table) {
  std::string out = "map P=" + detail::atom_list_text(f.params(), table) +
                    " rank=" + std::to_string(f.rank()) + "\n";
  for (const auto& [d, rule] : f.rules()) {
    out += "rule p=" + detail::atom_list_text(d.trace, table) +
           " k=" + std::to_string(d.size) + " -> out=" +
           detail::atom_list_text(rule.out_params, table) +
           " fresh=" + (rule.include_fresh ? "yes" : "no") + "\n";
  }
  return out;
}

inline std::string print(const CompiledObject& obj, const NameTable& table) {
  return std::visit([&](const auto& value) { return print(value, table); }, obj);
}

// Parses a finite-to-one table file: one `({a, b}, n)` entry per line.
inline FiniteToOneTable parse_table(const std::string& text, NameTable& table) {
  auto entries = Parser(lex(text)).parse_table_file();
  std::vector<std::pair<AtomSet, std::uint32_t>> out;
  out.reserve(entries.size());
  for (auto& [idents, value] : entries) {
    out.emplace_back(detail::resolve_atom_set(idents, table), value);
  }
  try {
    return FiniteToOneTable(std::move(out));
  } catch (const PreconditionError& err) {
    throw ParseError({1, 1}, err.what());
  }
}

inline std::string print(const FiniteToOneTable& t, const NameTable& table) {
  std::string out;
  for (const auto& [s, n] : t.entries()) {
    out += "(" + detail::atom_list_text(s, table) + ", " + std::to_string(n) + ")\n";
  }
  return out;
}

}  // namespace atomset::dsl

#endif  // ATOMSET_DSL_HPP_
