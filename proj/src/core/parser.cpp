// Copyright 2026 The Alchemy Synth Authors
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

#include "alchemy/core/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "alchemy/core/errors.hpp"
#include "alchemy/core/notation.hpp"

namespace alchemy::core {
namespace {

constexpr std::array<std::string_view, 15> kReserved = {
    "theorem", "axiom", "example", "signature", "sort", "fn",    "pred", "by",
    "have",    "at",    "rw",      "apply",     "exact", "assumption", "rfl"};

// Longest first so that prefixes never shadow a longer symbol.
constexpr std::array<std::string_view, 33> kSymbols = {
    "<->", ":=", "->", "<-", ">=", "<=", "!=", "@[", "→", "↔", "←",
    "⊢",   "≥",  "≤",  "≠",  "∣",  "(",  ")",  "[",  "]", ":", ";",
    ",",   "+",  "-",  "*",  "/",  "%",  "^",  "=",  ">", "<", "?"};

struct Token {
  enum class Kind { kIdent, kNumber, kSymbol, kEnd };
  Kind kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) || c == '_') {
      std::size_t j = i;
      while (j < src.size()) {
        auto u = static_cast<unsigned char>(src[j]);
        if (!std::isalnum(u) && u != '_' && u != '\'') break;
        ++j;
      }
      out.push_back({Token::Kind::kIdent, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(uc)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::kNumber, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (std::string_view sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        out.push_back({Token::Kind::kSymbol, std::string(sym), line, col});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError("unexpected character", line, col);
  }
  out.push_back({Token::Kind::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Theory parse_theory() {
    Theory theory;
    expect_word("signature");
    sig_ = &theory.signature;
    while (is_word("sort") || is_word("fn") || is_word("pred")) parse_declaration(theory.signature);
    while (!at_end()) theory.add(parse_theorem());
    return theory;
  }

  Term parse_free_term(const Signature& sig) {
    enter_free_mode(sig);
    Term t = parse_term(0);
    expect_end();
    return t;
  }

  Formula parse_free_formula(const Signature& sig) {
    enter_free_mode(sig);
    Formula f = parse_formula();
    expect_end();
    return f;
  }

  TacticScript parse_free_script(const Signature& sig) {
    enter_free_mode(sig);
    TacticScript script = parse_inline_script(-1, false);
    expect_end();
    return script;
  }

 private:
  const Token& tok() const { return tokens_[pos_]; }
  const Token& peek(std::size_t ahead) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_end() const { return tok().kind == Token::Kind::kEnd; }
  bool is_symbol(std::string_view s) const {
    return tok().kind == Token::Kind::kSymbol && tok().text == s;
  }
  bool is_word(std::string_view w) const {
    return tok().kind == Token::Kind::kIdent && tok().text == w;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message + (at_end() ? " at end of input" : " near '" + tok().text + "'"),
                      tok().line, tok().col);
  }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("expected '" + std::string(w) + "'");
    ++pos_;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  std::string expect_name() {
    if (tok().kind != Token::Kind::kIdent || is_reserved_word(tok().text))
      fail("expected identifier");
    return tokens_[pos_++].text;
  }

  int expect_number() {
    if (tok().kind != Token::Kind::kNumber) fail("expected number");
    return std::stoi(tokens_[pos_++].text);
  }

  void enter_free_mode(const Signature& sig) {
    sig_ = &sig;
    bound_ = nullptr;
    allow_metas_ = true;
  }

  void parse_declaration(Signature& sig) {
    std::string kind = tokens_[pos_++].text;
    std::string name = expect_name();
    if (kind == "sort") {
      sig.declare_sort(name);
    } else if (kind == "fn") {
      sig.declare_function(name, expect_number());
    } else {
      sig.declare_predicate(name, expect_number());
    }
  }

  // --- terms -------------------------------------------------------------

  bool starts_atom() const {
    if (tok().kind == Token::Kind::kNumber) return true;
    if (is_symbol("(") || is_symbol("?")) return true;
    if (tok().kind != Token::Kind::kIdent || is_reserved_word(tok().text)) return false;
    return !sig_->is_predicate(tok().text) && !sig_->is_sort(tok().text);
  }

  bool is_bound(const std::string& name) const {
    return bound_ != nullptr && bound_->contains(name);
  }

  Term parse_atom() {
    const Token& t = tok();
    if (t.kind == Token::Kind::kNumber) {
      ++pos_;
      return Term::constant(t.text);
    }
    if (is_symbol("?")) {
      if (!allow_metas_) fail("metavariables are not allowed here");
      ++pos_;
      return Term::meta(expect_name());
    }
    if (is_symbol("(")) {
      ++pos_;
      Term inner = parse_term(0);
      expect_symbol(")");
      return inner;
    }
    if (t.kind != Token::Kind::kIdent || is_reserved_word(t.text)) fail("expected term");
    if (is_bound(t.text)) {
      ++pos_;
      return Term::var(t.text);
    }
    if (sig_->is_constant(t.text)) {
      ++pos_;
      return Term::constant(t.text);
    }
    if (const Symbol* s = sig_->find(t.text)) {
      if (s->kind == Symbol::Kind::kFunction)
        throw ArityError("'" + t.text + "' expects " + std::to_string(s->arity) +
                         " arguments at " + std::to_string(t.line) + ":" +
                         std::to_string(t.col));
      fail("predicate used as a term");
    }
    if (bound_ == nullptr) {
      ++pos_;
      return Term::var(t.text);
    }
    fail("unbound identifier '" + t.text + "'");
  }

  Term parse_application() {
    if (tok().kind == Token::Kind::kIdent && !is_bound(tok().text)) {
      const Symbol* s = sig_->find(tok().text);
      if (s != nullptr && s->kind == Symbol::Kind::kFunction && s->arity > 0) {
        const Token& head = tokens_[pos_++];
        std::vector<Term> args;
        for (int k = 0; k < s->arity; ++k) {
          if (!starts_atom())
            throw ArityError("'" + head.text + "' expects " + std::to_string(s->arity) +
                             " arguments, got " + std::to_string(k) + " at " +
                             std::to_string(head.line) + ":" + std::to_string(head.col));
          args.push_back(parse_atom());
        }
        return Term::app(head.text, std::move(args));
      }
    }
    return parse_atom();
  }

  Term parse_term(int min_prec) {
    Term lhs = parse_application();
    while (tok().kind == Token::Kind::kSymbol) {
      const InfixOp* op = infix_by_token(tok().text);
      if (op == nullptr || op->precedence < min_prec) break;
      const Token& at = tokens_[pos_++];
      const Symbol* s = sig_->find(op->symbol);
      if (s == nullptr || s->kind != Symbol::Kind::kFunction || s->arity != 2)
        throw ArityError("infix '" + std::string(op->token) + "' needs `fn " +
                         std::string(op->symbol) + " 2` at " + std::to_string(at.line) +
                         ":" + std::to_string(at.col));
      Term rhs = parse_term(op->right_assoc ? op->precedence : op->precedence + 1);
      lhs = Term::app(std::string(op->symbol), {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  // --- formulas ----------------------------------------------------------

  bool is_implies_arrow() const { return is_symbol("->") || is_symbol("→"); }
  bool is_iff_arrow() const { return is_symbol("↔") || is_symbol("<->"); }

  bool continues_term() const {
    if (tok().kind != Token::Kind::kSymbol) return false;
    return infix_by_token(tok().text) != nullptr || relation_by_token(tok().text) != nullptr ||
           tok().text == "=";
  }

  Formula parse_formula() {
    Formula lhs = parse_implication();
    if (is_iff_arrow()) {
      ++pos_;
      Formula rhs = parse_implication();
      if (is_iff_arrow()) fail("'↔' is not associative; add parentheses");
      return Formula::iff(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_implication() {
    Formula lhs = parse_primary_formula();
    if (is_implies_arrow()) {
      ++pos_;
      return Formula::implies(std::move(lhs), parse_implication());
    }
    return lhs;
  }

  Formula parse_primary_formula() {
    if (is_symbol("(")) {
      std::size_t save = pos_;
      try {
        ++pos_;
        Formula inner = parse_formula();
        expect_symbol(")");
        if (!continues_term()) return inner;
      } catch (const Error&) {
      }
      pos_ = save;
    }
    if (tok().kind == Token::Kind::kIdent && !is_bound(tok().text) &&
        sig_->is_predicate(tok().text)) {
      const Token& head = tokens_[pos_++];
      const Symbol* s = sig_->find(head.text);
      std::vector<Term> args;
      for (int k = 0; k < s->arity; ++k) {
        if (!starts_atom())
          throw ArityError("'" + head.text + "' expects " + std::to_string(s->arity) +
                           " arguments, got " + std::to_string(k) + " at " +
                           std::to_string(head.line) + ":" + std::to_string(head.col));
        args.push_back(parse_atom());
      }
      return Formula::atom(head.text, std::move(args));
    }
    Term lhs = parse_term(0);
    if (is_symbol("=")) {
      ++pos_;
      return Formula::eq(std::move(lhs), parse_term(0));
    }
    if (tok().kind == Token::Kind::kSymbol) {
      if (const Relation* rel = relation_by_token(tok().text)) {
        const Token& at = tokens_[pos_++];
        const Symbol* s = sig_->find(rel->pred);
        if (s == nullptr || s->kind != Symbol::Kind::kPredicate || s->arity != 2)
          throw ArityError("relation '" + at.text + "' needs `pred " + std::string(rel->pred) +
                           " 2` at " + std::to_string(at.line) + ":" + std::to_string(at.col));
        return Formula::atom(std::string(rel->pred), {std::move(lhs), parse_term(0)});
      }
    }
    fail("expected a relation");
  }

  // --- tactics -----------------------------------------------------------

  // A scope ends at end of input, on a new line (when line-bounded), or at
  // a closing parenthesis (when inside one).
  bool at_scope_end(int line, bool in_parens) const {
    if (at_end()) return true;
    if (line >= 0 && tok().line != line) return true;
    return in_parens && is_symbol(")");
  }

  TacticScript parse_inline_script(int line, bool in_parens) {
    TacticScript script;
    script.push_back(parse_tactic(line, in_parens, -1));
    while (is_symbol(";") && (line < 0 || tok().line == line)) {
      ++pos_;
      script.push_back(parse_tactic(line, in_parens, -1));
    }
    return script;
  }

  // `block_col` >= 0 means we are inside an indented block, so a `have`
  // whose `by` ends the line opens a nested block.
  Tactic parse_tactic(int line, bool in_parens, int block_col) {
    if (at_scope_end(line, in_parens)) fail("expected tactic");
    if (is_word("rw")) {
      ++pos_;
      expect_symbol("[");
      Direction dir = Direction::kForward;
      if (is_symbol("←") || is_symbol("<-")) {
        ++pos_;
        dir = Direction::kReverse;
      }
      std::string lemma = expect_name();
      expect_symbol("]");
      return Tactic::rw(dir, lemma, parse_at_clause(line));
    }
    if (is_word("apply")) {
      ++pos_;
      std::string lemma = expect_name();
      return Tactic::apply(lemma, parse_at_clause(line));
    }
    if (is_word("exact")) {
      ++pos_;
      return Tactic::exact(expect_name());
    }
    if (is_word("assumption")) {
      ++pos_;
      return Tactic::assumption();
    }
    if (is_word("rfl")) {
      ++pos_;
      return Tactic::rfl();
    }
    if (is_word("have")) {
      const Token& have_tok = tok();
      ++pos_;
      std::string name = expect_name();
      expect_symbol(":");
      Formula f = parse_formula();
      if (!allow_metas_ && has_metas(f)) fail("metavariables are not allowed here");
      expect_symbol(":=");
      const Token& by_tok = tok();
      expect_word("by");
      TacticScript sub;
      if (is_symbol("(") && tok().line == by_tok.line) {
        ++pos_;
        sub = parse_inline_script(line, true);
        expect_symbol(")");
      } else if (block_col >= 0 && (at_end() || tok().line != by_tok.line)) {
        sub = parse_block(by_tok.line, block_col);
        if (sub.empty()) {
          throw SyntaxError("empty have block", have_tok.line, have_tok.col);
        }
      } else {
        int sub_line = block_col >= 0 ? by_tok.line : line;
        sub = parse_inline_script(sub_line, in_parens);
      }
      return Tactic::have(std::move(name), std::move(f), std::move(sub));
    }
    fail("unknown tactic");
  }

  std::optional<std::string> parse_at_clause(int line) {
    if (is_word("at") && (line < 0 || tok().line == line)) {
      ++pos_;
      return expect_name();
    }
    return std::nullopt;
  }

  // Parses the proof following `by`. Tactics on the same line form an
  // inline script; otherwise an indented block deeper than `min_col`.
  TacticScript parse_block(int by_line, int min_col) {
    if (at_end()) return {};
    if (tok().line == by_line) return parse_inline_script(by_line, false);
    if (tok().col <= min_col) return {};
    const int col = tok().col;
    TacticScript script;
    while (!at_end() && tok().col == col) {
      const int line = tok().line;
      script.push_back(parse_tactic(line, false, col));
      while (is_symbol(";") && tok().line == line) {
        ++pos_;
        script.push_back(parse_tactic(line, false, col));
      }
      if (!at_end() && tok().line == line) fail("expected end of line");
    }
    if (!at_end() && tok().col > col) fail("unexpected indentation");
    return script;
  }

  // --- declarations ------------------------------------------------------

  std::string parse_attribute_value() {
    std::string value;
    while (!at_end() && !is_symbol(",") && !is_symbol("]")) value += tokens_[pos_++].text;
    if (value.empty()) fail("expected attribute value");
    return value;
  }

  Theorem parse_theorem() {
    Theorem thm;
    if (is_symbol("@[")) {
      ++pos_;
      while (true) {
        std::string key = expect_name();
        expect_symbol(":");
        std::string value = parse_attribute_value();
        if (key == "subject") {
          thm.subject = value;
        } else if (key == "origin") {
          auto origin = parse_origin(value);
          if (!origin) fail("unknown origin '" + value + "'");
          thm.origin = *origin;
        } else {
          fail("unknown attribute '" + key + "'");
        }
        if (is_symbol(",")) {
          ++pos_;
          continue;
        }
        expect_symbol("]");
        break;
      }
    }
    const Token& kw = tok();
    if (is_word("theorem")) {
      thm.keyword = Keyword::kTheorem;
    } else if (is_word("axiom")) {
      thm.keyword = Keyword::kAxiom;
    } else if (is_word("example")) {
      thm.keyword = Keyword::kExample;
    } else {
      fail("expected 'theorem', 'axiom' or 'example'");
    }
    ++pos_;
    thm.name = expect_name();

    std::set<std::string> bound;
    std::set<std::string> names;
    bound_ = &bound;
    allow_metas_ = false;
    auto claim = [&](const std::string& name) {
      if (sig_->declares(name)) fail("'" + name + "' shadows a signature symbol");
      if (!names.insert(name).second)
        throw DuplicateName("duplicate local name '" + name + "' in '" + thm.name + "'");
    };
    while (is_symbol("(")) {
      ++pos_;
      std::vector<std::string> idents;
      while (tok().kind == Token::Kind::kIdent && !is_symbol(":")) {
        if (is_reserved_word(tok().text)) fail("reserved word");
        idents.push_back(tokens_[pos_++].text);
      }
      expect_symbol(":");
      if (idents.empty()) fail("expected binder name");
      bool sort_binder = tok().kind == Token::Kind::kIdent && sig_->is_sort(tok().text) &&
                         peek(1).kind == Token::Kind::kSymbol && peek(1).text == ")";
      if (idents.size() > 1 && !sort_binder) fail("expected a sort");
      if (sort_binder) {
        std::string sort = tokens_[pos_++].text;
        for (const std::string& n : idents) {
          claim(n);
          bound.insert(n);
          thm.statement.binders.push_back({n, sort});
        }
      } else {
        claim(idents[0]);
        thm.statement.hypotheses.push_back({idents[0], parse_formula()});
      }
      expect_symbol(")");
    }
    expect_symbol(":");
    thm.statement.goal = parse_formula();
    if (thm.keyword == Keyword::kAxiom) {
      if (is_symbol(":=")) fail("axioms take no proof");
    } else {
      expect_symbol(":=");
      const Token& by_tok = tok();
      expect_word("by");
      thm.proof = parse_block(by_tok.line, kw.col);
    }
    bound_ = nullptr;
    return thm;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature* sig_ = nullptr;
  const std::set<std::string>* bound_ = nullptr;
  bool allow_metas_ = true;
};

}  // namespace

bool is_reserved_word(std::string_view word) {
  for (std::string_view r : kReserved)
    if (r == word) return true;
  return false;
}

Theory parse_theory(std::string_view text) { return Parser(text).parse_theory(); }

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(text).parse_free_term(sig);
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text).parse_free_formula(sig);
}

TacticScript parse_script(std::string_view text, const Signature& sig) {
  return Parser(text).parse_free_script(sig);
}

Tactic parse_tactic(std::string_view text, const Signature& sig) {
  TacticScript script = parse_script(text, sig);
  if (script.size() != 1) throw SyntaxError("expected a single tactic", 1, 1);
  return std::move(script.front());
}

}  // namespace alchemy::core
