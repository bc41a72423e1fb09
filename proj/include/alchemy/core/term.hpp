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

#ifndef ALCHEMY_CORE_TERM_HPP_
#define ALCHEMY_CORE_TERM_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace alchemy::core {

// A first-order term. Metavariables only appear inside proof states; they
// are rigid for matching purposes unless explicitly instantiated.
struct Term {
  enum class Kind { kVar, kConst, kMeta, kApp };

  Kind kind = Kind::kVar;
  // Variable, constant or metavariable name (metavariables without the
  // leading '?'), or the head symbol of an application.
  std::string name;
  std::vector<Term> args;

  static Term var(std::string name) { return {Kind::kVar, std::move(name), {}}; }
  static Term constant(std::string name) {
    return {Kind::kConst, std::move(name), {}};
  }
  static Term meta(std::string name) { return {Kind::kMeta, std::move(name), {}}; }
  static Term app(std::string head, std::vector<Term> args) {
    return {Kind::kApp, std::move(head), std::move(args)};
  }

  bool is_var() const { return kind == Kind::kVar; }
  bool is_const() const { return kind == Kind::kConst; }
  bool is_meta() const { return kind == Kind::kMeta; }
  bool is_app() const { return kind == Kind::kApp; }

  std::size_t size() const;

  bool operator==(const Term&) const = default;
};

// Atom(pred, args), Eq(lhs, rhs), Iff(lhs, rhs) and Implies(antecedent,
// consequent). Eq stores its two sides in `args`; the connectives store
// their operands in `subs`.
struct Formula {
  enum class Kind { kAtom, kEq, kIff, kImplies };

  Kind kind = Kind::kAtom;
  std::string pred;
  std::vector<Term> args;
  std::vector<Formula> subs;

  static Formula atom(std::string pred, std::vector<Term> args) {
    return {Kind::kAtom, std::move(pred), std::move(args), {}};
  }
  static Formula eq(Term lhs, Term rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula implies(Formula antecedent, Formula consequent);

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_eq() const { return kind == Kind::kEq; }
  bool is_iff() const { return kind == Kind::kIff; }
  bool is_implies() const { return kind == Kind::kImplies; }

  const Term& lhs_term() const { return args.at(0); }
  const Term& rhs_term() const { return args.at(1); }
  const Formula& lhs() const { return subs.at(0); }
  const Formula& rhs() const { return subs.at(1); }

  bool operator==(const Formula&) const = default;
};

// Maps variable names to terms. Application is simultaneous.
class Substitution {
 public:
  Substitution() = default;

  const Term* lookup(const std::string& name) const;
  void bind(const std::string& name, Term value);
  bool contains(const std::string& name) const { return map_.contains(name); }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }

  bool operator==(const Substitution&) const = default;

 private:
  std::map<std::string, Term> map_;
};

// One-way syntactic matching. Every Var in `pattern` is a pattern variable;
// constants, metavariables and application heads are rigid. Repeated
// pattern variables must match structurally equal subterms.
std::optional<Substitution> match_term(const Term& pattern, const Term& target);
std::optional<Substitution> match_formula(const Formula& pattern,
                                          const Formula& target);

// Extends `sigma` in place; returns false (leaving sigma unspecified) on
// mismatch.
bool match_term_into(const Term& pattern, const Term& target, Substitution& sigma);
bool match_formula_into(const Formula& pattern, const Formula& target,
                        Substitution& sigma);

Term substitute(const Term& t, const Substitution& sigma);
Formula substitute(const Formula& f, const Substitution& sigma);

// Replaces metavariables (by name, without '?') rather than variables.
Term instantiate_metas(const Term& t, const Substitution& assignment);
Formula instantiate_metas(const Formula& f, const Substitution& assignment);

// Replaces every occurrence of `from` by `to`. Occurrences are found
// top-down; a replaced subterm is not revisited.
Term replace_term(const Term& t, const Term& from, const Term& to);
Formula replace_term(const Formula& f, const Term& from, const Term& to);
Formula replace_formula(const Formula& f, const Formula& from, const Formula& to);

std::size_t count_occurrences(const Term& t, const Term& needle);
std::size_t count_occurrences(const Formula& f, const Term& needle);
std::size_t count_occurrences(const Formula& f, const Formula& needle);

// Pre-order (leftmost-outermost) traversal. The visitor returns true to stop.
bool visit_subterms(const Term& t, const std::function<bool(const Term&)>& visit);
bool visit_subterms(const Formula& f, const std::function<bool(const Term&)>& visit);
bool visit_subformulas(const Formula& f,
                       const std::function<bool(const Formula&)>& visit);

void collect_vars(const Term& t, std::set<std::string>& out);
void collect_vars(const Formula& f, std::set<std::string>& out);
void collect_metas(const Term& t, std::set<std::string>& out);
void collect_metas(const Formula& f, std::set<std::string>& out);
bool has_metas(const Formula& f);

// Renames variables (not metavariables) according to `renaming`.
Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& renaming);

// Splits A1 -> ... -> An -> C into ({A1..An}, C).
std::pair<std::vector<Formula>, Formula> split_implications(const Formula& f);
Formula join_implications(const std::vector<Formula>& antecedents, Formula conclusion);

// Unnamed metavariables are the auto-generated `?e<digits>` ones.
bool is_unnamed_meta(const std::string& name);

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_TERM_HPP_
