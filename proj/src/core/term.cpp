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

#include "alchemy/core/term.hpp"

#include <cctype>

namespace alchemy::core {

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const Term& a : args) n += a.size();
  return n;
}

Formula Formula::eq(Term lhs, Term rhs) {
  return {Kind::kEq, {}, {std::move(lhs), std::move(rhs)}, {}};
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return {Kind::kIff, {}, {}, {std::move(lhs), std::move(rhs)}};
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  return {Kind::kImplies, {}, {}, {std::move(antecedent), std::move(consequent)}};
}

const Term* Substitution::lookup(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& name, Term value) {
  map_.insert_or_assign(name, std::move(value));
}

bool match_term_into(const Term& pattern, const Term& target, Substitution& sigma) {
  if (pattern.is_var()) {
    if (const Term* bound = sigma.lookup(pattern.name)) return *bound == target;
    sigma.bind(pattern.name, target);
    return true;
  }
  if (pattern.kind != target.kind || pattern.name != target.name ||
      pattern.args.size() != target.args.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term_into(pattern.args[i], target.args[i], sigma)) return false;
  return true;
}

bool match_formula_into(const Formula& pattern, const Formula& target,
                        Substitution& sigma) {
  if (pattern.kind != target.kind || pattern.pred != target.pred ||
      pattern.args.size() != target.args.size() ||
      pattern.subs.size() != target.subs.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_term_into(pattern.args[i], target.args[i], sigma)) return false;
  for (std::size_t i = 0; i < pattern.subs.size(); ++i)
    if (!match_formula_into(pattern.subs[i], target.subs[i], sigma)) return false;
  return true;
}

std::optional<Substitution> match_term(const Term& pattern, const Term& target) {
  Substitution sigma;
  if (!match_term_into(pattern, target, sigma)) return std::nullopt;
  return sigma;
}

std::optional<Substitution> match_formula(const Formula& pattern,
                                          const Formula& target) {
  Substitution sigma;
  if (!match_formula_into(pattern, target, sigma)) return std::nullopt;
  return sigma;
}

namespace {

template <typename Leaf>
Term map_leaves(const Term& t, const Leaf& leaf) {
  if (t.is_app()) {
    Term out{Term::Kind::kApp, t.name, {}};
    out.args.reserve(t.args.size());
    for (const Term& a : t.args) out.args.push_back(map_leaves(a, leaf));
    return out;
  }
  return leaf(t);
}

template <typename TermFn>
Formula map_terms(const Formula& f, const TermFn& fn) {
  Formula out{f.kind, f.pred, {}, {}};
  out.args.reserve(f.args.size());
  for (const Term& a : f.args) out.args.push_back(fn(a));
  out.subs.reserve(f.subs.size());
  for (const Formula& s : f.subs) out.subs.push_back(map_terms(s, fn));
  return out;
}

}  // namespace

Term substitute(const Term& t, const Substitution& sigma) {
  return map_leaves(t, [&](const Term& leaf) {
    if (leaf.is_var())
      if (const Term* v = sigma.lookup(leaf.name)) return *v;
    return leaf;
  });
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  return map_terms(f, [&](const Term& t) { return substitute(t, sigma); });
}

Term instantiate_metas(const Term& t, const Substitution& assignment) {
  return map_leaves(t, [&](const Term& leaf) {
    if (leaf.is_meta())
      if (const Term* v = assignment.lookup(leaf.name)) return *v;
    return leaf;
  });
}

Formula instantiate_metas(const Formula& f, const Substitution& assignment) {
  return map_terms(f, [&](const Term& t) { return instantiate_metas(t, assignment); });
}

Term replace_term(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (!t.is_app()) return t;
  Term out{Term::Kind::kApp, t.name, {}};
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back(replace_term(a, from, to));
  return out;
}

Formula replace_term(const Formula& f, const Term& from, const Term& to) {
  return map_terms(f, [&](const Term& t) { return replace_term(t, from, to); });
}

Formula replace_formula(const Formula& f, const Formula& from, const Formula& to) {
  if (f == from) return to;
  Formula out{f.kind, f.pred, f.args, {}};
  out.subs.reserve(f.subs.size());
  for (const Formula& s : f.subs) out.subs.push_back(replace_formula(s, from, to));
  return out;
}

std::size_t count_occurrences(const Term& t, const Term& needle) {
  if (t == needle) return 1;
  std::size_t n = 0;
  for (const Term& a : t.args) n += count_occurrences(a, needle);
  return n;
}

std::size_t count_occurrences(const Formula& f, const Term& needle) {
  std::size_t n = 0;
  for (const Term& a : f.args) n += count_occurrences(a, needle);
  for (const Formula& s : f.subs) n += count_occurrences(s, needle);
  return n;
}

std::size_t count_occurrences(const Formula& f, const Formula& needle) {
  if (f == needle) return 1;
  std::size_t n = 0;
  for (const Formula& s : f.subs) n += count_occurrences(s, needle);
  return n;
}

bool visit_subterms(const Term& t, const std::function<bool(const Term&)>& visit) {
  if (visit(t)) return true;
  for (const Term& a : t.args)
    if (visit_subterms(a, visit)) return true;
  return false;
}

bool visit_subterms(const Formula& f, const std::function<bool(const Term&)>& visit) {
  for (const Term& a : f.args)
    if (visit_subterms(a, visit)) return true;
  for (const Formula& s : f.subs)
    if (visit_subterms(s, visit)) return true;
  return false;
}

bool visit_subformulas(const Formula& f,
                       const std::function<bool(const Formula&)>& visit) {
  if (visit(f)) return true;
  for (const Formula& s : f.subs)
    if (visit_subformulas(s, visit)) return true;
  return false;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) out.insert(t.name);
  for (const Term& a : t.args) collect_vars(a, out);
}

void collect_vars(const Formula& f, std::set<std::string>& out) {
  for (const Term& a : f.args) collect_vars(a, out);
  for (const Formula& s : f.subs) collect_vars(s, out);
}

void collect_metas(const Term& t, std::set<std::string>& out) {
  if (t.is_meta()) out.insert(t.name);
  for (const Term& a : t.args) collect_metas(a, out);
}

void collect_metas(const Formula& f, std::set<std::string>& out) {
  for (const Term& a : f.args) collect_metas(a, out);
  for (const Formula& s : f.subs) collect_metas(s, out);
}

bool has_metas(const Formula& f) {
  return visit_subterms(f, [](const Term& t) { return t.is_meta(); });
}

Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& renaming) {
  Substitution sigma;
  for (const auto& [from, to] : renaming) sigma.bind(from, Term::var(to));
  return substitute(f, sigma);
}

std::pair<std::vector<Formula>, Formula> split_implications(const Formula& f) {
  std::vector<Formula> antecedents;
  const Formula* cur = &f;
  while (cur->is_implies()) {
    antecedents.push_back(cur->lhs());
    cur = &cur->rhs();
  }
  return {std::move(antecedents), *cur};
}

Formula join_implications(const std::vector<Formula>& antecedents, Formula conclusion) {
  Formula out = std::move(conclusion);
  for (auto it = antecedents.rbegin(); it != antecedents.rend(); ++it)
    out = Formula::implies(*it, std::move(out));
  return out;
}

bool is_unnamed_meta(const std::string& name) {
  if (name.size() < 2 || name[0] != 'e') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

}  // namespace alchemy::core
