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

#include "alchemy/core/signature.hpp"

#include <algorithm>
#include <cctype>

#include "alchemy/core/errors.hpp"

namespace alchemy::core {

bool is_numeral(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name[0]);
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_' || u == '\'';
  });
}

void Signature::declare_sort(const std::string& name) {
  if (name == kNatSort) return;
  if (declares(name)) throw DuplicateName("duplicate signature entry '" + name + "'");
  sorts_.push_back(name);
}

void Signature::declare_function(const std::string& name, int arity) {
  if (declares(name)) throw DuplicateName("duplicate signature entry '" + name + "'");
  if (arity < 0) throw ArityError("negative arity for '" + name + "'");
  symbols_.push_back({Symbol::Kind::kFunction, name, arity});
}

void Signature::declare_predicate(const std::string& name, int arity) {
  if (declares(name)) throw DuplicateName("duplicate signature entry '" + name + "'");
  if (arity < 0) throw ArityError("negative arity for '" + name + "'");
  symbols_.push_back({Symbol::Kind::kPredicate, name, arity});
}

const Symbol* Signature::find(std::string_view name) const {
  for (const Symbol& s : symbols_)
    if (s.name == name) return &s;
  return nullptr;
}

bool Signature::is_sort(std::string_view name) const {
  return name == kNatSort || std::find(sorts_.begin(), sorts_.end(), name) != sorts_.end();
}

bool Signature::is_function(std::string_view name) const {
  const Symbol* s = find(name);
  return s != nullptr && s->kind == Symbol::Kind::kFunction;
}

bool Signature::is_predicate(std::string_view name) const {
  const Symbol* s = find(name);
  return s != nullptr && s->kind == Symbol::Kind::kPredicate;
}

bool Signature::is_constant(std::string_view name) const {
  if (is_numeral(name)) return true;
  const Symbol* s = find(name);
  return s != nullptr && s->kind == Symbol::Kind::kFunction && s->arity == 0;
}

bool Signature::declares(std::string_view name) const {
  return is_sort(name) || find(name) != nullptr;
}

void Signature::merge(const Signature& other) {
  for (const std::string& sort : other.sorts_) {
    if (is_sort(sort)) continue;
    if (find(sort) != nullptr)
      throw DuplicateName("'" + sort + "' declared both as sort and symbol");
    sorts_.push_back(sort);
  }
  for (const Symbol& sym : other.symbols_) {
    const Symbol* mine = find(sym.name);
    if (mine == nullptr) {
      if (is_sort(sym.name))
        throw DuplicateName("'" + sym.name + "' declared both as sort and symbol");
      symbols_.push_back(sym);
    } else if (!(*mine == sym)) {
      throw ArityError("conflicting declarations of '" + sym.name + "'");
    }
  }
}

void Signature::check(const Term& t) const {
  switch (t.kind) {
    case Term::Kind::kVar:
    case Term::Kind::kMeta:
      return;
    case Term::Kind::kConst:
      if (!is_constant(t.name)) throw ArityError("undeclared constant '" + t.name + "'");
      return;
    case Term::Kind::kApp: {
      const Symbol* s = find(t.name);
      if (s == nullptr || s->kind != Symbol::Kind::kFunction)
        throw ArityError("undeclared function '" + t.name + "'");
      if (static_cast<std::size_t>(s->arity) != t.args.size())
        throw ArityError("'" + t.name + "' expects " + std::to_string(s->arity) +
                         " arguments, got " + std::to_string(t.args.size()));
      for (const Term& a : t.args) check(a);
      return;
    }
  }
}

void Signature::check(const Formula& f) const {
  if (f.is_atom()) {
    const Symbol* s = find(f.pred);
    if (s == nullptr || s->kind != Symbol::Kind::kPredicate)
      throw ArityError("undeclared predicate '" + f.pred + "'");
    if (static_cast<std::size_t>(s->arity) != f.args.size())
      throw ArityError("'" + f.pred + "' expects " + std::to_string(s->arity) +
                       " arguments, got " + std::to_string(f.args.size()));
  }
  for (const Term& a : f.args) check(a);
  for (const Formula& s : f.subs) check(s);
}

}  // namespace alchemy::core
