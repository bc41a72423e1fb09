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

#ifndef ALCHEMY_CORE_SIGNATURE_HPP_
#define ALCHEMY_CORE_SIGNATURE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alchemy/core/term.hpp"

namespace alchemy::core {

inline constexpr std::string_view kNatSort = "Nat";

struct Symbol {
  enum class Kind { kFunction, kPredicate };
  Kind kind;
  std::string name;
  int arity;

  bool operator==(const Symbol&) const = default;
};

// Declared sorts, function symbols and predicate symbols, kept in
// declaration order. Numerals are implicitly declared constants.
class Signature {
 public:
  void declare_sort(const std::string& name);
  void declare_function(const std::string& name, int arity);
  void declare_predicate(const std::string& name, int arity);

  const Symbol* find(std::string_view name) const;
  bool is_sort(std::string_view name) const;
  bool is_function(std::string_view name) const;
  bool is_predicate(std::string_view name) const;
  // Nullary function symbols and numerals.
  bool is_constant(std::string_view name) const;
  bool declares(std::string_view name) const;

  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  // Adds every declaration of `other`; a symbol declared in both must agree.
  void merge(const Signature& other);

  // Throws ArityError on an undeclared head or an arity mismatch.
  void check(const Term& t) const;
  void check(const Formula& f) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> sorts_;
  std::vector<Symbol> symbols_;
};

bool is_numeral(std::string_view name);
bool is_identifier(std::string_view name);

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_SIGNATURE_HPP_
