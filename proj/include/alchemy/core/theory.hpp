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

#ifndef ALCHEMY_CORE_THEORY_HPP_
#define ALCHEMY_CORE_THEORY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alchemy/core/signature.hpp"
#include "alchemy/core/tactic.hpp"
#include "alchemy/core/term.hpp"

namespace alchemy::core {

struct Binder {
  std::string name;
  std::string sort;

  bool operator==(const Binder&) const = default;
};

struct Hypothesis {
  std::string name;
  Formula formula;

  bool operator==(const Hypothesis&) const = default;
};

struct Statement {
  std::vector<Binder> binders;
  std::vector<Hypothesis> hypotheses;
  Formula goal;

  const Hypothesis* find_hypothesis(std::string_view name) const;
  const Binder* find_binder(std::string_view name) const;

  // Hypotheses curried onto the goal: H1 -> ... -> Hn -> G.
  Formula as_implication() const;

  bool operator==(const Statement&) const = default;
};

enum class Keyword { kAxiom, kTheorem, kExample };
enum class Origin { kSeed, kSynthesizedRw, kSynthesizedApply };

std::string_view keyword_name(Keyword k);
std::string_view origin_name(Origin o);
std::optional<Origin> parse_origin(std::string_view text);

struct Theorem {
  std::string name;
  Keyword keyword = Keyword::kTheorem;
  Statement statement;
  TacticScript proof;
  std::string subject;
  Origin origin = Origin::kSeed;

  bool operator==(const Theorem&) const = default;
};

class Theory {
 public:
  Signature signature;

  const std::vector<Theorem>& theorems() const { return theorems_; }
  std::size_t size() const { return theorems_.size(); }

  // Throws DuplicateName.
  void add(Theorem thm);
  std::optional<std::size_t> index_of(std::string_view name) const;
  const Theorem* find(std::string_view name) const;

  // Appends the declarations and theorems of `other`.
  void merge(const Theory& other);

  bool operator==(const Theory&) const = default;

 private:
  std::vector<Theorem> theorems_;
};

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_THEORY_HPP_
