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

#include "alchemy/core/theory.hpp"

#include "alchemy/core/errors.hpp"

namespace alchemy::core {

const Hypothesis* Statement::find_hypothesis(std::string_view name) const {
  for (const Hypothesis& h : hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

const Binder* Statement::find_binder(std::string_view name) const {
  for (const Binder& b : binders)
    if (b.name == name) return &b;
  return nullptr;
}

Formula Statement::as_implication() const {
  std::vector<Formula> antecedents;
  antecedents.reserve(hypotheses.size());
  for (const Hypothesis& h : hypotheses) antecedents.push_back(h.formula);
  return join_implications(antecedents, goal);
}

std::string_view keyword_name(Keyword k) {
  switch (k) {
    case Keyword::kAxiom:
      return "axiom";
    case Keyword::kTheorem:
      return "theorem";
    case Keyword::kExample:
      return "example";
  }
  return "theorem";
}

std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::kSeed:
      return "seed";
    case Origin::kSynthesizedRw:
      return "synthesized-rw";
    case Origin::kSynthesizedApply:
      return "synthesized-apply";
  }
  return "seed";
}

std::optional<Origin> parse_origin(std::string_view text) {
  if (text == "seed") return Origin::kSeed;
  if (text == "synthesized-rw") return Origin::kSynthesizedRw;
  if (text == "synthesized-apply") return Origin::kSynthesizedApply;
  return std::nullopt;
}

void Theory::add(Theorem thm) {
  if (index_of(thm.name)) throw DuplicateName("duplicate theorem name '" + thm.name + "'");
  theorems_.push_back(std::move(thm));
}

std::optional<std::size_t> Theory::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < theorems_.size(); ++i)
    if (theorems_[i].name == name) return i;
  return std::nullopt;
}

const Theorem* Theory::find(std::string_view name) const {
  auto i = index_of(name);
  return i ? &theorems_[*i] : nullptr;
}

void Theory::merge(const Theory& other) {
  signature.merge(other.signature);
  for (const Theorem& t : other.theorems_) add(t);
}

}  // namespace alchemy::core
