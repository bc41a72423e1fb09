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

#ifndef ALCHEMY_CORE_PRINTER_HPP_
#define ALCHEMY_CORE_PRINTER_HPP_

#include <string>

#include "alchemy/core/tactic.hpp"
#include "alchemy/core/term.hpp"
#include "alchemy/core/theory.hpp"

namespace alchemy::core {

// Canonical, minimally parenthesized text. Implication is right
// associative and printed as `->`.
std::string print(const Term& t);
std::string print(const Formula& f);
// `(a b : Nat) (h : P) : G`
std::string print(const Statement& s);

// Single-line canonical tactic text, e.g. `rw [← add_comm] at h`.
std::string print(const Tactic& t);
// Inline script `t1; t2`. A `have` that is followed by further tactics
// gets its sub-script parenthesized.
std::string print_inline(const TacticScript& script);

// Full declaration with attribute line and an indented proof block.
std::string print(const Theorem& thm);
std::string print(const Signature& sig);
std::string print(const Theory& theory);

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_PRINTER_HPP_
