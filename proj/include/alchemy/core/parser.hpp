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

#ifndef ALCHEMY_CORE_PARSER_HPP_
#define ALCHEMY_CORE_PARSER_HPP_

#include <string_view>

#include "alchemy/core/signature.hpp"
#include "alchemy/core/tactic.hpp"
#include "alchemy/core/term.hpp"
#include "alchemy/core/theory.hpp"

namespace alchemy::core {

// Parses a `.thy` source. Throws SyntaxError, ArityError or DuplicateName.
// Proofs are not checked here.
Theory parse_theory(std::string_view text);

// Free-standing parsers: identifiers that are not signature symbols become
// variables and `?x` becomes a metavariable.
Term parse_term(std::string_view text, const Signature& sig);
Formula parse_formula(std::string_view text, const Signature& sig);
Tactic parse_tactic(std::string_view text, const Signature& sig);
TacticScript parse_script(std::string_view text, const Signature& sig);

bool is_reserved_word(std::string_view word);

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_PARSER_HPP_
