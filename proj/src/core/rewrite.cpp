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

#include "alchemy/core/rewrite.hpp"

#include "alchemy/core/errors.hpp"
#include "alchemy/core/printer.hpp"

namespace alchemy::core {

Formula rewrite_formula(const Formula& f, const Term& from, const Term& to) {
  if (count_occurrences(f, from) == 0)
    throw NoOccurrence("'" + print(from) + "' does not occur in '" + print(f) + "'");
  return replace_term(f, from, to);
}

Formula rewrite_formula(const Formula& f, const Formula& from, const Formula& to) {
  if (count_occurrences(f, from) == 0)
    throw NoOccurrence("'" + print(from) + "' does not occur in '" + print(f) + "'");
  return replace_formula(f, from, to);
}

}  // namespace alchemy::core
