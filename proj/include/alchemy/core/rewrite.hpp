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

#ifndef ALCHEMY_CORE_REWRITE_HPP_
#define ALCHEMY_CORE_REWRITE_HPP_

#include "alchemy/core/term.hpp"

namespace alchemy::core {

// Replaces every occurrence of `from` in `f` by `to`. Throws NoOccurrence
// when `from` does not occur.
Formula rewrite_formula(const Formula& f, const Term& from, const Term& to);
Formula rewrite_formula(const Formula& f, const Formula& from, const Formula& to);

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_REWRITE_HPP_
