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

#ifndef ALCHEMY_CORE_TACTIC_HPP_
#define ALCHEMY_CORE_TACTIC_HPP_

#include <optional>
#include <string>
#include <vector>

#include "alchemy/core/term.hpp"

namespace alchemy::core {

enum class Direction { kForward, kReverse };

inline Direction reversed(Direction d) {
  return d == Direction::kForward ? Direction::kReverse : Direction::kForward;
}

struct Tactic;
using TacticScript = std::vector<Tactic>;

// Tactic syntax. Semantics live in the kernel.
struct Tactic {
  enum class Kind { kRw, kApply, kHave, kExact, kAssumption, kRfl };

  Kind kind = Kind::kRfl;
  Direction direction = Direction::kForward;
  // Lemma name for rw/apply.
  std::string lemma;
  // Hypothesis targeted by `rw ... at h` / `apply ... at h`.
  std::optional<std::string> at;
  // Name introduced by `have`, or referenced by `exact`.
  std::string name;
  std::optional<Formula> formula;
  TacticScript sub;

  static Tactic rw(Direction dir, std::string lemma,
                   std::optional<std::string> at = std::nullopt);
  static Tactic apply(std::string lemma, std::optional<std::string> at = std::nullopt);
  static Tactic have(std::string name, Formula formula, TacticScript sub);
  static Tactic exact(std::string hypothesis);
  static Tactic assumption();
  static Tactic rfl();

  bool operator==(const Tactic&) const = default;
};

// Number of tactics including those nested in `have` sub-scripts.
std::size_t flattened_length(const TacticScript& script);

// Renames references to hypothesis `from` (exact / at-targets) until a
// `have` rebinds the name at the same level.
TacticScript rename_hypothesis(const TacticScript& script, const std::string& from,
                               const std::string& to);

// Every hypothesis name a script mentions or introduces.
void collect_names(const TacticScript& script, std::vector<std::string>& out);

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_TACTIC_HPP_
