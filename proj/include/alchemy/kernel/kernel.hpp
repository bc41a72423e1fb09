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

#ifndef ALCHEMY_KERNEL_KERNEL_HPP_
#define ALCHEMY_KERNEL_KERNEL_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "alchemy/core/tactic.hpp"
#include "alchemy/core/theory.hpp"
#include "alchemy/kernel/proof_state.hpp"

namespace alchemy::kernel {

enum class ErrorKind {
  kNoMatch,
  kGoalMismatch,
  kUnknownLemma,
  kUnknownHypothesis,
  kWrongLemmaShape,
  kUnsolvedGoals,
  kMetavarEscape,
};

std::string_view error_kind_name(ErrorKind kind);

struct TacticError {
  ErrorKind kind;
  std::string message;
  // For kUnsolvedGoals raised by `have`: the sub-proof state left open.
  std::optional<ProofState> unsolved;
};

using Outcome = std::variant<ProofState, TacticError>;

// The lemmas a proof may cite: the first `visible` theorems of `theory`.
class Environment {
 public:
  explicit Environment(const core::Theory& theory)
      : theory_(&theory), visible_(theory.size()) {}
  Environment(const core::Theory& theory, std::size_t visible)
      : theory_(&theory), visible_(visible) {}

  // Lemmas declared strictly before `name` (all of them if absent).
  static Environment before(const core::Theory& theory, std::string_view name);

  const core::Theorem* lemma(std::string_view name) const;
  const core::Theory& theory() const { return *theory_; }
  const core::Signature& signature() const { return theory_->signature; }

 private:
  const core::Theory* theory_;
  std::size_t visible_;
};

// Reported whenever a goal is closed.
struct Closure {
  core::Tactic::Kind by;
  // Target as stated when closed, after metavariable assignment.
  core::Formula target;
  // What closed it: the hypothesis formula, the lemma conclusion instance,
  // or for rfl the target itself.
  core::Formula witness;
};

using Observer = std::function<void(const Closure&)>;

ProofState init_proof(const core::Statement& s);

// Runs `tac` against the first goal of `state`.
Outcome run_tac(const Environment& env, const ProofState& state, const core::Tactic& tac,
                const Observer* observer = nullptr);

struct Verdict {
  bool accepted = false;
  std::optional<TacticError> error;
  // Index of the failing top-level tactic, or the script length when the
  // script ran out with goals remaining.
  std::size_t step = 0;
};

Verdict check_theorem(const Environment& env, const core::Theorem& thm,
                      const Observer* observer = nullptr);

struct TracedPair {
  std::string state_text;
  std::string tactic_text;
  core::Tactic tactic;
};

class TraceOnRejected : public core::Error {
 public:
  using core::Error::Error;
};

// One pair per executed tactic; `have` is followed by its sub-script.
std::vector<TracedPair> trace_proof(const Environment& env, const core::Theorem& thm);

}  // namespace alchemy::kernel

#endif  // ALCHEMY_KERNEL_KERNEL_HPP_
