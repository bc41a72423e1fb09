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

#ifndef ALCHEMY_KERNEL_PROOF_STATE_HPP_
#define ALCHEMY_KERNEL_PROOF_STATE_HPP_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "alchemy/core/errors.hpp"
#include "alchemy/core/signature.hpp"
#include "alchemy/core/theory.hpp"

namespace alchemy::kernel {

struct Goal {
  std::vector<core::Hypothesis> context;
  core::Formula target;

  const core::Hypothesis* find(std::string_view name) const;
  core::Hypothesis* find(std::string_view name);
  std::set<std::string> metavars() const;

  bool operator==(const Goal&) const = default;
};

struct ProofState {
  std::vector<Goal> goals;
  // Next index for unnamed `?e<n>` metavariables; proof-local.
  int next_meta = 0;

  bool terminal() const { return goals.empty(); }
  std::set<std::string> metavars() const;

  bool operator==(const ProofState&) const = default;
};

class ParseStateError : public core::Error {
 public:
  using core::Error::Error;
};

// `h : P` lines followed by `⊢ G`; goals separated by a blank line; a
// terminal state is `no goals`.
std::string serialize(const ProofState& state);

// Inverse of serialize. The metavariable counter resumes after the largest
// `?e<n>` present. Throws ParseStateError.
ProofState parse_state(std::string_view text, const core::Signature& sig);

}  // namespace alchemy::kernel

#endif  // ALCHEMY_KERNEL_PROOF_STATE_HPP_
