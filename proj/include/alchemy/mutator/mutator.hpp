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

#ifndef ALCHEMY_MUTATOR_MUTATOR_HPP_
#define ALCHEMY_MUTATOR_MUTATOR_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "alchemy/core/errors.hpp"
#include "alchemy/core/theory.hpp"
#include "alchemy/finder/finder.hpp"
#include "alchemy/kernel/kernel.hpp"

namespace alchemy::mutator {

class UnassignableMetavar : public core::Error {
 public:
  using core::Error::Error;
};

class ProofConstructionFailed : public core::Error {
 public:
  ProofConstructionFailed(const std::string& message, kernel::TacticError cause)
      : core::Error(message), cause_(std::move(cause)) {}
  const kernel::TacticError& cause() const { return cause_; }

 private:
  kernel::TacticError cause_;
};

// Keeps each name if free, else tries `name'`, then `name_2`, `name_3`, ...
// Names are claimed left to right, so the result is unique and disjoint
// from `taken`.
std::vector<std::string> rename_conflicts(const std::vector<std::string>& proposed,
                                          const std::set<std::string>& taken);

// Mutation site: "goal" or the mutated hypothesis name.
inline constexpr std::string_view kGoalSite = "goal";

std::string mutation_site(const finder::InvocationRecord& record, const core::Signature& sig);

// Throws kernel::ParseStateError when next_state does not line up.
core::Statement mutate_statement_rw(const core::Statement& candidate,
                                    const finder::InvocationRecord& record,
                                    const core::Signature& sig);

// `lemma` supplies the sorts of the metavariables' binders. Throws
// UnassignableMetavar or kernel::ParseStateError. Renamed binders and
// hypotheses are reported in `renamings` when given.
core::Statement mutate_statement_apply(const core::Statement& candidate,
                                       const finder::InvocationRecord& record,
                                       const core::Theorem& lemma, const core::Signature& sig,
                                       std::map<std::string, std::string>* renamings = nullptr);

// Both builders kernel-check the result and throw ProofConstructionFailed.
core::Theorem build_proof_rw(const kernel::Environment& env, const core::Theorem& candidate,
                             const core::Statement& mutated,
                             const finder::InvocationRecord& record);
core::Theorem build_proof_apply(const kernel::Environment& env, const core::Theorem& candidate,
                                const core::Statement& mutated,
                                const finder::InvocationRecord& record);

struct MutationResult {
  finder::InvocationRecord source;
  core::Theorem mutated;
  std::string site;
  std::map<std::string, std::string> renamings;
};

struct ConstructionFailure {
  finder::InvocationRecord source;
  std::string error;
  std::string message;
};

struct MutateOutput {
  std::vector<MutationResult> mutants;
  std::vector<ConstructionFailure> failures;
  std::size_t duplicates = 0;
};

// Builds one mutant per record. Failed constructions are logged and
// mutants equal to an existing statement or an earlier mutant are dropped.
// Records are processed on `workers` threads; the output does not depend
// on the count.
MutateOutput mutate(const core::Theory& theory, const std::vector<finder::InvocationRecord>& records,
                    std::size_t workers = 1);

// Single-record step of `mutate` without naming or deduplication.
MutationResult mutate_record(const core::Theory& theory, const finder::InvocationRecord& record);

std::string to_json_line(const MutationResult& m);
std::string to_json_line(const ConstructionFailure& f);

}  // namespace alchemy::mutator

#endif  // ALCHEMY_MUTATOR_MUTATOR_HPP_
