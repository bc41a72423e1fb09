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

#ifndef ALCHEMY_FINDER_FINDER_HPP_
#define ALCHEMY_FINDER_FINDER_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alchemy/core/tactic.hpp"
#include "alchemy/core/theory.hpp"
#include "alchemy/kernel/kernel.hpp"

namespace alchemy::finder {

enum class TacticKind { kRw, kApply };

std::string_view tactic_kind_name(TacticKind kind);
std::optional<TacticKind> parse_tactic_kind(std::string_view text);

enum class TemplateId { kRwGoal, kRwGoalReverse, kRwHyp, kRwHypReverse, kApplyHave };

struct InstructionTemplate {
  TemplateId id;
  TacticKind kind;
  core::Direction direction;
  bool hypothesis_slot;
  // `{t}` is the invocable theorem, `{h}` the hypothesis slot, `{P}` its
  // formula.
  std::string_view text_pattern;
};

std::string_view template_name(TemplateId id);
std::optional<TemplateId> parse_template_name(std::string_view text);
TacticKind template_kind(TemplateId id);

// The five templates, in enumeration order.
const std::vector<InstructionTemplate>& all_templates();
std::vector<InstructionTemplate> templates_for(const std::vector<TacticKind>& kinds);

struct Instruction {
  core::Tactic tactic;
  TemplateId template_id;
};

std::vector<Instruction> enumerate_instructions(const core::Statement& candidate,
                                                const core::Theorem& invocable,
                                                const std::vector<InstructionTemplate>& templates);

bool is_valid(const kernel::Outcome& outcome, TacticKind kind);

struct InvocationRecord {
  std::string candidate;
  std::string invocable;
  std::string instruction;
  std::string init_state;
  std::string next_state;
  TemplateId template_id = TemplateId::kRwGoal;

  TacticKind kind() const { return template_kind(template_id); }
  bool operator==(const InvocationRecord&) const = default;
};

struct FindOptions {
  // Maximum instructions tried per candidate.
  std::size_t instruction_budget = 10000;
};

struct FindResult {
  std::vector<InvocationRecord> records;
  std::size_t instructions_tried = 0;
  bool budget_exhausted = false;
};

// Every theorem of the theory except the candidate, in theory order.
std::vector<const core::Theorem*> default_pool(const core::Theory& theory,
                                               std::string_view candidate);

// Theorems eligible as candidates for `kind`: proved theorems, and for
// apply only those with at least one hypothesis.
std::vector<const core::Theorem*> candidates(const core::Theory& theory, TacticKind kind);

FindResult find_invocable(const kernel::Environment& env, const core::Theorem& candidate,
                          const std::vector<const core::Theorem*>& pool,
                          const std::vector<InstructionTemplate>& templates,
                          const FindOptions& options = {});

// Drops rw records with any metavariable and apply records with unnamed
// `?e<n>` metavariables in next_state.
std::vector<InvocationRecord> filter_records(const std::vector<InvocationRecord>& records);

// Keeps the first record per (candidate, tactic kind, next_state).
std::vector<InvocationRecord> dedup_records(const std::vector<InvocationRecord>& records);

std::vector<std::string> metavariables_in(std::string_view state_text);

// Replays the instruction from init_state and compares the resulting
// state text with next_state.
bool replay(const kernel::Environment& env, const InvocationRecord& record);

std::string to_json_line(const InvocationRecord& record);
InvocationRecord record_from_json_line(std::string_view line);
void write_records(std::ostream& out, const std::vector<InvocationRecord>& records);
std::vector<InvocationRecord> read_records(std::istream& in);

}  // namespace alchemy::finder

#endif  // ALCHEMY_FINDER_FINDER_HPP_
