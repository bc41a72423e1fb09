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

#include "alchemy/finder/finder.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <regex>
#include <set>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "alchemy/core/parser.hpp"
#include "alchemy/core/printer.hpp"

namespace alchemy::finder {

using core::Direction;
using core::Tactic;

std::string_view tactic_kind_name(TacticKind kind) {
  return kind == TacticKind::kRw ? "rw" : "apply";
}

std::optional<TacticKind> parse_tactic_kind(std::string_view text) {
  if (text == "rw") return TacticKind::kRw;
  if (text == "apply") return TacticKind::kApply;
  return std::nullopt;
}

const std::vector<InstructionTemplate>& all_templates() {
  static const std::vector<InstructionTemplate> kTemplates = {
      {TemplateId::kRwGoal, TacticKind::kRw, Direction::kForward, false, "rw [{t}]"},
      {TemplateId::kRwGoalReverse, TacticKind::kRw, Direction::kReverse, false, "rw [← {t}]"},
      {TemplateId::kRwHyp, TacticKind::kRw, Direction::kForward, true, "rw [{t}] at {h}"},
      {TemplateId::kRwHypReverse, TacticKind::kRw, Direction::kReverse, true, "rw [← {t}] at {h}"},
      {TemplateId::kApplyHave, TacticKind::kApply, Direction::kForward, true,
       "have {h} : {P} := by apply {t}"},
  };
  return kTemplates;
}

std::string_view template_name(TemplateId id) {
  switch (id) {
    case TemplateId::kRwGoal: return "rw_goal";
    case TemplateId::kRwGoalReverse: return "rw_goal_rev";
    case TemplateId::kRwHyp: return "rw_hyp";
    case TemplateId::kRwHypReverse: return "rw_hyp_rev";
    case TemplateId::kApplyHave: return "apply_have";
  }
  return "?";
}

std::optional<TemplateId> parse_template_name(std::string_view text) {
  for (const auto& t : all_templates())
    if (template_name(t.id) == text) return t.id;
  return std::nullopt;
}

TacticKind template_kind(TemplateId id) {
  return id == TemplateId::kApplyHave ? TacticKind::kApply : TacticKind::kRw;
}

std::vector<InstructionTemplate> templates_for(const std::vector<TacticKind>& kinds) {
  std::vector<InstructionTemplate> out;
  for (const auto& t : all_templates())
    for (TacticKind k : kinds)
      if (t.kind == k) {
        out.push_back(t);
        break;
      }
  return out;
}

namespace {

bool is_rewrite_rule(const core::Statement& s) {
  return s.hypotheses.empty() && (s.goal.is_eq() || s.goal.is_iff());
}

bool is_implication(const core::Statement& s) {
  return !core::split_implications(s.as_implication()).first.empty();
}

}  // namespace

std::vector<Instruction> enumerate_instructions(const core::Statement& candidate,
                                                const core::Theorem& invocable,
                                                const std::vector<InstructionTemplate>& templates) {
  std::vector<Instruction> out;
  const bool rewrite = is_rewrite_rule(invocable.statement);
  const bool implication = is_implication(invocable.statement);
  for (const auto& tmpl : templates) {
    if (tmpl.kind == TacticKind::kRw) {
      if (!rewrite) continue;
      if (!tmpl.hypothesis_slot) {
        out.push_back({Tactic::rw(tmpl.direction, invocable.name), tmpl.id});
        continue;
      }
      for (const auto& h : candidate.hypotheses)
        out.push_back({Tactic::rw(tmpl.direction, invocable.name, h.name), tmpl.id});
    } else {
      if (!implication) continue;
      for (const auto& h : candidate.hypotheses)
        out.push_back({Tactic::have(h.name, h.formula, {Tactic::apply(invocable.name)}), tmpl.id});
    }
  }
  return out;
}

bool is_valid(const kernel::Outcome& outcome, TacticKind kind) {
  if (kind == TacticKind::kRw) return std::holds_alternative<kernel::ProofState>(outcome);
  const auto* err = std::get_if<kernel::TacticError>(&outcome);
  return err != nullptr && err->kind == kernel::ErrorKind::kUnsolvedGoals && err->unsolved &&
         !err->unsolved->goals.empty();
}

std::vector<const core::Theorem*> default_pool(const core::Theory& theory,
                                               std::string_view candidate) {
  std::vector<const core::Theorem*> pool;
  for (const auto& t : theory.theorems())
    if (t.name != candidate) pool.push_back(&t);
  return pool;
}

std::vector<const core::Theorem*> candidates(const core::Theory& theory, TacticKind kind) {
  std::vector<const core::Theorem*> out;
  for (const auto& t : theory.theorems()) {
    if (t.keyword != core::Keyword::kTheorem) continue;
    if (kind == TacticKind::kApply && t.statement.hypotheses.empty()) continue;
    out.push_back(&t);
  }
  return out;
}

namespace {

const kernel::ProofState& resulting_state(const kernel::Outcome& o) {
  if (const auto* s = std::get_if<kernel::ProofState>(&o)) return *s;
  return *std::get<kernel::TacticError>(o).unsolved;
}

}  // namespace

FindResult find_invocable(const kernel::Environment& env, const core::Theorem& candidate,
                          const std::vector<const core::Theorem*>& pool,
                          const std::vector<InstructionTemplate>& templates,
                          const FindOptions& options) {
  FindResult result;
  const kernel::ProofState init = kernel::init_proof(candidate.statement);
  const std::string init_text = kernel::serialize(init);
  for (const core::Theorem* inv : pool) {
    if (inv->name == candidate.name) continue;
    for (const Instruction& ins : enumerate_instructions(candidate.statement, *inv, templates)) {
      if (result.instructions_tried >= options.instruction_budget) {
        result.budget_exhausted = true;
        return result;
      }
      ++result.instructions_tried;
      kernel::Outcome o = kernel::run_tac(env, init, ins.tactic);
      TacticKind kind = template_kind(ins.template_id);
      if (!is_valid(o, kind)) continue;
      result.records.push_back({candidate.name, inv->name, core::print(ins.tactic), init_text,
                                kernel::serialize(resulting_state(o)), ins.template_id});
    }
  }
  return result;
}

std::vector<std::string> metavariables_in(std::string_view state_text) {
  static const std::regex kMeta(R"(\?([A-Za-z_][A-Za-z0-9_']*))");
  std::vector<std::string> out;
  std::string text(state_text);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kMeta); it != std::sregex_iterator();
       ++it)
    out.push_back((*it)[1].str());
  return out;
}

std::vector<InvocationRecord> filter_records(const std::vector<InvocationRecord>& records) {
  std::vector<InvocationRecord> out;
  for (const auto& r : records) {
    auto metas = metavariables_in(r.next_state);
    bool keep = r.kind() == TacticKind::kRw
                    ? metas.empty()
                    : std::none_of(metas.begin(), metas.end(),
                                   [](const std::string& m) { return core::is_unnamed_meta(m); });
    if (keep) out.push_back(r);
  }
  return out;
}

std::vector<InvocationRecord> dedup_records(const std::vector<InvocationRecord>& records) {
  std::set<std::tuple<std::string, TacticKind, std::string>> seen;
  std::vector<InvocationRecord> out;
  for (const auto& r : records)
    if (seen.emplace(r.candidate, r.kind(), r.next_state).second) out.push_back(r);
  return out;
}

bool replay(const kernel::Environment& env, const InvocationRecord& record) {
  const core::Signature& sig = env.signature();
  kernel::ProofState init = kernel::parse_state(record.init_state, sig);
  core::Tactic tac = core::parse_tactic(record.instruction, sig);
  kernel::Outcome o = kernel::run_tac(env, init, tac);
  if (!is_valid(o, record.kind())) return false;
  return kernel::serialize(resulting_state(o)) == record.next_state;
}

std::string to_json_line(const InvocationRecord& r) {
  nlohmann::ordered_json j;
  j["candidate"] = r.candidate;
  j["invocable"] = r.invocable;
  j["instruction"] = r.instruction;
  j["init_state"] = r.init_state;
  j["next_state"] = r.next_state;
  j["template_id"] = std::string(template_name(r.template_id));
  return j.dump();
}

InvocationRecord record_from_json_line(std::string_view line) {
  auto j = nlohmann::json::parse(line);
  InvocationRecord r;
  r.candidate = j.at("candidate").get<std::string>();
  r.invocable = j.at("invocable").get<std::string>();
  r.instruction = j.at("instruction").get<std::string>();
  r.init_state = j.at("init_state").get<std::string>();
  r.next_state = j.at("next_state").get<std::string>();
  auto id = parse_template_name(j.at("template_id").get<std::string>());
  if (!id) throw std::runtime_error("unknown template_id in record");
  r.template_id = *id;
  return r;
}

void write_records(std::ostream& out, const std::vector<InvocationRecord>& records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<InvocationRecord> read_records(std::istream& in) {
  std::vector<InvocationRecord> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(record_from_json_line(line));
  return out;
}

}  // namespace alchemy::finder
