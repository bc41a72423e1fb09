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

#include "alchemy/mutator/mutator.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include <json.hpp>

#include "alchemy/core/parallel.hpp"
#include "alchemy/core/parser.hpp"
#include "alchemy/core/printer.hpp"

namespace alchemy::mutator {

using core::Formula;
using core::Statement;
using core::Tactic;
using finder::InvocationRecord;

std::vector<std::string> rename_conflicts(const std::vector<std::string>& proposed,
                                          const std::set<std::string>& taken) {
  std::set<std::string> used = taken;
  std::vector<std::string> out;
  out.reserve(proposed.size());
  for (const std::string& name : proposed) {
    std::string pick = name;
    if (used.contains(pick)) pick = name + "'";
    for (int k = 2; used.contains(pick); ++k) pick = name + "_" + std::to_string(k);
    used.insert(pick);
    out.push_back(pick);
  }
  return out;
}

namespace {

std::set<std::string> statement_names(const Statement& s, const core::Signature& sig) {
  std::set<std::string> names;
  for (const auto& b : s.binders) names.insert(b.name);
  for (const auto& h : s.hypotheses) names.insert(h.name);
  for (const auto& sym : sig.symbols()) names.insert(sym.name);
  for (const auto& sort : sig.sorts()) names.insert(sort);
  return names;
}

const kernel::Goal& single_goal(const kernel::ProofState& state) {
  if (state.goals.size() != 1)
    throw kernel::ParseStateError("expected exactly one goal, found " +
                                  std::to_string(state.goals.size()));
  return state.goals.front();
}

// Appends Nat binders for variables of `f` that the statement lacks.
void bind_free_vars(Statement& s, const Formula& f) {
  std::set<std::string> vars;
  core::collect_vars(f, vars);
  for (const std::string& v : vars)
    if (s.find_binder(v) == nullptr) s.binders.push_back({v, std::string(core::kNatSort)});
}

core::Theorem derived(const core::Theorem& candidate, const Statement& mutated,
                      core::TacticScript proof, finder::TacticKind kind) {
  core::Theorem t;
  t.name = candidate.name + (kind == finder::TacticKind::kRw ? "_rw" : "_apply");
  t.keyword = core::Keyword::kExample;
  t.statement = mutated;
  t.proof = std::move(proof);
  t.subject = candidate.subject;
  t.origin = kind == finder::TacticKind::kRw ? core::Origin::kSynthesizedRw
                                             : core::Origin::kSynthesizedApply;
  return t;
}

void check_or_throw(const kernel::Environment& env, const core::Theorem& t) {
  kernel::Verdict v = kernel::check_theorem(env, t);
  if (!v.accepted)
    throw ProofConstructionFailed(
        std::string(kernel::error_kind_name(v.error->kind)) + " at step " +
            std::to_string(v.step) + ": " + v.error->message,
        *v.error);
}

std::string fresh_local(const std::string& proposal, const Statement& s, const core::TacticScript& proof,
                        const core::Signature& sig) {
  std::set<std::string> taken = statement_names(s, sig);
  std::vector<std::string> used;
  core::collect_names(proof, used);
  taken.insert(used.begin(), used.end());
  return rename_conflicts({proposal}, taken).front();
}

}  // namespace

std::string mutation_site(const InvocationRecord& record, const core::Signature& sig) {
  Tactic t = core::parse_tactic(record.instruction, sig);
  if (t.kind == Tactic::Kind::kHave) return t.name;
  return t.at ? *t.at : std::string(kGoalSite);
}

Statement mutate_statement_rw(const Statement& candidate, const InvocationRecord& record,
                              const core::Signature& sig) {
  kernel::ProofState next = kernel::parse_state(record.next_state, sig);
  const kernel::Goal& goal = single_goal(next);
  Tactic t = core::parse_tactic(record.instruction, sig);
  if (goal.context.size() != candidate.hypotheses.size())
    throw kernel::ParseStateError("context size differs from the candidate's hypotheses");
  Statement out = candidate;
  for (std::size_t i = 0; i < goal.context.size(); ++i) {
    const auto& h = goal.context[i];
    if (h.name != candidate.hypotheses[i].name)
      throw kernel::ParseStateError("hypothesis '" + h.name + "' out of place");
    if (t.at && h.name == *t.at) {
      out.hypotheses[i].formula = h.formula;
      bind_free_vars(out, h.formula);
    } else if (h.formula != candidate.hypotheses[i].formula) {
      throw kernel::ParseStateError("hypothesis '" + h.name + "' changed unexpectedly");
    }
  }
  if (!t.at) {
    out.goal = goal.target;
    bind_free_vars(out, goal.target);
  } else if (goal.target != candidate.goal) {
    throw kernel::ParseStateError("goal changed by a hypothesis rewrite");
  }
  return out;
}

Statement mutate_statement_apply(const Statement& candidate, const InvocationRecord& record,
                                 const core::Theorem& lemma, const core::Signature& sig,
                                 std::map<std::string, std::string>* renamings) {
  Tactic t = core::parse_tactic(record.instruction, sig);
  if (t.kind != Tactic::Kind::kHave)
    throw kernel::ParseStateError("apply record without a have instruction");
  auto site = std::find_if(candidate.hypotheses.begin(), candidate.hypotheses.end(),
                           [&](const core::Hypothesis& h) { return h.name == t.name; });
  if (site == candidate.hypotheses.end() || site->formula != *t.formula)
    throw kernel::ParseStateError("instruction does not restate hypothesis '" + t.name + "'");
  kernel::ProofState next = kernel::parse_state(record.next_state, sig);
  if (next.goals.empty()) throw kernel::ParseStateError("apply record without subgoals");

  // Named metavariables become fresh binders, prepended in name order.
  std::set<std::string> metas = next.metavars();
  std::vector<std::string> meta_names(metas.begin(), metas.end());
  for (const std::string& m : meta_names) {
    if (core::is_unnamed_meta(m)) throw UnassignableMetavar("unnamed metavariable ?" + m);
    const core::Binder* b = lemma.statement.find_binder(m);
    if (b == nullptr || b->sort != core::kNatSort)
      throw UnassignableMetavar("metavariable ?" + m + " has no Nat binder in '" + lemma.name + "'");
  }
  std::vector<std::string> binder_names =
      rename_conflicts(meta_names, statement_names(candidate, sig));
  core::Substitution assign;
  Statement out = candidate;
  std::vector<core::Binder> fresh;
  for (std::size_t i = 0; i < meta_names.size(); ++i) {
    assign.bind(meta_names[i], core::Term::var(binder_names[i]));
    fresh.push_back({binder_names[i], std::string(core::kNatSort)});
    if (renamings != nullptr) (*renamings)["?" + meta_names[i]] = binder_names[i];
  }
  out.binders.insert(out.binders.begin(), fresh.begin(), fresh.end());

  std::set<std::string> taken = statement_names(out, sig);
  taken.erase(t.name);
  std::vector<std::string> hyp_names =
      rename_conflicts(std::vector<std::string>(next.goals.size(), t.name), taken);
  std::vector<core::Hypothesis> replacement;
  for (std::size_t i = 0; i < next.goals.size(); ++i) {
    const kernel::Goal& g = next.goals[i];
    if (g.context != candidate.hypotheses)
      throw kernel::ParseStateError("subgoal context differs from the candidate's hypotheses");
    replacement.push_back({hyp_names[i], core::instantiate_metas(g.target, assign)});
    if (renamings != nullptr && hyp_names[i] != t.name)
      (*renamings)[t.name + "#" + std::to_string(i + 1)] = hyp_names[i];
  }
  auto pos = out.hypotheses.begin() + (site - candidate.hypotheses.begin());
  pos = out.hypotheses.erase(pos);
  out.hypotheses.insert(pos, replacement.begin(), replacement.end());
  return out;
}

core::Theorem build_proof_rw(const kernel::Environment& env, const core::Theorem& candidate,
                             const Statement& mutated, const InvocationRecord& record) {
  const core::Signature& sig = env.signature();
  Tactic ins = core::parse_tactic(record.instruction, sig);
  core::TacticScript proof;
  if (ins.at) {
    const std::string& h = *ins.at;
    const core::Hypothesis* orig = candidate.statement.find_hypothesis(h);
    std::string restored = fresh_local(h, mutated, candidate.proof, sig);
    proof.push_back(Tactic::have(restored, orig->formula,
                                 {Tactic::rw(core::reversed(ins.direction), ins.lemma, h),
                                  Tactic::exact(h)}));
    for (Tactic& t : core::rename_hypothesis(candidate.proof, h, restored)) proof.push_back(std::move(t));
  } else {
    std::string g = fresh_local("g", mutated, candidate.proof, sig);
    proof.push_back(Tactic::have(g, candidate.statement.goal, candidate.proof));
    proof.push_back(Tactic::rw(ins.direction, ins.lemma, g));
    proof.push_back(Tactic::exact(g));
  }
  core::Theorem t = derived(candidate, mutated, std::move(proof), finder::TacticKind::kRw);
  check_or_throw(env, t);
  return t;
}

core::Theorem build_proof_apply(const kernel::Environment& env, const core::Theorem& candidate,
                                const Statement& mutated, const InvocationRecord& record) {
  const core::Signature& sig = env.signature();
  Tactic ins = core::parse_tactic(record.instruction, sig);
  const std::string& h = ins.name;
  // The new hypotheses are the ones absent from the candidate.
  std::vector<std::string> added;
  for (const auto& hyp : mutated.hypotheses)
    if (candidate.statement.find_hypothesis(hyp.name) == nullptr || hyp.name == h)
      added.push_back(hyp.name);
  std::string restored = fresh_local(h, mutated, candidate.proof, sig);
  core::TacticScript sub = {Tactic::apply(ins.sub.front().lemma)};
  for (const std::string& n : added) sub.push_back(Tactic::exact(n));
  core::TacticScript proof = {Tactic::have(restored, *ins.formula, std::move(sub))};
  for (Tactic& t : core::rename_hypothesis(candidate.proof, h, restored)) proof.push_back(std::move(t));
  core::Theorem t = derived(candidate, mutated, std::move(proof), finder::TacticKind::kApply);
  check_or_throw(env, t);
  return t;
}

MutationResult mutate_record(const core::Theory& theory, const InvocationRecord& record) {
  const core::Theorem* candidate = theory.find(record.candidate);
  const core::Theorem* lemma = theory.find(record.invocable);
  if (candidate == nullptr || lemma == nullptr)
    throw kernel::ParseStateError("record names an unknown theorem");
  kernel::Environment env(theory);
  MutationResult out;
  out.source = record;
  out.site = mutation_site(record, theory.signature);
  if (record.kind() == finder::TacticKind::kRw) {
    Statement s = mutate_statement_rw(candidate->statement, record, theory.signature);
    out.mutated = build_proof_rw(env, *candidate, s, record);
  } else {
    Statement s = mutate_statement_apply(candidate->statement, record, *lemma, theory.signature,
                                         &out.renamings);
    out.mutated = build_proof_apply(env, *candidate, s, record);
  }
  return out;
}

MutateOutput mutate(const core::Theory& theory, const std::vector<InvocationRecord>& records,
                    std::size_t workers) {
  struct Attempt {
    std::optional<MutationResult> result;
    std::string error;
    std::string message;
  };
  auto attempts = core::parallel_map(records.size(), workers, [&](std::size_t i) {
    Attempt a;
    try {
      a.result = mutate_record(theory, records[i]);
    } catch (const ProofConstructionFailed& e) {
      a = {std::nullopt, "ProofConstructionFailed", e.what()};
    } catch (const UnassignableMetavar& e) {
      a = {std::nullopt, "UnassignableMetavar", e.what()};
    } catch (const kernel::ParseStateError& e) {
      a = {std::nullopt, "ParseStateError", e.what()};
    }
    return a;
  });

  MutateOutput out;
  std::set<std::string> names;
  for (const auto& t : theory.theorems()) names.insert(t.name);
  std::vector<Statement> seen;
  for (const auto& t : theory.theorems()) seen.push_back(t.statement);
  std::map<std::string, int> counters;
  for (std::size_t i = 0; i < records.size(); ++i) {
    Attempt& a = attempts[i];
    if (!a.result) {
      out.failures.push_back({records[i], a.error, a.message});
      continue;
    }
    MutationResult& m = *a.result;
    bool duplicate = std::any_of(seen.begin(), seen.end(),
                                 [&](const Statement& s) { return s == m.mutated.statement; });
    if (duplicate) {
      ++out.duplicates;
      continue;
    }
    std::string base = m.mutated.name + "_";
    int& k = counters[base];
    do {
      m.mutated.name = base + std::to_string(++k);
    } while (names.contains(m.mutated.name));
    names.insert(m.mutated.name);
    seen.push_back(m.mutated.statement);
    out.mutants.push_back(std::move(m));
  }
  return out;
}

std::string to_json_line(const MutationResult& m) {
  nlohmann::ordered_json j;
  j["name"] = m.mutated.name;
  j["candidate"] = m.source.candidate;
  j["invocable"] = m.source.invocable;
  j["template_id"] = std::string(finder::template_name(m.source.template_id));
  j["instruction"] = m.source.instruction;
  j["mutation_site"] = m.site;
  j["origin"] = std::string(core::origin_name(m.mutated.origin));
  j["subject"] = m.mutated.subject;
  j["renamings"] = m.renamings;
  return j.dump();
}

std::string to_json_line(const ConstructionFailure& f) {
  nlohmann::ordered_json j;
  j["candidate"] = f.source.candidate;
  j["invocable"] = f.source.invocable;
  j["template_id"] = std::string(finder::template_name(f.source.template_id));
  j["instruction"] = f.source.instruction;
  j["error"] = f.error;
  j["message"] = f.message;
  return j.dump();
}

}  // namespace alchemy::mutator
