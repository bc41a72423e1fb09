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

#include "alchemy/kernel/kernel.hpp"

#include <map>
#include <set>
#include <utility>

#include "alchemy/core/printer.hpp"

namespace alchemy::kernel {

using core::Formula;
using core::Substitution;
using core::Tactic;
using core::Term;

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNoMatch: return "NoMatch";
    case ErrorKind::kGoalMismatch: return "GoalMismatch";
    case ErrorKind::kUnknownLemma: return "UnknownLemma";
    case ErrorKind::kUnknownHypothesis: return "UnknownHypothesis";
    case ErrorKind::kWrongLemmaShape: return "WrongLemmaShape";
    case ErrorKind::kUnsolvedGoals: return "UnsolvedGoals";
    case ErrorKind::kMetavarEscape: return "MetavarEscape";
  }
  return "?";
}

Environment Environment::before(const core::Theory& theory, std::string_view name) {
  auto idx = theory.index_of(name);
  return Environment(theory, idx ? *idx : theory.size());
}

const core::Theorem* Environment::lemma(std::string_view name) const {
  auto idx = theory_->index_of(name);
  if (!idx || *idx >= visible_) return nullptr;
  return &theory_->theorems()[*idx];
}

ProofState init_proof(const core::Statement& s) {
  ProofState state;
  state.goals.push_back(Goal{s.hypotheses, s.goal});
  return state;
}

namespace {

// Lemma binders are renamed to `x.p`; the dot keeps them apart from any
// identifier that can occur in a proof state.
constexpr std::string_view kLemmaSuffix = ".p";

struct PreparedLemma {
  std::vector<std::string> binders;
  std::vector<Formula> antecedents;
  Formula conclusion;
};

PreparedLemma prepare(const core::Theorem& lemma) {
  std::map<std::string, std::string> renaming;
  PreparedLemma out;
  for (const auto& b : lemma.statement.binders) {
    std::string internal = b.name + std::string(kLemmaSuffix);
    renaming[b.name] = internal;
    out.binders.push_back(internal);
  }
  auto [ants, concl] =
      core::split_implications(core::rename_vars(lemma.statement.as_implication(), renaming));
  out.antecedents = std::move(ants);
  out.conclusion = std::move(concl);
  return out;
}

std::string external_name(const std::string& internal) {
  return internal.substr(0, internal.size() - kLemmaSuffix.size());
}

class MetaSupply {
 public:
  explicit MetaSupply(const ProofState& state) : used_(state.metavars()), next_(state.next_meta) {}

  // A named metavariable after the binder when that name is free,
  // otherwise `?e<n>`.
  Term fresh(const std::string& binder) {
    std::string base = external_name(binder);
    if (!core::is_unnamed_meta(base) && used_.insert(base).second) return Term::meta(base);
    while (true) {
      std::string name = "e" + std::to_string(next_++);
      if (used_.insert(name).second) return Term::meta(name);
    }
  }

  int next() const { return next_; }

 private:
  std::set<std::string> used_;
  int next_;
};

// Binds every lemma binder occurring in `formulas` but not in `sigma` to a
// fresh metavariable, in binder order.
void bind_unmatched(const PreparedLemma& lemma, const std::vector<const Formula*>& formulas,
                    Substitution& sigma, MetaSupply& supply) {
  std::set<std::string> occurring;
  for (const Formula* f : formulas) core::collect_vars(*f, occurring);
  for (const std::string& b : lemma.binders)
    if (occurring.contains(b) && !sigma.contains(b)) sigma.bind(b, supply.fresh(b));
}

// Matching in which metavariables of `pattern` are the only flexible
// positions; `target` must be metavariable-free.
bool match_metas(const Term& pattern, const Term& target, Substitution& asg) {
  if (pattern.is_meta()) {
    if (const Term* bound = asg.lookup(pattern.name)) return *bound == target;
    asg.bind(pattern.name, target);
    return true;
  }
  if (pattern.kind != target.kind || pattern.name != target.name ||
      pattern.args.size() != target.args.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_metas(pattern.args[i], target.args[i], asg)) return false;
  return true;
}

bool match_metas(const Formula& pattern, const Formula& target, Substitution& asg) {
  if (pattern.kind != target.kind || pattern.pred != target.pred ||
      pattern.args.size() != target.args.size() || pattern.subs.size() != target.subs.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_metas(pattern.args[i], target.args[i], asg)) return false;
  for (std::size_t i = 0; i < pattern.subs.size(); ++i)
    if (!match_metas(pattern.subs[i], target.subs[i], asg)) return false;
  return true;
}

TacticError error(ErrorKind kind, std::string message) {
  return TacticError{kind, std::move(message), std::nullopt};
}

// Closes the first goal and propagates the metavariable assignment.
ProofState close_first(const ProofState& state, const Substitution& asg) {
  ProofState out;
  out.next_meta = state.next_meta;
  for (std::size_t i = 1; i < state.goals.size(); ++i) {
    Goal g = state.goals[i];
    if (!asg.empty()) {
      for (auto& h : g.context) h.formula = core::instantiate_metas(h.formula, asg);
      g.target = core::instantiate_metas(g.target, asg);
    }
    out.goals.push_back(std::move(g));
  }
  return out;
}

void notify(const Observer* observer, Tactic::Kind by, const Formula& target,
            const Formula& witness) {
  if (observer != nullptr && *observer) (*observer)(Closure{by, target, witness});
}

Outcome run_rw(const Environment& env, const ProofState& state, const Tactic& tac) {
  const core::Theorem* lemma = env.lemma(tac.lemma);
  if (lemma == nullptr) return error(ErrorKind::kUnknownLemma, "unknown lemma '" + tac.lemma + "'");
  const Formula& eqn = lemma->statement.goal;
  if (!lemma->statement.hypotheses.empty() || !(eqn.is_eq() || eqn.is_iff()))
    return error(ErrorKind::kWrongLemmaShape, "'" + tac.lemma + "' is not an equation or iff");
  PreparedLemma prepared = prepare(*lemma);

  ProofState next = state;
  Goal& goal = next.goals.front();
  Formula* where = &goal.target;
  if (tac.at) {
    core::Hypothesis* h = goal.find(*tac.at);
    if (h == nullptr) return error(ErrorKind::kUnknownHypothesis, "unknown hypothesis '" + *tac.at + "'");
    where = &h->formula;
  }

  const bool forward = tac.direction == core::Direction::kForward;
  const Formula& c = prepared.conclusion;
  MetaSupply supply(state);
  Substitution sigma;
  Formula rewritten;
  if (c.is_eq()) {
    const Term& from = forward ? c.lhs_term() : c.rhs_term();
    const Term& to = forward ? c.rhs_term() : c.lhs_term();
    if (from.is_var())
      return error(ErrorKind::kNoMatch, "pattern of '" + tac.lemma + "' is a bare variable");
    const Term* instance = nullptr;
    core::visit_subterms(*where, [&](const Term& t) {
      Substitution s;
      if (!core::match_term_into(from, t, s)) return false;
      sigma = std::move(s);
      instance = &t;
      return true;
    });
    if (instance == nullptr)
      return error(ErrorKind::kNoMatch, "no instance of '" + tac.lemma + "' pattern");
    bind_unmatched(prepared, {&c}, sigma, supply);
    rewritten = core::replace_term(*where, *instance, core::substitute(to, sigma));
  } else {
    const Formula& from = forward ? c.lhs() : c.rhs();
    const Formula& to = forward ? c.rhs() : c.lhs();
    const Formula* instance = nullptr;
    core::visit_subformulas(*where, [&](const Formula& f) {
      Substitution s;
      if (!core::match_formula_into(from, f, s)) return false;
      sigma = std::move(s);
      instance = &f;
      return true;
    });
    if (instance == nullptr)
      return error(ErrorKind::kNoMatch, "no instance of '" + tac.lemma + "' pattern");
    bind_unmatched(prepared, {&c}, sigma, supply);
    rewritten = core::replace_formula(*where, *instance, core::substitute(to, sigma));
  }
  if (rewritten == *where) return error(ErrorKind::kNoMatch, "rewrite with '" + tac.lemma + "' is a no-op");
  *where = std::move(rewritten);
  next.next_meta = supply.next();
  return next;
}

Outcome run_apply(const Environment& env, const ProofState& state, const Tactic& tac,
                  const Observer* observer) {
  const core::Theorem* lemma = env.lemma(tac.lemma);
  if (lemma == nullptr) return error(ErrorKind::kUnknownLemma, "unknown lemma '" + tac.lemma + "'");
  PreparedLemma prepared = prepare(*lemma);
  MetaSupply supply(state);
  ProofState next = state;
  Goal& goal = next.goals.front();

  if (tac.at) {
    core::Hypothesis* h = goal.find(*tac.at);
    if (h == nullptr) return error(ErrorKind::kUnknownHypothesis, "unknown hypothesis '" + *tac.at + "'");
    if (prepared.antecedents.empty())
      return error(ErrorKind::kWrongLemmaShape, "'" + tac.lemma + "' is not an implication");
    Substitution sigma;
    if (!core::match_formula_into(prepared.antecedents.front(), h->formula, sigma))
      return error(ErrorKind::kNoMatch, "'" + *tac.at + "' does not match the first antecedent of '" + tac.lemma + "'");
    std::vector<Formula> rest(prepared.antecedents.begin() + 1, prepared.antecedents.end());
    Formula chain = core::join_implications(rest, prepared.conclusion);
    bind_unmatched(prepared, {&chain}, sigma, supply);
    h->formula = core::substitute(chain, sigma);
    next.next_meta = supply.next();
    return next;
  }

  Substitution sigma;
  if (!core::match_formula_into(prepared.conclusion, goal.target, sigma))
    return error(ErrorKind::kGoalMismatch, "conclusion of '" + tac.lemma + "' does not match the goal");
  std::vector<const Formula*> ants;
  for (const Formula& a : prepared.antecedents) ants.push_back(&a);
  bind_unmatched(prepared, ants, sigma, supply);
  std::vector<Goal> subgoals;
  for (const Formula& a : prepared.antecedents)
    subgoals.push_back(Goal{goal.context, core::substitute(a, sigma)});
  if (subgoals.empty())
    notify(observer, Tactic::Kind::kApply, goal.target, core::substitute(prepared.conclusion, sigma));
  next.goals.erase(next.goals.begin());
  next.goals.insert(next.goals.begin(), subgoals.begin(), subgoals.end());
  next.next_meta = supply.next();
  return next;
}

Outcome run_exact(const ProofState& state, const core::Hypothesis& h, Tactic::Kind by,
                  const Observer* observer) {
  const Formula& target = state.goals.front().target;
  if (core::has_metas(h.formula))
    return error(ErrorKind::kMetavarEscape, "hypothesis '" + h.name + "' contains metavariables");
  Substitution asg;
  if (!match_metas(target, h.formula, asg))
    return error(ErrorKind::kGoalMismatch, "'" + h.name + "' does not match the goal");
  notify(observer, by, core::instantiate_metas(target, asg), h.formula);
  return close_first(state, asg);
}

Outcome run_rfl(const ProofState& state, const Observer* observer) {
  const Formula& target = state.goals.front().target;
  Substitution asg;
  bool ok = false;
  if (target.is_eq()) {
    const Term& a = target.lhs_term();
    const Term& b = target.rhs_term();
    ok = a == b || (!core::has_metas(Formula::eq(b, b)) && match_metas(a, b, asg));
    if (!ok) {
      asg = Substitution{};
      ok = !core::has_metas(Formula::eq(a, a)) && match_metas(b, a, asg);
    }
  } else if (target.is_iff()) {
    const Formula& a = target.lhs();
    const Formula& b = target.rhs();
    ok = a == b || (!core::has_metas(b) && match_metas(a, b, asg));
    if (!ok) {
      asg = Substitution{};
      ok = !core::has_metas(a) && match_metas(b, a, asg);
    }
  }
  if (!ok) return error(ErrorKind::kGoalMismatch, "rfl: sides differ");
  Formula closed = core::instantiate_metas(target, asg);
  notify(observer, Tactic::Kind::kRfl, closed, closed);
  return close_first(state, asg);
}

Outcome run_have(const Environment& env, const ProofState& state, const Tactic& tac,
                 const Observer* observer) {
  const Formula& f = *tac.formula;
  if (core::has_metas(f))
    return error(ErrorKind::kMetavarEscape, "have '" + tac.name + "' mentions metavariables");
  const Goal& goal = state.goals.front();
  ProofState sub;
  sub.goals.push_back(Goal{goal.context, f});
  sub.next_meta = state.next_meta;
  for (const Tactic& t : tac.sub) {
    Outcome o = run_tac(env, sub, t, observer);
    if (auto* err = std::get_if<TacticError>(&o)) return std::move(*err);
    sub = std::move(std::get<ProofState>(o));
  }
  if (!sub.terminal()) {
    TacticError err = error(ErrorKind::kUnsolvedGoals, "have '" + tac.name + "' leaves goals open");
    err.unsolved = std::move(sub);
    return err;
  }
  ProofState next = state;
  next.next_meta = sub.next_meta;
  auto& ctx = next.goals.front().context;
  std::erase_if(ctx, [&](const core::Hypothesis& h) { return h.name == tac.name; });
  ctx.push_back({tac.name, f});
  return next;
}

}  // namespace

Outcome run_tac(const Environment& env, const ProofState& state, const Tactic& tac,
                const Observer* observer) {
  if (state.terminal()) return error(ErrorKind::kGoalMismatch, "no goals");
  switch (tac.kind) {
    case Tactic::Kind::kRw:
      return run_rw(env, state, tac);
    case Tactic::Kind::kApply:
      return run_apply(env, state, tac, observer);
    case Tactic::Kind::kHave:
      return run_have(env, state, tac, observer);
    case Tactic::Kind::kExact: {
      const core::Hypothesis* h = state.goals.front().find(tac.name);
      if (h == nullptr) return error(ErrorKind::kUnknownHypothesis, "unknown hypothesis '" + tac.name + "'");
      return run_exact(state, *h, Tactic::Kind::kExact, observer);
    }
    case Tactic::Kind::kAssumption: {
      const auto& ctx = state.goals.front().context;
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
        Outcome o = run_exact(state, *it, Tactic::Kind::kAssumption, observer);
        if (std::holds_alternative<ProofState>(o)) return o;
      }
      return error(ErrorKind::kGoalMismatch, "no hypothesis matches the goal");
    }
    case Tactic::Kind::kRfl:
      return run_rfl(state, observer);
  }
  return error(ErrorKind::kGoalMismatch, "unsupported tactic");
}

Verdict check_theorem(const Environment& env, const core::Theorem& thm, const Observer* observer) {
  Verdict v;
  if (thm.keyword == core::Keyword::kAxiom) {
    v.accepted = true;
    return v;
  }
  ProofState state = init_proof(thm.statement);
  for (std::size_t i = 0; i < thm.proof.size(); ++i) {
    Outcome o = run_tac(env, state, thm.proof[i], observer);
    if (auto* err = std::get_if<TacticError>(&o)) {
      v.error = std::move(*err);
      v.step = i;
      return v;
    }
    state = std::move(std::get<ProofState>(o));
  }
  if (!state.terminal()) {
    v.error = TacticError{ErrorKind::kUnsolvedGoals, "proof ends with open goals", state};
    v.step = thm.proof.size();
    return v;
  }
  v.accepted = true;
  return v;
}

namespace {

ProofState trace_script(const Environment& env, ProofState state, const core::TacticScript& script,
                        std::vector<TracedPair>& out) {
  for (const Tactic& t : script) {
    out.push_back(TracedPair{serialize(state), core::print(t), t});
    if (t.kind == Tactic::Kind::kHave) {
      ProofState sub;
      sub.goals.push_back(Goal{state.goals.front().context, *t.formula});
      sub.next_meta = state.next_meta;
      trace_script(env, std::move(sub), t.sub, out);
    }
    Outcome o = run_tac(env, state, t);
    if (auto* err = std::get_if<TacticError>(&o)) throw TraceOnRejected(err->message);
    state = std::move(std::get<ProofState>(o));
  }
  return state;
}

}  // namespace

std::vector<TracedPair> trace_proof(const Environment& env, const core::Theorem& thm) {
  Verdict v = check_theorem(env, thm);
  if (!v.accepted)
    throw TraceOnRejected("cannot trace rejected theorem '" + thm.name + "'");
  std::vector<TracedPair> out;
  if (thm.keyword == core::Keyword::kAxiom) return out;
  trace_script(env, init_proof(thm.statement), thm.proof, out);
  return out;
}

}  // namespace alchemy::kernel
