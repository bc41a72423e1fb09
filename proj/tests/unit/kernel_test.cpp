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

#include <gtest/gtest.h>

#include <string>
#include <variant>

#include "alchemy/core/parser.hpp"
#include "alchemy/core/printer.hpp"
#include "alchemy/kernel/kernel.hpp"
#include "printers.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace alchemy::kernel {
namespace {

using core::Direction;
using core::Formula;
using core::Tactic;
using core::Term;

ProofState ok(const Outcome& o) {
  if (auto* e = std::get_if<TacticError>(&o)) ADD_FAILURE() << e->message;
  return std::get<ProofState>(o);
}

ErrorKind err(const Outcome& o) {
  EXPECT_TRUE(std::holds_alternative<TacticError>(o));
  return std::get<TacticError>(o).kind;
}

class Worked : public ::testing::Test {
 protected:
  void SetUp() override {
    theory_ = testing::load_seed("worked_example.thy");
    gt_mul_ = theory_.find("gt_mul");
    ASSERT_NE(gt_mul_, nullptr);
  }
  Formula f(const std::string& text) { return core::parse_formula(text, theory_.signature); }

  core::Theory theory_;
  const core::Theorem* gt_mul_ = nullptr;
};

TEST_F(Worked, InitialState) {
  ProofState s = init_proof(gt_mul_->statement);
  ASSERT_EQ(s.goals.size(), 1u);
  EXPECT_EQ(serialize(s), "h1 : a + b > c + d\nh2 : m > 0\n⊢ m * (a + b) > m * (c + d)");
  EXPECT_TRUE(s.metavars().empty());
}

TEST_F(Worked, RewriteGoalWithIff) {
  Environment env(theory_);
  ProofState s = init_proof(gt_mul_->statement);
  ProofState n = ok(run_tac(env, s, Tactic::rw(Direction::kForward, "exp_iff")));
  EXPECT_EQ(n.goals[0].target, f("exp (m * (a + b)) > exp (m * (c + d))"));
  EXPECT_EQ(n.goals[0].context, s.goals[0].context);
  EXPECT_EQ(err(run_tac(env, s, Tactic::rw(Direction::kReverse, "exp_iff"))), ErrorKind::kNoMatch);
}

TEST_F(Worked, SeedAndDerivedTheoremsCheck) {
  Environment env(theory_);
  for (const auto& thm : theory_.theorems()) EXPECT_TRUE(check_theorem(env, thm).accepted) << thm.name;

  core::Theorem derived = *gt_mul_;
  derived.name = "gt_mul_rw_1";
  derived.keyword = core::Keyword::kExample;
  derived.statement.goal = f("exp (m * (a + b)) > exp (m * (c + d))");
  derived.proof = core::parse_script(
      "have g : m * (a + b) > m * (c + d) := by (apply mul_gt_mul_left; exact h1; exact h2); "
      "rw [exp_iff] at g; exact g",
      theory_.signature);
  Verdict v = check_theorem(env, derived);
  EXPECT_TRUE(v.accepted) << (v.error ? v.error->message : "");
  auto pairs = trace_proof(env, derived);
  EXPECT_GE(pairs.size(), 3u);
  EXPECT_TRUE(pairs[0].tactic_text.starts_with("have"));
}

TEST_F(Worked, EmptyScriptIsUnsolvedAtZero) {
  core::Theorem t = *gt_mul_;
  t.proof.clear();
  Verdict v = check_theorem(Environment(theory_), t);
  ASSERT_FALSE(v.accepted);
  EXPECT_EQ(v.error->kind, ErrorKind::kUnsolvedGoals);
  EXPECT_EQ(v.step, 0u);
}

const char* kOrder = R"(signature
fn add 2
pred Gt 2
pred P 0
pred Q 0

axiom gt_trans (a b c : Nat) (h1 : a > b) (h2 : b > c) : a > c
axiom add_comm (a b : Nat) : a + b = b + a
axiom pq : P -> Q
theorem id_p (h : P) : P := by
  exact h
)";

TEST(Kernel, ExactClosesIdentity) {
  core::Theory th = core::parse_theory(kOrder);
  ProofState s = init_proof(th.find("id_p")->statement);
  EXPECT_TRUE(ok(run_tac(Environment(th), s, Tactic::exact("h"))).terminal());
  EXPECT_EQ(err(run_tac(Environment(th), s, Tactic::exact("nope"))), ErrorKind::kUnknownHypothesis);
}

TEST(Kernel, BackwardApplyCreatesNamedMetas) {
  core::Theory th = core::parse_theory(kOrder);
  Environment env(th);
  ProofState s;
  s.goals.push_back({{}, core::parse_formula("x > z", th.signature)});
  ProofState n = ok(run_tac(env, s, Tactic::apply("gt_trans")));
  ASSERT_EQ(n.goals.size(), 2u);
  EXPECT_EQ(core::print(n.goals[0].target), "x > ?b");
  EXPECT_EQ(core::print(n.goals[1].target), "?b > z");
  EXPECT_EQ(n.metavars(), std::set<std::string>{"b"});

  // A second application cannot reuse `?b` and falls back to `?e<n>`.
  ProofState n2 = ok(run_tac(env, n, Tactic::apply("gt_trans")));
  EXPECT_EQ(core::print(n2.goals[0].target), "x > ?e0");
  EXPECT_EQ(core::print(n2.goals[1].target), "?e0 > ?b");
  EXPECT_EQ(n2.next_meta, 1);
}

TEST(Kernel, ExactAssignsMetasAcrossGoals) {
  core::Theory th = core::parse_theory(kOrder);
  Environment env(th);
  ProofState s;
  s.goals.push_back({{{"h1", core::parse_formula("x > y", th.signature)},
                      {"h2", core::parse_formula("y > z", th.signature)}},
                     core::parse_formula("x > z", th.signature)});
  ProofState n = ok(run_tac(env, s, Tactic::apply("gt_trans")));
  n = ok(run_tac(env, n, Tactic::exact("h1")));
  ASSERT_EQ(n.goals.size(), 1u);
  EXPECT_EQ(core::print(n.goals[0].target), "y > z");
  EXPECT_TRUE(ok(run_tac(env, n, Tactic::assumption())).terminal());
}

TEST(Kernel, ErrorKinds) {
  core::Theory th = core::parse_theory(kOrder);
  Environment env(th);
  ProofState s;
  s.goals.push_back({{{"h", core::parse_formula("x > y", th.signature)}},
                     core::parse_formula("x + y = y + x", th.signature)});
  EXPECT_EQ(err(run_tac(env, s, Tactic::rw(Direction::kForward, "gt_trans"))), ErrorKind::kWrongLemmaShape);
  EXPECT_EQ(err(run_tac(env, s, Tactic::rw(Direction::kForward, "missing"))), ErrorKind::kUnknownLemma);
  EXPECT_EQ(err(run_tac(env, s, Tactic::apply("gt_trans"))), ErrorKind::kGoalMismatch);
  EXPECT_EQ(err(run_tac(env, s, Tactic::apply("add_comm", "h"))), ErrorKind::kWrongLemmaShape);
  EXPECT_EQ(err(run_tac(env, s, Tactic::rw(Direction::kForward, "add_comm", "h"))), ErrorKind::kNoMatch);
  EXPECT_EQ(err(run_tac(env, s, Tactic::have("g", core::parse_formula("x > ?q", th.signature), {}))),
            ErrorKind::kMetavarEscape);
  Outcome o = run_tac(env, s, Tactic::have("g", core::parse_formula("x > y", th.signature), {}));
  ASSERT_EQ(err(o), ErrorKind::kUnsolvedGoals);
  EXPECT_EQ(serialize(*std::get<TacticError>(o).unsolved), "h : x > y\n⊢ x > y");
  EXPECT_EQ(err(run_tac(env, ProofState{}, Tactic::rfl())), ErrorKind::kGoalMismatch);

  // Rewriting x + y with commutativity, then rfl.
  ProofState n = ok(run_tac(env, s, Tactic::rw(Direction::kForward, "add_comm")));
  EXPECT_EQ(core::print(n.goals[0].target), "y + x = y + x");
  EXPECT_TRUE(ok(run_tac(env, n, Tactic::rfl())).terminal());
}

TEST(Kernel, ForwardApplyAdvancesHypothesis) {
  core::Theory th = core::parse_theory(kOrder);
  Environment env(th);
  ProofState s;
  s.goals.push_back({{{"hp", core::parse_formula("P", th.signature)}}, core::parse_formula("Q", th.signature)});
  ProofState n = ok(run_tac(env, s, Tactic::apply("pq", "hp")));
  EXPECT_EQ(serialize(n), "hp : Q\n⊢ Q");
}

TEST(Kernel, UnmatchedRhsBinderBecomesMeta) {
  core::Theory th = core::parse_theory(kOrder);
  core::Theorem ax;
  ax.name = "collapse";
  ax.keyword = core::Keyword::kAxiom;
  ax.statement = core::parse_theory("signature\nfn add 2\naxiom t (a b : Nat) : a + a = b\n")
                     .theorems()[0]
                     .statement;
  th.add(ax);
  ProofState s;
  s.goals.push_back({{}, core::parse_formula("x + x > y", th.signature)});
  ProofState n = ok(run_tac(Environment(th), s, Tactic::rw(Direction::kForward, "collapse")));
  EXPECT_EQ(serialize(n), "⊢ ?b > y");
}

TEST(Kernel, StateSerializationRoundTrips) {
  core::Theory th = core::parse_theory(kOrder);
  Environment env(th);
  ProofState s;
  s.goals.push_back({{{"h", core::parse_formula("x > y", th.signature)}},
                     core::parse_formula("x > z", th.signature)});
  ProofState n = ok(run_tac(env, s, Tactic::apply("gt_trans")));
  n = ok(run_tac(env, n, Tactic::apply("gt_trans")));
  std::string text = serialize(n);
  EXPECT_EQ(parse_state(text, th.signature), n);
  EXPECT_EQ(serialize(ProofState{}), "no goals");
  EXPECT_TRUE(parse_state("no goals", th.signature).terminal());
  EXPECT_THROW(parse_state("h x > y\n⊢ x > y", th.signature), ParseStateError);
}

// Counts tactics by walking the script independently of the kernel.
std::size_t oracle_length(const core::TacticScript& s) {
  std::size_t n = 0;
  for (const auto& t : s) {
    ++n;
    if (t.kind == Tactic::Kind::kHave) n += oracle_length(t.sub);
  }
  return n;
}

TEST(SeedCorpus, EveryTheoremChecksAndTraces) {
  for (const auto& file : testing::seed_files()) {
    core::Theory th = testing::load_seed(file);
    std::size_t traced = 0;
    std::size_t expected = 0;
    for (const auto& thm : th.theorems()) {
      Environment env = Environment::before(th, thm.name);
      Verdict v = check_theorem(env, thm);
      ASSERT_TRUE(v.accepted) << file << ": " << thm.name << " step " << v.step << ": "
                              << (v.error ? v.error->message : "");
      if (thm.keyword == core::Keyword::kAxiom) continue;
      auto pairs = trace_proof(env, thm);
      ASSERT_FALSE(pairs.empty());
      EXPECT_EQ(pairs.front().state_text, serialize(init_proof(thm.statement)));
      if (thm.proof.size() == 1 && thm.proof[0].kind != Tactic::Kind::kHave) EXPECT_EQ(pairs.size(), 1u);
      traced += pairs.size();
      expected += oracle_length(thm.proof);
    }
    EXPECT_EQ(traced, expected) << file;
  }
}

TEST(SeedCorpus, ForwardReferencesAreRejected) {
  core::Theory th = testing::load_seed("worked_example.thy");
  Environment env(th, 0);
  Verdict v = check_theorem(env, *th.find("gt_mul"));
  ASSERT_FALSE(v.accepted);
  EXPECT_EQ(v.error->kind, ErrorKind::kUnknownLemma);
}

// Replays random tactic sequences on random states. Every closure reported
// by the kernel must be a structural identity, and apply subgoal counts
// must equal the lemma's antecedent count.
TEST(Kernel, SoundnessHarness) {
  testing::Gen gen(1234);
  core::Signature sig = gen.signature();
  int closures = 0;
  int accepted = 0;
  for (int iter = 0; iter < 400; ++iter) {
    core::Theory th;
    th.signature = sig;
    std::vector<std::string> vars = {"a", "b", "c"};
    for (int k = 0; k < 6; ++k) {
      core::Theorem ax;
      ax.name = "l" + std::to_string(k);
      ax.keyword = core::Keyword::kAxiom;
      for (const auto& v : vars) ax.statement.binders.push_back({v, "Nat"});
      int n_hyps = gen.uniform(0, 2);
      for (int h = 0; h < n_hyps; ++h)
        ax.statement.hypotheses.push_back({"h" + std::to_string(h), gen.atomic(vars, 1)});
      ax.statement.goal = gen.coin() ? Formula::eq(gen.term(vars, 2), gen.term(vars, 2)) : gen.atomic(vars, 1);
      th.add(ax);
    }
    Environment env(th);
    ProofState s;
    Goal g;
    std::vector<std::string> xs = {"x", "y"};
    for (int h = 0; h < 3; ++h) g.context.push_back({"p" + std::to_string(h), gen.atomic(xs, 1)});
    g.target = gen.coin(0.3) ? g.context[static_cast<std::size_t>(gen.uniform(0, 2))].formula
                             : gen.atomic(xs, 1);
    s.goals.push_back(g);
    Observer obs = [&](const Closure& c) {
      ++closures;
      EXPECT_EQ(c.target, c.witness);
      if (c.by == Tactic::Kind::kRfl) {
        if (c.target.is_eq()) EXPECT_EQ(c.target.lhs_term(), c.target.rhs_term());
        else EXPECT_EQ(c.target.lhs(), c.target.rhs());
      }
    };
    for (int step = 0; step < 8 && !s.terminal(); ++step) {
      Tactic t;
      std::string lemma = "l" + std::to_string(gen.uniform(0, 5));
      switch (gen.uniform(0, 5)) {
        case 0: t = Tactic::rw(gen.coin() ? Direction::kForward : Direction::kReverse, lemma); break;
        case 1: t = Tactic::apply(lemma); break;
        case 2: t = Tactic::exact("p" + std::to_string(gen.uniform(0, 2))); break;
        case 3: t = Tactic::assumption(); break;
        case 4: t = Tactic::rfl(); break;
        default: t = Tactic::apply(lemma, "p" + std::to_string(gen.uniform(0, 2))); break;
      }
      Outcome o = run_tac(env, s, t, &obs);
      if (!std::holds_alternative<ProofState>(o)) continue;
      const ProofState& n = std::get<ProofState>(o);
      if (t.kind == Tactic::Kind::kApply && !t.at) {
        auto ants = core::split_implications(th.find(lemma)->statement.as_implication()).first;
        EXPECT_EQ(n.goals.size() + 1, s.goals.size() + ants.size());
      }
      // Determinism: replaying yields the identical state.
      Outcome again = run_tac(env, s, t);
      EXPECT_EQ(serialize(std::get<ProofState>(again)), serialize(n));
      s = n;
    }
    if (s.terminal()) ++accepted;
  }
  EXPECT_GT(closures, 50);
  EXPECT_GT(accepted, 10);
}

}  // namespace
}  // namespace alchemy::kernel
