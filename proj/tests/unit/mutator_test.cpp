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

#include <algorithm>
#include <set>
#include <string>

#include "alchemy/core/parser.hpp"
#include "alchemy/core/printer.hpp"
#include "alchemy/mutator/mutator.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "printers.hpp"
#include "random_theory.hpp"

namespace alchemy::mutator {
namespace {

using finder::InvocationRecord;
using finder::TacticKind;

const char* kSmall = R"(signature
sort Pt
fn add 2
fn f 1
pred Gt 2
pred On 2
pred Q 1

axiom add_comm (a b : Nat) : a + b = b + a
axiom gt_trans (a b c : Nat) (h1 : a > b) (h2 : b > c) : a > c
axiom f_id (a : Nat) : f a = a
axiom q_of_on (a : Nat) (p : Pt) (h : On a p) : Q a
axiom gt_of (a b : Nat) (h : b > a) : a > b

theorem restate (a b c : Nat) (h : a + b > c) : a + b > c := by
  exact h

theorem chain (x z : Nat) (h : x > z) : x > z := by
  exact h

theorem fx (x : Nat) (h : f x > x) : f x > x := by
  exact h

theorem qx (x : Nat) (h : Q x) : Q x := by
  exact h

theorem named (b x : Nat) (h : x > b) (h' : b > x) : x > b := by
  exact h
)";

class Small : public ::testing::Test {
 protected:
  void SetUp() override { th_ = core::parse_theory(kSmall); }

  InvocationRecord record(const std::string& cand, const std::string& lemma,
                          const std::string& instruction) {
    const core::Theorem& c = *th_.find(cand);
    kernel::Environment env(th_);
    std::vector<const core::Theorem*> pool = {th_.find(lemma)};
    auto r = finder::find_invocable(env, c, pool, finder::all_templates());
    for (const auto& rec : r.records)
      if (rec.instruction == instruction) return rec;
    ADD_FAILURE() << "no record for " << instruction;
    return {};
  }
  core::Statement stmt(const std::string& text) {
    return core::parse_theory(std::string(kSignature) + "axiom s " + text + "\n").theorems()[0].statement;
  }

  static constexpr const char* kSignature =
      "signature\nsort Pt\nfn add 2\nfn f 1\npred Gt 2\npred On 2\npred Q 1\n";
  core::Theory th_;
};

TEST(RenameConflicts, Scheme) {
  EXPECT_EQ(rename_conflicts({"h"}, {"h"}), (std::vector<std::string>{"h'"}));
  EXPECT_EQ(rename_conflicts({"h", "h"}, {"h"}), (std::vector<std::string>{"h'", "h_2"}));
  EXPECT_EQ(rename_conflicts({"h", "h"}, {}), (std::vector<std::string>{"h", "h'"}));
  EXPECT_EQ(rename_conflicts({"x"}, {"x", "x'", "x_2"}), (std::vector<std::string>{"x_3"}));
  EXPECT_EQ(rename_conflicts({}, {"a"}), std::vector<std::string>{});
}

TEST(RenameConflicts, UniqueAndDisjoint) {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 500; ++iter) {
    std::set<std::string> taken;
    std::vector<std::string> proposed;
    const std::vector<std::string> pool = {"h", "h'", "h_2", "g", "x"};
    for (int i = 0; i < 4; ++i) {
      if (rng() % 2) taken.insert(pool[rng() % pool.size()]);
      proposed.push_back(pool[rng() % pool.size()]);
    }
    auto out = rename_conflicts(proposed, taken);
    std::set<std::string> uniq(out.begin(), out.end());
    EXPECT_EQ(uniq.size(), out.size());
    for (const auto& n : out) EXPECT_FALSE(taken.contains(n));
    EXPECT_EQ(out, rename_conflicts(proposed, taken));
  }
}

TEST_F(Small, RewriteAtHypothesis) {
  InvocationRecord r = record("restate", "add_comm", "rw [add_comm] at h");
  core::Statement s = mutate_statement_rw(th_.find("restate")->statement, r, th_.signature);
  EXPECT_EQ(s, stmt("(a b c : Nat) (h : b + a > c) : a + b > c"));
  EXPECT_EQ(mutation_site(r, th_.signature), "h");
  core::Theorem t = build_proof_rw(kernel::Environment(th_), *th_.find("restate"), s, r);
  EXPECT_EQ(core::print_inline(t.proof), "have h' : a + b > c := by (rw [← add_comm] at h; exact h); exact h'");
  EXPECT_EQ(t.keyword, core::Keyword::kExample);
  EXPECT_EQ(t.origin, core::Origin::kSynthesizedRw);
}

TEST_F(Small, RestoringRewriteThatCannotMatchFails) {
  InvocationRecord r = record("fx", "f_id", "rw [f_id] at h");
  core::Statement s = mutate_statement_rw(th_.find("fx")->statement, r, th_.signature);
  EXPECT_EQ(s, stmt("(x : Nat) (h : x > x) : f x > x"));
  try {
    build_proof_rw(kernel::Environment(th_), *th_.find("fx"), s, r);
    FAIL() << "expected ProofConstructionFailed";
  } catch (const ProofConstructionFailed& e) {
    EXPECT_EQ(e.cause().kind, kernel::ErrorKind::kNoMatch);
  }
  MutateOutput out = mutate(th_, {r});
  EXPECT_TRUE(out.mutants.empty());
  ASSERT_EQ(out.failures.size(), 1u);
  EXPECT_EQ(out.failures[0].error, "ProofConstructionFailed");
}

TEST_F(Small, ApplyIntroducesNamedBinder) {
  InvocationRecord r = record("chain", "gt_trans", "have h : x > z := by apply gt_trans");
  std::map<std::string, std::string> ren;
  core::Statement s =
      mutate_statement_apply(th_.find("chain")->statement, r, *th_.find("gt_trans"), th_.signature, &ren);
  EXPECT_EQ(s, stmt("(b x z : Nat) (h : x > b) (h' : b > z) : x > z"));
  EXPECT_EQ(ren.at("?b"), "b");
  core::Theorem t = build_proof_apply(kernel::Environment(th_), *th_.find("chain"), s, r);
  EXPECT_EQ(core::print_inline(t.proof),
            "have h_2 : x > z := by (apply gt_trans; exact h; exact h'); exact h_2");
}

TEST_F(Small, ApplyRenamesAgainstExistingNames) {
  // ?b collides with binder b and the new hypotheses with h'.
  InvocationRecord r = record("named", "gt_trans", "have h : x > b := by apply gt_trans");
  std::map<std::string, std::string> ren;
  core::Statement s =
      mutate_statement_apply(th_.find("named")->statement, r, *th_.find("gt_trans"), th_.signature, &ren);
  EXPECT_EQ(s, stmt("(b' b x : Nat) (h : x > b') (h_2 : b' > b) (h' : b > x) : x > b"));
  EXPECT_EQ(ren.at("?b"), "b'");
  EXPECT_EQ(ren.at("h#2"), "h_2");
  EXPECT_NO_THROW(build_proof_apply(kernel::Environment(th_), *th_.find("named"), s, r));
}

TEST_F(Small, OpaqueSortMetavariableIsUnassignable) {
  InvocationRecord r = record("qx", "q_of_on", "have h : Q x := by apply q_of_on");
  EXPECT_THROW(mutate_statement_apply(th_.find("qx")->statement, r, *th_.find("q_of_on"), th_.signature),
               UnassignableMetavar);
  MutateOutput out = mutate(th_, {r});
  ASSERT_EQ(out.failures.size(), 1u);
  EXPECT_EQ(out.failures[0].error, "UnassignableMetavar");
}

TEST_F(Small, DuplicatesOfExistingStatementsAreDropped) {
  // gt_of at h on chain gives (h : z > x) : x > z, not yet in the theory.
  InvocationRecord r = record("chain", "gt_of", "have h : x > z := by apply gt_of");
  MutateOutput once = mutate(th_, {r, r});
  EXPECT_EQ(once.mutants.size(), 1u);
  EXPECT_EQ(once.duplicates, 1u);
  EXPECT_EQ(once.mutants[0].mutated.name, "chain_apply_1");
  core::Theory grown = th_;
  grown.add(once.mutants[0].mutated);
  MutateOutput again = mutate(grown, {r});
  EXPECT_TRUE(again.mutants.empty());
  EXPECT_EQ(again.duplicates, 1u);
}

TEST(WorkedExample, DerivedTheorems) {
  core::Theory th = testing::load_seed("worked_example.thy");
  kernel::Environment env(th);
  const core::Theorem& cand = *th.find("gt_mul");
  std::vector<const core::Theorem*> pool = {th.find("exp_iff"), th.find("add_gt")};
  auto recs = finder::find_invocable(env, cand, pool, finder::all_templates()).records;
  auto pick = [&](const std::string& ins) {
    for (const auto& r : recs)
      if (r.instruction == ins) return r;
    ADD_FAILURE() << ins;
    return InvocationRecord{};
  };
  auto sig = th.signature;
  auto stmt = [&](const std::string& text) {
    return core::parse_theory(core::print(sig) + "\naxiom s " + text + "\n").theorems()[0].statement;
  };

  MutationResult rw = mutate_record(th, pick("rw [exp_iff]"));
  EXPECT_EQ(rw.mutated.statement,
            stmt("(a b c d m : Nat) (h1 : a + b > c + d) (h2 : m > 0) : exp (m * (a + b)) > exp (m * (c + d))"));
  EXPECT_EQ(rw.site, "goal");
  EXPECT_EQ(core::print_inline(rw.mutated.proof),
            "have g : m * (a + b) > m * (c + d) := by (apply mul_gt_mul_left; exact h1; exact h2); "
            "rw [exp_iff] at g; exact g");

  MutationResult ap = mutate_record(th, pick("have h1 : a + b > c + d := by apply add_gt"));
  EXPECT_EQ(ap.mutated.statement,
            stmt("(a b c d m : Nat) (h1 : a > c) (h1' : b > d) (h2 : m > 0) : m * (a + b) > m * (c + d)"));
  auto trace = kernel::trace_proof(env, ap.mutated);
  EXPECT_TRUE(std::any_of(trace.begin(), trace.end(),
                          [](const auto& p) { return p.tactic_text == "apply add_gt"; }));
  EXPECT_GE(std::count_if(trace.begin(), trace.end(),
                          [](const auto& p) { return p.tactic_text.rfind("exact", 0) == 0; }),
            2);
}

// Script shape: exactly one inserted have, wrapped around the original.
void expect_conservative(const core::Theorem& cand, const MutationResult& m) {
  const auto& proof = m.mutated.proof;
  ASSERT_FALSE(proof.empty());
  ASSERT_EQ(proof[0].kind, core::Tactic::Kind::kHave);
  if (m.site == kGoalSite) {
    ASSERT_EQ(proof.size(), 3u);
    EXPECT_EQ(proof[0].sub, cand.proof);
    EXPECT_EQ(proof[1].kind, core::Tactic::Kind::kRw);
    EXPECT_EQ(proof[2].kind, core::Tactic::Kind::kExact);
  } else {
    core::TacticScript rest(proof.begin() + 1, proof.end());
    EXPECT_EQ(rest, core::rename_hypothesis(cand.proof, m.site, proof[0].name));
  }
}

// Only the mutation site changes; apply may also prepend binders.
void expect_local(const core::Statement& before, const MutationResult& m) {
  const core::Statement& after = m.mutated.statement;
  if (m.site == kGoalSite) {
    EXPECT_EQ(after.binders, before.binders);
    EXPECT_EQ(after.hypotheses, before.hypotheses);
    EXPECT_NE(after.goal, before.goal);
    return;
  }
  EXPECT_EQ(after.goal, before.goal);
  std::size_t extra = after.binders.size() - before.binders.size();
  EXPECT_TRUE(std::equal(before.binders.begin(), before.binders.end(), after.binders.begin() + extra));
  std::vector<core::Hypothesis> kept;
  for (const auto& h : after.hypotheses)
    if (before.find_hypothesis(h.name) != nullptr && h.name != m.site) kept.push_back(h);
  std::vector<core::Hypothesis> others;
  for (const auto& h : before.hypotheses)
    if (h.name != m.site) others.push_back(h);
  EXPECT_EQ(kept, others);
}

TEST(Corpus, EveryMutantChecksAndIsLocal) {
  core::Theory th = testing::load_seed_corpus();
  kernel::Environment env(th);
  std::size_t total = 0;
  for (TacticKind kind : {TacticKind::kRw, TacticKind::kApply}) {
    std::vector<InvocationRecord> recs;
    for (const auto* c : finder::candidates(th, kind)) {
      auto r = finder::find_invocable(env, *c, finder::default_pool(th, c->name), finder::templates_for({kind}));
      recs.insert(recs.end(), r.records.begin(), r.records.end());
    }
    MutateOutput out = mutate(th, finder::dedup_records(finder::filter_records(recs)));
    for (const auto& m : out.mutants) {
      SCOPED_TRACE(m.mutated.name);
      const core::Theorem& cand = *th.find(m.source.candidate);
      EXPECT_TRUE(kernel::check_theorem(env, m.mutated).accepted);
      expect_conservative(cand, m);
      expect_local(cand.statement, m);
      std::set<std::string> names;
      for (const auto& h : m.mutated.statement.hypotheses) EXPECT_TRUE(names.insert(h.name).second);
      ++total;
    }
  }
  EXPECT_GT(total, 100u);
}

TEST(Oracle, MutantsMatchBruteForce) {
  for (unsigned seed = 0; seed < 30; ++seed) {
    core::Theory th = testing::TheoryGen(2000 + seed).theory();
    kernel::Environment env(th);
    for (bool apply : {false, true}) {
      TacticKind kind = apply ? TacticKind::kApply : TacticKind::kRw;
      std::vector<InvocationRecord> recs;
      for (const auto* c : finder::candidates(th, kind)) {
        auto r = finder::find_invocable(env, *c, finder::default_pool(th, c->name), finder::templates_for({kind}));
        recs.insert(recs.end(), r.records.begin(), r.records.end());
      }
      MutateOutput ours = mutate(th, finder::dedup_records(finder::filter_records(recs)));
      testing::OracleRun ref = testing::brute_force(th, apply);
      ASSERT_EQ(ours.mutants.size(), ref.mutants.size()) << "seed " << seed;
      for (std::size_t i = 0; i < ref.mutants.size(); ++i) {
        EXPECT_EQ(ours.mutants[i].mutated.statement, ref.mutants[i].statement);
        EXPECT_EQ(ours.mutants[i].source.instruction, ref.mutants[i].instruction);
      }
    }
  }
}

}  // namespace
}  // namespace alchemy::mutator
