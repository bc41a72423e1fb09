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

#include <cmath>
#include <numeric>

#include "alchemy/core/parser.hpp"
#include "alchemy/stats/stats.hpp"
#include "fixtures.hpp"
#include "printers.hpp"
#include "run_helpers.hpp"

namespace alchemy::stats {
namespace {

using finder::TacticKind;

struct SeedRun {
  core::Theory theory;
  testing::KindRun rw;
  testing::KindRun apply;
  std::vector<core::Theorem> mutants;
  std::vector<MutantRef> refs;
};

const SeedRun& seed_run() {
  static const SeedRun* run = [] {
    auto* r = new SeedRun;
    r->theory = testing::load_seed_corpus();
    r->rw = testing::run_kind(r->theory, TacticKind::kRw);
    r->apply = testing::run_kind(r->theory, TacticKind::kApply);
    for (const auto* k : {&r->rw, &r->apply})
      for (const auto& m : k->mutated.mutants) {
        r->mutants.push_back(m.mutated);
        r->refs.push_back({m.mutated.name, m.source.candidate, m.mutated.subject, m.source.kind()});
      }
    return r;
  }();
  return *run;
}

TEST(VerifyBatch, MutatorOutputIsAllAccepted) {
  const SeedRun& r = seed_run();
  BatchResult b = verify_batch(r.theory, r.mutants);
  EXPECT_TRUE(b.rejected.empty());
  EXPECT_EQ(b.accepted.size(), r.mutants.size());
  BatchResult again = verify_batch(r.theory, b.accepted, 4);
  EXPECT_EQ(again.accepted, b.accepted);
  EXPECT_TRUE(again.rejected.empty());
}

TEST(VerifyBatch, TruncatedProofIsRejected) {
  const SeedRun& r = seed_run();
  core::Theorem bad = r.mutants.front();
  bad.proof.pop_back();
  BatchResult b = verify_batch(r.theory, {r.mutants[1], bad});
  ASSERT_EQ(b.rejected.size(), 1u);
  EXPECT_EQ(b.rejected[0].error.kind, kernel::ErrorKind::kUnsolvedGoals);
  EXPECT_EQ(b.accepted.size(), 1u);
  std::string q = render_rejected(r.theory.signature, b.rejected);
  EXPECT_NE(q.find("-- rejected: UnsolvedGoals"), std::string::npos);
  // The quarantine file still parses.
  EXPECT_EQ(core::parse_theory(q).size(), 1u);
}

TEST(StageCounts, EmptyRun) {
  StageCounts s = compute_stage_counts({}, {}, {{TacticKind::kRw, 5}});
  const TacticCounts& c = s.by_tactic.at(TacticKind::kRw);
  EXPECT_EQ(c.expansion(), 0.0);
  EXPECT_FALSE(c.conversion().has_value());
  DistributionReport d;
  EXPECT_NE(stats_markdown(s, d).find("N/A"), std::string::npos);
}

TEST(StageCounts, SeedRunArithmetic) {
  const SeedRun& r = seed_run();
  std::vector<finder::InvocationRecord> recs = r.rw.records;
  recs.insert(recs.end(), r.apply.records.begin(), r.apply.records.end());
  StageCounts s = compute_stage_counts(
      recs, r.refs, {{TacticKind::kRw, r.rw.candidates}, {TacticKind::kApply, r.apply.candidates}});
  for (const auto& [kind, c] : s.by_tactic) {
    EXPECT_LE(c.stage_two, c.stage_one);
    EXPECT_EQ(std::llround(c.expansion() * static_cast<double>(c.candidates)),
              static_cast<long long>(c.stage_two));
    ASSERT_TRUE(c.conversion().has_value());
    EXPECT_GT(*c.conversion(), 0.0);
    EXPECT_LE(*c.conversion(), 1.0);
  }
  EXPECT_EQ(s.by_tactic.at(TacticKind::kRw).stage_one, r.rw.records.size());
  EXPECT_EQ(s.total().stage_two, r.mutants.size());
}

TEST(Distribution, SingleSubject) {
  core::Theory th = core::parse_theory(
      "signature\npred P 1\n@[subject: algebra]\naxiom p (a : Nat) : P a\n"
      "@[subject: algebra]\ntheorem q (a : Nat) (h : P a) : P a := by\n  exact h\n");
  DistributionReport d = compute_distribution(th, {});
  ASSERT_EQ(d.subjects.size(), 1u);
  EXPECT_EQ(d.seed_share("algebra"), 1.0);
  EXPECT_EQ(d.histogram, (std::map<std::size_t, std::size_t>{{0, 1}}));
}

TEST(Distribution, MissingTag) {
  core::Theory th = core::parse_theory("signature\npred P 1\naxiom p (a : Nat) : P a\n");
  EXPECT_THROW(compute_distribution(th, {}), MissingSubjectTag);
}

TEST(Distribution, SeedRunSharesAndHistogram) {
  const SeedRun& r = seed_run();
  DistributionReport d = compute_distribution(r.theory, r.refs);
  double seed = 0, rw = 0, apply = 0;
  for (const auto& [name, row] : d.subjects) {
    seed += d.seed_share(name);
    rw += d.rw_share(name);
    apply += d.apply_share(name);
  }
  EXPECT_NEAR(seed, 1.0, 1e-9);
  EXPECT_NEAR(rw, 1.0, 1e-9);
  EXPECT_NEAR(apply, 1.0, 1e-9);
  EXPECT_EQ(d.seed_total(), r.theory.size());
  std::size_t seeds = 0, variants = 0;
  for (const auto& [k, n] : d.histogram) {
    seeds += n;
    variants += k * n;
  }
  EXPECT_EQ(variants, r.mutants.size());
  EXPECT_EQ(seeds, finder::candidates(r.theory, TacticKind::kRw).size());
  ASSERT_FALSE(d.top.empty());
  EXPECT_TRUE(std::is_sorted(d.top.begin(), d.top.end(),
                             [](const auto& a, const auto& b) { return a.second > b.second; }));
  EXPECT_LE(d.p99, d.top.front().second);

  // The subject richest in rewrite rules gains share once rw mutants are in.
  std::map<std::string, int> rules;
  for (const auto& t : r.theory.theorems())
    if (t.statement.hypotheses.empty() && (t.statement.goal.is_eq() || t.statement.goal.is_iff()))
      ++rules[t.subject];
  auto richest = std::max_element(rules.begin(), rules.end(),
                                  [](const auto& a, const auto& b) { return a.second < b.second; });
  EXPECT_GT(d.rw_share(richest->first), d.seed_share(richest->first));
}

TEST(Reports, ReferenceRowsAreLabelled) {
  const SeedRun& r = seed_run();
  StageCounts s = compute_stage_counts(r.rw.records, r.refs, {{TacticKind::kRw, r.rw.candidates}});
  DistributionReport d = compute_distribution(r.theory, r.refs);
  std::string md = stats_markdown(s, d);
  EXPECT_NE(md.find("paper, not reproduced"), std::string::npos);
  EXPECT_NE(md.find("| rw | 110,657 | 5,081,544 | 2,830,817 | x25 | 56% |"), std::string::npos);
  EXPECT_NE(md.find("| apply | 78,871 | 9,483,504 | 3,495,832 | x44 | 37% |"), std::string::npos);
  std::string js = stats_json(s, d);
  EXPECT_NE(js.find("\"reference_not_reproduced\""), std::string::npos);
}

}  // namespace
}  // namespace alchemy::stats
