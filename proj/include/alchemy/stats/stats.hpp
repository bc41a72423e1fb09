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

#ifndef ALCHEMY_STATS_STATS_HPP_
#define ALCHEMY_STATS_STATS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alchemy/core/errors.hpp"
#include "alchemy/core/theory.hpp"
#include "alchemy/finder/finder.hpp"
#include "alchemy/kernel/kernel.hpp"

namespace alchemy::stats {

class RebuildInconsistency : public core::Error {
 public:
  using core::Error::Error;
};

class MissingSubjectTag : public core::Error {
 public:
  using core::Error::Error;
};

struct Rejection {
  core::Theorem theorem;
  kernel::TacticError error;
  std::size_t step = 0;
};

struct BatchResult {
  std::vector<core::Theorem> accepted;
  std::vector<Rejection> rejected;
};

// Checks each mutant against `theory`, then re-checks the accepted ones
// with all of them appended to the theory. Throws RebuildInconsistency if
// the second pass rejects anything.
BatchResult verify_batch(const core::Theory& theory, const std::vector<core::Theorem>& mutants,
                         std::size_t workers = 1);

// Quarantine file: each rejected theorem preceded by its error as comments.
std::string render_rejected(const core::Signature& sig, const std::vector<Rejection>& rejected);

struct TacticCounts {
  std::size_t candidates = 0;
  // Records before the metavariable filter, after it and dedup, and
  // kernel-accepted mutants.
  std::size_t raw_records = 0;
  std::size_t stage_one = 0;
  std::size_t stage_two = 0;
  std::size_t instructions = 0;

  // stage_two / candidates; 0 with no candidates.
  double expansion() const;
  // stage_two / stage_one; empty when stage_one is 0.
  std::optional<double> conversion() const;
  // Instructions tried per candidate.
  double fan_out() const;
};

struct StageCounts {
  std::map<finder::TacticKind, TacticCounts> by_tactic;

  TacticCounts total() const;
};

// Mutant provenance needed by the reports.
struct MutantRef {
  std::string name;
  std::string candidate;
  std::string subject;
  finder::TacticKind kind = finder::TacticKind::kRw;
};

StageCounts compute_stage_counts(const std::vector<finder::InvocationRecord>& records,
                                 const std::vector<MutantRef>& mutants,
                                 const std::map<finder::TacticKind, std::size_t>& candidates);

struct SubjectRow {
  std::size_t seed = 0;
  std::size_t seed_rw = 0;
  std::size_t seed_apply = 0;
};

struct DistributionReport {
  std::map<std::string, SubjectRow> subjects;
  // Number of variants -> number of candidate seeds with that many.
  std::map<std::size_t, std::size_t> histogram;
  // Smallest variant count covering at least 99% of seeds.
  std::size_t p99 = 0;
  // (seed, variants) by descending count, ties by theory order.
  std::vector<std::pair<std::string, std::size_t>> top;

  std::size_t seed_total() const;
  std::size_t rw_total() const;
  std::size_t apply_total() const;
  double seed_share(const std::string& subject) const;
  double rw_share(const std::string& subject) const;
  double apply_share(const std::string& subject) const;
};

// Seeds are the theory's `theorem` declarations plus its axioms for the
// subject table; the histogram covers the `theorem` declarations.
DistributionReport compute_distribution(const core::Theory& theory,
                                        const std::vector<MutantRef>& mutants,
                                        std::size_t top_k = 20);

std::string stats_json(const StageCounts& counts, const DistributionReport& dist);
std::string stats_markdown(const StageCounts& counts, const DistributionReport& dist);

}  // namespace alchemy::stats

#endif  // ALCHEMY_STATS_STATS_HPP_
