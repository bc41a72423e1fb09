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

#ifndef ALCHEMY_CORPUS_CORPUS_HPP_
#define ALCHEMY_CORPUS_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "alchemy/core/errors.hpp"
#include "alchemy/core/theory.hpp"

namespace alchemy::corpus {

class IoError : public core::Error {
 public:
  using core::Error::Error;
};

class PromptParseError : public core::Error {
 public:
  using core::Error::Error;
};

enum class PairKind { kRw, kApply, kHave, kExact, kOther };

std::string_view pair_kind_name(PairKind k);

struct StateTacticPair {
  std::string state_text;
  std::string tactic_text;
  // Lemma named by an rw or apply tactic.
  std::optional<std::string> premise;
  PairKind kind = PairKind::kOther;
  std::string source_theorem;
  core::Origin origin = core::Origin::kSeed;
  // Candidate a mutant was derived from; empty for seeds.
  std::string ancestor;

  bool operator==(const StateTacticPair&) const = default;
};

// Kind and premise read off the tactic text.
PairKind classify(std::string_view tactic_text);
std::optional<std::string> premise_of(std::string_view tactic_text);

// Traces every proved seed theorem and every mutant. `ancestors` maps a
// mutant name to its candidate. Output follows theory order, then mutant
// order.
std::vector<StateTacticPair> extract_pairs(const core::Theory& seed,
                                           const std::vector<core::Theorem>& mutants,
                                           const std::map<std::string, std::string>& ancestors,
                                           std::size_t workers = 1);

// Keeps the first `threshold` pairs of every (kind, premise) group. Pairs
// without a premise pass through.
std::vector<StateTacticPair> dedup_by_premise(const std::vector<StateTacticPair>& pairs,
                                              std::size_t threshold);

// Drops pairs whose source theorem or ancestor is held out.
std::vector<StateTacticPair> remove_leakage(const std::vector<StateTacticPair>& pairs,
                                            const std::set<std::string>& holdout);

// Leakage filter, then premise dedup of the synthesized pairs. Seed pairs
// are kept whole.
std::vector<StateTacticPair> prepare(const std::vector<StateTacticPair>& pairs,
                                     const std::set<std::string>& holdout, std::size_t threshold);

std::string render_prompt(const StateTacticPair& pair);
// The prompt without the completion.
std::string prompt_prefix(std::string_view state_text);

struct RenderedPair {
  std::string state_text;
  std::string tactic_text;
  bool operator==(const RenderedPair&) const = default;
};

// Inverse of render_prompt. Throws PromptParseError.
RenderedPair parse_prompt(std::string_view text);

std::string sft_json_line(const StateTacticPair& pair);

struct ExportManifest {
  std::map<std::string, std::size_t> files;
  std::map<std::string, std::size_t> by_origin;
  std::map<std::string, std::size_t> by_kind;
  std::size_t pairs = 0;
  std::size_t dedup_threshold = 1;
  std::string holdout_digest;

  std::string to_json() const;
};

std::string sha256_hex(std::string_view data);
std::string holdout_digest(const std::set<std::string>& holdout);

// Writes corpus_sft_{rw,apply,have,all}.jsonl, corpus_pretrain.txt and
// manifest.json under `dir`. Throws IoError.
ExportManifest export_corpus(const std::filesystem::path& dir,
                             const std::vector<StateTacticPair>& pairs,
                             const core::Theory& seed, const std::vector<core::Theorem>& mutants,
                             std::size_t dedup_threshold, const std::set<std::string>& holdout);

void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace alchemy::corpus

#endif  // ALCHEMY_CORPUS_CORPUS_HPP_
