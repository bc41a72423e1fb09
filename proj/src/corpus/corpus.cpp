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

#include "alchemy/corpus/corpus.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <regex>

#include <fmt/format.h>
#include <json.hpp>

#include "alchemy/core/parallel.hpp"
#include "alchemy/core/printer.hpp"
#include "alchemy/kernel/kernel.hpp"

namespace alchemy::corpus {

std::string_view pair_kind_name(PairKind k) {
  switch (k) {
    case PairKind::kRw: return "rw";
    case PairKind::kApply: return "apply";
    case PairKind::kHave: return "have";
    case PairKind::kExact: return "exact";
    case PairKind::kOther: return "other";
  }
  return "other";
}

PairKind classify(std::string_view text) {
  auto starts = [&](std::string_view p) {
    return text.substr(0, p.size()) == p && (text.size() == p.size() || text[p.size()] == ' ');
  };
  if (starts("rw")) return PairKind::kRw;
  if (starts("apply")) return PairKind::kApply;
  if (starts("have")) return PairKind::kHave;
  if (starts("exact")) return PairKind::kExact;
  return PairKind::kOther;
}

std::optional<std::string> premise_of(std::string_view text) {
  static const std::regex kRw(R"(^rw \[(?:← )?([^\]\s]+)\])");
  static const std::regex kApply(R"(^apply ([^\s]+))");
  std::string s(text);
  std::smatch m;
  if (std::regex_search(s, m, kRw) || std::regex_search(s, m, kApply)) return m[1].str();
  return std::nullopt;
}

namespace {

std::vector<StateTacticPair> pairs_of(const kernel::Environment& env, const core::Theorem& thm,
                                      const std::string& ancestor) {
  std::vector<StateTacticPair> out;
  for (auto& p : kernel::trace_proof(env, thm)) {
    StateTacticPair pair;
    pair.state_text = std::move(p.state_text);
    pair.tactic_text = std::move(p.tactic_text);
    pair.kind = classify(pair.tactic_text);
    if (pair.kind == PairKind::kRw || pair.kind == PairKind::kApply)
      pair.premise = premise_of(pair.tactic_text);
    pair.source_theorem = thm.name;
    pair.origin = thm.origin;
    pair.ancestor = ancestor;
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace

std::vector<StateTacticPair> extract_pairs(const core::Theory& seed,
                                           const std::vector<core::Theorem>& mutants,
                                           const std::map<std::string, std::string>& ancestors,
                                           std::size_t workers) {
  std::vector<const core::Theorem*> seeds;
  for (const auto& t : seed.theorems())
    if (t.keyword != core::Keyword::kAxiom) seeds.push_back(&t);
  std::size_t n = seeds.size() + mutants.size();
  auto chunks = core::parallel_map(n, workers, [&](std::size_t i) {
    if (i < seeds.size()) return pairs_of(kernel::Environment::before(seed, seeds[i]->name), *seeds[i], "");
    const core::Theorem& m = mutants[i - seeds.size()];
    auto it = ancestors.find(m.name);
    return pairs_of(kernel::Environment(seed), m, it == ancestors.end() ? "" : it->second);
  });
  std::vector<StateTacticPair> out;
  for (auto& c : chunks)
    for (auto& p : c) out.push_back(std::move(p));
  return out;
}

std::vector<StateTacticPair> dedup_by_premise(const std::vector<StateTacticPair>& pairs,
                                              std::size_t threshold) {
  std::map<std::pair<PairKind, std::string>, std::size_t> seen;
  std::vector<StateTacticPair> out;
  for (const auto& p : pairs) {
    if (p.premise && ++seen[{p.kind, *p.premise}] > threshold) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<StateTacticPair> remove_leakage(const std::vector<StateTacticPair>& pairs,
                                            const std::set<std::string>& holdout) {
  std::vector<StateTacticPair> out;
  for (const auto& p : pairs)
    if (!holdout.contains(p.source_theorem) && !holdout.contains(p.ancestor)) out.push_back(p);
  return out;
}

std::vector<StateTacticPair> prepare(const std::vector<StateTacticPair>& pairs,
                                     const std::set<std::string>& holdout, std::size_t threshold) {
  std::vector<StateTacticPair> seeds;
  std::vector<StateTacticPair> synth;
  for (auto& p : remove_leakage(pairs, holdout))
    (p.origin == core::Origin::kSeed ? seeds : synth).push_back(std::move(p));
  for (auto& p : dedup_by_premise(synth, threshold)) seeds.push_back(std::move(p));
  return seeds;
}

namespace {

constexpr std::string_view kHead = "/- You are proving a theorem.\nThe current proof state:\n-/\n";
constexpr std::string_view kMid = "\n/- Next tactic: -/\n";

}  // namespace

std::string prompt_prefix(std::string_view state_text) {
  std::string out(kHead);
  out += state_text;
  out += kMid;
  return out;
}

std::string render_prompt(const StateTacticPair& pair) {
  return prompt_prefix(pair.state_text) + pair.tactic_text;
}

RenderedPair parse_prompt(std::string_view text) {
  if (text.substr(0, kHead.size()) != kHead) throw PromptParseError("missing prompt header");
  text.remove_prefix(kHead.size());
  std::size_t mid = text.find(kMid);
  if (mid == std::string_view::npos) throw PromptParseError("missing next-tactic marker");
  if (text.find(kMid, mid + 1) != std::string_view::npos)
    throw PromptParseError("more than one next-tactic marker");
  RenderedPair out{std::string(text.substr(0, mid)), std::string(text.substr(mid + kMid.size()))};
  if (out.tactic_text.empty() || out.tactic_text.find('\n') != std::string::npos)
    throw PromptParseError("tactic block must be a single nonempty line");
  return out;
}

std::string sft_json_line(const StateTacticPair& pair) {
  nlohmann::ordered_json j;
  j["prompt"] = prompt_prefix(pair.state_text);
  j["completion"] = pair.tactic_text;
  nlohmann::ordered_json meta;
  if (pair.premise) {
    meta["premise"] = *pair.premise;
  } else {
    meta["premise"] = nullptr;
  }
  meta["tactic_kind"] = std::string(pair_kind_name(pair.kind));
  meta["origin"] = std::string(core::origin_name(pair.origin));
  meta["source_theorem"] = pair.source_theorem;
  j["meta"] = meta;
  return j.dump();
}

std::string ExportManifest::to_json() const {
  nlohmann::ordered_json j;
  j["pairs"] = pairs;
  j["files"] = files;
  j["by_origin"] = by_origin;
  j["by_tactic_kind"] = by_kind;
  j["dedup_threshold"] = dedup_threshold;
  j["holdout_digest"] = holdout_digest;
  return j.dump(2) + "\n";
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw core::Error("SHA-256 failed");
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
  return out;
}

std::string holdout_digest(const std::set<std::string>& holdout) {
  std::string joined;
  for (const auto& n : holdout) joined += n + "\n";
  return sha256_hex(joined);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

ExportManifest export_corpus(const std::filesystem::path& dir,
                             const std::vector<StateTacticPair>& pairs, const core::Theory& seed,
                             const std::vector<core::Theorem>& mutants, std::size_t dedup_threshold,
                             const std::set<std::string>& holdout) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  ExportManifest m;
  m.pairs = pairs.size();
  m.dedup_threshold = dedup_threshold;
  m.holdout_digest = holdout_digest(holdout);
  std::map<std::string, std::string> files = {{"corpus_sft_rw.jsonl", ""},
                                              {"corpus_sft_apply.jsonl", ""},
                                              {"corpus_sft_have.jsonl", ""},
                                              {"corpus_sft_all.jsonl", ""}};
  for (const auto& [name, content] : files) m.files[name] = 0;
  for (const auto& p : pairs) {
    std::string line = sft_json_line(p) + "\n";
    files["corpus_sft_all.jsonl"] += line;
    ++m.files["corpus_sft_all.jsonl"];
    if (p.kind == PairKind::kRw || p.kind == PairKind::kApply || p.kind == PairKind::kHave) {
      std::string name = fmt::format("corpus_sft_{}.jsonl", pair_kind_name(p.kind));
      files[name] += line;
      ++m.files[name];
    }
    ++m.by_origin[std::string(core::origin_name(p.origin))];
    ++m.by_kind[std::string(pair_kind_name(p.kind))];
  }
  for (const auto& [name, content] : files) write_file(dir / name, content);

  // Pretraining text: whole declarations, held-out ones excluded.
  std::map<std::string, std::string> ancestor;
  for (const auto& p : pairs)
    if (!p.ancestor.empty()) ancestor[p.source_theorem] = p.ancestor;
  std::string pretrain;
  std::size_t blocks = 0;
  auto emit = [&](const core::Theorem& t) {
    if (holdout.contains(t.name)) return;
    auto it = ancestor.find(t.name);
    if (it != ancestor.end() && holdout.contains(it->second)) return;
    if (blocks++ > 0) pretrain += "\n";
    pretrain += core::print(t) + "\n";
  };
  for (const auto& t : seed.theorems()) emit(t);
  for (const auto& t : mutants) emit(t);
  write_file(dir / "corpus_pretrain.txt", pretrain);
  m.files["corpus_pretrain.txt"] = blocks;
  write_file(dir / "manifest.json", m.to_json());
  return m;
}

}  // namespace alchemy::corpus
