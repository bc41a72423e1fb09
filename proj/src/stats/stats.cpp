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

#include "alchemy/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "alchemy/core/parallel.hpp"
#include "alchemy/core/printer.hpp"

namespace alchemy::stats {

using finder::TacticKind;

namespace {

struct Check {
  bool accepted = false;
  std::optional<kernel::TacticError> error;
  std::size_t step = 0;
};

}  // namespace

BatchResult verify_batch(const core::Theory& theory, const std::vector<core::Theorem>& mutants,
                         std::size_t workers) {
  kernel::Environment env(theory);
  auto verdicts = core::parallel_map(mutants.size(), workers, [&](std::size_t i) {
    kernel::Verdict v = kernel::check_theorem(env, mutants[i]);
    return Check{v.accepted, v.error, v.step};
  });
  BatchResult out;
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    if (verdicts[i].accepted) {
      out.accepted.push_back(mutants[i]);
    } else {
      out.rejected.push_back({mutants[i], *verdicts[i].error, verdicts[i].step});
    }
  }

  // Rebuild: the accepted set appended to the theory, checked in order.
  core::Theory rebuilt = theory;
  for (const auto& t : out.accepted) rebuilt.add(t);
  for (const auto& t : out.accepted) {
    kernel::Verdict v = kernel::check_theorem(kernel::Environment::before(rebuilt, t.name), t);
    if (!v.accepted)
      throw RebuildInconsistency("'" + t.name + "' accepted once but rejected on rebuild: " +
                                 v.error->message);
  }
  return out;
}

std::string render_rejected(const core::Signature& sig, const std::vector<Rejection>& rejected) {
  std::string out = core::print(sig);
  for (const auto& r : rejected) {
    out += "\n-- rejected: ";
    out += kernel::error_kind_name(r.error.kind);
    out += " at step " + std::to_string(r.step) + "\n";
    std::istringstream msg(r.error.message);
    for (std::string line; std::getline(msg, line);) out += "--   " + line + "\n";
    out += core::print(r.theorem) + "\n";
  }
  return out;
}

double TacticCounts::expansion() const {
  return candidates == 0 ? 0.0 : static_cast<double>(stage_two) / static_cast<double>(candidates);
}

std::optional<double> TacticCounts::conversion() const {
  if (stage_one == 0) return std::nullopt;
  return static_cast<double>(stage_two) / static_cast<double>(stage_one);
}

double TacticCounts::fan_out() const {
  return candidates == 0 ? 0.0 : static_cast<double>(instructions) / static_cast<double>(candidates);
}

TacticCounts StageCounts::total() const {
  TacticCounts t;
  for (const auto& [kind, c] : by_tactic) {
    t.candidates += c.candidates;
    t.raw_records += c.raw_records;
    t.stage_one += c.stage_one;
    t.stage_two += c.stage_two;
    t.instructions += c.instructions;
  }
  return t;
}

StageCounts compute_stage_counts(const std::vector<finder::InvocationRecord>& records,
                                 const std::vector<MutantRef>& mutants,
                                 const std::map<TacticKind, std::size_t>& candidates) {
  StageCounts s;
  for (const auto& [kind, n] : candidates) s.by_tactic[kind].candidates = n;
  for (const auto& r : records) ++s.by_tactic[r.kind()].stage_one;
  for (const auto& m : mutants) ++s.by_tactic[m.kind].stage_two;
  return s;
}

std::size_t DistributionReport::seed_total() const {
  std::size_t n = 0;
  for (const auto& [s, row] : subjects) n += row.seed;
  return n;
}

std::size_t DistributionReport::rw_total() const {
  std::size_t n = 0;
  for (const auto& [s, row] : subjects) n += row.seed_rw;
  return n;
}

std::size_t DistributionReport::apply_total() const {
  std::size_t n = 0;
  for (const auto& [s, row] : subjects) n += row.seed_apply;
  return n;
}

namespace {

double share(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

const SubjectRow& row_of(const DistributionReport& d, const std::string& subject) {
  static const SubjectRow kEmpty;
  auto it = d.subjects.find(subject);
  return it == d.subjects.end() ? kEmpty : it->second;
}

}  // namespace

double DistributionReport::seed_share(const std::string& s) const {
  return share(row_of(*this, s).seed, seed_total());
}
double DistributionReport::rw_share(const std::string& s) const {
  return share(row_of(*this, s).seed_rw, rw_total());
}
double DistributionReport::apply_share(const std::string& s) const {
  return share(row_of(*this, s).seed_apply, apply_total());
}

DistributionReport compute_distribution(const core::Theory& theory,
                                        const std::vector<MutantRef>& mutants, std::size_t top_k) {
  DistributionReport d;
  std::map<std::string, std::size_t> variants;
  std::vector<std::string> seeds;
  for (const auto& t : theory.theorems()) {
    if (t.subject.empty()) throw MissingSubjectTag("theorem '" + t.name + "' has no subject tag");
    SubjectRow& row = d.subjects[t.subject];
    ++row.seed;
    ++row.seed_rw;
    ++row.seed_apply;
    if (t.keyword == core::Keyword::kTheorem) {
      seeds.push_back(t.name);
      variants[t.name] = 0;
    }
  }
  for (const auto& m : mutants) {
    if (m.subject.empty()) throw MissingSubjectTag("mutant '" + m.name + "' has no subject tag");
    SubjectRow& row = d.subjects[m.subject];
    ++(m.kind == TacticKind::kRw ? row.seed_rw : row.seed_apply);
    ++variants[m.candidate];
  }
  std::vector<std::size_t> counts;
  for (const auto& name : seeds) {
    ++d.histogram[variants[name]];
    counts.push_back(variants[name]);
  }
  if (!counts.empty()) {
    std::sort(counts.begin(), counts.end());
    std::size_t idx = (99 * counts.size() + 99) / 100;
    d.p99 = counts[std::min(idx, counts.size()) - 1];
  }
  for (const auto& name : seeds) d.top.emplace_back(name, variants[name]);
  std::stable_sort(d.top.begin(), d.top.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (d.top.size() > top_k) d.top.resize(top_k);
  return d;
}

namespace {

struct ReferenceRow {
  const char* tactic;
  std::size_t candidates;
  std::size_t stage_one;
  std::size_t stage_two;
  const char* expansion;
  const char* conversion;
};

// Reference figures for the Mathlib-scale run.
constexpr ReferenceRow kReferenceRows[] = {
    {"rw", 110657, 5081544, 2830817, "x25", "56%"},
    {"apply", 78871, 9483504, 3495832, "x44", "37%"},
};

std::string thousands(std::size_t n) {
  std::string s = std::to_string(n);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

nlohmann::ordered_json counts_json(const TacticCounts& c) {
  nlohmann::ordered_json j;
  j["candidates"] = c.candidates;
  j["stage_one"] = c.stage_one;
  j["stage_two"] = c.stage_two;
  j["expansion"] = c.expansion();
  if (auto conv = c.conversion()) {
    j["conversion"] = *conv;
  } else {
    j["conversion"] = nullptr;
  }
  return j;
}

}  // namespace

std::string stats_json(const StageCounts& counts, const DistributionReport& dist) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json stages;
  for (const auto& [kind, c] : counts.by_tactic) stages[std::string(finder::tactic_kind_name(kind))] = counts_json(c);
  j["stages"] = stages;
  j["stage_two"] = counts.total().stage_two;
  nlohmann::ordered_json subjects;
  for (const auto& [name, row] : dist.subjects) {
    subjects[name] = {{"seed", row.seed},
                      {"seed_rw", row.seed_rw},
                      {"seed_apply", row.seed_apply},
                      {"seed_share", dist.seed_share(name)},
                      {"seed_rw_share", dist.rw_share(name)},
                      {"seed_apply_share", dist.apply_share(name)}};
  }
  j["subjects"] = subjects;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [k, v] : dist.histogram) hist[std::to_string(k)] = v;
  j["variants_per_seed"] = hist;
  j["variants_p99"] = dist.p99;
  nlohmann::ordered_json top = nlohmann::ordered_json::array();
  for (const auto& [name, n] : dist.top) top.push_back({{"theorem", name}, {"variants", n}});
  j["top_seeds"] = top;
  nlohmann::ordered_json reference = nlohmann::ordered_json::array();
  for (const auto& r : kReferenceRows)
    reference.push_back({{"tactic", r.tactic},
                     {"candidates", r.candidates},
                     {"stage_one", r.stage_one},
                     {"stage_two", r.stage_two},
                     {"expansion", r.expansion},
                     {"conversion", r.conversion}});
  j["reference_not_reproduced"] = reference;
  return j.dump(2) + "\n";
}

std::string stats_markdown(const StageCounts& counts, const DistributionReport& dist) {
  std::string out = "# Synthesis statistics\n\n";
  out += "| Tactic | Candidate theorems | Stage one | Stage two | Expansion | Conversion Ratio |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& [kind, c] : counts.by_tactic) {
    auto conv = c.conversion();
    out += fmt::format("| {} | {} | {} | {} | x{:.2f} | {} |\n", finder::tactic_kind_name(kind),
                       thousands(c.candidates), thousands(c.stage_one), thousands(c.stage_two),
                       c.expansion(), conv ? fmt::format("{:.0f}%", *conv * 100) : "N/A");
  }
  out += "\nReference row from the Mathlib-scale run (paper, not reproduced):\n\n";
  out += "| Tactic | Candidate theorems | Stage one | Stage two | Expansion | Conversion Ratio |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& r : kReferenceRows)
    out += fmt::format("| {} | {} | {} | {} | {} | {} |\n", r.tactic, thousands(r.candidates),
                       thousands(r.stage_one), thousands(r.stage_two), r.expansion, r.conversion);

  out += "\nInstruction fan-out per candidate:";
  std::string_view sep = " ";
  for (const auto& [kind, c] : counts.by_tactic) {
    out += fmt::format("{}{} {:.1f}", sep, finder::tactic_kind_name(kind), c.fan_out());
    sep = ", ";
  }
  out += "\n\n## Subjects\n\n| Subject | Seed | Seed+rw | Seed+apply |\n|---|---|---|---|\n";
  for (const auto& [name, row] : dist.subjects)
    out += fmt::format("| {} | {} ({:.1f}%) | {} ({:.1f}%) | {} ({:.1f}%) |\n", name, row.seed,
                       100 * dist.seed_share(name), row.seed_rw, 100 * dist.rw_share(name),
                       row.seed_apply, 100 * dist.apply_share(name));
  out += "\n## Variants per seed\n\n| Variants | Seeds |\n|---|---|\n";
  for (const auto& [k, v] : dist.histogram) out += fmt::format("| {} | {} |\n", k, v);
  out += fmt::format("\n99th percentile: {} variants.\n", dist.p99);
  out += "\n## Top seeds\n\n| Theorem | Variants |\n|---|---|\n";
  for (const auto& [name, n] : dist.top) out += fmt::format("| {} | {} |\n", name, n);
  return out;
}

}  // namespace alchemy::stats
