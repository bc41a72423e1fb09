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

#include "alchemy/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include <json.hpp>
#include <toml.hpp>

#include "alchemy/core/parallel.hpp"
#include "alchemy/core/parser.hpp"
#include "alchemy/core/printer.hpp"
#include "alchemy/corpus/corpus.hpp"
#include "alchemy/kernel/kernel.hpp"
#include "alchemy/mutator/mutator.hpp"
#include "alchemy/stats/stats.hpp"

namespace alchemy::pipeline {

namespace fs = std::filesystem;
using finder::TacticKind;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

bool PipelineConfig::has(TacticKind k) const {
  return std::find(tactics.begin(), tactics.end(), k) != tactics.end();
}

std::vector<TacticKind> parse_tactic_list(std::string_view csv) {
  std::vector<TacticKind> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view item = csv.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    auto k = finder::parse_tactic_kind(item);
    if (!k) throw ConfigError("unknown tactic '" + std::string(item) + "'");
    out.push_back(*k);
    start = end + 1;
  }
  return out;
}

namespace {

std::size_t positive(const toml::node_view<const toml::node>& node, std::string_view key) {
  auto v = node.value<std::int64_t>();
  if (!v || *v < 1) throw ConfigError(fmt::format("'{}' must be a positive integer", key));
  return static_cast<std::size_t>(*v);
}

std::vector<std::string> strings(const toml::node_view<const toml::node>& node, std::string_view key) {
  const toml::array* arr = node.as_array();
  if (arr == nullptr) throw ConfigError(fmt::format("'{}' must be an array of strings", key));
  std::vector<std::string> out;
  for (const auto& el : *arr) {
    auto s = el.value<std::string>();
    if (!s) throw ConfigError(fmt::format("'{}' must be an array of strings", key));
    out.push_back(*s);
  }
  return out;
}

}  // namespace

PipelineConfig parse_config(std::string_view text, const fs::path& base) {
  toml::table tbl;
  try {
    tbl = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw ConfigError(fmt::format("config line {}: {}", e.source().begin.line, e.description()));
  }
  static const std::set<std::string> kKnown = {
      "seed_theory_paths", "tactics",      "dedup_threshold", "instruction_budget",
      "holdout_names",     "workers",      "output_dir",      "rng_seed"};
  for (const auto& [key, value] : tbl)
    if (!kKnown.contains(std::string(key.str())))
      throw ConfigError("unknown config key '" + std::string(key.str()) + "'");

  PipelineConfig c;
  const toml::table& t = tbl;
  if (!t.contains("seed_theory_paths")) throw ConfigError("'seed_theory_paths' is required");
  for (const auto& p : strings(t["seed_theory_paths"], "seed_theory_paths"))
    c.seed_theory_paths.push_back(base / p);
  if (t.contains("tactics")) {
    c.tactics.clear();
    for (const auto& s : strings(t["tactics"], "tactics")) {
      auto k = finder::parse_tactic_kind(s);
      if (!k) throw ConfigError("unknown tactic '" + s + "'");
      c.tactics.push_back(*k);
    }
  }
  if (t.contains("dedup_threshold")) c.dedup_threshold = positive(t["dedup_threshold"], "dedup_threshold");
  if (t.contains("instruction_budget"))
    c.instruction_budget = positive(t["instruction_budget"], "instruction_budget");
  if (t.contains("holdout_names")) c.holdout_names = strings(t["holdout_names"], "holdout_names");
  if (t.contains("workers")) c.workers = positive(t["workers"], "workers");
  if (t.contains("output_dir")) {
    auto s = t["output_dir"].value<std::string>();
    if (!s) throw ConfigError("'output_dir' must be a string");
    c.output_dir = base / *s;
  } else {
    c.output_dir = base / "out";
  }
  if (t.contains("rng_seed")) {
    auto v = t["rng_seed"].value<std::int64_t>();
    if (!v) throw ConfigError("'rng_seed' must be an integer");
    c.rng_seed = *v;
  }
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  PipelineConfig c = parse_config(ss.str(), path.parent_path());
  return c;
}

void apply_overrides(PipelineConfig& c, const Overrides& o) {
  if (o.tactics) c.tactics = *o.tactics;
  if (o.dedup_threshold) c.dedup_threshold = *o.dedup_threshold;
  if (o.workers) c.workers = *o.workers;
  if (o.output_dir) c.output_dir = *o.output_dir;
}

void validate(const PipelineConfig& c) {
  if (c.tactics.empty()) throw ConfigError("'tactics' must not be empty");
  if (c.seed_theory_paths.empty()) throw ConfigError("'seed_theory_paths' must not be empty");
  for (const auto& p : c.seed_theory_paths)
    if (!fs::exists(p)) throw ConfigError("seed theory not found: " + p.string());
  if (c.dedup_threshold < 1) throw ConfigError("'dedup_threshold' must be positive");
  if (c.instruction_budget < 1) throw ConfigError("'instruction_budget' must be positive");
  if (c.workers < 1) throw ConfigError("'workers' must be positive");
}

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw core::Error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

// Canonical rw-then-apply order, independent of how the config lists them.
std::vector<TacticKind> ordered_tactics(const PipelineConfig& c) {
  std::vector<TacticKind> out;
  for (TacticKind k : {TacticKind::kRw, TacticKind::kApply})
    if (c.has(k)) out.push_back(k);
  return out;
}

std::string synth_file(TacticKind k) {
  return fmt::format("synth_{}.thy", finder::tactic_kind_name(k));
}

class Digest {
 public:
  Digest& add(std::string_view label, std::string_view content) {
    buf_ += fmt::format("{}:{}\n", label, corpus::sha256_hex(content));
    return *this;
  }
  std::string hex() const { return corpus::sha256_hex(buf_); }

 private:
  std::string buf_;
};

}  // namespace

core::Theory load_seed(const PipelineConfig& c) {
  core::Theory th;
  for (const auto& p : c.seed_theory_paths) {
    try {
      th.merge(core::parse_theory(read_text(p)));
    } catch (const core::Error& e) {
      throw StageFailure("load", p.string() + ": " + e.what());
    }
  }
  return th;
}

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::kFind: return "find";
    case Stage::kMutate: return "mutate";
    case Stage::kVerify: return "verify";
    case Stage::kExport: return "export";
    case Stage::kStats: return "stats";
  }
  return "?";
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> kAll = {Stage::kFind, Stage::kMutate, Stage::kVerify,
                                          Stage::kExport, Stage::kStats};
  return kAll;
}

std::vector<std::string> stage_outputs(const PipelineConfig& c, Stage s) {
  switch (s) {
    case Stage::kFind: return {"records.jsonl", "find_stats.json"};
    case Stage::kMutate: {
      std::vector<std::string> out = {"mutants.jsonl", "failures.jsonl"};
      for (TacticKind k : ordered_tactics(c)) out.push_back(synth_file(k));
      return out;
    }
    case Stage::kVerify: return {"verify.json", "rejected.thy"};
    case Stage::kExport:
      return {"corpus_sft_rw.jsonl", "corpus_sft_apply.jsonl", "corpus_sft_have.jsonl",
              "corpus_sft_all.jsonl", "corpus_pretrain.txt", "manifest.json"};
    case Stage::kStats: return {"stats.json", "stats.md"};
  }
  return {};
}

namespace {

class Runner {
 public:
  Runner(const PipelineConfig& c, Stage s) : c_(c), stage_(s), dir_(c.output_dir) {}

  StageReport run() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) fail("cannot create " + dir_.string() + ": " + ec.message());
    std::string inputs = input_digest();
    if (up_to_date(inputs)) {
      spdlog::info("{}: up to date", stage_name(stage_));
      return {stage_, true};
    }
    spdlog::info("{}: running", stage_name(stage_));
    try {
      switch (stage_) {
        case Stage::kFind: find(); break;
        case Stage::kMutate: mutate(); break;
        case Stage::kVerify: verify(); break;
        case Stage::kExport: export_(); break;
        case Stage::kStats: stats(); break;
      }
    } catch (const StageFailure&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
    record_digests(inputs);
    return {stage_, false};
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw StageFailure(std::string(stage_name(stage_)), message);
  }

  fs::path at(const std::string& name) const { return dir_ / name; }

  std::string artifact(const std::string& name) const {
    if (!fs::exists(at(name)))
      fail("missing " + name + "; run the stage that produces it first");
    return read_text(at(name));
  }

  core::Theory seed() const {
    try {
      return load_seed(c_);
    } catch (const StageFailure& e) {
      fail(e.what());
    }
  }

  void write(const std::string& name, std::string_view content) const {
    corpus::write_file(at(name), content);
  }

  std::string input_digest() const {
    Digest d;
    for (const auto& p : c_.seed_theory_paths) {
      try {
        d.add("seed", read_text(p));
      } catch (const core::Error& e) {
        fail(e.what());
      }
    }
    std::string tactics;
    for (TacticKind k : ordered_tactics(c_)) tactics += std::string(finder::tactic_kind_name(k)) + ",";
    d.add("tactics", tactics);
    switch (stage_) {
      case Stage::kFind:
        d.add("budget", std::to_string(c_.instruction_budget));
        break;
      case Stage::kMutate:
        d.add("records", artifact("records.jsonl"));
        break;
      case Stage::kVerify:
        for (TacticKind k : ordered_tactics(c_)) d.add("synth", artifact(synth_file(k)));
        break;
      case Stage::kExport: {
        for (TacticKind k : ordered_tactics(c_)) d.add("synth", artifact(synth_file(k)));
        d.add("mutants", artifact("mutants.jsonl"));
        d.add("verify", artifact("verify.json"));
        std::string holdout;
        for (const auto& h : std::set<std::string>(c_.holdout_names.begin(), c_.holdout_names.end()))
          holdout += h + "\n";
        d.add("holdout", holdout);
        d.add("threshold", std::to_string(c_.dedup_threshold));
        break;
      }
      case Stage::kStats:
        d.add("records", artifact("records.jsonl"));
        d.add("find_stats", artifact("find_stats.json"));
        d.add("mutants", artifact("mutants.jsonl"));
        d.add("verify", artifact("verify.json"));
        break;
    }
    return d.hex();
  }

  json load_digests() const {
    if (!fs::exists(at("digests.json"))) return json::object();
    try {
      return json::parse(read_text(at("digests.json")));
    } catch (const json::exception&) {
      return json::object();
    }
  }

  bool up_to_date(const std::string& inputs) const {
    json all = load_digests();
    std::string key(stage_name(stage_));
    if (!all.contains(key) || all[key].value("inputs", "") != inputs) return false;
    const json& outs = all[key]["outputs"];
    for (const auto& name : stage_outputs(c_, stage_)) {
      if (!outs.contains(name) || !fs::exists(at(name))) return false;
      if (outs[name].get<std::string>() != corpus::sha256_hex(read_text(at(name)))) return false;
    }
    return true;
  }

  void record_digests(const std::string& inputs) const {
    json all = load_digests();
    json entry;
    entry["inputs"] = inputs;
    for (const auto& name : stage_outputs(c_, stage_))
      entry["outputs"][name] = corpus::sha256_hex(read_text(at(name)));
    all[std::string(stage_name(stage_))] = entry;
    write("digests.json", all.dump(2) + "\n");
  }

  void find() const {
    core::Theory th = seed();
    kernel::Environment env(th);
    finder::FindOptions opts{c_.instruction_budget};
    std::vector<finder::InvocationRecord> kept;
    ojson summary;
    for (TacticKind k : ordered_tactics(c_)) {
      auto cands = finder::candidates(th, k);
      auto tmpl = finder::templates_for({k});
      auto results = core::parallel_map(cands.size(), c_.workers, [&](std::size_t i) {
        return finder::find_invocable(env, *cands[i], finder::default_pool(th, cands[i]->name), tmpl,
                                      opts);
      });
      std::vector<finder::InvocationRecord> raw;
      std::size_t tried = 0;
      std::size_t exhausted = 0;
      for (const auto& r : results) {
        raw.insert(raw.end(), r.records.begin(), r.records.end());
        tried += r.instructions_tried;
        if (r.budget_exhausted) {
          ++exhausted;
          spdlog::warn("find: instruction budget exhausted");
        }
      }
      auto filtered = finder::filter_records(raw);
      auto deduped = finder::dedup_records(filtered);
      std::string name(finder::tactic_kind_name(k));
      summary[name] = {{"candidates", cands.size()},
                       {"instructions", tried},
                       {"raw_records", raw.size()},
                       {"filtered_records", filtered.size()},
                       {"stage_one", deduped.size()},
                       {"budget_exhausted", exhausted}};
      spdlog::info("find: {} candidates={} records={}", name, cands.size(), deduped.size());
      kept.insert(kept.end(), deduped.begin(), deduped.end());
    }
    std::ostringstream out;
    finder::write_records(out, kept);
    write("records.jsonl", out.str());
    write("find_stats.json", summary.dump(2) + "\n");
  }

  void mutate() const {
    core::Theory th = seed();
    std::istringstream in(artifact("records.jsonl"));
    std::vector<finder::InvocationRecord> records = finder::read_records(in);
    std::string mutants_jsonl;
    std::string failures_jsonl;
    for (TacticKind k : {TacticKind::kRw, TacticKind::kApply}) {
      if (!c_.has(k)) {
        std::error_code ec;
        fs::remove(at(synth_file(k)), ec);
        continue;
      }
      std::vector<finder::InvocationRecord> mine;
      for (const auto& r : records)
        if (r.kind() == k) mine.push_back(r);
      mutator::MutateOutput out = mutator::mutate(th, mine, c_.workers);
      core::Theory synth;
      synth.signature = th.signature;
      for (const auto& m : out.mutants) {
        synth.add(m.mutated);
        mutants_jsonl += mutator::to_json_line(m) + "\n";
      }
      for (const auto& f : out.failures) failures_jsonl += mutator::to_json_line(f) + "\n";
      write(synth_file(k), core::print(synth));
      spdlog::info("mutate: {} mutants={} failures={} duplicates={}", finder::tactic_kind_name(k),
                   out.mutants.size(), out.failures.size(), out.duplicates);
    }
    write("mutants.jsonl", mutants_jsonl);
    write("failures.jsonl", failures_jsonl);
  }

  std::vector<core::Theorem> synthesized() const {
    std::vector<core::Theorem> out;
    for (TacticKind k : ordered_tactics(c_)) {
      core::Theory t = core::parse_theory(artifact(synth_file(k)));
      out.insert(out.end(), t.theorems().begin(), t.theorems().end());
    }
    return out;
  }

  void verify() const {
    core::Theory th = seed();
    stats::BatchResult r = stats::verify_batch(th, synthesized(), c_.workers);
    ojson j;
    j["accepted"] = ojson::array();
    for (const auto& t : r.accepted) j["accepted"].push_back(t.name);
    j["rejected"] = ojson::array();
    for (const auto& x : r.rejected)
      j["rejected"].push_back({{"name", x.theorem.name},
                               {"error", std::string(kernel::error_kind_name(x.error.kind))},
                               {"step", x.step}});
    write("verify.json", j.dump(2) + "\n");
    write("rejected.thy", stats::render_rejected(th.signature, r.rejected));
    spdlog::info("verify: accepted={} rejected={}", r.accepted.size(), r.rejected.size());
  }

  std::set<std::string> accepted_names() const {
    json v = json::parse(artifact("verify.json"));
    std::set<std::string> out;
    for (const auto& n : v["accepted"]) out.insert(n.get<std::string>());
    return out;
  }

  std::vector<json> mutant_lines() const {
    std::vector<json> out;
    for (const auto& line : lines_of(artifact("mutants.jsonl"))) out.push_back(json::parse(line));
    return out;
  }

  void export_() const {
    core::Theory th = seed();
    std::set<std::string> ok = accepted_names();
    std::vector<core::Theorem> mutants;
    for (auto& t : synthesized())
      if (ok.contains(t.name)) mutants.push_back(std::move(t));
    std::map<std::string, std::string> ancestors;
    for (const auto& m : mutant_lines())
      ancestors[m["name"].get<std::string>()] = m["candidate"].get<std::string>();
    std::set<std::string> holdout(c_.holdout_names.begin(), c_.holdout_names.end());
    auto pairs = corpus::extract_pairs(th, mutants, ancestors, c_.workers);
    auto prepared = corpus::prepare(pairs, holdout, c_.dedup_threshold);
    corpus::ExportManifest m =
        corpus::export_corpus(dir_, prepared, th, mutants, c_.dedup_threshold, holdout);
    spdlog::info("export: pairs extracted={} exported={}", pairs.size(), m.pairs);
  }

  void stats() const {
    core::Theory th = seed();
    std::set<std::string> ok = accepted_names();
    std::vector<stats::MutantRef> refs;
    for (const auto& m : mutant_lines()) {
      std::string name = m["name"].get<std::string>();
      if (!ok.contains(name)) continue;
      auto origin = core::parse_origin(m["origin"].get<std::string>());
      refs.push_back({name, m["candidate"].get<std::string>(), m["subject"].get<std::string>(),
                      origin == core::Origin::kSynthesizedApply ? TacticKind::kApply : TacticKind::kRw});
    }
    std::istringstream in(artifact("records.jsonl"));
    auto records = finder::read_records(in);
    json fs_json = json::parse(artifact("find_stats.json"));
    std::map<TacticKind, std::size_t> cands;
    for (TacticKind k : ordered_tactics(c_))
      cands[k] = fs_json[std::string(finder::tactic_kind_name(k))]["candidates"].get<std::size_t>();
    stats::StageCounts counts = stats::compute_stage_counts(records, refs, cands);
    for (auto& [k, tc] : counts.by_tactic) {
      const json& e = fs_json[std::string(finder::tactic_kind_name(k))];
      tc.raw_records = e["raw_records"].get<std::size_t>();
      tc.instructions = e["instructions"].get<std::size_t>();
    }
    stats::DistributionReport dist = stats::compute_distribution(th, refs);
    write("stats.json", stats::stats_json(counts, dist));
    write("stats.md", stats::stats_markdown(counts, dist));
  }

  const PipelineConfig& c_;
  Stage stage_;
  fs::path dir_;
};

}  // namespace

StageReport run_stage(const PipelineConfig& config, Stage stage) {
  return Runner(config, stage).run();
}

std::vector<StageReport> run_all(const PipelineConfig& config) {
  std::vector<StageReport> out;
  for (Stage s : all_stages()) out.push_back(run_stage(config, s));
  return out;
}

std::vector<TheoremVerdict> check_file(const fs::path& path) {
  core::Theory th = core::parse_theory(read_text(path));
  std::vector<TheoremVerdict> out;
  for (const auto& t : th.theorems()) {
    kernel::Verdict v = kernel::check_theorem(kernel::Environment::before(th, t.name), t);
    TheoremVerdict tv{t.name, v.accepted, "", v.step};
    if (v.error) tv.error = std::string(kernel::error_kind_name(v.error->kind)) + ": " + v.error->message;
    out.push_back(std::move(tv));
  }
  return out;
}

void print_verdicts(std::ostream& out, const std::vector<TheoremVerdict>& verdicts) {
  std::size_t width = 7;
  for (const auto& v : verdicts) width = std::max(width, v.name.size());
  out << fmt::format("{:<{}}  {}\n", "theorem", width, "verdict");
  std::size_t accepted = 0;
  for (const auto& v : verdicts) {
    if (v.accepted) {
      ++accepted;
      out << fmt::format("{:<{}}  Accepted\n", v.name, width);
    } else {
      out << fmt::format("{:<{}}  Rejected at step {} ({})\n", v.name, width, v.step, v.error);
    }
  }
  out << fmt::format("{}/{} accepted\n", accepted, verdicts.size());
}

}  // namespace alchemy::pipeline
