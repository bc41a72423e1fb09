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

#ifndef ALCHEMY_PIPELINE_PIPELINE_HPP_
#define ALCHEMY_PIPELINE_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "alchemy/core/errors.hpp"
#include "alchemy/core/theory.hpp"
#include "alchemy/finder/finder.hpp"

namespace alchemy::pipeline {

class ConfigError : public core::Error {
 public:
  using core::Error::Error;
};

class StageFailure : public core::Error {
 public:
  StageFailure(std::string stage, const std::string& message)
      : core::Error("stage " + stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineConfig {
  std::vector<std::filesystem::path> seed_theory_paths;
  std::vector<finder::TacticKind> tactics = {finder::TacticKind::kRw, finder::TacticKind::kApply};
  std::size_t dedup_threshold = 1;
  std::size_t instruction_budget = 10000;
  std::vector<std::string> holdout_names;
  std::size_t workers = 1;
  std::filesystem::path output_dir = "out";
  // Reserved; no stage draws random numbers.
  std::int64_t rng_seed = 0;

  bool has(finder::TacticKind k) const;
};

struct Overrides {
  std::optional<std::vector<finder::TacticKind>> tactics;
  std::optional<std::size_t> dedup_threshold;
  std::optional<std::size_t> workers;
  std::optional<std::filesystem::path> output_dir;
};

// Relative paths resolve against the config file's directory. Throws
// ConfigError.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir);
void apply_overrides(PipelineConfig& config, const Overrides& o);
// Throws ConfigError.
void validate(const PipelineConfig& config);
std::vector<finder::TacticKind> parse_tactic_list(std::string_view csv);

// Seed theories merged in path order. Throws StageFailure("load", ...).
core::Theory load_seed(const PipelineConfig& config);

enum class Stage { kFind, kMutate, kVerify, kExport, kStats };
std::string_view stage_name(Stage s);
const std::vector<Stage>& all_stages();

struct StageReport {
  Stage stage;
  bool cached = false;
};

// Runs one stage against the artifacts of earlier stages. Skips the work
// when the recorded input digest matches and the outputs are intact.
// Throws StageFailure.
StageReport run_stage(const PipelineConfig& config, Stage stage);
std::vector<StageReport> run_all(const PipelineConfig& config);

// Artifact files of a stage for the given config.
std::vector<std::string> stage_outputs(const PipelineConfig& config, Stage stage);

struct TheoremVerdict {
  std::string name;
  bool accepted = false;
  std::string error;
  std::size_t step = 0;
};

// Kernel-checks every theorem of a theory file in order.
std::vector<TheoremVerdict> check_file(const std::filesystem::path& path);
void print_verdicts(std::ostream& out, const std::vector<TheoremVerdict>& verdicts);

}  // namespace alchemy::pipeline

#endif  // ALCHEMY_PIPELINE_PIPELINE_HPP_
