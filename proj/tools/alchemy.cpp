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

// Command-line driver for the synthesis pipeline.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "alchemy/pipeline/pipeline.hpp"

namespace {

using alchemy::pipeline::ConfigError;
using alchemy::pipeline::Overrides;
using alchemy::pipeline::PipelineConfig;
using alchemy::pipeline::Stage;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kStageFailure = 3;

struct Flags {
  std::string config;
  std::string tactics;
  std::optional<std::size_t> dedup_threshold;
  std::optional<std::size_t> workers;
  std::string out;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config, "Pipeline config (TOML)");
  cmd->add_option("--tactics", f.tactics, "Comma-separated subset of rw,apply");
  cmd->add_option("--dedup-threshold", f.dedup_threshold, "Pairs kept per premise")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output directory");
}

PipelineConfig config_from(const Flags& f) {
  if (f.config.empty()) throw ConfigError("a config file is required (-c FILE)");
  PipelineConfig c = alchemy::pipeline::load_config(f.config);
  Overrides o;
  if (!f.tactics.empty()) o.tactics = alchemy::pipeline::parse_tactic_list(f.tactics);
  o.dedup_threshold = f.dedup_threshold;
  o.workers = f.workers;
  if (!f.out.empty()) o.output_dir = f.out;
  alchemy::pipeline::apply_overrides(c, o);
  alchemy::pipeline::validate(c);
  return c;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("alchemy");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("ALCHEMY_LOG");
  std::string level = env == nullptr ? "info" : env;
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    throw ConfigError("ALCHEMY_LOG must be one of error, info, debug");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theorem synthesis by rw/apply mutation"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* run = app.add_subcommand("run", "Run every stage");
  add_flags(run, flags);
  std::string check_path;
  CLI::App* check = app.add_subcommand("check", "Kernel-check a theory file");
  check->add_option("path", check_path, "Theory file")->required();
  struct Single {
    const char* name;
    const char* help;
    Stage stage;
  };
  const Single singles[] = {{"find", "Find invocable theorems", Stage::kFind},
                            {"mutate", "Build mutants from records", Stage::kMutate},
                            {"verify", "Re-verify synthesized theorems", Stage::kVerify},
                            {"export", "Export training corpora", Stage::kExport},
                            {"stats", "Write stage statistics", Stage::kStats}};
  std::vector<std::pair<CLI::App*, Stage>> stage_cmds;
  for (const auto& s : singles) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_flags(cmd, flags);
    stage_cmds.emplace_back(cmd, s.stage);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    setup_logging();
    if (check->parsed()) {
      auto verdicts = alchemy::pipeline::check_file(check_path);
      alchemy::pipeline::print_verdicts(std::cout, verdicts);
      for (const auto& v : verdicts)
        if (!v.accepted) return kStageFailure;
      return kOk;
    }
    PipelineConfig config = config_from(flags);
    if (run->parsed()) {
      alchemy::pipeline::run_all(config);
      return kOk;
    }
    for (const auto& [cmd, stage] : stage_cmds)
      if (cmd->parsed()) alchemy::pipeline::run_stage(config, stage);
    return kOk;
  } catch (const ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigError;
  } catch (const alchemy::pipeline::StageFailure& e) {
    spdlog::error("{}", e.what());
    return kStageFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kStageFailure;
  }
}
