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

#include "alchemy/kernel/proof_state.hpp"

#include <algorithm>
#include <string>

#include "alchemy/core/parser.hpp"
#include "alchemy/core/printer.hpp"

namespace alchemy::kernel {

namespace {

constexpr std::string_view kTurnstile = "⊢ ";
constexpr std::string_view kNoGoals = "no goals";

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

const core::Hypothesis* Goal::find(std::string_view name) const {
  for (const auto& h : context)
    if (h.name == name) return &h;
  return nullptr;
}

core::Hypothesis* Goal::find(std::string_view name) {
  for (auto& h : context)
    if (h.name == name) return &h;
  return nullptr;
}

std::set<std::string> Goal::metavars() const {
  std::set<std::string> out;
  for (const auto& h : context) core::collect_metas(h.formula, out);
  core::collect_metas(target, out);
  return out;
}

std::set<std::string> ProofState::metavars() const {
  std::set<std::string> out;
  for (const Goal& g : goals) out.merge(g.metavars());
  return out;
}

std::string serialize(const ProofState& state) {
  if (state.goals.empty()) return std::string(kNoGoals);
  std::string out;
  for (std::size_t i = 0; i < state.goals.size(); ++i) {
    if (i > 0) out += "\n\n";
    for (const auto& h : state.goals[i].context) out += h.name + " : " + core::print(h.formula) + "\n";
    out += std::string(kTurnstile) + core::print(state.goals[i].target);
  }
  return out;
}

ProofState parse_state(std::string_view text, const core::Signature& sig) {
  ProofState state;
  if (text == kNoGoals) return state;
  Goal goal;
  bool in_goal = false;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseStateError("state line " + std::to_string(line_no) + ": " + msg);
  };
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (line.empty()) {
      if (in_goal) fail("blank line inside a goal");
      continue;
    }
    in_goal = true;
    try {
      if (line.starts_with(kTurnstile)) {
        goal.target = core::parse_formula(line.substr(kTurnstile.size()), sig);
        state.goals.push_back(std::move(goal));
        goal = Goal{};
        in_goal = false;
        continue;
      }
      std::size_t colon = line.find(" : ");
      if (colon == std::string_view::npos) fail("expected `name : formula`");
      std::string name(line.substr(0, colon));
      if (!core::is_identifier(name)) fail("bad hypothesis name '" + name + "'");
      goal.context.push_back({name, core::parse_formula(line.substr(colon + 3), sig)});
    } catch (const core::SyntaxError& e) {
      fail(e.what());
    } catch (const core::ArityError& e) {
      fail(e.what());
    }
  }
  if (in_goal) throw ParseStateError("goal without a target");
  if (state.goals.empty()) throw ParseStateError("empty state");
  for (const std::string& m : state.metavars()) {
    if (core::is_unnamed_meta(m)) state.next_meta = std::max(state.next_meta, std::stoi(m.substr(1)) + 1);
  }
  return state;
}

}  // namespace alchemy::kernel
