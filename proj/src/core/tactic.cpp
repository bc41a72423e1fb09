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

#include "alchemy/core/tactic.hpp"

#include <utility>

namespace alchemy::core {

Tactic Tactic::rw(Direction dir, std::string lemma, std::optional<std::string> at) {
  Tactic t;
  t.kind = Kind::kRw;
  t.direction = dir;
  t.lemma = std::move(lemma);
  t.at = std::move(at);
  return t;
}

Tactic Tactic::apply(std::string lemma, std::optional<std::string> at) {
  Tactic t;
  t.kind = Kind::kApply;
  t.lemma = std::move(lemma);
  t.at = std::move(at);
  return t;
}

Tactic Tactic::have(std::string name, Formula formula, TacticScript sub) {
  Tactic t;
  t.kind = Kind::kHave;
  t.name = std::move(name);
  t.formula = std::move(formula);
  t.sub = std::move(sub);
  return t;
}

Tactic Tactic::exact(std::string hypothesis) {
  Tactic t;
  t.kind = Kind::kExact;
  t.name = std::move(hypothesis);
  return t;
}

Tactic Tactic::assumption() {
  Tactic t;
  t.kind = Kind::kAssumption;
  return t;
}

Tactic Tactic::rfl() { return Tactic{}; }

std::size_t flattened_length(const TacticScript& script) {
  std::size_t n = 0;
  for (const Tactic& t : script) n += 1 + flattened_length(t.sub);
  return n;
}

TacticScript rename_hypothesis(const TacticScript& script, const std::string& from,
                               const std::string& to) {
  TacticScript out;
  out.reserve(script.size());
  bool shadowed = false;
  for (const Tactic& t : script) {
    if (shadowed) {
      out.push_back(t);
      continue;
    }
    Tactic r = t;
    if (r.at && *r.at == from) r.at = to;
    if (r.kind == Tactic::Kind::kExact && r.name == from) r.name = to;
    if (r.kind == Tactic::Kind::kHave) {
      r.sub = rename_hypothesis(r.sub, from, to);
      if (r.name == from) shadowed = true;
    }
    out.push_back(std::move(r));
  }
  return out;
}

void collect_names(const TacticScript& script, std::vector<std::string>& out) {
  for (const Tactic& t : script) {
    if (t.at) out.push_back(*t.at);
    if (!t.name.empty()) out.push_back(t.name);
    collect_names(t.sub, out);
  }
}

}  // namespace alchemy::core
