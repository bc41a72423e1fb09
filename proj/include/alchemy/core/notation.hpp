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

#ifndef ALCHEMY_CORE_NOTATION_HPP_
#define ALCHEMY_CORE_NOTATION_HPP_

#include <string_view>

namespace alchemy::core {

// Binary function symbols written infix.
struct InfixOp {
  std::string_view token;
  std::string_view symbol;
  int precedence;
  bool right_assoc;
};

// Binary predicates written infix. `ascii` is an accepted alternative
// spelling; `token` is what the printer emits.
struct Relation {
  std::string_view token;
  std::string_view ascii;
  std::string_view pred;
};

inline constexpr InfixOp kInfixOps[] = {
    {"+", "add", 65, false}, {"-", "sub", 65, false}, {"*", "mul", 70, false},
    {"/", "div", 70, false}, {"%", "mod", 70, false}, {"^", "pow", 75, true},
};

inline constexpr Relation kRelations[] = {
    {">", ">", "Gt"},   {"<", "<", "Lt"},     {"≥", ">=", "Ge"},
    {"≤", "<=", "Le"},  {"∣", "∣", "Dvd"},    {"≠", "!=", "Ne"},
};

inline constexpr int kApplicationPrecedence = 1024;
inline constexpr int kAtomPrecedence = 2048;

inline const InfixOp* infix_by_symbol(std::string_view symbol) {
  for (const InfixOp& op : kInfixOps)
    if (op.symbol == symbol) return &op;
  return nullptr;
}

inline const InfixOp* infix_by_token(std::string_view token) {
  for (const InfixOp& op : kInfixOps)
    if (op.token == token) return &op;
  return nullptr;
}

inline const Relation* relation_by_pred(std::string_view pred) {
  for (const Relation& r : kRelations)
    if (r.pred == pred) return &r;
  return nullptr;
}

inline const Relation* relation_by_token(std::string_view token) {
  for (const Relation& r : kRelations)
    if (r.token == token || r.ascii == token) return &r;
  return nullptr;
}

}  // namespace alchemy::core

#endif  // ALCHEMY_CORE_NOTATION_HPP_
