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

// gtest value printers so failures show source syntax, not bytes.

#ifndef ALCHEMY_TESTS_SUPPORT_PRINTERS_HPP_
#define ALCHEMY_TESTS_SUPPORT_PRINTERS_HPP_

#include <ostream>

#include "alchemy/core/printer.hpp"

namespace alchemy::core {

inline void PrintTo(const Term& t, std::ostream* os) { *os << print(t); }
inline void PrintTo(const Formula& f, std::ostream* os) { *os << print(f); }
inline void PrintTo(const Statement& s, std::ostream* os) { *os << print(s); }
inline void PrintTo(const Tactic& t, std::ostream* os) { *os << print(t); }
inline void PrintTo(const Hypothesis& h, std::ostream* os) {
  *os << h.name << " : " << print(h.formula);
}
inline void PrintTo(const Theorem& t, std::ostream* os) { *os << print(t); }
inline void PrintTo(const Theory& t, std::ostream* os) { *os << print(t); }

}  // namespace alchemy::core

#endif  // ALCHEMY_TESTS_SUPPORT_PRINTERS_HPP_
