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

#ifndef ALCHEMY_TESTS_SUPPORT_FIXTURES_HPP_
#define ALCHEMY_TESTS_SUPPORT_FIXTURES_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alchemy/core/parser.hpp"
#include "alchemy/core/theory.hpp"

namespace alchemy::testing {

inline std::filesystem::path source_dir() { return ALCHEMY_SOURCE_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline core::Theory load_seed(const std::string& file) {
  return core::parse_theory(read_file(source_dir() / "seeds" / file));
}

inline std::vector<std::string> seed_files() {
  return {"arith_basic.thy", "order.thy", "analysis.thy", "number_theory.thy"};
}

// All shipped seed files merged in a fixed order.
inline core::Theory load_seed_corpus() {
  core::Theory all;
  for (const auto& f : seed_files()) all.merge(load_seed(f));
  return all;
}

}  // namespace alchemy::testing

#endif  // ALCHEMY_TESTS_SUPPORT_FIXTURES_HPP_
