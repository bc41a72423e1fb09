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

// Hand-rolled random generators shared by the property tests.

#ifndef ALCHEMY_TESTS_SUPPORT_GENERATORS_HPP_
#define ALCHEMY_TESTS_SUPPORT_GENERATORS_HPP_

#include <random>
#include <string>
#include <vector>

#include "alchemy/core/signature.hpp"
#include "alchemy/core/term.hpp"
#include "alchemy/core/theory.hpp"
#include "printers.hpp"

namespace alchemy::testing {

inline core::Signature arithmetic_signature() {
  core::Signature sig;
  sig.declare_function("add", 2);
  sig.declare_function("mul", 2);
  sig.declare_function("sub", 2);
  sig.declare_function("pow", 2);
  sig.declare_function("exp", 1);
  sig.declare_function("succ", 1);
  sig.declare_function("c0", 0);
  sig.declare_predicate("Gt", 2);
  sig.declare_predicate("Le", 2);
  sig.declare_predicate("Dvd", 2);
  sig.declare_predicate("Prime", 1);
  return sig;
}

class Gen {
 public:
  explicit Gen(unsigned seed, const core::Signature& sig = arithmetic_signature())
      : rng_(seed), sig_(sig) {
    for (const auto& s : sig_.symbols()) {
      if (s.kind == core::Symbol::Kind::kFunction) {
        (s.arity == 0 ? constants_ : functions_).push_back(s);
      } else {
        predicates_.push_back(s);
      }
    }
    constants_.push_back({core::Symbol::Kind::kFunction, "0", 0});
    constants_.push_back({core::Symbol::Kind::kFunction, "1", 0});
  }

  std::mt19937& rng() { return rng_; }
  const core::Signature& signature() const { return sig_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  core::Term term(const std::vector<std::string>& vars, int depth,
                  const std::vector<std::string>& metas = {}) {
    if (depth <= 0 || coin(0.3)) {
      int r = uniform(0, 9);
      if (!metas.empty() && r == 0) return core::Term::meta(pick(metas));
      if (!vars.empty() && r < 7) return core::Term::var(pick(vars));
      return core::Term::constant(pick(constants_).name);
    }
    const core::Symbol& f = pick(functions_);
    std::vector<core::Term> args;
    for (int i = 0; i < f.arity; ++i) args.push_back(term(vars, depth - 1, metas));
    return core::Term::app(f.name, std::move(args));
  }

  core::Formula atomic(const std::vector<std::string>& vars, int depth,
                       const std::vector<std::string>& metas = {}) {
    if (coin(0.3)) return core::Formula::eq(term(vars, depth, metas), term(vars, depth, metas));
    const core::Symbol& p = pick(predicates_);
    std::vector<core::Term> args;
    for (int i = 0; i < p.arity; ++i) args.push_back(term(vars, depth, metas));
    return core::Formula::atom(p.name, std::move(args));
  }

  core::Formula formula(const std::vector<std::string>& vars, int depth,
                        const std::vector<std::string>& metas = {}) {
    int r = uniform(0, 9);
    if (depth <= 0 || r < 6) return atomic(vars, 2, metas);
    if (r < 8)
      return core::Formula::implies(formula(vars, depth - 1, metas),
                                    formula(vars, depth - 1, metas));
    return core::Formula::iff(formula(vars, depth - 1, metas), formula(vars, depth - 1, metas));
  }

  std::vector<std::string> var_names(int n) {
    static const std::vector<std::string> pool = {"a", "b", "c", "d", "m", "n", "x", "y", "z"};
    std::vector<std::string> out(pool.begin(), pool.begin() + std::min<std::size_t>(n, pool.size()));
    return out;
  }

  core::Statement statement(int n_vars, int n_hyps) {
    core::Statement s;
    auto vars = var_names(n_vars);
    for (const auto& v : vars) s.binders.push_back({v, "Nat"});
    for (int i = 0; i < n_hyps; ++i)
      s.hypotheses.push_back({"h" + std::to_string(i + 1), formula(vars, 2)});
    s.goal = formula(vars, 2);
    return s;
  }

 private:
  std::mt19937 rng_;
  core::Signature sig_;
  std::vector<core::Symbol> functions_;
  std::vector<core::Symbol> constants_;
  std::vector<core::Symbol> predicates_;
};

}  // namespace alchemy::testing

#endif  // ALCHEMY_TESTS_SUPPORT_GENERATORS_HPP_
