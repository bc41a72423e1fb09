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

#include "alchemy/core/printer.hpp"

#include <sstream>

#include "alchemy/core/notation.hpp"

namespace alchemy::core {
namespace {

int precedence(const Term& t) {
  if (!t.is_app() || t.args.empty()) return kAtomPrecedence;
  if (const InfixOp* op = infix_by_symbol(t.name); op && t.args.size() == 2)
    return op->precedence;
  return kApplicationPrecedence;
}

void print_term(std::ostream& out, const Term& t);

void print_operand(std::ostream& out, const Term& t, bool parens) {
  if (parens) out << '(';
  print_term(out, t);
  if (parens) out << ')';
}

void print_term(std::ostream& out, const Term& t) {
  switch (t.kind) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      out << t.name;
      return;
    case Term::Kind::kMeta:
      out << '?' << t.name;
      return;
    case Term::Kind::kApp:
      break;
  }
  if (t.args.empty()) {
    out << t.name;
    return;
  }
  const InfixOp* op = infix_by_symbol(t.name);
  if (op != nullptr && t.args.size() == 2) {
    int lp = precedence(t.args[0]);
    int rp = precedence(t.args[1]);
    print_operand(out, t.args[0],
                  lp < op->precedence || (op->right_assoc && lp == op->precedence));
    out << ' ' << op->token << ' ';
    print_operand(out, t.args[1],
                  rp < op->precedence || (!op->right_assoc && rp == op->precedence));
    return;
  }
  out << t.name;
  for (const Term& a : t.args) {
    out << ' ';
    print_operand(out, a, precedence(a) != kAtomPrecedence);
  }
}

void print_formula(std::ostream& out, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kAtom: {
      const Relation* rel = relation_by_pred(f.pred);
      if (rel != nullptr && f.args.size() == 2) {
        print_term(out, f.args[0]);
        out << ' ' << rel->token << ' ';
        print_term(out, f.args[1]);
        return;
      }
      out << f.pred;
      for (const Term& a : f.args) {
        out << ' ';
        print_operand(out, a, precedence(a) != kAtomPrecedence);
      }
      return;
    }
    case Formula::Kind::kEq:
      print_term(out, f.lhs_term());
      out << " = ";
      print_term(out, f.rhs_term());
      return;
    case Formula::Kind::kIff: {
      bool lp = f.lhs().is_iff();
      bool rp = f.rhs().is_iff();
      if (lp) out << '(';
      print_formula(out, f.lhs());
      if (lp) out << ')';
      out << " ↔ ";
      if (rp) out << '(';
      print_formula(out, f.rhs());
      if (rp) out << ')';
      return;
    }
    case Formula::Kind::kImplies: {
      bool lp = f.lhs().is_implies() || f.lhs().is_iff();
      bool rp = f.rhs().is_iff();
      if (lp) out << '(';
      print_formula(out, f.lhs());
      if (lp) out << ')';
      out << " -> ";
      if (rp) out << '(';
      print_formula(out, f.rhs());
      if (rp) out << ')';
      return;
    }
  }
}

void print_binders(std::ostream& out, const Statement& s) {
  std::size_t i = 0;
  bool first = true;
  while (i < s.binders.size()) {
    std::size_t j = i;
    while (j < s.binders.size() && s.binders[j].sort == s.binders[i].sort) ++j;
    if (!first) out << ' ';
    first = false;
    out << '(';
    for (std::size_t k = i; k < j; ++k) out << (k == i ? "" : " ") << s.binders[k].name;
    out << " : " << s.binders[i].sort << ')';
    i = j;
  }
  for (const Hypothesis& h : s.hypotheses) {
    if (!first) out << ' ';
    first = false;
    out << '(' << h.name << " : ";
    print_formula(out, h.formula);
    out << ')';
  }
}

void print_tactic(std::ostream& out, const Tactic& t, bool last);

void print_script(std::ostream& out, const TacticScript& script) {
  for (std::size_t i = 0; i < script.size(); ++i) {
    if (i > 0) out << "; ";
    print_tactic(out, script[i], i + 1 == script.size());
  }
}

void print_tactic(std::ostream& out, const Tactic& t, bool last) {
  switch (t.kind) {
    case Tactic::Kind::kRw:
      out << "rw [" << (t.direction == Direction::kReverse ? "← " : "") << t.lemma << ']';
      if (t.at) out << " at " << *t.at;
      return;
    case Tactic::Kind::kApply:
      out << "apply " << t.lemma;
      if (t.at) out << " at " << *t.at;
      return;
    case Tactic::Kind::kHave:
      out << "have " << t.name << " : ";
      print_formula(out, *t.formula);
      out << " := by ";
      if (!last) out << '(';
      print_script(out, t.sub);
      if (!last) out << ')';
      return;
    case Tactic::Kind::kExact:
      out << "exact " << t.name;
      return;
    case Tactic::Kind::kAssumption:
      out << "assumption";
      return;
    case Tactic::Kind::kRfl:
      out << "rfl";
      return;
  }
}

void print_block(std::ostream& out, const TacticScript& script, int indent) {
  for (const Tactic& t : script) {
    out << std::string(indent, ' ');
    if (t.kind == Tactic::Kind::kHave) {
      out << "have " << t.name << " : ";
      print_formula(out, *t.formula);
      out << " := by\n";
      print_block(out, t.sub, indent + 2);
    } else {
      print_tactic(out, t, true);
      out << '\n';
    }
  }
}

}  // namespace

std::string print(const Term& t) {
  std::ostringstream out;
  print_term(out, t);
  return out.str();
}

std::string print(const Formula& f) {
  std::ostringstream out;
  print_formula(out, f);
  return out.str();
}

std::string print(const Statement& s) {
  std::ostringstream out;
  print_binders(out, s);
  if (!s.binders.empty() || !s.hypotheses.empty()) out << ' ';
  out << ": ";
  print_formula(out, s.goal);
  return out.str();
}

std::string print(const Tactic& t) {
  std::ostringstream out;
  print_tactic(out, t, true);
  return out.str();
}

std::string print_inline(const TacticScript& script) {
  std::ostringstream out;
  print_script(out, script);
  return out.str();
}

std::string print(const Theorem& thm) {
  std::ostringstream out;
  if (!thm.subject.empty() || thm.origin != Origin::kSeed) {
    out << "@[";
    if (!thm.subject.empty()) out << "subject: " << thm.subject;
    if (thm.origin != Origin::kSeed)
      out << (thm.subject.empty() ? "" : ", ") << "origin: " << origin_name(thm.origin);
    out << "]\n";
  }
  out << keyword_name(thm.keyword) << ' ' << thm.name << ' ' << print(thm.statement);
  if (thm.keyword == Keyword::kAxiom) {
    out << '\n';
    return out.str();
  }
  out << " := by\n";
  print_block(out, thm.proof, 2);
  return out.str();
}

std::string print(const Signature& sig) {
  std::ostringstream out;
  out << "signature\n";
  for (const std::string& s : sig.sorts()) out << "  sort " << s << '\n';
  for (const Symbol& s : sig.symbols())
    out << "  " << (s.kind == Symbol::Kind::kFunction ? "fn " : "pred ") << s.name << ' '
        << s.arity << '\n';
  return out.str();
}

std::string print(const Theory& theory) {
  std::ostringstream out;
  out << print(theory.signature);
  for (const Theorem& t : theory.theorems()) out << '\n' << print(t);
  return out.str();
}

}  // namespace alchemy::core
