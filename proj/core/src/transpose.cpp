#include "hornify/transpose.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace hornify {

namespace {

bool is_marked(const Marking& m, const Predicate& p) {
  return std::binary_search(m.begin(), m.end(), p);
}

Atom complement_atom(const Atom& a) {
  return Atom{Predicate::complement_of(a.pred), a.args};
}

// A variable name not occurring in the rule, for the falsity guard.
std::string fresh_variable(const Rule& r) {
  const auto vars = rule_variables(r);
  const std::set<std::string> used(vars.begin(), vars.end());
  if (!used.count("z")) return "z";
  for (int i = 1;; ++i) {
    std::string v = "z" + std::to_string(i);
    if (!used.count(v)) return v;
  }
}

std::set<std::string> atom_variables(const Atom& a) {
  std::vector<std::string> vars;
  for (const auto& t : a.args) collect_variables(t, vars);
  return {vars.begin(), vars.end()};
}

// Range guards not_False(v) for head variables that no body atom covers.
std::vector<Atom> range_guards(const std::vector<Atom>& body,
                               const Atom& head) {
  std::set<std::string> covered;
  for (const auto& a : body) covered.merge(atom_variables(a));
  std::vector<Atom> guards;
  for (const auto& v : atom_variables(head))
    if (!covered.count(v))
      guards.push_back(
          Atom{Predicate::complement_of(Predicate::bot()), {Term::var(v)}});
  return guards;
}

}  // namespace

Program transpose_program(const Program& p, const Marking& marking) {
  Marking m = marking;
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  const MarkingCheck check = is_marking(p, m);
  if (!check.ok)
    throw std::invalid_argument("transpose_program: " + check.violations[0]);

  const Predicate notFalse = Predicate::complement_of(Predicate::bot());
  std::vector<Rule> core;

  for (const Rule& r : p.core) {
    std::vector<size_t> markedBody;
    for (size_t i = 0; i < r.body.size(); ++i)
      if (is_marked(m, r.body[i].pred)) markedBody.push_back(i);
    std::vector<Atom> markedHeads, unmarkedHeads;
    for (const auto& h : r.head)
      (is_marked(m, h.pred) ? markedHeads : unmarkedHeads).push_back(h);
    assert(markedBody.size() <= 1 && unmarkedHeads.size() <= 1);

    if (markedBody.size() == 1) {
      // Contrapose onto the marked body atom; all heads are marked.
      assert(unmarkedHeads.empty());
      const Atom& pivot = r.body[markedBody[0]];
      Rule out;
      out.origin = RuleOrigin::Case1;
      for (size_t i = 0; i < r.body.size(); ++i)
        if (i != markedBody[0]) out.body.push_back(r.body[i]);
      for (const auto& h : markedHeads) out.body.push_back(complement_atom(h));
      out.head.push_back(complement_atom(pivot));
      auto guards = range_guards(out.body, out.head[0]);
      out.body.insert(out.body.begin(), guards.begin(), guards.end());
      core.push_back(std::move(out));
    } else if (unmarkedHeads.empty()) {
      // Every head is marked (or the head is empty): the rule becomes a
      // falsity constraint over the range guard.
      Rule out;
      out.origin = RuleOrigin::Case2;
      const std::string z = fresh_variable(r);
      out.body.push_back(Atom{notFalse, {Term::var(z)}});
      out.body.insert(out.body.end(), r.body.begin(), r.body.end());
      for (const auto& h : markedHeads) out.body.push_back(complement_atom(h));
      out.head.push_back(Atom{Predicate::bot(), {Term::var(z)}});
      core.push_back(std::move(out));
    } else {
      // Single unmarked head: complement the marked heads into the body.
      Rule out;
      out.origin = markedHeads.empty() ? RuleOrigin::Kept : RuleOrigin::Case3;
      out.body = r.body;
      for (const auto& h : markedHeads) out.body.push_back(complement_atom(h));
      out.head.push_back(unmarkedHeads[0]);
      core.push_back(std::move(out));
    }
  }

  // Clash rules: P and not_P together are contradictory.
  for (const auto& pred : m) {
    Rule out;
    out.origin = RuleOrigin::Case4;
    out.body.push_back(Atom{notFalse, {Term::var("z")}});
    std::vector<Term> args;
    if (pred.arity() == 1) {
      args = {Term::var("x")};
    } else {
      args = {Term::var("x1"), Term::var("x2")};
    }
    out.body.push_back(Atom{pred, args});
    out.body.push_back(Atom{Predicate::complement_of(pred), args});
    out.head.push_back(Atom{Predicate::bot(), {Term::var("z")}});
    core.push_back(std::move(out));
  }

  // Range population: every term occurring in a derivable atom is in range,
  // and the range is closed under the function symbols.
  for (const auto& pred : p.signature.predicates) {
    if (!pred.is_ordinary()) continue;
    std::vector<Term> args;
    if (pred.arity() == 1) {
      args = {Term::var("x")};
    } else {
      args = {Term::var("x1"), Term::var("x2")};
    }
    for (size_t pos = 0; pos < args.size(); ++pos) {
      Rule out;
      out.origin = RuleOrigin::Case5;
      out.body.push_back(Atom{pred, args});
      out.head.push_back(Atom{notFalse, {args[pos]}});
      core.push_back(std::move(out));
    }
  }
  for (const auto& f : p.signature.functions) {
    Rule out;
    out.origin = RuleOrigin::Case6;
    out.body.push_back(Atom{notFalse, {Term::var("x")}});
    out.head.push_back(Atom{notFalse, {Term::app(f, Term::var("x"))}});
    core.push_back(std::move(out));
  }

  Program result = make_program(core, p.options);
  assert(is_horn_program(result));
  return result;
}

}  // namespace hornify
