#include "hornify/program.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace hornify {

// ---------------------------------------------------------------------------
// Function symbols and terms
// ---------------------------------------------------------------------------

std::string FunctionSymbol::text() const {
  if (kind == Kind::Plain) return "sk" + std::to_string(axiomIndex);
  return "f_" + role.base + (role.inverted ? "~" : "") + "_" + filler.text();
}

Term Term::var(std::string name) {
  Term t;
  t.kind_ = Kind::Var;
  t.name_ = std::move(name);
  return t;
}

Term Term::constant(std::string name) {
  Term t;
  t.kind_ = Kind::Const;
  t.name_ = std::move(name);
  return t;
}

Term Term::app(FunctionSymbol fn, Term arg) {
  Term t;
  t.kind_ = Kind::App;
  t.fn_ = std::move(fn);
  t.arg_ = std::make_shared<const Term>(std::move(arg));
  return t;
}

int Term::depth() const {
  return kind_ == Kind::App ? 1 + arg_->depth() : 0;
}

bool Term::ground() const {
  if (kind_ == Kind::Var) return false;
  if (kind_ == Kind::App) return arg_->ground();
  return true;
}

std::string Term::text() const {
  switch (kind_) {
    case Kind::Var: return "?" + name_;
    case Kind::Const: return name_;
    default: return fn_->text() + "(" + arg_->text() + ")";
  }
}

int Term::compare(const Term& o) const {
  if (kind_ != o.kind_)
    return static_cast<int>(kind_) < static_cast<int>(o.kind_) ? -1 : 1;
  if (kind_ != Kind::App)
    return name_ < o.name_ ? -1 : (name_ == o.name_ ? 0 : 1);
  if (*fn_ != *o.fn_) return *fn_ < *o.fn_ ? -1 : 1;
  return arg_->compare(*o.arg_);
}

// ---------------------------------------------------------------------------
// Predicates and atoms
// ---------------------------------------------------------------------------

Predicate Predicate::complement_of(const Predicate& base) {
  assert(base.kind == Kind::Concept || base.kind == Kind::RoleAtom ||
         base.kind == Kind::Bot);
  Predicate p;
  p.kind = Kind::Complement;
  p.ofKind = base.kind;
  p.ofName = base.name;
  return p;
}

int Predicate::arity() const {
  switch (kind) {
    case Kind::RoleAtom:
    case Kind::Eq:
      return 2;
    case Kind::Complement:
      return ofKind == Kind::RoleAtom ? 2 : 1;
    default:
      return 1;
  }
}

std::string Predicate::text() const {
  switch (kind) {
    case Kind::Concept:
    case Kind::RoleAtom:
      return name;
    case Kind::Top: return "True";
    case Kind::Bot: return "False";
    case Kind::Eq: return "Eq";
    default:
      return "not_" + (ofKind == Kind::Bot ? std::string("False") : ofName);
  }
}

std::string Atom::text() const {
  std::string s = pred.text() + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i].text();
  }
  return s + ")";
}

bool Atom::operator<(const Atom& o) const {
  if (pred != o.pred) return pred < o.pred;
  return std::lexicographical_compare(
      args.begin(), args.end(), o.args.begin(), o.args.end(),
      [](const Term& a, const Term& b) { return a < b; });
}

Atom make_role_atom(const Role& r, Term s, Term t) {
  if (r.inverted)
    return Atom(Predicate::role(r.base), {std::move(t), std::move(s)});
  return Atom(Predicate::role(r.base), {std::move(s), std::move(t)});
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

const char* to_string(RuleOrigin o) {
  switch (o) {
    case RuleOrigin::Input: return "input";
    case RuleOrigin::Pi: return "pi";
    case RuleOrigin::Xi: return "xi";
    case RuleOrigin::Kept: return "kept";
    case RuleOrigin::Case1: return "case1";
    case RuleOrigin::Case2: return "case2";
    case RuleOrigin::Case3: return "case3";
    case RuleOrigin::Case4: return "case4";
    case RuleOrigin::Case5: return "case5";
    case RuleOrigin::Case6: return "case6";
    case RuleOrigin::SigmaTop: return "sigma-top";
    case RuleOrigin::SigmaBot: return "sigma-bot";
    default: return "sigma-eq";
  }
}

std::string Rule::text() const {
  std::string s;
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) s += ", ";
    s += body[i].text();
  }
  if (!body.empty()) s += " ";
  s += "->";
  if (head.empty()) {
    s += " FALSEHOOD";
  } else {
    for (size_t i = 0; i < head.size(); ++i) {
      s += i ? " | " : " ";
      s += head[i].text();
    }
  }
  return s + ".";
}

// ---------------------------------------------------------------------------
// Signature and Σ-components
// ---------------------------------------------------------------------------

namespace {

void collect_term_symbols(const Term& t, std::set<FunctionSymbol>& fns,
                          std::set<std::string>& consts) {
  if (t.is_const()) {
    consts.insert(t.name());
  } else if (t.is_app()) {
    fns.insert(t.fn());
    collect_term_symbols(t.arg(), fns, consts);
  }
}

}  // namespace

bool Signature::has_predicate(const Predicate& p) const {
  return std::binary_search(predicates.begin(), predicates.end(), p);
}

Signature signature_of(const std::vector<Rule>& rules) {
  std::set<Predicate> preds;
  std::set<FunctionSymbol> fns;
  std::set<std::string> consts;
  for (const auto& r : rules) {
    for (const auto* atoms : {&r.body, &r.head})
      for (const auto& a : *atoms) {
        preds.insert(a.pred);
        for (const auto& t : a.args) collect_term_symbols(t, fns, consts);
      }
  }
  Signature sig;
  sig.predicates.assign(preds.begin(), preds.end());
  sig.functions.assign(fns.begin(), fns.end());
  sig.constants.assign(consts.begin(), consts.end());
  return sig;
}

namespace {

std::vector<Term> position_vars(int arity) {
  if (arity == 1) return {Term::var("x")};
  return {Term::var("x1"), Term::var("x2")};
}

}  // namespace

SigmaComponents signature_components(const Signature& sig,
                                     const SigmaOptions& opts) {
  SigmaComponents out;

  // P(x1..xn) → True(xi) for every predicate and position, → True(a) for
  // every constant.
  for (const auto& p : sig.predicates) {
    if (p.kind == Predicate::Kind::Top) continue;
    auto vars = position_vars(p.arity());
    for (const auto& v : vars) {
      Rule r;
      r.body.push_back(Atom(p, vars));
      r.head.push_back(Atom(Predicate::top(), {v}));
      r.origin = RuleOrigin::SigmaTop;
      out.top.push_back(std::move(r));
    }
  }
  for (const auto& c : sig.constants) {
    Rule r;
    r.head.push_back(Atom(Predicate::top(), {Term::constant(c)}));
    r.origin = RuleOrigin::SigmaTop;
    out.top.push_back(std::move(r));
  }

  // False(x) → (falsity).
  {
    Rule r;
    r.body.push_back(Atom(Predicate::bot(), {Term::var("x")}));
    r.origin = RuleOrigin::SigmaBot;
    out.bot.push_back(std::move(r));
  }

  // Equality: guarded reflexivity, symmetry, transitivity, and congruence
  // over predicate positions (Top and Eq replacement are derivable).
  const Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
  auto eq = [](Term a, Term b) {
    return Atom(Predicate::eq(), {std::move(a), std::move(b)});
  };
  {
    Rule r;
    r.body.push_back(Atom(Predicate::top(), {x}));
    r.head.push_back(eq(x, x));
    r.origin = RuleOrigin::SigmaEq;
    out.eq.push_back(std::move(r));
  }
  {
    Rule r;
    r.body.push_back(eq(x, y));
    r.head.push_back(eq(y, x));
    r.origin = RuleOrigin::SigmaEq;
    out.eq.push_back(std::move(r));
  }
  {
    Rule r;
    r.body.push_back(eq(x, y));
    r.body.push_back(eq(y, z));
    r.head.push_back(eq(x, z));
    r.origin = RuleOrigin::SigmaEq;
    out.eq.push_back(std::move(r));
  }
  for (const auto& p : sig.predicates) {
    if (p.kind == Predicate::Kind::Top || p.kind == Predicate::Kind::Eq)
      continue;
    auto vars = position_vars(p.arity());
    for (size_t i = 0; i < vars.size(); ++i) {
      Rule r;
      r.body.push_back(Atom(p, vars));
      r.body.push_back(eq(vars[i], y));
      auto newArgs = vars;
      newArgs[i] = y;
      r.head.push_back(Atom(p, newArgs));
      r.origin = RuleOrigin::SigmaEq;
      out.eq.push_back(std::move(r));
    }
  }
  if (opts.congruenceOnFunctionPositions) {
    for (const auto& f : sig.functions) {
      Rule r;
      r.body.push_back(eq(x, y));
      r.head.push_back(eq(Term::app(f, x), Term::app(f, y)));
      r.origin = RuleOrigin::SigmaEq;
      out.eq.push_back(std::move(r));
    }
  }
  return out;
}

Program make_program(std::vector<Rule> core, const SigmaOptions& opts,
                     RuleOrigin defaultOrigin) {
  Program p;
  p.core = std::move(core);
  if (defaultOrigin != RuleOrigin::Input)
    for (auto& r : p.core)
      if (r.origin == RuleOrigin::Input) r.origin = defaultOrigin;
  p.options = opts;
  p.signature = signature_of(p.core);
  auto sigma = signature_components(p.signature, opts);
  p.sigmaTop = std::move(sigma.top);
  p.sigmaBot = std::move(sigma.bot);
  p.sigmaEq = std::move(sigma.eq);
  return p;
}

std::vector<Rule> all_rules(const Program& p) {
  std::vector<Rule> out = p.core;
  out.insert(out.end(), p.sigmaTop.begin(), p.sigmaTop.end());
  out.insert(out.end(), p.sigmaBot.begin(), p.sigmaBot.end());
  out.insert(out.end(), p.sigmaEq.begin(), p.sigmaEq.end());
  return out;
}

bool is_horn_program(const Program& p) {
  for (const auto& r : p.core)
    if (r.head.size() > 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end())
      out.push_back(t.name());
  } else if (t.is_app()) {
    collect_variables(t.arg(), out);
  }
}

std::vector<std::string> rule_variables(const Rule& r) {
  std::vector<std::string> vars;
  for (const auto* atoms : {&r.body, &r.head})
    for (const auto& a : *atoms)
      for (const auto& t : a.args) collect_variables(t, vars);
  return vars;
}

std::vector<std::string> validate_program(const Program& p) {
  std::vector<std::string> out;
  auto check_safety = [&](const Rule& r, const char* which) {
    std::vector<std::string> bodyVars;
    for (const auto& a : r.body)
      for (const auto& t : a.args) collect_variables(t, bodyVars);
    std::vector<std::string> headVars;
    for (const auto& a : r.head)
      for (const auto& t : a.args) collect_variables(t, headVars);
    for (const auto& v : headVars)
      if (std::find(bodyVars.begin(), bodyVars.end(), v) == bodyVars.end())
        out.push_back(std::string(which) + " rule not safe (head variable ?" +
                      v + " missing from body): " + r.text());
  };

  std::map<std::string, int> nameArity;
  auto check_atom = [&](const Rule& r, const Atom& a) {
    if (static_cast<int>(a.args.size()) != a.pred.arity())
      out.push_back("arity mismatch in atom " + a.text() + ": " + r.text());
    if (a.pred.kind == Predicate::Kind::Complement &&
        (a.pred.ofKind == Predicate::Kind::Top ||
         a.pred.ofKind == Predicate::Kind::Eq ||
         a.pred.ofKind == Predicate::Kind::Complement))
      out.push_back("complement of a special predicate in " + r.text());
    if (a.pred.is_ordinary()) {
      auto [it, inserted] = nameArity.insert({a.pred.name, a.pred.arity()});
      if (!inserted && it->second != a.pred.arity())
        out.push_back("predicate '" + a.pred.name +
                      "' used with conflicting arities");
    }
  };

  for (const auto& r : p.core) {
    check_safety(r, "core");
    for (const auto& a : r.body) check_atom(r, a);
    for (const auto& a : r.head) check_atom(r, a);
    if (r.head.empty())
      out.push_back("core rule with empty head: " + r.text());
    const bool botHead =
        r.head.size() == 1 && r.head[0].pred.kind == Predicate::Kind::Bot;
    for (const auto& a : r.body) {
      if (a.pred.kind == Predicate::Kind::Eq)
        out.push_back("core body mentions Eq: " + r.text());
      // Bot may guard only the clash-rule family, whose head is a Bot atom.
      if (a.pred.kind == Predicate::Kind::Bot && !botHead)
        out.push_back("core body mentions False: " + r.text());
    }
    for (const auto& a : r.head) {
      if (a.pred.kind != Predicate::Kind::Top) continue;
      // True heads appear only where a Top filler was translated: the
      // successor-activation shape (functional head term) or the image of a
      // universal restriction (role atom in the body).
      const bool functionalArg = !a.args.empty() && a.args[0].is_app();
      const bool roleBody =
          std::any_of(r.body.begin(), r.body.end(), [](const Atom& b) {
            return b.pred.kind == Predicate::Kind::RoleAtom;
          });
      if (!functionalArg && !roleBody)
        out.push_back("core head mentions True: " + r.text());
    }
  }
  for (const auto& rs : {&p.sigmaTop, &p.sigmaBot, &p.sigmaEq})
    for (const auto& r : *rs) check_safety(r, "sigma");
  return out;
}

// ---------------------------------------------------------------------------
// π: direct translation of axioms
// ---------------------------------------------------------------------------

Atom concept_atom(const ConceptName& c, const Term& t) {
  if (c.is_top()) return Atom(Predicate::top(), {t});
  if (c.is_bot()) return Atom(Predicate::bot(), {t});
  return Atom(Predicate::concept_name(c.id), {t});
}

namespace {

std::string fresh_var(const std::vector<std::string>& used,
                      std::initializer_list<const char*> preferred) {
  for (const char* c : preferred)
    if (std::find(used.begin(), used.end(), c) == used.end()) return c;
  int i = 0;
  while (true) {
    std::string v = "v" + std::to_string(i++);
    if (std::find(used.begin(), used.end(), v) == used.end()) return v;
  }
}

}  // namespace

std::vector<Rule> pi_axiom_rules(const Axiom& axiom, int axiomIndex) {
  std::vector<Rule> rules;
  if (const auto* sr = std::get_if<SubRole>(&axiom)) {
    Rule r;
    const Term x = Term::var("x"), y = Term::var("y");
    r.body.push_back(make_role_atom(Role{sr->sub}, x, y));
    r.head.push_back(make_role_atom(sr->sup, x, y));
    r.origin = RuleOrigin::Pi;
    rules.push_back(std::move(r));
    return rules;
  }

  const GCI& g = std::get<GCI>(axiom);
  const bool atMost = g.rhs.kind == Rhs::Kind::AtMost1;
  const Term lhsVar = Term::var(atMost ? "z" : "x");

  // Shared body: the left-hand conjunction rolled into atoms.
  Rule base;
  std::vector<std::string> usedVars{lhsVar.name()};
  for (const auto& n : g.lhs.names) base.body.push_back(concept_atom(n, lhsVar));
  int existsIdx = 0;
  for (const auto& e : g.lhs.exists) {
    std::string vn = g.lhs.exists.size() == 1
                         ? "y"
                         : "y" + std::to_string(++existsIdx);
    usedVars.push_back(vn);
    Term yv = Term::var(vn);
    base.body.push_back(make_role_atom(e.role, lhsVar, yv));
    for (const auto& f : e.filler) base.body.push_back(concept_atom(f, yv));
  }
  base.origin = RuleOrigin::Pi;

  switch (g.rhs.kind) {
    case Rhs::Kind::Union: {
      Rule r = base;
      for (const auto& n : g.rhs.names) r.head.push_back(concept_atom(n, lhsVar));
      rules.push_back(std::move(r));
      break;
    }
    case Rhs::Kind::All: {
      Rule r = base;
      Term yv = Term::var(fresh_var(usedVars, {"y", "y0"}));
      r.body.push_back(make_role_atom(g.rhs.role, lhsVar, yv));
      r.head.push_back(concept_atom(g.rhs.filler, yv));
      rules.push_back(std::move(r));
      break;
    }
    case Rhs::Kind::Some: {
      Term fx = Term::app(FunctionSymbol::plain(axiomIndex), lhsVar);
      Rule r1 = base;
      r1.head.push_back(make_role_atom(g.rhs.role, lhsVar, fx));
      rules.push_back(std::move(r1));
      if (!g.rhs.filler.is_top()) {  // a Top filler is implied by Σ
        Rule r2 = base;
        r2.head.push_back(concept_atom(g.rhs.filler, fx));
        rules.push_back(std::move(r2));
      }
      break;
    }
    case Rhs::Kind::AtMost1: {
      Rule r = base;
      const Term x1 = Term::var("x1"), x2 = Term::var("x2");
      r.body.push_back(make_role_atom(g.rhs.role, lhsVar, x1));
      r.body.push_back(make_role_atom(g.rhs.role, lhsVar, x2));
      r.body.push_back(concept_atom(g.rhs.filler, x1));
      r.body.push_back(concept_atom(g.rhs.filler, x2));
      r.head.push_back(Atom(Predicate::eq(), {x1, x2}));
      rules.push_back(std::move(r));
      break;
    }
  }
  return rules;
}

Program pi_translate(const Ontology& o, const SigmaOptions& opts) {
  std::vector<Rule> core;
  for (size_t i = 0; i < o.axioms.size(); ++i) {
    auto rules = pi_axiom_rules(o.axioms[i], static_cast<int>(i));
    core.insert(core.end(), rules.begin(), rules.end());
  }
  return make_program(std::move(core), opts);
}

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

Term apply_substitution(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Const:
      return t;
    default:
      return Term::app(t.fn(), apply_substitution(t.arg(), s));
  }
}

Atom apply_substitution(const Atom& a, const Substitution& s) {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(apply_substitution(t, s));
  return out;
}

// ---------------------------------------------------------------------------
// Structural comparison
// ---------------------------------------------------------------------------

namespace {

std::vector<Atom> sorted_atoms(std::vector<Atom> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

bool rules_equivalent(const Rule& a, const Rule& b) {
  if (a.body.size() != b.body.size() || a.head.size() != b.head.size())
    return false;
  std::vector<std::string> va = rule_variables(a);
  std::vector<std::string> vb = rule_variables(b);
  if (va.size() != vb.size()) return false;

  const auto bBody = sorted_atoms(b.body);
  const auto bHead = sorted_atoms(b.head);
  std::sort(vb.begin(), vb.end());
  do {
    Substitution rename;
    for (size_t i = 0; i < va.size(); ++i)
      rename[va[i]] = Term::var(vb[i]);
    Rule ra;
    for (const auto& at : a.body) ra.body.push_back(apply_substitution(at, rename));
    for (const auto& at : a.head) ra.head.push_back(apply_substitution(at, rename));
    if (sorted_atoms(ra.body) == bBody && sorted_atoms(ra.head) == bHead)
      return true;
  } while (std::next_permutation(vb.begin(), vb.end()));
  return false;
}

bool rule_sets_equivalent(const std::vector<Rule>& a,
                          const std::vector<Rule>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::vector<size_t>> candidates(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j)
      if (rules_equivalent(a[i], b[j])) candidates[i].push_back(j);
    if (candidates[i].empty()) return false;
  }
  std::vector<bool> used(b.size(), false);
  std::function<bool(size_t)> match = [&](size_t i) {
    if (i == a.size()) return true;
    for (size_t j : candidates[i]) {
      if (used[j]) continue;
      used[j] = true;
      if (match(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return match(0);
}

// ---------------------------------------------------------------------------
// .rules text format
// ---------------------------------------------------------------------------

namespace {

class RuleParser {
 public:
  RuleParser(const std::string& text, int line) : s_(text), line_(line) {}

  Rule parse() {
    Rule r;
    skip_ws();
    if (!peek_is("->")) {
      r.body.push_back(parse_atom());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        r.body.push_back(parse_atom());
        skip_ws();
      }
    }
    expect_arrow();
    skip_ws();
    if (peek_word() == "FALSEHOOD") {
      consume_word();
    } else {
      r.head.push_back(parse_atom());
      skip_ws();
      while (peek() == '|') {
        ++pos_;
        r.head.push_back(parse_atom());
        skip_ws();
      }
    }
    skip_ws();
    if (peek() != '.') fail("expected '.' at end of rule");
    ++pos_;
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected text after '.'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool peek_is(const std::string& w) const {
    return s_.compare(pos_, w.size(), w) == 0;
  }
  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  void expect_arrow() {
    skip_ws();
    if (!peek_is("->")) fail("expected '->'");
    pos_ += 2;
  }
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~';
  }
  std::string peek_word() const {
    size_t p = pos_;
    std::string w;
    while (p < s_.size() && word_char(s_[p])) w += s_[p++];
    return w;
  }
  std::string consume_word() {
    std::string w = peek_word();
    if (w.empty()) fail("expected a name");
    pos_ += w.size();
    return w;
  }

  FunctionSymbol parse_function_symbol(const std::string& w) {
    if (w.size() > 2 && w.compare(0, 2, "sk") == 0 &&
        std::all_of(w.begin() + 2, w.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      return FunctionSymbol::plain(std::stoi(w.substr(2)));
    if (w.size() > 2 && w.compare(0, 2, "f_") == 0) {
      std::string rest = w.substr(2);
      size_t cut = rest.rfind('_');
      if (cut == std::string::npos || cut == 0 || cut + 1 == rest.size())
        fail("malformed function symbol '" + w + "'");
      std::string roleTok = rest.substr(0, cut);
      std::string fillerTok = rest.substr(cut + 1);
      bool inverted = false;
      if (roleTok.back() == '~') {
        inverted = true;
        roleTok.pop_back();
        if (roleTok.empty()) fail("malformed function symbol '" + w + "'");
      }
      ConceptName filler = fillerTok == "Top" ? ConceptName::top()
                                              : ConceptName::named(fillerTok);
      return FunctionSymbol::indexed(Role{roleTok, inverted}, filler);
    }
    fail("unknown function symbol '" + w + "' (expected skN or f_R_Y)");
  }

  Term parse_term() {
    skip_ws();
    if (peek() == '?') {
      ++pos_;
      return Term::var(consume_word());
    }
    std::string w = consume_word();
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      Term arg = parse_term();
      skip_ws();
      if (peek() != ')') fail("expected ')' in functional term");
      ++pos_;
      return Term::app(parse_function_symbol(w), arg);
    }
    if (std::isupper(static_cast<unsigned char>(w[0])))
      fail("constants must be lowercase: '" + w + "'");
    return Term::constant(w);
  }

  Predicate predicate_for(const std::string& name, size_t arity) {
    auto expect_arity = [&](size_t want) {
      if (arity != want)
        fail("predicate '" + name + "' expects " + std::to_string(want) +
             " argument(s)");
    };
    if (name == "True") {
      expect_arity(1);
      return Predicate::top();
    }
    if (name == "False") {
      expect_arity(1);
      return Predicate::bot();
    }
    if (name == "Eq") {
      expect_arity(2);
      return Predicate::eq();
    }
    if (name.compare(0, 4, "not_") == 0) {
      std::string base = name.substr(4);
      if (base == "False") {
        expect_arity(1);
        return Predicate::complement_of(Predicate::bot());
      }
      if (base.empty() || base == "True" || base == "Eq" ||
          base.compare(0, 4, "not_") == 0)
        fail("invalid complement predicate '" + name + "'");
      return arity == 2 ? Predicate::complement_of(Predicate::role(base))
                        : Predicate::complement_of(Predicate::concept_name(base));
    }
    if (arity == 2) return Predicate::role(name);
    if (arity == 1) return Predicate::concept_name(name);
    fail("predicate '" + name + "' has unsupported arity " +
         std::to_string(arity));
  }

  Atom parse_atom() {
    skip_ws();
    std::string name = consume_word();
    skip_ws();
    if (peek() != '(') fail("expected '(' after predicate '" + name + "'");
    ++pos_;
    std::vector<Term> args;
    args.push_back(parse_term());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      args.push_back(parse_term());
      skip_ws();
    }
    if (peek() != ')') fail("expected ')' after atom arguments");
    ++pos_;
    Atom a;
    a.pred = predicate_for(name, args.size());
    a.args = std::move(args);
    return a;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_;
};

RuleOrigin origin_from_comment(const std::string& comment) {
  for (RuleOrigin o :
       {RuleOrigin::Pi, RuleOrigin::Xi, RuleOrigin::Kept, RuleOrigin::Case1,
        RuleOrigin::Case2, RuleOrigin::Case3, RuleOrigin::Case4,
        RuleOrigin::Case5, RuleOrigin::Case6, RuleOrigin::SigmaTop,
        RuleOrigin::SigmaBot, RuleOrigin::SigmaEq, RuleOrigin::Input})
    if (comment == to_string(o)) return o;
  return RuleOrigin::Input;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Program parse_program(const std::string& text, const SigmaOptions& opts) {
  std::vector<Rule> core;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string comment;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      comment = trim(line.substr(hash + 1));
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    Rule r = RuleParser(line, lineNo).parse();
    r.origin = origin_from_comment(comment);
    core.push_back(std::move(r));
  }
  return make_program(std::move(core), opts);
}

namespace {

std::string canonical_rule_text(const Rule& r) {
  Rule c;
  c.body = sorted_atoms(r.body);
  c.head = sorted_atoms(r.head);
  return c.text();
}

}  // namespace

std::string serialize_program(const Program& p) {
  std::string out =
      "# core rules; Sigma components below are regenerated on load\n";
  for (const auto& r : p.core)
    out += canonical_rule_text(r) + " # " + to_string(r.origin) + "\n";
  for (const auto& [name, rules] :
       {std::pair<const char*, const std::vector<Rule>*>{"sigma top",
                                                         &p.sigmaTop},
        {"sigma bot", &p.sigmaBot},
        {"sigma eq", &p.sigmaEq}}) {
    out += std::string("# ") + name + ":\n";
    for (const auto& r : *rules) out += "#   " + canonical_rule_text(r) + "\n";
  }
  return out;
}

}  // namespace hornify
