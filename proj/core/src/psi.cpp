#include "hornify/psi.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

#include "hornify/transpose.hpp"
#include "hornify/xi.hpp"

namespace hornify {

const char* to_string(RuleType t) {
  switch (t) {
    case RuleType::T1: return "T1";
    case RuleType::T2: return "T2";
    case RuleType::T3: return "T3";
    case RuleType::T4: return "T4";
    case RuleType::T5: return "T5";
    case RuleType::T6: return "T6";
    case RuleType::T7: return "T7";
    case RuleType::T8: return "T8";
    case RuleType::T9: return "T9";
    case RuleType::T10: return "T10";
    case RuleType::T11: return "T11";
    case RuleType::T12: return "T12";
    case RuleType::T13: return "T13";
    case RuleType::T14: return "T14";
    case RuleType::T15: return "T15";
    case RuleType::T16: return "T16";
    case RuleType::T17: return "T17";
    case RuleType::T18: return "T18";
    case RuleType::T19: return "T19";
    case RuleType::T20: return "T20";
    case RuleType::Unclassifiable: return "unclassifiable";
  }
  return "unclassifiable";
}

namespace {

// ---------------------------------------------------------------------------
// Fresh-name bookkeeping and axiom emission
// ---------------------------------------------------------------------------

class Emitter {
 public:
  explicit Emitter(const Signature& sig) {
    for (const auto& p : sig.predicates) {
      if (p.kind == Predicate::Kind::Concept) usedConcepts_.insert(p.name);
      if (p.kind == Predicate::Kind::RoleAtom) usedRoles_.insert(p.name);
    }
  }

  ConceptName concept_for(const Predicate& p) {
    switch (p.kind) {
      case Predicate::Kind::Top: return ConceptName::top();
      case Predicate::Kind::Bot: return ConceptName::bot();
      case Predicate::Kind::Concept: return ConceptName::named(p.name);
      case Predicate::Kind::Complement: {
        auto it = complement_.find(p.text());
        if (it != complement_.end()) return ConceptName::named(it->second);
        std::string name = unique(p.text(), usedConcepts_);
        complement_.emplace(p.text(), name);
        names.complementConcepts.emplace_back(name, p.complement_base().text());
        return ConceptName::named(name);
      }
      default:
        throw std::logic_error("no concept rendering for " + p.text());
    }
  }

  std::vector<ConceptName> concepts(const std::set<Predicate>& preds) {
    std::vector<ConceptName> out;
    for (const auto& p : preds) out.push_back(concept_for(p));
    return out;
  }

  // Single filler/lhs name from a group of at most one predicate; Top if
  // the group is empty.
  ConceptName single_concept(const std::set<Predicate>& preds) {
    return preds.empty() ? ConceptName::top() : concept_for(*preds.begin());
  }

  Role successor_role(const FunctionSymbol& f) {
    auto it = successor_.find(f.text());
    if (it != successor_.end()) return Role{it->second};
    std::string base;
    if (f.kind == FunctionSymbol::Kind::Indexed) {
      base = f.role.base + (f.role.inverted ? "_inv" : "") + "__" +
             f.filler.text();
    } else {
      base = "sk" + std::to_string(f.axiomIndex) + "__succ";
    }
    std::string name = unique(base, usedRoles_);
    successor_.emplace(f.text(), name);
    names.successorRoles.emplace_back(name, f.text());
    return Role{name};
  }

  // Alias role equivalent to the inverse of f's successor role; the
  // equivalence is declared as two inclusions on first use.
  Role tilde_role(const FunctionSymbol& f) {
    const Role succ = successor_role(f);
    auto it = tilde_.find(succ.base);
    if (it != tilde_.end()) return Role{it->second};
    std::string name = unique("tilde_" + succ.base, usedRoles_);
    tilde_.emplace(succ.base, name);
    names.inverseAliases.emplace_back(name, succ.base);
    axiom(make_t5(name, Role{succ.base, true}));
    axiom(make_t5(succ.base, Role{name, true}));
    return Role{name};
  }

  // Named role containing every member; memberships are declared on first
  // use. A single distinct member is returned unchanged.
  Role union_role(std::vector<Role> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() == 1) return members[0];
    std::vector<std::string> keys;
    for (const auto& m : members)
      keys.push_back(m.base + (m.inverted ? "_inv" : ""));
    std::sort(keys.begin(), keys.end());
    auto it = unions_.find(keys);
    if (it != unions_.end()) return Role{it->second};
    std::string base = "union";
    for (const auto& k : keys) base += "_" + k;
    std::string name = unique(base, usedRoles_);
    unions_.emplace(keys, name);
    std::vector<std::string> texts;
    for (const auto& m : members) texts.push_back(m.text());
    names.unionRoles.emplace_back(name, texts);
    for (const auto& m : members) {
      // An inverted member S⁻ ⊑ U is declared as S ⊑ U⁻ (named sub-role).
      if (m.inverted)
        axiom(make_t5(m.base, Role{name, true}));
      else
        axiom(make_t5(m.base, Role{name}));
    }
    return Role{name};
  }

  void axiom(Axiom a) {
    std::string key = serialize_axiom(a);
    if (seen_.insert(std::move(key)).second) axioms.push_back(std::move(a));
  }

  std::vector<Axiom> axioms;
  FreshNames names;

 private:
  static std::string unique(const std::string& base,
                            std::set<std::string>& used) {
    std::string name = base;
    for (int i = 1; used.count(name); ++i)
      name = base + "_" + std::to_string(i);
    used.insert(name);
    return name;
  }

  std::set<std::string> usedConcepts_, usedRoles_;
  std::map<std::string, std::string> successor_;  // function text -> role
  std::map<std::string, std::string> tilde_;      // successor role -> alias
  std::map<std::vector<std::string>, std::string> unions_;
  std::map<std::string, std::string> complement_;  // predicate text -> name
  std::set<std::string> seen_;
};

// ---------------------------------------------------------------------------
// Body analysis
// ---------------------------------------------------------------------------

// Term shapes a DL axiom can express: a variable, f(x), or g(f(x)).
int term_shape(const Term& t) {
  if (t.is_var()) return 0;
  if (t.is_app() && t.arg().is_var()) return 1;
  if (t.is_app() && t.arg().is_app() && t.arg().arg().is_var()) return 2;
  return -1;
}

struct Analysis {
  std::map<std::string, std::set<Predicate>> unary;  // term text -> preds
  std::map<std::string, Term> terms;                 // every term seen
  std::vector<Atom> binaries;
  bool hasApp = false;
  bool bad = false;
};

const std::set<Predicate>& names_at(const Analysis& a, const std::string& key) {
  static const std::set<Predicate> kEmpty;
  auto it = a.unary.find(key);
  return it == a.unary.end() ? kEmpty : it->second;
}

void register_term(Analysis& a, const Term& t) {
  if (term_shape(t) < 0) a.bad = true;
  if (t.is_app()) a.hasApp = true;
  a.terms.emplace(t.text(), t);
}

Analysis analyze(const std::vector<Atom>& atoms) {
  Analysis a;
  for (const auto& atom : atoms) {
    for (const auto& t : atom.args) register_term(a, t);
    if (atom.pred.kind == Predicate::Kind::Top) continue;  // trivially true
    if (atom.pred.arity() == 2)
      a.binaries.push_back(atom);
    else
      a.unary[atom.args[0].text()].insert(atom.pred);
  }
  return a;
}

// True iff every nonempty unary group is over one of the allowed terms.
bool groups_within(const Analysis& a, const std::set<std::string>& allowed) {
  for (const auto& [key, preds] : a.unary)
    if (!preds.empty() && !allowed.count(key)) return false;
  return true;
}

bool terms_within(const Analysis& a, const std::set<std::string>& allowed) {
  for (const auto& [key, term] : a.terms) {
    (void)term;
    if (!allowed.count(key)) return false;
  }
  return true;
}

bool is_not_false(const Predicate& p) {
  return p.kind == Predicate::Kind::Complement &&
         p.ofKind == Predicate::Kind::Bot;
}

// ---------------------------------------------------------------------------
// Rule translation: one function per head family. `e` may be null, in which
// case the functions only classify.
// ---------------------------------------------------------------------------

Lhs lhs_of(Emitter* e, const std::set<Predicate>& names) {
  Lhs lhs;
  lhs.names = names.empty() ? std::vector<ConceptName>{ConceptName::top()}
                            : e->concepts(names);
  std::sort(lhs.names.begin(), lhs.names.end(), concept_text_less);
  return lhs;
}

Lhs lhs_with_exists(Emitter* e, const std::set<Predicate>& names, Role role,
                    const std::set<Predicate>& filler) {
  Lhs lhs;
  lhs.names = e->concepts(names);
  std::sort(lhs.names.begin(), lhs.names.end(), concept_text_less);
  ExistsConjunct ex;
  ex.role = std::move(role);
  ex.filler = filler.empty() ? std::vector<ConceptName>{ConceptName::top()}
                             : e->concepts(filler);
  std::sort(ex.filler.begin(), ex.filler.end(), concept_text_less);
  lhs.exists.push_back(std::move(ex));
  return lhs;
}

// Head is one unary atom (or several for a pure disjunction); the rule is
// function-free and all atoms share one variable.
RuleType unary_rollup(const Analysis& a, const std::vector<Atom>& head,
                      Emitter* e) {
  const std::string x = head[0].args[0].text();
  for (const auto& h : head) {
    if (h.pred.arity() != 1 || term_shape(h.args[0]) != 0 ||
        h.args[0].text() != x)
      return RuleType::Unclassifiable;
    if (h.pred.kind == Predicate::Kind::Top) return RuleType::Unclassifiable;
  }
  if (!groups_within(a, {x}) || !terms_within(a, {x}))
    return RuleType::Unclassifiable;
  if (e) {
    std::vector<ConceptName> rhs;
    for (const auto& h : head) rhs.push_back(e->concept_for(h.pred));
    e->axiom(make_t1(lhs_of(e, names_at(a, x)).names, std::move(rhs)));
  }
  return RuleType::T1;
}

// Function-free rule with one binary atom and a unary head.
RuleType binary_positive(const Analysis& a, const Atom& head, Emitter* e) {
  if (a.binaries.size() != 1 || a.hasApp) return RuleType::Unclassifiable;
  const Atom& b = a.binaries[0];
  if (term_shape(b.args[0]) != 0 || term_shape(b.args[1]) != 0)
    return RuleType::Unclassifiable;
  const std::string u = b.args[0].text();
  const std::string v = b.args[1].text();
  if (u == v) return RuleType::Unclassifiable;
  if (term_shape(head.args[0]) != 0) return RuleType::Unclassifiable;
  const std::string h = head.args[0].text();
  if (h != u && h != v) return RuleType::Unclassifiable;
  if (!groups_within(a, {u, v}) || !terms_within(a, {u, v}))
    return RuleType::Unclassifiable;
  const std::string o = h == u ? v : u;
  const auto& headNames = names_at(a, h);
  const auto& otherNames = names_at(a, o);
  // Role as seen from the head variable / from the other variable.
  const Role fromHead = h == u ? Role{b.pred.name} : Role{b.pred.name, true};
  const Role fromOther = h == u ? Role{b.pred.name, true} : Role{b.pred.name};

  const bool universalOk = headNames.empty();
  const bool existentialOk = otherNames.size() <= 2;

  auto emit_universal = [&]() {
    if (e) {
      GCI g;
      g.lhs = lhs_of(e, otherNames);
      g.rhs = Rhs{Rhs::Kind::All, {}, fromOther, e->concept_for(head.pred)};
      e->axiom(Axiom{g});
    }
    return otherNames.empty() && !fromOther.inverted ? RuleType::T20
                                                     : RuleType::T4;
  };
  auto emit_existential = [&]() {
    if (e) {
      GCI g;
      g.lhs = lhs_with_exists(e, headNames, fromHead, otherNames);
      g.rhs = Rhs::single(e->concept_for(head.pred));
      e->axiom(Axiom{g});
    }
    return headNames.empty() && otherNames.empty() && !fromHead.inverted
               ? RuleType::T19
               : RuleType::T2;
  };

  // Prefer the form that avoids inverse roles: a head over the edge target
  // reads naturally as a universal along the plain role, a head over the
  // source as an existential; fall back to the other form when needed.
  if (h == v) {
    if (universalOk) return emit_universal();
    if (existentialOk) return emit_existential();
    return RuleType::Unclassifiable;
  }
  if (existentialOk) return emit_existential();
  if (universalOk) return emit_universal();
  return RuleType::Unclassifiable;
}

// Identifies the single f(x) pattern: exactly one application term, of
// shape f(x), and no other variables than x.
bool single_function_pattern(const Analysis& a, Term* fx, std::string* x) {
  std::vector<Term> apps;
  for (const auto& [key, t] : a.terms) {
    (void)key;
    if (t.is_app()) apps.push_back(t);
  }
  if (apps.size() != 1 || term_shape(apps[0]) != 1) return false;
  *fx = apps[0];
  *x = apps[0].arg().text();
  return terms_within(a, {*x, fx->text()});
}

// Functional rule with a unary head (no binary atoms).
RuleType functional_positive(const Analysis& a, const Atom& head, Emitter* e) {
  if (!a.binaries.empty()) return RuleType::Unclassifiable;
  Term fx;
  std::string x;
  {
    Analysis withHead = a;
    for (const auto& t : head.args) register_term(withHead, t);
    if (withHead.bad || !single_function_pattern(withHead, &fx, &x))
      return RuleType::Unclassifiable;
  }
  const auto& xNames = names_at(a, x);
  const auto& fNames = names_at(a, fx.text());
  const std::string h = head.args[0].text();
  if (h == fx.text()) {
    // Head over the successor. A Top head asserts that the successor
    // exists, and the range-closure shape not_False(x) → not_False(f(x))
    // likewise stays existential; everything else reads as a universal
    // along the successor role.
    const bool activation = head.pred.kind == Predicate::Kind::Top;
    if (activation && !fNames.empty()) return RuleType::Unclassifiable;
    const bool rangeClosure = fNames.empty() && xNames.size() == 1 &&
                              is_not_false(*xNames.begin()) &&
                              is_not_false(head.pred);
    if (e) {
      const Role succ = e->successor_role(fx.fn());
      GCI g;
      if (activation || rangeClosure) {
        g.lhs = lhs_of(e, xNames);
        g.rhs = Rhs{Rhs::Kind::Some, {}, succ, e->concept_for(head.pred)};
      } else {
        g.lhs = fNames.empty() ? lhs_of(e, xNames)
                               : lhs_with_exists(e, xNames, succ, fNames);
        g.rhs = Rhs{Rhs::Kind::All, {}, succ, e->concept_for(head.pred)};
      }
      e->axiom(Axiom{g});
    }
    if (activation) return RuleType::T3;
    if (rangeClosure) return RuleType::T9;
    return fNames.empty() ? RuleType::T10 : RuleType::T12;
  }
  if (h != x) return RuleType::Unclassifiable;
  if (fNames.size() > 2) return RuleType::Unclassifiable;
  if (e) {
    GCI g;
    g.lhs = lhs_with_exists(e, xNames, e->successor_role(fx.fn()), fNames);
    g.rhs = Rhs::single(e->concept_for(head.pred));
    e->axiom(Axiom{g});
  }
  return fNames.size() == 2 ? RuleType::T14 : RuleType::T11;
}

// Falsity constraint: empty head or a Bot head. The not_False guard over the
// head variable, when present and unused elsewhere, is consumed.
RuleType falsity_family(const Rule& r, Emitter* e) {
  Analysis a = analyze(r.body);
  if (a.bad) return RuleType::Unclassifiable;

  bool guarded = false;
  if (!r.head.empty()) {
    if (term_shape(r.head[0].args[0]) != 0) return RuleType::Unclassifiable;
    const std::string z = r.head[0].args[0].text();
    const auto& zNames = names_at(a, z);
    bool zElsewhere = false;
    for (const auto& b : a.binaries)
      for (const auto& t : b.args)
        if (t.text() == z) zElsewhere = true;
    for (const auto& [key, t] : a.terms)
      if (t.is_app() && t.arg().is_var() && t.arg().text() == z)
        zElsewhere = true;
    const bool guardOnly = zNames.size() == 1 && is_not_false(*zNames.begin());
    const bool somethingElse =
        !a.binaries.empty() || a.hasApp ||
        std::any_of(a.unary.begin(), a.unary.end(), [&](const auto& g) {
          return g.first != z && !g.second.empty();
        });
    if (guardOnly && !zElsewhere && somethingElse) {
      guarded = true;
      a.unary.erase(z);
      a.terms.erase(z);
    }
  }

  if (!a.binaries.empty()) {
    if (a.hasApp || a.binaries.size() != 1) return RuleType::Unclassifiable;
    const Atom& b = a.binaries[0];
    if (term_shape(b.args[0]) != 0 || term_shape(b.args[1]) != 0)
      return RuleType::Unclassifiable;
    const std::string u = b.args[0].text();
    const std::string v = b.args[1].text();
    if (u == v) return RuleType::Unclassifiable;
    std::set<std::string> allowed{u, v};
    if (!guarded && !r.head.empty()) allowed.insert(r.head[0].args[0].text());
    if (!groups_within(a, {u, v}) || !terms_within(a, allowed))
      return RuleType::Unclassifiable;
    // Source side: prefer u; flip if the filler side carries too many names.
    std::string src = u, tgt = v;
    Role role{b.pred.name};
    if (names_at(a, v).size() > 2) {
      src = v;
      tgt = u;
      role = Role{b.pred.name, true};
    }
    if (names_at(a, tgt).size() > 2) return RuleType::Unclassifiable;
    if (e) {
      GCI g;
      g.lhs = lhs_with_exists(e, names_at(a, src), role, names_at(a, tgt));
      g.rhs = Rhs::single(ConceptName::bot());
      e->axiom(Axiom{g});
    }
    return guarded ? RuleType::T7 : RuleType::T2;
  }

  if (a.hasApp) {
    Term fx;
    std::string x;
    if (!single_function_pattern(a, &fx, &x)) return RuleType::Unclassifiable;
    if (!r.head.empty() && !guarded) {
      // Unguarded Bot head must sit on one of the pattern's terms.
      const std::string z = r.head[0].args[0].text();
      if (z != x) return RuleType::Unclassifiable;
    }
    const auto& fNames = names_at(a, fx.text());
    if (fNames.size() > 2) return RuleType::Unclassifiable;
    if (e) {
      GCI g;
      g.lhs = lhs_with_exists(e, names_at(a, x), e->successor_role(fx.fn()),
                              fNames);
      g.rhs = Rhs::single(ConceptName::bot());
      e->axiom(Axiom{g});
    }
    return fNames.size() == 2 ? RuleType::T13 : RuleType::T8;
  }

  // All-unary constraint over one variable.
  std::string w;
  int nonEmpty = 0;
  for (const auto& [key, preds] : a.unary)
    if (!preds.empty()) {
      ++nonEmpty;
      w = key;
    }
  if (nonEmpty != 1) return RuleType::Unclassifiable;
  if (!r.head.empty() && !guarded && r.head[0].args[0].text() != w)
    return RuleType::Unclassifiable;
  if (e)
    e->axiom(make_t1(lhs_of(e, names_at(a, w)).names, {ConceptName::bot()}));
  return RuleType::T1;
}

// Binary head: plain role inclusion.
RuleType subrole_family(const Analysis& a, const Atom& head, Emitter* e) {
  if (a.hasApp || a.binaries.size() != 1) return RuleType::Unclassifiable;
  for (const auto& [key, preds] : a.unary)
    if (!preds.empty()) {
      (void)key;
      return RuleType::Unclassifiable;
    }
  const Atom& b = a.binaries[0];
  if (term_shape(b.args[0]) != 0 || term_shape(b.args[1]) != 0 ||
      term_shape(head.args[0]) != 0 || term_shape(head.args[1]) != 0)
    return RuleType::Unclassifiable;
  if (b.args[0] == b.args[1]) return RuleType::Unclassifiable;
  Role sup;
  if (head.args[0] == b.args[0] && head.args[1] == b.args[1])
    sup = Role{head.pred.name};
  else if (head.args[0] == b.args[1] && head.args[1] == b.args[0])
    sup = Role{head.pred.name, true};
  else
    return RuleType::Unclassifiable;
  if (e) e->axiom(make_t5(b.pred.name, sup));
  return RuleType::T5;
}

// Equality head: functionality shapes over original and successor roles.
RuleType equality_family(const Analysis& a, const Atom& head, Emitter* e) {
  const Term& s = head.args[0];
  const Term& t = head.args[1];
  const int ss = term_shape(s);
  const int ts = term_shape(t);
  if (ss < 0 || ts < 0) return RuleType::Unclassifiable;

  // Shared check for the concept at the functionality center (at most one
  // name) and the matching filler groups.
  auto center_ok = [&](const std::string& key) {
    return names_at(a, key).size() <= 1;
  };
  auto fillers_match = [&](const std::string& k1, const std::string& k2) {
    const auto& n1 = names_at(a, k1);
    return n1 == names_at(a, k2) && n1.size() <= 1;
  };

  if (ss == 0 && ts == 0 && !a.hasApp) {
    // Two successors along an ordinary role.
    if (a.binaries.size() != 2) return RuleType::Unclassifiable;
    const Atom& b1 = a.binaries[0];
    const Atom& b2 = a.binaries[1];
    if (b1.pred != b2.pred) return RuleType::Unclassifiable;
    std::string z, e1, e2;
    Role role;
    if (b1.args[0] == b2.args[0]) {
      z = b1.args[0].text();
      e1 = b1.args[1].text();
      e2 = b2.args[1].text();
      role = Role{b1.pred.name};
    } else if (b1.args[1] == b2.args[1]) {
      z = b1.args[1].text();
      e1 = b1.args[0].text();
      e2 = b2.args[0].text();
      role = Role{b1.pred.name, true};
    } else {
      return RuleType::Unclassifiable;
    }
    if (std::set<std::string>{e1, e2} !=
        std::set<std::string>{s.text(), t.text()})
      return RuleType::Unclassifiable;
    if (!center_ok(z) || !fillers_match(e1, e2)) return RuleType::Unclassifiable;
    if (!groups_within(a, {z, e1, e2})) return RuleType::Unclassifiable;
    if (e)
      e->axiom(make_t6(e->single_concept(names_at(a, z)), role,
                       e->single_concept(names_at(a, e1))));
    return RuleType::T6;
  }

  if (ss == 0 && ts == 0 && a.hasApp) {
    // Inverse successor and an ordinary successor of a functional term.
    if (a.binaries.size() != 1) return RuleType::Unclassifiable;
    const Atom& b = a.binaries[0];
    const bool firstApp = b.args[0].is_app();
    const Term& ft = firstApp ? b.args[0] : b.args[1];
    const Term& yv = firstApp ? b.args[1] : b.args[0];
    if (term_shape(ft) != 1 || term_shape(yv) != 0)
      return RuleType::Unclassifiable;
    const std::string x = ft.arg().text();
    const std::string y = yv.text();
    if (std::set<std::string>{x, y} !=
        std::set<std::string>{s.text(), t.text()})
      return RuleType::Unclassifiable;
    if (!center_ok(ft.text()) || !fillers_match(x, y))
      return RuleType::Unclassifiable;
    if (!groups_within(a, {ft.text(), x, y}) ||
        !terms_within(a, {ft.text(), x, y}))
      return RuleType::Unclassifiable;
    const Role role =
        firstApp ? Role{b.pred.name} : Role{b.pred.name, true};
    if (e) {
      const Role alias = e->tilde_role(ft.fn());
      const Role u = e->union_role({alias, role});
      e->axiom(make_t6(e->single_concept(names_at(a, ft.text())), u,
                       e->single_concept(names_at(a, x))));
    }
    return RuleType::T16;
  }

  if ((ss == 1 && ts == 0) || (ss == 0 && ts == 1)) {
    // Successor via a function and via an ordinary role.
    if (a.binaries.size() != 1) return RuleType::Unclassifiable;
    const Term& ft = ss == 1 ? s : t;
    const Term& xv = ss == 1 ? t : s;
    const std::string z = ft.arg().text();
    const std::string x = xv.text();
    if (z == x) return RuleType::Unclassifiable;
    const Atom& b = a.binaries[0];
    Role role;
    if (term_shape(b.args[0]) != 0 || term_shape(b.args[1]) != 0)
      return RuleType::Unclassifiable;
    if (b.args[0].text() == z && b.args[1].text() == x)
      role = Role{b.pred.name};
    else if (b.args[0].text() == x && b.args[1].text() == z)
      role = Role{b.pred.name, true};
    else
      return RuleType::Unclassifiable;
    if (!center_ok(z) || !fillers_match(ft.text(), x))
      return RuleType::Unclassifiable;
    if (!groups_within(a, {z, ft.text(), x}) ||
        !terms_within(a, {z, ft.text(), x}))
      return RuleType::Unclassifiable;
    if (e) {
      const Role u = e->union_role({e->successor_role(ft.fn()), role});
      e->axiom(make_t6(e->single_concept(names_at(a, z)), u,
                       e->single_concept(names_at(a, ft.text()))));
    }
    return RuleType::T15;
  }

  if (ss == 1 && ts == 1) {
    // Two functional successors of the same element.
    if (!a.binaries.empty()) return RuleType::Unclassifiable;
    if (s.arg().text() != t.arg().text()) return RuleType::Unclassifiable;
    const std::string z = s.arg().text();
    if (!center_ok(z) || !fillers_match(s.text(), t.text()))
      return RuleType::Unclassifiable;
    if (!groups_within(a, {z, s.text(), t.text()}) ||
        !terms_within(a, {z, s.text(), t.text()}))
      return RuleType::Unclassifiable;
    if (e) {
      const Role u = e->union_role(
          {e->successor_role(s.fn()), e->successor_role(t.fn())});
      e->axiom(make_t6(e->single_concept(names_at(a, z)), u,
                       e->single_concept(names_at(a, s.text()))));
    }
    return RuleType::T17;
  }

  if ((ss == 2 && ts == 0) || (ss == 0 && ts == 2)) {
    // Inverse successor and a nested functional successor.
    if (!a.binaries.empty()) return RuleType::Unclassifiable;
    const Term& nested = ss == 2 ? s : t;   // f2(f1(x))
    const Term& xv = ss == 2 ? t : s;       // x
    const Term& mid = nested.arg();          // f1(x)
    if (mid.arg().text() != xv.text()) return RuleType::Unclassifiable;
    const std::string x = xv.text();
    if (!center_ok(mid.text()) || !fillers_match(x, nested.text()))
      return RuleType::Unclassifiable;
    if (!groups_within(a, {mid.text(), x, nested.text()}) ||
        !terms_within(a, {mid.text(), x, nested.text()}))
      return RuleType::Unclassifiable;
    if (e) {
      const Role alias = e->tilde_role(mid.fn());
      const Role u = e->union_role({alias, e->successor_role(nested.fn())});
      e->axiom(make_t6(e->single_concept(names_at(a, mid.text())), u,
                       e->single_concept(names_at(a, x))));
    }
    return RuleType::T18;
  }

  return RuleType::Unclassifiable;
}

RuleType translate_rule(const Rule& r, Emitter* e) {
  // Screen out shapes with no DL rendering at all.
  for (const auto* side : {&r.body, &r.head})
    for (const auto& atom : *side) {
      if (atom.pred.kind == Predicate::Kind::Complement &&
          atom.pred.ofKind == Predicate::Kind::RoleAtom)
        return RuleType::Unclassifiable;
      for (const auto& t : atom.args)
        if (term_shape(t) < 0) return RuleType::Unclassifiable;
    }
  for (const auto& atom : r.body)
    if (atom.pred.kind == Predicate::Kind::Eq) return RuleType::Unclassifiable;

  if (r.head.empty() ||
      (r.head.size() == 1 && r.head[0].pred.kind == Predicate::Kind::Bot))
    return falsity_family(r, e);

  Analysis a = analyze(r.body);
  if (a.bad) return RuleType::Unclassifiable;

  if (r.head.size() > 1) {
    for (const auto& h : r.head)
      if (h.pred.arity() != 1 || h.pred.kind == Predicate::Kind::Top)
        return RuleType::Unclassifiable;
    if (a.hasApp || !a.binaries.empty()) return RuleType::Unclassifiable;
    return unary_rollup(a, r.head, e);
  }

  const Atom& h = r.head[0];
  if (h.pred.kind == Predicate::Kind::Eq) return equality_family(a, h, e);
  if (h.pred.arity() == 2) return subrole_family(a, h, e);
  if (h.pred.kind == Predicate::Kind::Top && term_shape(h.args[0]) == 0)
    return RuleType::Unclassifiable;  // no rhs rendering for a bare Top head

  const bool headApp = h.args[0].is_app();
  if (a.hasApp || headApp) return functional_positive(a, h, e);
  if (!a.binaries.empty()) return binary_positive(a, h, e);
  return unary_rollup(a, r.head, e);
}

}  // namespace

RuleType classify_rule(const Rule& r) { return translate_rule(r, nullptr); }

Backtranslation psi_backtranslate(const Program& p) {
  Emitter e(p.signature);
  for (const auto& r : p.core) {
    const RuleType t = translate_rule(r, &e);
    if (t == RuleType::Unclassifiable)
      throw std::invalid_argument("psi_backtranslate: no DL shape for rule: " +
                                  r.text());
  }
  Backtranslation out;
  out.ontology.axioms = std::move(e.axioms);
  out.names = std::move(e.names);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

std::string role_token(const Role& r) {
  return r.inverted ? r.base + "_inv" : r.base;
}

class FreshConcepts {
 public:
  explicit FreshConcepts(const Ontology& o) {
    const auto names = o.concept_names();
    used_.insert(names.begin(), names.end());
  }

  ConceptName get(const std::string& key, const std::string& base) {
    auto it = byKey_.find(key);
    if (it != byKey_.end()) return ConceptName::named(it->second);
    std::string name = base;
    for (int i = 1; used_.count(name); ++i)
      name = base + "_" + std::to_string(i);
    used_.insert(name);
    byKey_.emplace(key, name);
    return ConceptName::named(name);
  }

 private:
  std::set<std::string> used_;
  std::map<std::string, std::string> byKey_;
};

}  // namespace

Ontology normalize_ontology(const Ontology& o) {
  FreshConcepts fresh(o);
  std::vector<Axiom> out;
  std::set<std::string> seen;
  auto add = [&](Axiom a) {
    std::string key = serialize_axiom(a);
    if (seen.insert(std::move(key)).second) out.push_back(std::move(a));
  };

  for (const auto& axiom : o.axioms) {
    if (axiom_type(axiom) != AxiomType::General) {
      add(axiom);
      continue;
    }
    const GCI& g = std::get<GCI>(axiom);
    std::vector<ConceptName> plain = g.lhs.names;
    for (const auto& ex : g.lhs.exists) {
      ConceptName filler;
      if (ex.filler.size() == 2) {
        // And-filler: name the conjunction first.
        const std::string f1 = ex.filler[0].text();
        const std::string f2 = ex.filler[1].text();
        filler = fresh.get("and|" + f1 + "|" + f2, "and_" + f1 + "_" + f2);
        add(make_t1({ex.filler[0], ex.filler[1]}, {filler}));
      } else {
        filler = ex.filler.empty() ? ConceptName::top() : ex.filler[0];
      }
      const ConceptName x =
          fresh.get("some|" + ex.role.text() + "|" + filler.text(),
                    "some_" + role_token(ex.role) + "_" + filler.text());
      add(make_t2(ex.role, filler, x));
      plain.push_back(x);
    }
    if (g.rhs.kind == Rhs::Kind::Union) {
      add(make_t1(plain, g.rhs.names));
      continue;
    }
    ConceptName lhs;
    if (plain.empty()) {
      lhs = ConceptName::top();
    } else if (plain.size() == 1 && !plain[0].is_bot()) {
      lhs = plain[0];
    } else {
      std::sort(plain.begin(), plain.end(), concept_text_less);
      std::string key = "conj";
      std::string base = "conj";
      for (const auto& c : plain) {
        key += "|" + c.text();
        base += "_" + c.text();
      }
      lhs = fresh.get(key, base);
      add(make_t1(plain, {lhs}));
    }
    switch (g.rhs.kind) {
      case Rhs::Kind::Some:
        add(make_t3(lhs, g.rhs.role, g.rhs.filler));
        break;
      case Rhs::Kind::All:
        add(make_t4(lhs, g.rhs.role, g.rhs.filler));
        break;
      case Rhs::Kind::AtMost1:
        add(make_t6(lhs, g.rhs.role, g.rhs.filler));
        break;
      case Rhs::Kind::Union:
        break;  // handled above
    }
  }
  return Ontology{std::move(out)};
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

RewriteOutcome rewrite_ontology(const Ontology& o, bool renormalize) {
  const Ontology input = is_normal_form(o) ? o : normalize_ontology(o);
  RewriteOutcome out;
  out.xi = xi_translate(input);
  auto found = find_marking(out.xi);
  if (!found) return out;
  out.markable = true;
  out.marking = minimize_marking(out.xi, *found);
  out.transposed = transpose_program(out.xi, out.marking);
  Backtranslation bt = psi_backtranslate(out.transposed);
  out.rewritten =
      renormalize ? normalize_ontology(bt.ontology) : std::move(bt.ontology);
  out.names = std::move(bt.names);
  return out;
}

}  // namespace hornify
