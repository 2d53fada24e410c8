#pragma once

// First-order rule programs: terms over unary function symbols, atoms over
// concept/role predicates plus the specials True/False/Eq and complement
// predicates, rules with conjunctive bodies and disjunctive heads, and the
// program structure P = core ∪ Σ-components (top/bot/eq). Includes the direct
// translation of ontology axioms to rules and the .rules text format.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hornify/ontology.hpp"

namespace hornify {

// ---------------------------------------------------------------------------
// Function symbols and terms
// ---------------------------------------------------------------------------

// Unary function symbols: plain Skolem functions (one per axiom needing one)
// and role/filler-indexed successor functions shared across axioms.
struct FunctionSymbol {
  enum class Kind : std::uint8_t { Plain, Indexed };
  Kind kind = Kind::Plain;
  int axiomIndex = 0;   // Plain
  Role role;            // Indexed
  ConceptName filler;   // Indexed: named concept or Top

  static FunctionSymbol plain(int axiomIndex) {
    FunctionSymbol f;
    f.kind = Kind::Plain;
    f.axiomIndex = axiomIndex;
    return f;
  }
  static FunctionSymbol indexed(Role r, ConceptName filler) {
    FunctionSymbol f;
    f.kind = Kind::Indexed;
    f.role = std::move(r);
    f.filler = std::move(filler);
    return f;
  }

  // "sk3", "f_R_D", "f_R~_D" (inverse base role marked with '~').
  std::string text() const;

  auto operator<=>(const FunctionSymbol&) const = default;
};

class Term {
 public:
  enum class Kind : std::uint8_t { Var, Const, App };

  Term() = default;
  static Term var(std::string name);
  static Term constant(std::string name);
  static Term app(FunctionSymbol fn, Term arg);

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_const() const { return kind_ == Kind::Const; }
  bool is_app() const { return kind_ == Kind::App; }
  const std::string& name() const { return name_; }  // Var/Const
  const FunctionSymbol& fn() const { return *fn_; }  // App
  const Term& arg() const { return *arg_; }          // App

  int depth() const;          // Var/Const: 0; App: 1 + depth(arg)
  bool ground() const;        // no variables
  std::string text() const;   // "?x", "a", "f_R_D(?x)"

  bool operator==(const Term& o) const { return compare(o) == 0; }
  bool operator!=(const Term& o) const { return compare(o) != 0; }
  bool operator<(const Term& o) const { return compare(o) < 0; }
  int compare(const Term& o) const;

 private:
  Kind kind_ = Kind::Var;
  std::string name_;
  std::optional<FunctionSymbol> fn_;
  std::shared_ptr<const Term> arg_;
};

// ---------------------------------------------------------------------------
// Predicates and atoms
// ---------------------------------------------------------------------------

struct Predicate {
  enum class Kind : std::uint8_t { Concept, RoleAtom, Top, Bot, Eq, Complement };
  Kind kind = Kind::Concept;
  std::string name;  // Concept/RoleAtom
  // Complement is one level deep: the base predicate it negates.
  Kind ofKind = Kind::Concept;
  std::string ofName;

  static Predicate concept_name(std::string n) {
    Predicate p;
    p.kind = Kind::Concept;
    p.name = std::move(n);
    return p;
  }
  static Predicate role(std::string n) {
    Predicate p;
    p.kind = Kind::RoleAtom;
    p.name = std::move(n);
    return p;
  }
  static Predicate top() { return Predicate{Kind::Top, {}, Kind::Concept, {}}; }
  static Predicate bot() { return Predicate{Kind::Bot, {}, Kind::Concept, {}}; }
  static Predicate eq() { return Predicate{Kind::Eq, {}, Kind::Concept, {}}; }
  // Complement of a concept, role, or Bot (never of Top/Eq or a complement).
  static Predicate complement_of(const Predicate& base);

  bool is_complement() const { return kind == Kind::Complement; }
  bool is_special() const {
    return kind == Kind::Top || kind == Kind::Bot || kind == Kind::Eq;
  }
  // Concept or role predicate from the ontology vocabulary.
  bool is_ordinary() const {
    return kind == Kind::Concept || kind == Kind::RoleAtom;
  }
  Predicate complement_base() const {  // pre: is_complement()
    Predicate p;
    p.kind = ofKind;
    p.name = ofName;
    return p;
  }
  int arity() const;
  std::string text() const;  // "A", "R", "True", "False", "Eq", "not_A"

  auto operator<=>(const Predicate&) const = default;
};

struct Atom {
  Predicate pred;
  std::vector<Term> args;

  Atom() = default;
  Atom(Predicate p, std::vector<Term> a) : pred(std::move(p)), args(std::move(a)) {}

  std::string text() const;
  bool operator==(const Atom& o) const {
    return pred == o.pred && args == o.args;
  }
  bool operator<(const Atom& o) const;
};

// Role atom obeying the inverse convention: for named R the atom R(s,t), for
// R = Inv(S) the atom S(t,s). Binary atoms never carry an inverse marker.
Atom make_role_atom(const Role& r, Term s, Term t);

// Unary atom for a concept name (Top/Bot map to the special predicates).
Atom concept_atom(const ConceptName& c, const Term& t);

// ---------------------------------------------------------------------------
// Rules and programs
// ---------------------------------------------------------------------------

enum class RuleOrigin {
  Input,
  Pi,
  Xi,
  Kept,
  Case1,
  Case2,
  Case3,
  Case4,
  Case5,
  Case6,
  SigmaTop,
  SigmaBot,
  SigmaEq,
};
const char* to_string(RuleOrigin o);

struct Rule {
  std::vector<Atom> body;
  std::vector<Atom> head;  // empty head = derives falsity
  RuleOrigin origin = RuleOrigin::Input;

  bool is_horn() const { return head.size() <= 1; }
  std::string text() const;  // without trailing origin comment
  bool operator==(const Rule& o) const {
    return body == o.body && head == o.head;
  }
};

struct Signature {
  std::vector<Predicate> predicates;      // sorted, unique
  std::vector<FunctionSymbol> functions;  // sorted, unique
  std::vector<std::string> constants;     // sorted, unique

  bool has_predicate(const Predicate& p) const;
};

Signature signature_of(const std::vector<Rule>& rules);

struct SigmaOptions {
  // Congruence over function positions (x≈y → f(x)≈f(y)) in addition to
  // predicate positions.
  bool congruenceOnFunctionPositions = true;
};

struct SigmaComponents {
  std::vector<Rule> top;  // P(..) → True(x_i), → True(a)
  std::vector<Rule> bot;  // False(x) → (falsity)
  std::vector<Rule> eq;   // reflexivity, symmetry, transitivity, congruence
};

SigmaComponents signature_components(const Signature& sig,
                                     const SigmaOptions& opts = {});

struct Program {
  std::vector<Rule> core;
  std::vector<Rule> sigmaTop;
  std::vector<Rule> sigmaBot;
  std::vector<Rule> sigmaEq;
  Signature signature;
  SigmaOptions options;
};

// Builds a program from core rules: derives the signature and Σ-components.
Program make_program(std::vector<Rule> core, const SigmaOptions& opts = {},
                     RuleOrigin defaultOrigin = RuleOrigin::Input);

// All rules in evaluation order: core, then Σ-components.
std::vector<Rule> all_rules(const Program& p);

// True iff every core rule has at most one head atom.
bool is_horn_program(const Program& p);

// Structural checks: rule safety (head variables occur in the body), no Eq or
// Top violations, Bot in bodies only for the clash-rule family (head is a Bot
// atom). Returns human-readable violations; empty means valid.
std::vector<std::string> validate_program(const Program& p);

// ---------------------------------------------------------------------------
// Direct translation of axioms to rules
// ---------------------------------------------------------------------------

// One-step translation: T1 ⋀Ai(x)→⋁Cj(x); T2 ⟨R⟩(x,y)∧A(y)→C(x);
// T3 A(x)→⟨R⟩(x,f(x)), A(x)→B(f(x)) with a per-axiom Skolem function;
// T4 A(x)∧⟨R⟩(x,y)→C(y); T5 S(x,y)→⟨R⟩(x,y);
// T6 A(z)∧⟨R⟩(z,x1)∧⟨R⟩(z,x2)∧B(x1)∧B(x2)→x1≈x2.
// Extended axioms translate by rolling the conjunction into one body.
Program pi_translate(const Ontology& o, const SigmaOptions& opts = {});

// Rules for a single axiom (axiomIndex names the Skolem function).
std::vector<Rule> pi_axiom_rules(const Axiom& axiom, int axiomIndex);

// ---------------------------------------------------------------------------
// Substitutions (shared by the translations and the reasoner)
// ---------------------------------------------------------------------------

using Substitution = std::map<std::string, Term>;

Term apply_substitution(const Term& t, const Substitution& s);
Atom apply_substitution(const Atom& a, const Substitution& s);

// Collects variable names of a term/atom list.
void collect_variables(const Term& t, std::vector<std::string>& out);
std::vector<std::string> rule_variables(const Rule& r);

// ---------------------------------------------------------------------------
// Structural comparison helpers (used by tests and golden checks)
// ---------------------------------------------------------------------------

// Rule equality modulo variable renaming, with bodies/heads as multisets.
bool rules_equivalent(const Rule& a, const Rule& b);
// Set equality (every rule matched exactly once) modulo renaming.
bool rule_sets_equivalent(const std::vector<Rule>& a,
                          const std::vector<Rule>& b);

// ---------------------------------------------------------------------------
// .rules text format
// ---------------------------------------------------------------------------

// One rule per line: "B1, ..., Bn -> H1 | ... | Hm. # origin". Variables are
// written ?x, constants lowercase, functional terms f_R_D(?x) or sk3(?x),
// specials True/False/Eq, complements not_P, empty heads FALSEHOOD. Comment
// lines carry the Σ-components, which are regenerated on load.
Program parse_program(const std::string& text, const SigmaOptions& opts = {});
std::string serialize_program(const Program& p);

}  // namespace hornify
