#pragma once

// Description-logic ontology model: normal-form axioms over concept names and
// (possibly inverted) roles, plus ABox datasets, profiles, and the role
// hierarchy closure. Axioms are kept in a single GCI shape general enough to
// hold both the strict normal form accepted by the translations and the
// extended axioms produced by back-translation (conjunctions containing
// existential restrictions, binary-conjunction fillers).

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hornify {

// Parse failure with 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// ---------------------------------------------------------------------------
// Concepts and roles
// ---------------------------------------------------------------------------

struct ConceptName {
  enum class Kind : std::uint8_t { Named, Top, Bot };
  Kind kind = Kind::Named;
  std::string id;  // empty unless Named

  static ConceptName named(std::string name) {
    return ConceptName{Kind::Named, std::move(name)};
  }
  static ConceptName top() { return ConceptName{Kind::Top, {}}; }
  static ConceptName bot() { return ConceptName{Kind::Bot, {}}; }

  bool is_named() const { return kind == Kind::Named; }
  bool is_top() const { return kind == Kind::Top; }
  bool is_bot() const { return kind == Kind::Bot; }

  // Rendered name; "Top"/"Bot" are reserved words in the file format.
  std::string text() const {
    switch (kind) {
      case Kind::Top: return "Top";
      case Kind::Bot: return "Bot";
      default: return id;
    }
  }

  auto operator<=>(const ConceptName&) const = default;
};

// Orders by rendered name; used wherever file output must be canonical.
inline bool concept_text_less(const ConceptName& a, const ConceptName& b) {
  return a.text() < b.text();
}

struct Role {
  std::string base;
  bool inverted = false;

  Role() = default;
  Role(std::string b, bool inv = false) : base(std::move(b)), inverted(inv) {}

  Role inverse() const { return Role{base, !inverted}; }
  std::string text() const { return inverted ? "Inv(" + base + ")" : base; }

  auto operator<=>(const Role&) const = default;
};

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------
//
// Normal-form axiom types over the unified GCI shape:
//   T1  A1 ⊓ ... ⊓ An ⊑ C1 ⊔ ... ⊔ Cm      (lhs names only, rhs Union)
//   T2  ∃R.A ⊑ C                            (lhs one exists conjunct)
//   T3  A ⊑ ∃R.B                            (rhs Some)
//   T4  A ⊑ ∀R.C                            (rhs All)
//   T5  S ⊑ R                               (SubRole; S named)
//   T6  A ⊑ ≤1 R.B                          (rhs AtMost1)
// Anything else (mixed conjunctions, conjunction fillers, ∀ behind a
// conjunction) classifies as General and can be lowered to the strict types
// with normalize_ontology().

struct ExistsConjunct {
  Role role;
  std::vector<ConceptName> filler;  // 1 or 2 names, canonically sorted

  auto operator<=>(const ExistsConjunct&) const = default;
};

struct Lhs {
  std::vector<ConceptName> names;      // sorted by text, deduped
  std::vector<ExistsConjunct> exists;  // sorted, deduped

  bool empty() const { return names.empty() && exists.empty(); }
  auto operator<=>(const Lhs&) const = default;
};

struct Rhs {
  enum class Kind : std::uint8_t { Union, Some, All, AtMost1 };
  Kind kind = Kind::Union;
  std::vector<ConceptName> names;  // Union: >=1 names, sorted, deduped
  Role role;                       // Some/All/AtMost1
  ConceptName filler;              // Some/All/AtMost1

  static Rhs single(ConceptName c) {
    return Rhs{Kind::Union, {std::move(c)}, {}, {}};
  }
  auto operator<=>(const Rhs&) const = default;
};

struct GCI {
  Lhs lhs;
  Rhs rhs;
  auto operator<=>(const GCI&) const = default;
};

struct SubRole {
  std::string sub;  // named role
  Role sup;
  auto operator<=>(const SubRole&) const = default;
};

using Axiom = std::variant<GCI, SubRole>;

enum class AxiomType { T1, T2, T3, T4, T5, T6, General };

AxiomType axiom_type(const Axiom& axiom);
const char* to_string(AxiomType t);

bool operator==(const Axiom& a, const Axiom& b);

// Convenience constructors for the strict types.
Axiom make_t1(std::vector<ConceptName> lhs, std::vector<ConceptName> rhs);
Axiom make_t2(Role r, ConceptName filler, ConceptName rhs);
Axiom make_t3(ConceptName lhs, Role r, ConceptName filler);
Axiom make_t4(ConceptName lhs, Role r, ConceptName filler);
Axiom make_t5(std::string sub, Role sup);
Axiom make_t6(ConceptName lhs, Role r, ConceptName filler);

// ---------------------------------------------------------------------------
// Ontology & dataset
// ---------------------------------------------------------------------------

struct Ontology {
  std::vector<Axiom> axioms;  // file order preserved

  std::set<std::string> concept_names() const;  // named concepts only
  std::set<std::string> role_names() const;     // base role names
  bool mentions_inverse() const;
};

// True iff no axiom has a disjunctive right-hand side (Union of size >= 2).
bool is_horn_ontology(const Ontology& o);

// True iff every axiom is one of the strict types T1..T6.
bool is_normal_form(const Ontology& o);

struct Fact {
  std::string predicate;
  bool binary = false;
  std::string c1;
  std::string c2;  // empty unless binary

  auto operator<=>(const Fact&) const = default;
};

struct Dataset {
  std::vector<Fact> facts;
  std::set<std::string> constants() const;
};

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

struct DLProfile {
  enum class Base : std::uint8_t { EL, ELU, ALC };
  Base base = Base::EL;
  bool inverse = false;        // I
  bool hierarchy = false;      // H
  bool functionality = false;  // F
  bool horn = false;

  std::string text() const;
  auto operator<=>(const DLProfile&) const = default;
};

DLProfile profile_of(const Ontology& o);

// Language containment: base rank <=, features subset. Ignores the horn flag.
bool profile_within(const DLProfile& inner, const DLProfile& outer);

// ---------------------------------------------------------------------------
// Role hierarchy
// ---------------------------------------------------------------------------

// Reflexive-transitive closure of the T5 axioms, closed under inversion:
// R1 ⊑* R2 implies inv(R1) ⊑* inv(R2).
class SubroleClosure {
 public:
  SubroleClosure() = default;
  explicit SubroleClosure(std::set<std::pair<Role, Role>> pairs)
      : pairs_(std::move(pairs)) {}

  // Reflexivity holds for every role, also ones outside the closure universe.
  bool contains(const Role& sub, const Role& sup) const {
    return sub == sup || pairs_.count({sub, sup}) > 0;
  }
  const std::set<std::pair<Role, Role>>& pairs() const { return pairs_; }

 private:
  std::set<std::pair<Role, Role>> pairs_;  // non-reflexive members
};

SubroleClosure subrole_closure(const Ontology& o);

// ---------------------------------------------------------------------------
// Parsing & serialization
// ---------------------------------------------------------------------------

// Ontology text format, one statement per line ('#' starts a comment):
//   SubClassOf(<lhs> <rhs>)
//   SubRoleOf(<name> <role>)
// with <role> ::= <name> | Inv(<name>) and concepts built from names, Top,
// Bot, And(...), Or(...), Some(<role> <filler>), All(<role> <name>|Bot),
// AtMost1(<role> <name>|Top). And-entries may be names or Some-conjuncts;
// Some-fillers may be a name, Top, or And(<name> <name>).
Ontology parse_ontology(const std::string& text);
std::string serialize_ontology(const Ontology& o);
std::string serialize_axiom(const Axiom& axiom);

// Dataset format, one fact per line: A(a) or R(a,b); constants lowercase.
Dataset parse_dataset(const std::string& text);
std::string serialize_dataset(const Dataset& d);

}  // namespace hornify
