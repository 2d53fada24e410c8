#pragma once

// Back-translation of transposed Horn programs into Horn DL ontologies, plus
// structural normalization of the produced axioms and the end-to-end rewrite
// pipeline. Function symbols become fresh successor roles; equality-headed
// rules over two successor kinds become functionality axioms over a fresh
// union role; complement predicates become fresh concept names.

#include <string>
#include <utility>
#include <vector>

#include "hornify/marking.hpp"
#include "hornify/ontology.hpp"
#include "hornify/program.hpp"

namespace hornify {

// Shape catalogue for the core rules of a transposed Horn program. T1-T6 are
// the function-free shapes that roll up directly into the axiom types of the
// same name; T7-T20 involve the falsity guard, functional terms, or equality
// heads. T3 (a functional role head) never occurs in transposed programs and
// is listed for completeness only.
enum class RuleType {
  T1,
  T2,
  T3,
  T4,
  T5,
  T6,
  T7,
  T8,
  T9,
  T10,
  T11,
  T12,
  T13,
  T14,
  T15,
  T16,
  T17,
  T18,
  T19,
  T20,
  Unclassifiable,
};

const char* to_string(RuleType t);

// Determines the shape of a single rule; Unclassifiable means the rule has no
// DL rendering (e.g. binary complement atoms from a marking that contains a
// role, ground atoms, or disconnected variables).
RuleType classify_rule(const Rule& r);

// Names invented during back-translation, in first-allocation order.
struct FreshNames {
  // successor role name <- function symbol text, e.g. ("R__D", "f_R_D")
  std::vector<std::pair<std::string, std::string>> successorRoles;
  // alias role name <- successor role it inverts, e.g. ("tilde_R__D", "R__D")
  std::vector<std::pair<std::string, std::string>> inverseAliases;
  // union role name <- member role texts, e.g. ("union_R_R__D", {"R","R__D"})
  std::vector<std::pair<std::string, std::vector<std::string>>> unionRoles;
  // concept name <- complement predicate text, e.g. ("not_B", "not_B")
  std::vector<std::pair<std::string, std::string>> complementConcepts;

  bool empty() const {
    return successorRoles.empty() && inverseAliases.empty() &&
           unionRoles.empty() && complementConcepts.empty();
  }
};

struct Backtranslation {
  Ontology ontology;
  FreshNames names;
};

// Maps every core rule of a Horn program to DL axioms: function-free shapes
// roll up via the inverse of the direct translation, functional shapes use
// fresh successor roles, equality shapes become functionality axioms. Sigma
// components are not translated (they are regenerated from any ontology).
// Exact duplicate axioms are emitted once. Throws std::invalid_argument if
// some rule classifies as Unclassifiable.
Backtranslation psi_backtranslate(const Program& p);

// Splits extended axioms (conjunctions containing existential restrictions,
// binary-conjunction fillers, conjunctions in front of a quantified rhs) into
// the strict types T1-T6 using content-derived fresh concept names shared
// across axioms. Already-strict axioms pass through unchanged.
Ontology normalize_ontology(const Ontology& o);

struct RewriteOutcome {
  bool markable = false;
  Program xi;         // rule translation of the (normalized) input
  Marking marking;    // minimized marking; meaningful iff markable
  Program transposed; // Horn transposition; meaningful iff markable
  Ontology rewritten; // Horn DL ontology; meaningful iff markable
  FreshNames names;
};

// Full pipeline: translate, find and minimize a marking, transpose, and
// back-translate. Non-normal-form inputs are normalized first. If
// renormalize is set the resulting ontology is itself brought into the
// strict types T1-T6.
RewriteOutcome rewrite_ontology(const Ontology& o, bool renormalize = false);

}  // namespace hornify
