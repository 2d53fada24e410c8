#pragma once

// Shared fixture inputs used across the unit suites and the acceptance
// checks: a small non-Horn ontology whose whole pipeline behavior is frozen
// in the tests, and a four-rule program with a known pair of markings.

#include <string>

#include "hornify/ontology.hpp"
#include "hornify/program.hpp"

namespace hornify::testfix {

// A ⊑ B ⊔ C, B ⊑ ∃R.D, ∃R.D ⊑ D, C ⊑ ∃R.B, D ⊓ E ⊑ ⊥.
// Not markable under the direct translation; markable under the
// successor-aware one with exactly two markings.
inline const char* kChainText =
    "SubClassOf(A Or(B C))\n"
    "SubClassOf(B Some(R D))\n"
    "SubClassOf(Some(R D) D)\n"
    "SubClassOf(C Some(R B))\n"
    "SubClassOf(And(D E) Bot)\n";

inline Ontology chain_ontology() { return parse_ontology(kChainText); }

// A → B, B → C ∨ D, C → ⊥, D → C(f(x)): admits exactly the markings
// {C, Bot} and {C, D, Bot}.
inline const char* kBranchingText =
    "A(?x) -> B(?x).\n"
    "B(?x) -> C(?x) | D(?x).\n"
    "C(?x) -> False(?x).\n"
    "D(?x) -> C(sk0(?x)).\n";

inline Program branching_program() { return parse_program(kBranchingText); }

}  // namespace hornify::testfix
