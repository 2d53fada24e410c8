#pragma once

#include "hornify/ontology.hpp"
#include "hornify/program.hpp"

#include <random>

namespace hornify::testgen {

// Random normal-form ontology over at most `maxConcepts` concept names and
// `maxRoles` role names.  Suitable for round-trip and rewriting tests: the
// generated axioms avoid Top on the left of disjunctive axioms and avoid
// Top fillers in existentials so every axiom stays in strict normal form.
Ontology random_ontology(std::mt19937_64& rng, int maxConcepts = 8,
                         int maxRoles = 3, int maxAxioms = 10);

// Random datalog-with-disjunction program over at most `maxDisjunctive`
// disjunctively-occurring predicates and `maxRules` rules.
Program random_program(std::mt19937_64& rng, int maxDisjunctive = 12,
                       int maxRules = 20);

// Random dataset over the concept/role names of `o`.
Dataset random_dataset(std::mt19937_64& rng, const Ontology& o,
                       int maxConstants = 4, int maxFacts = 8);

}  // namespace hornify::testgen
