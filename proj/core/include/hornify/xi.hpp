#pragma once

// Skolem-sharing translation of a normal-form ontology into rules: existential
// axioms introduce one successor function per distinct role/filler pair, and
// the role hierarchy is compiled away by instantiating existential-facing
// axioms (T2/T4/T6 shapes) over the successor functions of every subrole.

#include <vector>

#include "hornify/ontology.hpp"
#include "hornify/program.hpp"

namespace hornify {

// The successor functions f_{R,B}: one per distinct Some(R B) right-hand side.
using PhiSet = std::vector<FunctionSymbol>;

PhiSet phi_set(const Ontology& o);

// Requires a normal-form ontology (axiom types T1..T6 only).
Program xi_translate(const Ontology& o, const SigmaOptions& opts = {});

}  // namespace hornify
