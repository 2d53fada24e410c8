#pragma once

#include "hornify/marking.hpp"
#include "hornify/program.hpp"

namespace hornify {

// Transposes a disjunctive program into a Horn program, given a valid
// marking: every marked predicate P is replaced by derivations of its
// complement not_P, non-Horn rules are contraposed onto their single
// unmarked position, and clash rules tie each P / not_P pair to falsity.
// The complement not_False doubles as the range predicate: it holds for
// every term the program can reach, so contraposed rules stay safe.
//
// The result uses only predicates of p plus the complements of the marked
// predicates and not_False; its Sigma components are regenerated over the
// extended signature. Throws std::invalid_argument if the marking is not
// valid for p.
Program transpose_program(const Program& p, const Marking& marking);

}  // namespace hornify
