#pragma once
// Bounded satisfiability oracle for translated programs: grounding, Horn
// forward chaining, and disjunctive case splitting over a term universe of
// bounded nesting depth. Refutations come with machine-checkable traces in a
// line-oriented hyperresolution format, and an independent validator
// re-checks every step. The oracle is three-valued: UNSAT is conclusive for
// the unbounded problem, SAT is conclusive only when saturation closed
// without ever bumping into the depth bound, and SAT_BOUNDED is the honest
// "ran out of room" answer.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hornify/ontology.hpp"
#include "hornify/program.hpp"

namespace hornify {

enum class SatStatus : std::uint8_t { Unsat, Sat, SatBounded };

// "UNSAT" / "SAT" / "SAT_BOUNDED"
const char* to_string(SatStatus s);

struct SatOptions {
  int termDepth = 3;                  // max nesting depth of derived terms
  std::size_t atomBudget = 1000000;   // max number of derived ground atoms
};

struct SatReport {
  SatStatus status = SatStatus::Sat;
  // For Unsat: a refutation trace, one inference per line (see trace format
  // below). For Sat/SatBounded: the derived atom set, one atom per line.
  std::string witness;
  int depthUsed = 0;           // deepest term nesting among derived atoms
  std::size_t atomCount = 0;   // ground atoms derived across the search
};

// All instantiations of p's rules (core and closure components) over ground
// terms of depth <= maxDepth built from the dataset's and program's
// constants and the program's function symbols; instances in which any term
// exceeds the depth bound are omitted. A default constant is injected when
// neither the dataset nor the program provides one. Throws std::runtime_error
// when the instance count exceeds the budget.
std::vector<Rule> ground_program(const Program& p, const Dataset& d,
                                 int maxDepth,
                                 std::size_t budget = 1000000);

// Forward chaining for Horn programs (throws std::invalid_argument if p is
// not Horn). UNSAT iff an empty head fires within the bound.
SatReport saturate_horn(const Program& p, const Dataset& d,
                        const SatOptions& opts = {});

// Satisfiability with systematic case splitting over derived disjunctions;
// splits on the smallest pending disjunction first, alternatives in
// canonical order, so traces are deterministic.
SatReport check_sat_disjunctive(const Program& p, const Dataset& d,
                                const SatOptions& opts = {});

// Re-checks a refutation trace step by step against the program and dataset
// it was produced from: leaf steps must be dataset facts or domain-activity
// atoms over known constants, every inference step must be a hyperresolution
// step of a program rule with ground instantiation and correctly combined
// side literals, and the last step must derive the empty clause. Returns an
// error description, or nullopt if the trace is valid.
//
// Trace format, one step per line:
//   [s1] A(a) <- fact 0
//   [s2] True(a) <- active a
//   [s3] B(a) | C(a) <- rule core[0] {x->a} from [s1]:A(a)
//   [s4] empty <- rule bot[0] {x->a} from [s9]:False(a)
std::optional<std::string> validate_trace(const Program& p, const Dataset& d,
                                          const std::string& trace);

enum class Verdict : std::uint8_t { Agree, Disagree, Inconclusive };

// "AGREE" / "DISAGREE" / "INCONCLUSIVE"
const char* to_string(Verdict v);

// Differential satisfiability check across the translations of one ontology:
// the disjunctive checker on the direct translation and on the equality-
// free skolemized translation, and the Horn checker on the rewritten
// ontology's translation (skipped when the ontology is not markable).
// DISAGREE requires two conflicting conclusive legs and signals a bug;
// AGREE means every computed leg is conclusive with the same answer.
struct EquisatReport {
  SatReport original;                  // direct translation + dataset
  SatReport viaXi;                     // skolemized translation + dataset
  std::optional<SatReport> rewritten;  // rewritten ontology + dataset
  bool markable = false;
  Verdict verdict = Verdict::Inconclusive;
};

EquisatReport check_equisat(const Ontology& o, const Dataset& d,
                            const SatOptions& opts = {});

}  // namespace hornify
