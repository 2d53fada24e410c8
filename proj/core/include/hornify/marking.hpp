#pragma once

// Markability analysis: the predicate dependency graph, the Horn/disjunctive
// predicate split, marking validity, and marking search via a 2-SAT encoding
// solved with the implication-graph/SCC construction. A marking selects, per
// non-Horn rule, which way the rule will be turned around by transposition.

#include <optional>
#include <string>
#include <vector>

#include "hornify/program.hpp"

namespace hornify {

// Rules that participate in the dependency graph and the marking conditions:
// core, then falsity, then equality components. The top component never
// constrains markings and is excluded along with the True vertex.
std::vector<Rule> marking_rules(const Program& p);

struct DependencyEdge {
  size_t from;    // vertex index
  size_t to;      // vertex index
  size_t ruleId;  // index into marking_rules(p)
  bool nonHorn;   // label: the rule has a disjunctive head
};

struct DependencyGraph {
  std::vector<Predicate> vertices;  // sorted; True excluded
  std::vector<DependencyEdge> edges;
  std::vector<std::vector<size_t>> out;  // vertex -> outgoing edge ids

  std::optional<size_t> vertex_index(const Predicate& p) const;
  // Forward reachability (reflexive) from a vertex.
  std::vector<bool> reachable_from(size_t v) const;
};

DependencyGraph dependency_graph(const Program& p);

struct PredicateClass {
  std::vector<Predicate> horn;         // sorted
  std::vector<Predicate> disjunctive;  // sorted
};

// A predicate is disjunctive iff some edge path labeled with at least one
// non-Horn rule ends in it; everything else is Horn.
PredicateClass classify_predicates(const Program& p);

using Marking = std::vector<Predicate>;  // sorted, unique

struct MarkingCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks the three marking conditions: at most one marked body atom per rule,
// at most one unmarked head atom per rule, and closure under the dependency
// graph. Also rejects marks on non-disjunctive predicates.
MarkingCheck is_marking(const Program& p, const Marking& m);

// ---------------------------------------------------------------------------
// 2-SAT
// ---------------------------------------------------------------------------

struct TwoSatLiteral {
  int var = -1;          // index into TwoSatInstance::variables; -1 = constant
  bool negated = false;  // meaningful only for proper variables
  bool constantFalse = false;
};

struct TwoSatClause {
  TwoSatLiteral a, b;  // exactly two literals; duplication allowed
};

struct TwoSatInstance {
  std::vector<Predicate> variables;  // the disjunctive predicates, sorted
  std::vector<TwoSatClause> clauses;
};

TwoSatInstance encode_2sat(const Program& p);

// Deterministic implication-graph solution; nullopt iff unsatisfiable.
std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& inst);

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

// Some marking, or nullopt when the program is not markable.
std::optional<Marking> find_marking(const Program& p);

// Greedily removes backward cones until subset-minimal (requires valid m).
Marking minimize_marking(const Program& p, const Marking& m);

// All markings in subset-mask order over the sorted disjunctive predicates.
// Throws if there are more than `cap` disjunctive predicates.
std::vector<Marking> enumerate_markings(const Program& p, size_t cap = 16);

// Rendering for CLI/reporting: names sorted, Bot last.
std::string marking_text(const Marking& m);
// Parses the comma-separated format; complements are not allowed in markings.
Marking parse_marking(const std::string& text, const Program& p);

}  // namespace hornify
