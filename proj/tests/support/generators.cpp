#include "support/generators.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace hornify::testgen {

namespace {

int rint(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(rint(rng, 0, static_cast<int>(xs.size()) - 1))];
}

}  // namespace

Ontology random_ontology(std::mt19937_64& rng, int maxConcepts, int maxRoles,
                         int maxAxioms) {
  const int nc = rint(rng, 2, maxConcepts);
  const int nr = rint(rng, 1, maxRoles);
  const int na = rint(rng, 1, maxAxioms);

  std::vector<ConceptName> concepts;
  for (int i = 0; i < nc; ++i)
    concepts.push_back(ConceptName::named("C" + std::to_string(i)));
  std::vector<std::string> roleNames;
  for (int i = 0; i < nr; ++i) roleNames.push_back("R" + std::to_string(i));

  // Function-free ontologies (no existentials on the right) keep the
  // satisfiability oracle conclusive, so generate a good share of them.
  const bool allowExistentials = chance(rng, 0.6);
  const bool allowFunctionality = chance(rng, 0.25);

  auto someConcept = [&] { return pick(rng, concepts); };
  auto someRole = [&] {
    Role r{pick(rng, roleNames)};
    if (chance(rng, 0.2)) r = r.inverse();
    return r;
  };

  Ontology o;
  for (int i = 0; i < na; ++i) {
    const int kind = rint(rng, 0, 99);
    if (kind < 35) {  // conjunction into disjunction (possibly Horn)
      std::vector<ConceptName> lhs, rhs;
      const int nl = rint(rng, 1, 2);
      for (int j = 0; j < nl; ++j) lhs.push_back(someConcept());
      if (chance(rng, 0.3)) {
        rhs.push_back(ConceptName::bot());
      } else {
        const int m = rint(rng, 1, 3);
        for (int j = 0; j < m; ++j) rhs.push_back(someConcept());
      }
      o.axioms.push_back(make_t1(std::move(lhs), std::move(rhs)));
    } else if (kind < 55) {  // existential on the left
      o.axioms.push_back(make_t2(someRole(), someConcept(), someConcept()));
    } else if (kind < 75) {
      if (allowExistentials) {  // existential on the right
        ConceptName filler =
            chance(rng, 0.1) ? ConceptName::top() : someConcept();
        o.axioms.push_back(make_t3(someConcept(), someRole(), filler));
      } else {
        o.axioms.push_back(make_t1({someConcept()}, {someConcept()}));
      }
    } else if (kind < 88) {  // universal on the right
      ConceptName filler = chance(rng, 0.15) ? ConceptName::bot() : someConcept();
      o.axioms.push_back(make_t4(someConcept(), someRole(), filler));
    } else if (kind < 94 && nr > 1) {  // role inclusion
      o.axioms.push_back(make_t5(pick(rng, roleNames), someRole()));
    } else if (allowFunctionality) {  // at-most-one restriction
      o.axioms.push_back(make_t6(someConcept(), someRole(), someConcept()));
    } else {
      o.axioms.push_back(make_t2(someRole(), someConcept(), someConcept()));
    }
  }
  return o;
}

Program random_program(std::mt19937_64& rng, int maxDisjunctive, int maxRules) {
  const int np = rint(rng, 3, std::max(3, maxDisjunctive));
  const int nrules = rint(rng, 2, maxRules);
  const bool useRole = chance(rng, 0.35);
  const bool useFunction = chance(rng, 0.35);

  std::vector<Predicate> unary;
  for (int i = 0; i < np; ++i)
    unary.push_back(Predicate::concept_name("P" + std::to_string(i)));
  const Predicate role = Predicate::role("S");
  const FunctionSymbol fn = FunctionSymbol::plain(0);

  const Term x = Term::var("x");
  const Term y = Term::var("y");

  std::vector<Rule> rules;
  for (int i = 0; i < nrules; ++i) {
    Rule r;
    bool hasY = false;
    const int nbody = rint(rng, 1, 3);
    for (int j = 0; j < nbody; ++j) {
      if (useRole && chance(rng, 0.25)) {
        r.body.push_back(Atom{role, {x, y}});
        hasY = true;
      } else {
        const Term& t = (hasY && chance(rng, 0.4)) ? y : x;
        r.body.push_back(Atom{pick(rng, unary), {t}});
      }
    }
    const int nhead = chance(rng, 0.45) ? rint(rng, 2, 3) : 1;
    if (nhead == 1 && chance(rng, 0.2)) {
      r.head.push_back(Atom{Predicate::bot(), {x}});
    } else {
      for (int j = 0; j < nhead; ++j) {
        Term t = (hasY && chance(rng, 0.3)) ? y : x;
        if (useFunction && chance(rng, 0.25)) t = Term::app(fn, t);
        if (useRole && nhead == 1 && chance(rng, 0.15) && !t.is_app()) {
          r.head.push_back(Atom{role, {x, t}});
        } else {
          r.head.push_back(Atom{pick(rng, unary), {t}});
        }
      }
    }
    // Distinct body/head atoms (duplicates would be rejected downstream).
    std::sort(r.body.begin(), r.body.end());
    r.body.erase(std::unique(r.body.begin(), r.body.end()), r.body.end());
    std::sort(r.head.begin(), r.head.end());
    r.head.erase(std::unique(r.head.begin(), r.head.end()), r.head.end());
    rules.push_back(std::move(r));
  }
  return make_program(std::move(rules));
}

Dataset random_dataset(std::mt19937_64& rng, const Ontology& o,
                       int maxConstants, int maxFacts) {
  const std::vector<std::string> pool = {"a", "b", "c", "d"};
  const int ncon = rint(rng, 1, std::min<int>(maxConstants, pool.size()));
  std::vector<std::string> constants(pool.begin(), pool.begin() + ncon);

  const std::set<std::string> conceptSet = o.concept_names();
  const std::set<std::string> roleSet = o.role_names();
  std::vector<std::string> conceptNames(conceptSet.begin(), conceptSet.end());
  std::vector<std::string> roleNames(roleSet.begin(), roleSet.end());

  std::set<Fact> seen;
  Dataset d;
  if (conceptNames.empty() && roleNames.empty()) return d;
  const int nf = rint(rng, 1, maxFacts);
  for (int i = 0; i < nf; ++i) {
    Fact f;
    if (!roleNames.empty() && (conceptNames.empty() || chance(rng, 0.3))) {
      f.predicate = pick(rng, roleNames);
      f.binary = true;
      f.c1 = pick(rng, constants);
      f.c2 = pick(rng, constants);
    } else {
      f.predicate = pick(rng, conceptNames);
      f.binary = false;
      f.c1 = pick(rng, constants);
    }
    if (seen.insert(f).second) d.facts.push_back(std::move(f));
  }
  return d;
}

}  // namespace hornify::testgen
