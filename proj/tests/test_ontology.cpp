#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "hornify/ontology.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace hornify;

TEST_SUITE_BEGIN("ontology");

TEST_CASE("parser reads a disjunctive inclusion") {
  Ontology o = parse_ontology("SubClassOf(A Or(B C))");
  REQUIRE(o.axioms.size() == 1);
  CHECK(axiom_type(o.axioms[0]) == AxiomType::T1);
  const auto& g = std::get<GCI>(o.axioms[0]);
  CHECK(g.lhs.names == std::vector<ConceptName>{ConceptName::named("A")});
  CHECK(g.rhs.kind == Rhs::Kind::Union);
  CHECK(g.rhs.names == std::vector<ConceptName>{ConceptName::named("B"),
                                                ConceptName::named("C")});
}

TEST_CASE("parser accepts a tautological inclusion") {
  Ontology o = parse_ontology("SubClassOf(A A)");
  REQUIRE(o.axioms.size() == 1);
  const auto& g = std::get<GCI>(o.axioms[0]);
  CHECK(g.lhs.names == g.rhs.names);
}

TEST_CASE("parser rejects conjunction fillers on the right-hand side") {
  CHECK_THROWS_WITH_AS(parse_ontology("SubClassOf(C Some(R And(A B)))"),
                       "line 1:14: filler not a single concept name",
                       ParseError);
}

TEST_CASE("parser rejects degenerate inclusions") {
  CHECK_THROWS_AS(parse_ontology("SubClassOf(A Or(B Top))"), ParseError);
  CHECK_THROWS_AS(parse_ontology("SubClassOf(A Top)"), ParseError);
  // Bot on the left is legal (the inclusion is vacuous, not malformed).
  CHECK(parse_ontology("SubClassOf(And(A Bot) C)").axioms.size() == 1);
}

TEST_CASE("parser reports positions and skips comments") {
  try {
    parse_ontology("# header\nSubClassOf(A Or(B");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
  }
  Ontology o = parse_ontology("# c1\nSubClassOf(A B)\n# c2\n");
  CHECK(o.axioms.size() == 1);
}

TEST_CASE("parser accepts extended left-hand sides one level deep") {
  Ontology o = parse_ontology(
      "SubClassOf(Some(R And(A B)) C)\n"
      "SubClassOf(And(A Some(R B)) Or(C D))\n");
  REQUIRE(o.axioms.size() == 2);
  CHECK(axiom_type(o.axioms[0]) == AxiomType::General);
  CHECK(axiom_type(o.axioms[1]) == AxiomType::General);
  CHECK_FALSE(is_normal_form(o));
  CHECK_THROWS_AS(parse_ontology("SubClassOf(Some(R And(A And(B C))) D)"),
                  ParseError);
}

TEST_CASE("axiom types cover the whole strict grammar") {
  Ontology o = parse_ontology(testfix::kChainText);
  REQUIRE(o.axioms.size() == 5);
  CHECK(axiom_type(o.axioms[0]) == AxiomType::T1);
  CHECK(axiom_type(o.axioms[1]) == AxiomType::T3);
  CHECK(axiom_type(o.axioms[2]) == AxiomType::T2);
  CHECK(axiom_type(o.axioms[3]) == AxiomType::T3);
  CHECK(axiom_type(o.axioms[4]) == AxiomType::T1);
  CHECK(is_normal_form(o));

  Ontology more = parse_ontology(
      "SubClassOf(A All(R B))\n"
      "SubRoleOf(S Inv(R))\n"
      "SubClassOf(A AtMost1(R B))\n");
  CHECK(axiom_type(more.axioms[0]) == AxiomType::T4);
  CHECK(axiom_type(more.axioms[1]) == AxiomType::T5);
  CHECK(axiom_type(more.axioms[2]) == AxiomType::T6);
}

TEST_CASE("serializer renders inverse super-roles") {
  Axiom a = make_t5("S", Role{"R", true});
  CHECK(serialize_axiom(a) == "SubRoleOf(S Inv(R))");
}

TEST_CASE("empty ontology serializes to an empty file") {
  CHECK(serialize_ontology(Ontology{}).empty());
}

TEST_CASE("serialization round-trips the fixture ontology") {
  Ontology o = testfix::chain_ontology();
  Ontology back = parse_ontology(serialize_ontology(o));
  CHECK(back.axioms == o.axioms);
}

TEST_CASE("serialization round-trips random ontologies") {
  std::mt19937_64 rng(20260814);
  for (int i = 0; i < 200; ++i) {
    Ontology o = testgen::random_ontology(rng);
    Ontology back = parse_ontology(serialize_ontology(o));
    REQUIRE(back.axioms == o.axioms);
  }
}

TEST_CASE("role inversion is an involution") {
  Role r{"R"};
  CHECK(r.inverse().inverse() == r);
  CHECK(r.inverse().text() == "Inv(R)");
}

TEST_CASE("profiles follow the naming conventions") {
  CHECK(profile_of(Ontology{}) ==
        DLProfile{DLProfile::Base::EL, false, false, false, true});

  DLProfile chain = profile_of(testfix::chain_ontology());
  CHECK(chain.base == DLProfile::Base::ELU);
  CHECK_FALSE(chain.inverse);
  CHECK_FALSE(chain.hierarchy);
  CHECK_FALSE(chain.functionality);
  CHECK_FALSE(chain.horn);
  CHECK(chain.text() == "ELU");

  Ontology rich = parse_ontology(
      "SubClassOf(A All(R B))\n"
      "SubRoleOf(S Inv(R))\n"
      "SubClassOf(A AtMost1(R B))\n");
  DLProfile p = profile_of(rich);
  CHECK(p.base == DLProfile::Base::ALC);
  CHECK(p.inverse);
  CHECK(p.hierarchy);
  CHECK(p.functionality);
  CHECK(p.horn);
  CHECK(p.text() == "Horn-ALCHIF");
}

TEST_CASE("profile containment compares base rank and features") {
  DLProfile el{DLProfile::Base::EL, false, false, false, true};
  DLProfile alc{DLProfile::Base::ALC, false, false, false, false};
  DLProfile alchi{DLProfile::Base::ALC, true, true, false, false};
  CHECK(profile_within(el, alc));
  CHECK(profile_within(alc, alchi));
  CHECK_FALSE(profile_within(alchi, alc));
  CHECK_FALSE(profile_within(alc, el));
}

TEST_CASE("horn detection looks only at disjunction width") {
  CHECK_FALSE(is_horn_ontology(testfix::chain_ontology()));
  CHECK(is_horn_ontology(Ontology{}));
  CHECK(is_horn_ontology(parse_ontology("SubClassOf(And(A B) C)")));
}

TEST_CASE("horn flag of the profile matches the direct check") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    Ontology o = testgen::random_ontology(rng);
    CHECK(profile_of(o).horn == is_horn_ontology(o));
  }
}

TEST_CASE("subrole closure is reflexive transitive and inversion-closed") {
  Ontology o = parse_ontology("SubRoleOf(S R)\nSubRoleOf(R T)\n");
  SubroleClosure c = subrole_closure(o);
  CHECK(c.contains(Role{"S"}, Role{"T"}));
  CHECK(c.contains(Role{"S", true}, Role{"T", true}));
  CHECK(c.contains(Role{"S"}, Role{"S"}));

  SubroleClosure empty = subrole_closure(parse_ontology("SubClassOf(A B)"));
  CHECK(empty.contains(Role{"R"}, Role{"R"}));
  CHECK(empty.contains(Role{"R", true}, Role{"R", true}));
  CHECK_FALSE(empty.contains(Role{"R"}, Role{"R", true}));

  SubroleClosure inv = subrole_closure(parse_ontology("SubRoleOf(S Inv(R))"));
  CHECK(inv.contains(Role{"S"}, Role{"R", true}));
  CHECK(inv.contains(Role{"S", true}, Role{"R"}));
}

TEST_CASE("signature is exactly the names used by axioms") {
  Ontology o = testfix::chain_ontology();
  CHECK(o.concept_names() == std::set<std::string>{"A", "B", "C", "D", "E"});
  CHECK(o.role_names() == std::set<std::string>{"R"});
  CHECK_FALSE(o.mentions_inverse());
  CHECK(parse_ontology("SubClassOf(A Some(Inv(R) B))").mentions_inverse());
}

TEST_CASE("datasets parse and serialize") {
  Dataset d = parse_dataset("A(a)\nR(a,b)\n# note\nE(a)\n");
  REQUIRE(d.facts.size() == 3);
  CHECK(d.facts[0] == Fact{"A", false, "a", ""});
  CHECK(d.facts[1] == Fact{"R", true, "a", "b"});
  CHECK(d.constants() == std::set<std::string>{"a", "b"});
  Dataset back = parse_dataset(serialize_dataset(d));
  CHECK(back.facts == d.facts);
}

TEST_SUITE_END();
