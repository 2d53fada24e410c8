#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hornify/program.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace hornify;

namespace {

bool contains_rule(const std::vector<Rule>& rules, const std::string& text) {
  return std::any_of(rules.begin(), rules.end(),
                     [&](const Rule& r) { return r.text() == text; });
}

}  // namespace

TEST_SUITE_BEGIN("program");

TEST_CASE("terms know their depth and groundness") {
  Term x = Term::var("x");
  Term a = Term::constant("a");
  FunctionSymbol f = FunctionSymbol::plain(3);
  Term fa = Term::app(f, a);
  Term ffx = Term::app(f, Term::app(f, x));
  CHECK(x.depth() == 0);
  CHECK(a.depth() == 0);
  CHECK(fa.depth() == 1);
  CHECK(ffx.depth() == 2);
  CHECK(fa.ground());
  CHECK_FALSE(ffx.ground());
  CHECK(x.text() == "?x");
  CHECK(fa.text() == "sk3(a)");
}

TEST_CASE("indexed function symbols render role and filler") {
  FunctionSymbol f = FunctionSymbol::indexed(Role{"R"}, ConceptName::named("D"));
  CHECK(f.text() == "f_R_D");
  FunctionSymbol g =
      FunctionSymbol::indexed(Role{"R", true}, ConceptName::named("D"));
  CHECK(g.text() == "f_R~_D");
  CHECK(f == FunctionSymbol::indexed(Role{"R"}, ConceptName::named("D")));
}

TEST_CASE("role atoms follow the inversion convention") {
  Term x = Term::var("x");
  Term y = Term::var("y");
  CHECK(make_role_atom(Role{"R"}, x, y).text() == "R(?x, ?y)");
  CHECK(make_role_atom(Role{"R", true}, x, y).text() == "R(?y, ?x)");
}

TEST_CASE("complement predicates render with a prefix and invert once") {
  Predicate b = Predicate::concept_name("B");
  Predicate nb = Predicate::complement_of(b);
  CHECK(nb.text() == "not_B");
  CHECK(nb.arity() == 1);
  CHECK(nb.complement_base() == b);
  Predicate nf = Predicate::complement_of(Predicate::bot());
  CHECK(nf.text() == "not_False");
}

TEST_CASE("direct translation of the axiom grammar") {
  SUBCASE("disjunction") {
    auto rules = pi_axiom_rules(
        make_t1({ConceptName::named("A")},
                {ConceptName::named("B"), ConceptName::named("C")}),
        0);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].text() == "A(?x) -> B(?x) | C(?x).");
  }
  SUBCASE("existential right-hand side yields two rules") {
    auto rules = pi_axiom_rules(
        make_t3(ConceptName::named("A"), Role{"R"}, ConceptName::named("B")),
        2);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].text() == "A(?x) -> R(?x, sk2(?x)).");
    CHECK(rules[1].text() == "A(?x) -> B(sk2(?x)).");
  }
  SUBCASE("existential with unconstrained filler yields one rule") {
    auto rules = pi_axiom_rules(
        make_t3(ConceptName::named("A"), Role{"R"}, ConceptName::top()), 1);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].text() == "A(?x) -> R(?x, sk1(?x)).");
  }
  SUBCASE("inverse super-role swaps the head arguments") {
    auto rules = pi_axiom_rules(make_t5("S", Role{"R", true}), 0);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].text() == "S(?x, ?y) -> R(?y, ?x).");
  }
  SUBCASE("existential left-hand side") {
    auto rules = pi_axiom_rules(
        make_t2(Role{"R"}, ConceptName::named("A"), ConceptName::named("C")),
        0);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].text() == "R(?x, ?y), A(?y) -> C(?x).");
  }
  SUBCASE("universal right-hand side") {
    auto rules = pi_axiom_rules(
        make_t4(ConceptName::named("A"), Role{"R"}, ConceptName::named("C")),
        0);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].text() == "A(?x), R(?x, ?y) -> C(?y).");
  }
  SUBCASE("at-most-one restriction derives equality") {
    auto rules = pi_axiom_rules(
        make_t6(ConceptName::named("A"), Role{"R"}, ConceptName::named("B")),
        0);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].text() ==
          "A(?z), R(?z, ?x1), R(?z, ?x2), B(?x1), B(?x2) -> Eq(?x1, ?x2).");
  }
}

TEST_CASE("direct translation emits at most two rules per axiom") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Ontology o = testgen::random_ontology(rng);
    Program p = pi_translate(o);
    CHECK(p.core.size() <= 2 * o.axioms.size());
    CHECK(validate_program(p).empty());
  }
}

TEST_CASE("truth component covers predicates positions and constants") {
  Rule r;
  r.body.push_back(Atom{Predicate::concept_name("A"), {Term::var("x")}});
  r.head.push_back(Atom{Predicate::concept_name("A"), {Term::var("x")}});
  Signature sig = signature_of({r});
  sig.constants.push_back("a");
  SigmaComponents sc = signature_components(sig);
  CHECK(contains_rule(sc.top, "A(?x) -> True(?x)."));
  CHECK(contains_rule(sc.top, "-> True(a)."));
  CHECK(contains_rule(sc.eq, "A(?x), Eq(?x, ?y) -> A(?y)."));
  REQUIRE(sc.bot.size() == 1);
  CHECK(sc.bot[0].text() == "False(?x) -> FALSEHOOD.");
}

TEST_CASE("empty signature still axiomatizes falsity and equality") {
  SigmaComponents sc = signature_components(Signature{});
  CHECK(sc.top.empty());
  CHECK(sc.bot.size() == 1);
  REQUIRE(sc.eq.size() == 3);
  CHECK(contains_rule(sc.eq, "True(?x) -> Eq(?x, ?x)."));
  CHECK(contains_rule(sc.eq, "Eq(?x, ?y) -> Eq(?y, ?x)."));
  CHECK(contains_rule(sc.eq, "Eq(?x, ?y), Eq(?y, ?z) -> Eq(?x, ?z)."));
}

TEST_CASE("congruence over function positions is switchable") {
  Rule r;
  FunctionSymbol f = FunctionSymbol::plain(0);
  r.body.push_back(Atom{Predicate::concept_name("A"), {Term::var("x")}});
  r.head.push_back(
      Atom{Predicate::concept_name("B"), {Term::app(f, Term::var("x"))}});
  Signature sig = signature_of({r});

  SigmaComponents with = signature_components(sig);
  CHECK(contains_rule(with.eq, "Eq(?x, ?y) -> Eq(sk0(?x), sk0(?y))."));

  SigmaComponents without = signature_components(sig, SigmaOptions{false});
  CHECK_FALSE(contains_rule(without.eq, "Eq(?x, ?y) -> Eq(sk0(?x), sk0(?y))."));
}

TEST_CASE("validation catches unsafe and misplaced atoms") {
  SUBCASE("unsafe head variable") {
    Rule r;
    r.head.push_back(Atom{Predicate::concept_name("B"), {Term::var("x")}});
    Program p = make_program({r});
    CHECK_FALSE(validate_program(p).empty());
  }
  SUBCASE("falsity in a core body") {
    Rule r;
    r.body.push_back(Atom{Predicate::bot(), {Term::var("x")}});
    r.head.push_back(Atom{Predicate::concept_name("A"), {Term::var("x")}});
    Program p = make_program({r});
    CHECK_FALSE(validate_program(p).empty());
  }
  SUBCASE("the clash-rule family may mention falsity in its body") {
    Program p = parse_program(
        "False(?x), not_False(?x), not_False(?z) -> False(?z).");
    CHECK(validate_program(p).empty());
  }
  SUBCASE("the fixture translations are well-formed") {
    CHECK(validate_program(pi_translate(testfix::chain_ontology())).empty());
  }
}

TEST_CASE("horn check looks at core heads only") {
  CHECK_FALSE(is_horn_program(pi_translate(testfix::chain_ontology())));
  CHECK(is_horn_program(make_program({})));
  CHECK(is_horn_program(pi_translate(parse_ontology("SubClassOf(A B)"))));
}

TEST_CASE("programs round-trip through the rules format") {
  Program p = pi_translate(testfix::chain_ontology());
  Program back = parse_program(serialize_program(p));
  REQUIRE(back.core.size() == p.core.size());
  for (std::size_t i = 0; i < p.core.size(); ++i)
    CHECK(rules_equivalent(back.core[i], p.core[i]));
  CHECK(back.sigmaTop.size() == p.sigmaTop.size());
  CHECK(back.sigmaEq.size() == p.sigmaEq.size());
  CHECK(back.signature.predicates == p.signature.predicates);
  CHECK(back.signature.functions == p.signature.functions);
}

TEST_CASE("rule order is core then truth then falsity then equality") {
  Program p = pi_translate(testfix::chain_ontology());
  std::vector<Rule> all = all_rules(p);
  CHECK(all.size() == p.core.size() + p.sigmaTop.size() + p.sigmaBot.size() +
                          p.sigmaEq.size());
  CHECK(all.front().text() == p.core.front().text());
  CHECK(all.back().text() == p.sigmaEq.back().text());
}

TEST_CASE("rule equivalence is modulo variable renaming") {
  Program a = parse_program("A(?x), R(?x, ?y) -> B(?y).");
  Program b = parse_program("A(?u), R(?u, ?v) -> B(?v).");
  Program c = parse_program("A(?y), R(?y, ?x) -> B(?y).");
  CHECK(rules_equivalent(a.core[0], b.core[0]));
  CHECK_FALSE(rules_equivalent(a.core[0], c.core[0]));
  CHECK(rule_sets_equivalent(a.core, b.core));
}

TEST_CASE("generated programs are always well-formed") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    Program p = testgen::random_program(rng);
    auto violations = validate_program(p);
    CAPTURE(serialize_program(p));
    CHECK(violations.empty());
  }
}

TEST_SUITE_END();
